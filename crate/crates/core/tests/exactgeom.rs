use num_traits::Zero;
use proptest::prelude::*;

use shi_core::exactgeom::{
    feasible, flat_contains, intersect_hyperplanes, rank, AffineFlat, Feasibility,
    LinearConstraint, Relation,
};
use shi_core::rootsys::{CartanType, RootSystem};
use shi_core::shi::root_constraint;
use shi_core::{Error, Rational};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn qs(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

fn rs(name: &str) -> RootSystem {
    RootSystem::new(name.parse::<CartanType>().unwrap()).unwrap()
}

#[test]
fn open_interval() {
    let system = [
        LinearConstraint::new(qs(&[1]), Relation::Gt, q(0)),
        LinearConstraint::new(qs(&[1]), Relation::Lt, q(1)),
    ];
    let w = feasible(1, &system).unwrap().witness().unwrap();
    assert!(w[0] > q(0) && w[0] < q(1));
    let empty = [
        LinearConstraint::new(qs(&[1]), Relation::Gt, q(0)),
        LinearConstraint::new(qs(&[1]), Relation::Le, q(0)),
    ];
    assert_eq!(feasible(1, &empty).unwrap(), Feasibility::Infeasible);
}

#[test]
fn dimension_mismatch() {
    let system = [LinearConstraint::new(qs(&[1, 2]), Relation::Gt, q(0))];
    assert_eq!(
        feasible(3, &system),
        Err(Error::DimensionMismatch { expected: 3, found: 2 })
    );
}

#[test]
fn b2_comparable_pair_misses_dominant_cone() {
    let b2 = rs("B2");
    // alpha < alpha+beta
    let system = vec![
        root_constraint(&b2, 0, Relation::Gt, 0),
        root_constraint(&b2, 1, Relation::Gt, 0),
        root_constraint(&b2, 0, Relation::Eq, 1),
        root_constraint(&b2, 2, Relation::Eq, 1),
    ];
    assert_eq!(feasible(2, &system).unwrap(), Feasibility::Infeasible);
}

#[test]
fn a2_triple_point() {
    let a2 = rs("A2");
    let system = vec![
        root_constraint(&a2, 0, Relation::Eq, 1),
        root_constraint(&a2, 1, Relation::Eq, 1),
        root_constraint(&a2, 2, Relation::Eq, 2),
    ];
    let w = feasible(2, &system).unwrap().witness().unwrap();
    assert!(system.iter().all(|c| c.is_satisfied(&w)));
}

#[test]
fn intersections() {
    let full = intersect_hyperplanes(2, &[]).unwrap();
    assert_eq!(full, AffineFlat::full(2));
    assert_eq!(full.codim(), Some(0));

    let b2 = rs("B2");
    let h = |b: usize| (b2.normal(b).to_vec(), q(1));
    let point = intersect_hyperplanes(2, &[h(0), h(1)]).unwrap();
    assert_eq!(point.codim(), Some(2));
    assert!(!flat_contains(&point, b2.normal(2), &q(1)).unwrap());
    assert!(flat_contains(&point, b2.normal(2), &q(2)).unwrap());

    let line = intersect_hyperplanes(2, &[h(0)]).unwrap();
    assert_eq!(intersect_hyperplanes(2, &[h(0), h(0)]).unwrap(), line);
    assert_eq!(line.codim(), Some(1));
    assert!(flat_contains(&line, b2.normal(0), &q(1)).unwrap());
    assert!(!flat_contains(&full, b2.normal(0), &q(1)).unwrap());

    let parallel = intersect_hyperplanes(2, &[h(0), (b2.normal(0).to_vec(), q(2))]).unwrap();
    assert!(parallel.is_empty());
    assert_eq!(flat_contains(&parallel, b2.normal(0), &q(1)), Err(Error::EmptyFlat));
    assert!(point.is_subset_of(&line) && !line.is_subset_of(&point));
}

#[test]
fn flat_description() {
    let flat = intersect_hyperplanes(3, &[(qs(&[1, 1, 0]), q(2)), (qs(&[0, 1, 1]), q(3))]).unwrap();
    let base = flat.basepoint().unwrap();
    let dirs = flat.directions();
    assert_eq!(dirs.len(), 3 - flat.codim().unwrap());
    assert!(flat.contains_point(&base));
    for d in &dirs {
        let moved: Vec<Rational> = base.iter().zip(d).map(|(b, x)| b + x).collect();
        assert!(flat.contains_point(&moved));
    }
    assert_eq!(rank(&[qs(&[1, 2]), qs(&[2, 4])]), 1);
    assert_eq!(rank(&[qs(&[1, 2]), qs(&[2, 5])]), 2);
}

fn relation() -> impl Strategy<Value = Relation> {
    prop_oneof![
        Just(Relation::Gt),
        Just(Relation::Lt),
        Just(Relation::Ge),
        Just(Relation::Le),
        Just(Relation::Eq),
    ]
}

fn system(dim: usize) -> impl Strategy<Value = Vec<LinearConstraint>> {
    proptest::collection::vec(
        (proptest::collection::vec(-4i64..=4, dim), relation(), -4i64..=4)
            .prop_map(|(n, r, b)| LinearConstraint::new(qs(&n), r, q(b))),
        0..7,
    )
}

fn any_system() -> impl Strategy<Value = (usize, Vec<LinearConstraint>)> {
    (1usize..=4).prop_flat_map(|d| (Just(d), system(d)))
}

proptest! {
    #[test]
    fn witnesses_satisfy_their_systems((dim, sys) in any_system()) {
        if let Feasibility::Witness(w) = feasible(dim, &sys).unwrap() {
            prop_assert_eq!(w.len(), dim);
            prop_assert!(sys.iter().all(|c| c.is_satisfied(&w)));
        }
    }

    #[test]
    fn points_certify_feasibility((dim, sys) in any_system(), point in proptest::collection::vec(-6i64..=6, 4)) {
        let p = qs(&point[..dim]);
        if sys.iter().all(|c| c.is_satisfied(&p)) {
            prop_assert!(feasible(dim, &sys).unwrap().is_feasible());
        }
    }

    #[test]
    fn dropping_strictness_keeps_feasibility((dim, sys) in any_system()) {
        let relaxed: Vec<LinearConstraint> = sys
            .iter()
            .map(|c| {
                let r = match c.relation {
                    Relation::Gt => Relation::Ge,
                    Relation::Lt => Relation::Le,
                    r => r,
                };
                LinearConstraint::new(c.normal.clone(), r, c.rhs.clone())
            })
            .collect();
        if feasible(dim, &sys).unwrap().is_feasible() {
            prop_assert!(feasible(dim, &relaxed).unwrap().is_feasible());
        }
    }

    #[test]
    fn intersections_lie_on_their_rows(rows in proptest::collection::vec((proptest::collection::vec(-3i64..=3, 3), -3i64..=3), 0..4)) {
        let rows: Vec<(Vec<Rational>, Rational)> = rows.iter().map(|(n, b)| (qs(n), q(*b))).collect();
        let flat = intersect_hyperplanes(3, &rows).unwrap();
        if !flat.is_empty() {
            for (n, b) in &rows {
                prop_assert!(flat_contains(&flat, n, b).unwrap());
            }
            let normals: Vec<Vec<Rational>> = rows.iter().map(|(n, _)| n.clone()).filter(|n| !n.iter().all(Zero::is_zero)).collect();
            prop_assert_eq!(flat.codim().unwrap(), rank(&normals));
        }
    }
}
