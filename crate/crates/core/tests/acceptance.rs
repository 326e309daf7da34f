//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N ... PASS|FAIL` line with its running time.

use std::collections::BTreeSet;
use std::io::Write as _;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use shi_core::exactgeom::{feasible, Feasibility, LinearConstraint, Relation};
use shi_core::orderring::{
    generators, hilbert_series, polytope_vertices, standard_monomials, vg_heaviside, OrderRing,
};
use shi_core::poset::{ElemSet, FinitePoset, OrderIdeal};
use shi_core::rootsys::{weyl_group, CartanType, RootSystem, WeylElement};
use shi_core::shi::{
    full_arrangement_poincare, fuss_dominant, poincare, regions_in_cone, regions_in_dominant, Cone,
};
use shi_core::verify::{
    check_antichain_independence, check_comparable_pairs, check_cone, check_nonnesting_injective,
    check_totals, CheckOptions, Theorems,
};
use shi_core::{IntPolynomial, Rational};

/// Criteria run one at a time so each is timed on its own.
static SERIAL: Mutex<()> = Mutex::new(());

fn criterion(n: usize, name: &str, limit: Duration, body: impl FnOnce()) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let ok = outcome.is_ok() && elapsed <= limit;
    // Written to the raw handle so the line survives output capture.
    let line = format!(
        "criterion {n} {name}: {} ({:.2?} of {:?})\n",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        limit
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
    if let Err(panic) = outcome {
        resume_unwind(panic);
    }
    assert!(elapsed <= limit, "criterion {n} took {elapsed:?}, limit {limit:?}");
}

fn rs(name: &str) -> RootSystem {
    RootSystem::new(name.parse::<CartanType>().unwrap()).unwrap()
}

fn poly(coeffs: &[i64]) -> IntPolynomial {
    IntPolynomial::new(coeffs.to_vec())
}

fn set(items: &[usize]) -> ElemSet {
    items.iter().copied().collect()
}

fn run_group(rs: &RootSystem) -> IntPolynomial {
    let opts = CheckOptions::for_rank(rs.rank());
    let cones: Vec<_> = weyl_group(rs)
        .unwrap()
        .into_iter()
        .map(|w| {
            let label = w.label();
            check_cone(&Cone::new(rs, w), Theorems::ALL, opts)
                .unwrap_or_else(|e| panic!("{} cone {label}: {e}", rs.cartan_type()))
        })
        .collect();
    check_totals(rs, &cones).unwrap()
}

#[test]
fn criterion_1_b2_golden() {
    criterion(1, "B2 golden values", Duration::from_secs(1), || {
        let b2 = rs("B2");
        // alpha, beta, alpha+beta, 2alpha+beta
        assert_eq!(
            b2.positive_roots().iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]]
        );
        let dominant: BTreeSet<ElemSet> = regions_in_dominant(&b2, b2.all_positive())
            .unwrap()
            .into_iter()
            .map(|r| r.ceiling.0)
            .collect();
        let printed_e: BTreeSet<ElemSet> =
            [set(&[]), set(&[0]), set(&[1]), set(&[0, 1]), set(&[2]), set(&[3])].into();
        assert_eq!(dominant, printed_e);

        let st = WeylElement::parse_word(&b2, "st").unwrap();
        let st_cone = Cone::new(&b2, st);
        let ceilings: BTreeSet<ElemSet> =
            regions_in_cone(&st_cone).unwrap().into_iter().map(|r| r.ceiling).collect();
        let printed_st: BTreeSet<ElemSet> = [set(&[]), set(&[1]), set(&[2])].into();
        assert_eq!(ceilings, printed_st);

        assert_eq!(poincare(&Cone::dominant(&b2)).unwrap(), poly(&[1, 4, 1]));
        assert_eq!(poincare(&st_cone).unwrap(), poly(&[1, 2]));

        let per_chamber = [
            ("", poly(&[1, 4, 1])),
            ("t", poly(&[1, 3])),
            ("ts", poly(&[1, 2])),
            ("tst", poly(&[1, 1])),
            ("tsts", poly(&[1])),
            ("sts", poly(&[1, 1])),
            ("st", poly(&[1, 2])),
            ("s", poly(&[1, 3])),
        ];
        let mut total = IntPolynomial::zero();
        for (word, expected) in &per_chamber {
            let w = WeylElement::parse_word(&b2, word).unwrap();
            let p = poincare(&Cone::new(&b2, w)).unwrap();
            assert_eq!(&p, expected, "chamber {word:?}");
            total += &p;
        }
        assert_eq!(total, poly(&[8, 16, 1]));
        let regions: usize = weyl_group(&b2)
            .unwrap()
            .into_iter()
            .map(|w| regions_in_cone(&Cone::new(&b2, w)).unwrap().len())
            .sum();
        assert_eq!(regions, 25);
        assert_eq!(full_arrangement_poincare(&b2).unwrap(), poly(&[1, 8, 16]));
    });
}

#[test]
fn criterion_2_theorems_rank_at_most_3() {
    criterion(2, "theorem suite, rank <= 3", Duration::from_secs(30), || {
        for name in ["A1", "A2", "A3", "B2", "B3", "C3", "D3", "G2"] {
            let rs = rs(name);
            let total = run_group(&rs);
            let h = rs.coxeter_number() as i64;
            assert_eq!(total.eval(1), (h + 1).pow(rs.rank() as u32), "{name}");
            check_comparable_pairs(&rs).unwrap();
            check_antichain_independence(&rs).unwrap();
            check_nonnesting_injective(&rs).unwrap();
            assert_eq!(
                full_arrangement_poincare(&rs).unwrap().eval(1),
                total.eval(1),
                "{name}: Zaslavsky count"
            );
        }
    });
}

#[test]
fn criterion_3_rank_4_scaling() {
    criterion(3, "rank-4 scaling suite", Duration::from_secs(300), || {
        for (name, expected) in [("A4", 1296), ("B4", 6561), ("C4", 6561), ("D4", 2401), ("F4", 28561)] {
            let rs = rs(name);
            let total = run_group(&rs);
            assert_eq!(total.eval(1), expected, "{name}");
            let h = rs.coxeter_number() as u64;
            assert_eq!((h as i64 + 1).pow(4), expected, "{name}");
            let (num, den) = rs
                .degrees()
                .iter()
                .fold((1u64, 1u64), |(n, d), &deg| (n * (deg as u64 + h), d * deg as u64));
            let catalan = num / den;
            assert_eq!(num % den, 0);
            let dominant = regions_in_dominant(&rs, rs.all_positive()).unwrap().len() as u64;
            assert_eq!(dominant, catalan, "{name}: dominant regions");
            check_antichain_independence(&rs).unwrap();
            check_nonnesting_injective(&rs).unwrap();
        }
    });
}

#[test]
fn criterion_4_fuss_counterexample() {
    criterion(4, "Fuss counterexample suite", Duration::from_secs(10), || {
        let a2 = fuss_dominant(&rs("A2"), 2).unwrap();
        assert_eq!(a2.n_flats, 11);
        assert_eq!(a2.n_regions, 12);
        assert_eq!(a2.exceptional_flats, 1);
        assert_eq!(a2.max_abs_mobius, 2);

        let a3 = fuss_dominant(&rs("A3"), 2).unwrap();
        assert_eq!(a3.poincare, poly(&[1, 12, 29, 13]));
        assert_ne!(a3.poincare, poly(&[1, 12, 28, 14]));

        for name in ["A2", "B2", "G2", "A3", "B3"] {
            let rs = rs(name);
            let base = fuss_dominant(&rs, 1).unwrap();
            assert_eq!(base.poincare, poincare(&Cone::dominant(&rs)).unwrap(), "{name}");
            assert_eq!(base.n_regions as u64, rs.numerology().catalan, "{name}");
        }
    });
}

/// Random naturally labelled poset: covers only go from smaller to larger
/// positions.
fn random_poset(rng: &mut StdRng, max: usize) -> FinitePoset {
    let n = rng.gen_range(0..=max);
    let p = rng.gen_range(0.1..0.6);
    let mut covers = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                covers.push((i, j));
            }
        }
    }
    FinitePoset::from_covers((1..=n).collect(), &covers).unwrap()
}

#[test]
fn criterion_5_order_ring() {
    criterion(5, "order-ring suite", Duration::from_secs(5), || {
        let p = FinitePoset::from_covers(vec![1, 2, 3, 4, 5], &[(0, 2), (1, 2), (2, 3), (2, 4)]).unwrap();
        let printed: BTreeSet<String> = ["00000", "10000", "01000", "11100", "11110", "11101", "11000", "11111"]
            .into_iter()
            .map(String::from)
            .collect();
        let vertices = polytope_vertices(&p);
        assert_eq!(vertices.len(), 8);
        // Filter indicators listed in reverse label order.
        let reversed: BTreeSet<String> =
            vertices.iter().map(|v| v.bitstring().chars().rev().collect()).collect();
        assert_eq!(reversed, printed);
        // Equivalently, complements of filters (ideal indicators) in label order.
        let complements: BTreeSet<String> = vertices
            .iter()
            .map(|v| v.bitstring().chars().map(|c| if c == '1' { '0' } else { '1' }).collect())
            .collect();
        assert_eq!(complements, printed);
        for v in &vertices {
            for i in 0..5 {
                for j in p.above(i) {
                    assert!(v.indicator[i] == 0 || v.indicator[j] == 1);
                }
            }
        }

        let gens = generators(&p);
        let texts: BTreeSet<String> = gens.iter().map(|g| g.text(&p)).collect();
        for (a, b) in [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5)] {
            assert!(texts.contains(&format!("z_{a}*(1-z_{b})")));
        }
        for i in 1..=5 {
            assert!(texts.contains(&format!("z_{i}*(1-z_{i})")));
        }
        assert_eq!(gens.len(), 13);
        for v in &vertices {
            for g in &gens {
                assert_eq!(g.evaluate(v), 0);
            }
        }

        let monomials = standard_monomials(&p);
        assert_eq!(monomials.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 5, 2]);
        let degree_two: Vec<String> = monomials[2].iter().map(|m| m.text(&p)).collect();
        assert_eq!(degree_two, vec!["z_1*z_2", "z_4*z_5"]);
        assert_eq!(hilbert_series(&p), poly(&[1, 5, 2]));

        let split = p.delete_split(4).unwrap();
        assert_eq!(hilbert_series(&split.deleted), poly(&[1, 4, 1]));
        assert_eq!(hilbert_series(&split.contracted), poly(&[1, 1]));

        for name in ["A1", "A2", "B2", "G2", "A3", "B3", "C3", "D3", "A4", "B4", "C4", "D4", "F4"] {
            let rs = rs(name);
            let root_poset = rs.root_poset();
            for w in weyl_group(&rs).unwrap() {
                let cone = Cone::new(&rs, w);
                let sub = root_poset.restrict(cone.dominant_subset());
                assert_eq!(hilbert_series(&sub), poincare(&cone).unwrap(), "{name}");
            }
        }

        for name in ["B2", "A3"] {
            let rs = rs(name);
            let ring = OrderRing::new(rs.root_poset()).unwrap();
            let regions = regions_in_dominant(&rs, rs.all_positive()).unwrap();
            let ideals: BTreeSet<ElemSet> = regions.iter().map(|r| r.ideal.0).collect();
            assert_eq!(ideals.len(), ring.rank());
            assert_eq!(ideals, ring.ideals().iter().map(|i| i.0).collect());
            let y: Vec<_> = (0..rs.num_positive()).map(|b| ring.heaviside(b).unwrap()).collect();
            for r in &regions {
                let at = |f: &_| ring.value(f, OrderIdeal(r.ideal.0)).unwrap();
                for b in 0..rs.num_positive() {
                    assert_eq!(vg_heaviside(&rs, r, b), at(&y[b]));
                    for c in 0..rs.num_positive() {
                        let product = ring.multiply(&y[b], &y[c]).unwrap();
                        assert_eq!(vg_heaviside(&rs, r, b) * vg_heaviside(&rs, r, c), at(&product));
                    }
                }
            }
        }

        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..200 {
            let p = random_poset(&mut rng, 8);
            let h = hilbert_series(&p);
            assert_eq!(polytope_vertices(&p).len() as i64, h.eval(1));
            for k in 0..p.len() {
                if !p.is_maximal(k) {
                    continue;
                }
                let split = p.delete_split(k).unwrap();
                let recursed = &hilbert_series(&split.deleted) + &hilbert_series(&split.contracted).shift();
                assert_eq!(h, recursed);
            }
        }
    });
}

fn random_system(rng: &mut StdRng) -> (usize, Vec<LinearConstraint>) {
    let dim = rng.gen_range(1..=3);
    let count = rng.gen_range(1..=6);
    let relations = [Relation::Gt, Relation::Lt, Relation::Ge, Relation::Le, Relation::Eq];
    let system = (0..count)
        .map(|_| {
            let normal = (0..dim)
                .map(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into()))
                .collect();
            let rel = relations[if rng.gen_bool(0.1) { 4 } else { rng.gen_range(0..4) }];
            LinearConstraint::new(normal, rel, Rational::from_integer(rng.gen_range(-3i64..=3).into()))
        })
        .collect();
    (dim, system)
}

#[test]
fn criterion_6_exact_geometry() {
    criterion(6, "exact geometry suite", Duration::from_secs(10), || {
        let mut rng = StdRng::seed_from_u64(6);
        let mut sampled_feasible = 0;
        for _ in 0..200 {
            let (dim, system) = random_system(&mut rng);
            let answer = feasible(dim, &system).unwrap();
            if let Feasibility::Witness(w) = &answer {
                assert!(system.iter().all(|c| c.is_satisfied(w)));
            }
            let hit = (0..2000).any(|_| {
                let point: Vec<Rational> = (0..dim)
                    .map(|_| Rational::new(rng.gen_range(-48i64..=48).into(), rng.gen_range(1i64..=8).into()))
                    .collect();
                system.iter().all(|c| c.is_satisfied(&point))
            });
            if hit {
                sampled_feasible += 1;
                assert!(answer.is_feasible(), "sampling found a point in an infeasible system");
            }
        }
        assert!(sampled_feasible > 0);

        for name in ["A1", "A2", "A3", "B2", "B3", "C3", "D3", "G2"] {
            check_comparable_pairs(&rs(name)).unwrap();
        }

        let b2 = rs("B2");
        for region in regions_in_dominant(&b2, b2.all_positive()).unwrap() {
            let inside = (0..b2.num_positive()).all(|g| {
                let x = b2.pair(&region.witness, g);
                x > Rational::from_integer(0.into()) && ((x < Rational::one()) == region.ideal.0.contains(g))
            });
            assert!(inside);
        }
    });
}
