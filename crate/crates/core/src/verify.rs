//! Checks tying regions, flats and antichains together.
//!
//! Every check returns `Err(Error::Violation(..))` with a description when
//! the expected identity fails.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exactgeom::{feasible, intersect_hyperplanes, rank, AffineFlat, Relation};
use crate::poset::ElemSet;
use crate::rootsys::{inversion_set, RootSystem};
use crate::shi::{
    ceiling_oracle, ceiling_oracle_in_cone, flats_in_cone, flats_oracle, regions_by_sign_oracle,
    regions_in_cone, root_constraint, Cone, ConeRegion, IntersectionPoset, MAX_ORACLE_RANK,
};
use crate::{Error, IntPolynomial, Rational, Result};

fn violation<T>(msg: String) -> Result<T> {
    Err(Error::Violation(msg))
}

/// Which of the three correspondences to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Theorems {
    pub regions: bool,
    pub flats: bool,
    pub intervals: bool,
}

impl Theorems {
    pub const ALL: Theorems = Theorems {
        regions: true,
        flats: true,
        intervals: true,
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Brute-force region and flat enumeration (rank at most 3).
    pub oracles: bool,
    /// Facet tests for every region's ceiling.
    pub facet_ceilings: bool,
}

impl CheckOptions {
    pub fn for_rank(rank: usize) -> Self {
        Self {
            oracles: rank <= MAX_ORACLE_RANK,
            facet_ceilings: true,
        }
    }
}

/// Counts gathered while checking one cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSummary {
    pub word: String,
    pub regions: usize,
    pub flats: usize,
    pub poincare: IntPolynomial,
    /// Regions by number of ceilings.
    pub ceiling_sizes: IntPolynomial,
}

/// Roots of `candidates` lying strictly below level 1 at `v`.
fn below_at(rs: &RootSystem, v: &[Rational], candidates: ElemSet) -> ElemSet {
    candidates
        .iter()
        .filter(|&b| rs.pair(v, b) < Rational::one())
        .collect()
}

/// Regions of `wC`: witnesses inside the cone, sign vectors read off the
/// witness, ceilings recovered from the sign vector and (optionally) by
/// facet tests, distinct regions for distinct antichains, and agreement
/// with brute-force enumeration.
pub fn check_regions(cone: &Cone<'_>, opts: CheckOptions) -> Result<Vec<ConeRegion>> {
    let rs = cone_rs(cone);
    let poset = rs.root_poset();
    let e = cone.dominant_subset();
    let regions = regions_in_cone(cone)?;
    let expected = poset.restrict(e).antichains().len();
    if regions.len() != expected {
        return violation(format!("{} regions for {expected} antichains", regions.len()));
    }
    let walls = cone.full_description();
    let mut seen = BTreeSet::new();
    for r in &regions {
        if !walls.iter().all(|c| c.is_satisfied(&r.witness)) {
            return violation(format!("witness of {:?} is outside the cone", r.ceiling));
        }
        let below = below_at(rs, &r.witness, cone.relevant());
        if below != r.below {
            return violation(format!("sign vector {below:?} differs from {:?}", r.below));
        }
        let pulled = cone.pull_back(below);
        if !poset.is_ideal_within(pulled, e) {
            return violation(format!("{pulled:?} is not an ideal of E"));
        }
        let ceiling = cone.transport(poset.max_elements(pulled));
        if ceiling != r.ceiling {
            return violation(format!("ceiling {ceiling:?} differs from {:?}", r.ceiling));
        }
        if opts.facet_ceilings {
            let dominant = ceiling_oracle(rs, e, &r.dominant)?;
            if dominant != r.dominant.ceiling {
                return violation(format!(
                    "facet test gives {:?} instead of {:?}",
                    dominant.0, r.dominant.ceiling.0
                ));
            }
        }
        if opts.oracles {
            let facets = ceiling_oracle_in_cone(cone, r)?;
            if facets != r.ceiling {
                return violation(format!(
                    "facet test in the cone gives {facets:?} instead of {:?}",
                    r.ceiling
                ));
            }
        }
        if !seen.insert(r.below) {
            return violation(format!("two antichains give the region {:?}", r.below));
        }
    }
    if opts.oracles {
        let brute = regions_by_sign_oracle(cone)?;
        let built: Vec<ElemSet> = seen.into_iter().collect();
        if brute != built {
            return violation(format!(
                "sign oracle finds {} regions, construction {}",
                brute.len(),
                built.len()
            ));
        }
    }
    Ok(regions)
}

fn cone_rs<'a>(cone: &Cone<'a>) -> &'a RootSystem {
    cone.root_system()
}

/// Flats of `wC`: the construction's own checks, `psi` round trips, and
/// agreement with brute-force enumeration.
pub fn check_flats(cone: &Cone<'_>, opts: CheckOptions) -> Result<IntersectionPoset> {
    let rs = cone_rs(cone);
    let poset = rs.root_poset();
    let e = cone.dominant_subset();
    let flats = flats_in_cone(cone)?;
    let mut geometries = BTreeSet::new();
    for f in &flats.flats {
        if !f.antichain.0.is_subset(e) || !poset.is_antichain(f.antichain.0) {
            return violation(format!("{:?} is not an antichain of E", f.antichain.0));
        }
        if cone.transport(f.antichain.0) != f.generators {
            return violation(format!("psi does not round-trip on {:?}", f.generators));
        }
        if f.codim != f.generators.len() {
            return violation(format!("codimension {} for {:?}", f.codim, f.generators));
        }
        geometries.insert(f.geometry.clone());
    }
    if geometries.len() != flats.len() {
        return violation(format!(
            "{} antichains give only {} flats",
            flats.len(),
            geometries.len()
        ));
    }
    if opts.oracles && flats_oracle(cone)?.geometries() != geometries {
        return violation("flat oracle disagrees".into());
    }
    Ok(flats)
}

/// Lower intervals are Boolean, `mu` is `(-1)^codim` on every comparable
/// pair, and the ambient space is the unique minimum.
pub fn check_intervals(flats: &IntersectionPoset) -> Result<()> {
    let n = flats.len();
    if n == 0 || flats.flats[0].codim != 0 || !(0..n).all(|j| flats.leq(0, j)) {
        return violation("the ambient space is not the minimum".into());
    }
    for (j, f) in flats.flats.iter().enumerate() {
        let size = flats.lower_interval_size(j);
        if size != 1 << f.codim {
            return violation(format!("[V, X] has {size} elements at codimension {}", f.codim));
        }
    }
    for x in 0..n {
        let mu = flats.mobius_from(x);
        for y in 0..n {
            if !flats.leq(x, y) {
                continue;
            }
            let d = flats.flats[y].codim - flats.flats[x].codim;
            let expected = if d % 2 == 0 { 1 } else { -1 };
            if mu[y] != expected {
                return violation(format!("mu = {} on an interval of rank {d}", mu[y]));
            }
        }
    }
    Ok(())
}

/// Runs the requested checks on one cone.
pub fn check_cone(cone: &Cone<'_>, theorems: Theorems, opts: CheckOptions) -> Result<ConeSummary> {
    let regions = if theorems.regions || theorems.intervals {
        Some(check_regions(cone, opts)?)
    } else {
        None
    };
    let flats = if theorems.flats || theorems.intervals {
        Some(check_flats(cone, opts)?)
    } else {
        None
    };
    if theorems.intervals {
        let f = flats.as_ref().expect("computed above");
        check_intervals(f)?;
        let nr = regions.as_ref().map_or(0, Vec::len);
        if f.len() != nr {
            return violation(format!("{} flats but {nr} regions", f.len()));
        }
    }
    let poincare = match &flats {
        Some(f) => f.poincare(),
        None => crate::shi::whitney_numbers(cone),
    };
    let ceiling_sizes = match &regions {
        Some(r) => IntPolynomial::from_counts(r.iter().map(|r| r.ceiling.len())),
        None => crate::shi::whitney_numbers(cone),
    };
    if opts.oracles {
        check_hyperplanes_meeting(cone)?;
    }
    check_inversion_transport(cone)?;
    Ok(ConeSummary {
        word: cone.element().label(),
        regions: regions.map_or_else(|| rs_antichains(cone), |r| r.len()),
        flats: flats.map_or_else(|| rs_antichains(cone), |f| f.len()),
        poincare,
        ceiling_sizes,
    })
}

fn rs_antichains(cone: &Cone<'_>) -> usize {
    let p = crate::shi::whitney_numbers(cone);
    p.eval(1) as usize
}

/// `H_{beta,1}` meets `wC` exactly when `beta` is not an inversion of `w`.
pub fn check_hyperplanes_meeting(cone: &Cone<'_>) -> Result<()> {
    let rs = cone_rs(cone);
    let walls = cone.full_description();
    for beta in 0..rs.num_positive() {
        let mut system = walls.clone();
        system.push(root_constraint(rs, beta, Relation::Eq, 1));
        let meets = feasible(rs.rank(), &system)?.is_feasible();
        if meets == cone.inversions().contains(beta) {
            return violation(format!(
                "H_(beta,1) for root {} {} the cone {}",
                rs.root(beta),
                if meets { "meets" } else { "misses" },
                cone.element().label()
            ));
        }
    }
    Ok(())
}

/// `w` maps `Phi+ \ Inv(w^-1)` onto `Phi+ \ Inv(w)` and `Inv(w^-1)` onto
/// `-Inv(w)`.
pub fn check_inversion_transport(cone: &Cone<'_>) -> Result<()> {
    let rs = cone_rs(cone);
    let w = cone.element();
    if cone.transport(cone.dominant_subset()) != cone.relevant() {
        return violation(format!("w(E) != Phi+ \\ Inv(w) for {}", w.label()));
    }
    let inv_inverse = inversion_set(rs, cone.inverse_element());
    let image: Option<ElemSet> = inv_inverse
        .iter()
        .map(|b| match rs.signed_index(&w.act(rs.root(b))) {
            Some((i, false)) => Some(i),
            _ => None,
        })
        .collect();
    if image != Some(cone.inversions()) {
        return violation(format!("w(Inv(w^-1)) != -Inv(w) for {}", w.label()));
    }
    Ok(())
}

/// Every antichain of the root poset is linearly independent.
pub fn check_antichain_independence(rs: &RootSystem) -> Result<usize> {
    let antichains = rs.root_poset().antichains();
    for a in &antichains {
        let vectors: Vec<Vec<Rational>> = a.0.iter().map(|b| rs.root(b).to_rational()).collect();
        if rank(&vectors) != vectors.len() {
            return violation(format!("antichain {:?} is dependent", a.0));
        }
    }
    Ok(antichains.len())
}

/// `H_{gamma,1}` and `H_{beta,1}` never meet inside `C` when
/// `gamma < beta`. Returns the number of pairs checked.
pub fn check_comparable_pairs(rs: &RootSystem) -> Result<usize> {
    let poset = rs.root_poset();
    let mut checked = 0;
    for b in 0..rs.num_positive() {
        for g in poset.below(b) {
            if g == b {
                continue;
            }
            let mut system: Vec<_> = (0..rs.rank())
                .map(|i| root_constraint(rs, i, Relation::Gt, 0))
                .collect();
            system.push(root_constraint(rs, g, Relation::Eq, 1));
            system.push(root_constraint(rs, b, Relation::Eq, 1));
            if feasible(rs.rank(), &system)?.is_feasible() {
                return violation(format!(
                    "H_(beta,1) meets H_(gamma,1) in C for {} < {}",
                    rs.root(g),
                    rs.root(b)
                ));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// `A -> /\_{beta in A} H_{beta,0}` is injective on antichains.
pub fn check_nonnesting_injective(rs: &RootSystem) -> Result<usize> {
    let antichains = rs.root_poset().antichains();
    let mut seen: BTreeSet<AffineFlat> = BTreeSet::new();
    for a in &antichains {
        let rows: Vec<(Vec<Rational>, Rational)> = a
            .0
            .iter()
            .map(|b| (rs.normal(b).to_vec(), Rational::zero()))
            .collect();
        if !seen.insert(intersect_hyperplanes(rs.rank(), &rows)?) {
            return violation(format!("antichain {:?} repeats a linear flat", a.0));
        }
    }
    Ok(seen.len())
}

/// Totals over all cones: regions `(h+1)^rank`, constant term `#W`,
/// ceiling-size distribution equal to the summed Whitney numbers, and the
/// dominant Whitney numbers equal to the Narayana numbers.
pub fn check_totals(rs: &RootSystem, cones: &[ConeSummary]) -> Result<IntPolynomial> {
    let total: IntPolynomial = cones.iter().map(|c| c.poincare.clone()).sum();
    let ceilings: IntPolynomial = cones.iter().map(|c| c.ceiling_sizes.clone()).sum();
    let h = rs.coxeter_number() as i64;
    let expected = (h + 1).pow(rs.rank() as u32);
    if total.eval(1) != expected {
        return violation(format!("{} regions in total, expected {expected}", total.eval(1)));
    }
    let regions: usize = cones.iter().map(|c| c.regions).sum();
    if regions as i64 != expected {
        return violation(format!("{regions} regions counted, expected {expected}"));
    }
    if total.coeff(0) as u64 != rs.weyl_order() {
        return violation(format!("constant term {} for a group of order {}", total.coeff(0), rs.weyl_order()));
    }
    if ceilings != total {
        return violation(format!("ceiling sizes {ceilings} differ from Whitney totals {total}"));
    }
    if let Some(dominant) = cones.iter().find(|c| c.word == "e") {
        let nar = rs.numerology().narayana;
        if dominant.poincare != nar {
            return violation(format!("Poin(C) = {} but Narayana is {nar}", dominant.poincare));
        }
    }
    Ok(total)
}
