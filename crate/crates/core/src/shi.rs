//! Shi arrangements and their deletions, restricted to Weyl cones.
//!
//! Sets of roots are [`ElemSet`]s over positive-root indices of the
//! [`RootSystem`]. Regions and flats inside a cone `wC` are produced in the
//! dominant frame for `E = Phi+ \ Inv(w^-1)` and transported by `w`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exactgeom::{
    dot, feasible, intersect_hyperplanes, AffineFlat, Feasibility, LinearConstraint,
    Relation,
};
use crate::poset::{Antichain, ElemSet, FinitePoset, OrderIdeal};
use crate::rootsys::{act_on_set, inversion_set, RootSystem, WeylElement};
use crate::{Error, IntPolynomial, Rational, Result};

/// Largest rank for the brute-force oracles and full-lattice computations.
pub const MAX_ORACLE_RANK: usize = 3;
/// Largest `m` accepted by [`fuss_dominant`].
pub const MAX_FUSS_M: usize = 3;

fn int(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

/// `<v, beta> (rel) level` for the positive root with index `beta`.
pub fn root_constraint(rs: &RootSystem, beta: usize, relation: Relation, level: i64) -> LinearConstraint {
    LinearConstraint::new(rs.normal(beta).to_vec(), relation, int(level))
}

/// Hyperplanes `H_{beta,k}`, kept as a level set per positive root.
#[derive(Clone, Debug)]
pub struct ShiArrangement<'a> {
    rs: &'a RootSystem,
    levels: Vec<Vec<i64>>,
}

impl<'a> ShiArrangement<'a> {
    /// `Shi(E)`: every `H_{beta,0}` plus `H_{beta,1}` for `beta` in `E`.
    pub fn deletion(rs: &'a RootSystem, e: ElemSet) -> Self {
        let levels = (0..rs.num_positive())
            .map(|b| if e.contains(b) { vec![0, 1] } else { vec![0] })
            .collect();
        Self { rs, levels }
    }

    pub fn full(rs: &'a RootSystem) -> Self {
        Self::deletion(rs, rs.all_positive())
    }

    /// Levels `-m+1 ..= m` for every positive root.
    pub fn extended(rs: &'a RootSystem, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::SizeBound("m must be at least 1".into()));
        }
        let m = m as i64;
        let levels = (0..rs.num_positive())
            .map(|_| (-m + 1..=m).collect())
            .collect();
        Ok(Self { rs, levels })
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn levels(&self, beta: usize) -> &[i64] {
        &self.levels[beta]
    }

    /// `(beta, level)` pairs, sorted.
    pub fn hyperplanes(&self) -> Vec<(usize, i64)> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(b, ls)| ls.iter().map(move |&k| (b, k)))
            .collect()
    }

    pub fn contains(&self, beta: usize, level: i64) -> bool {
        self.levels.get(beta).is_some_and(|ls| ls.contains(&level))
    }
}

/// The open cone `wC` of the reflection arrangement.
#[derive(Clone, Debug)]
pub struct Cone<'a> {
    rs: &'a RootSystem,
    w: WeylElement,
    w_inv: WeylElement,
    inversions: ElemSet,
    dominant_subset: ElemSet,
}

impl<'a> Cone<'a> {
    pub fn new(rs: &'a RootSystem, w: WeylElement) -> Self {
        let w_inv = w.inverse(rs);
        let inversions = inversion_set(rs, &w);
        let dominant_subset = rs.all_positive().difference(inversion_set(rs, &w_inv));
        Self {
            rs,
            w,
            w_inv,
            inversions,
            dominant_subset,
        }
    }

    pub fn dominant(rs: &'a RootSystem) -> Self {
        Self::new(rs, WeylElement::identity(rs.rank()))
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn element(&self) -> &WeylElement {
        &self.w
    }

    pub fn inverse_element(&self) -> &WeylElement {
        &self.w_inv
    }

    /// `Inv(w)`.
    pub fn inversions(&self) -> ElemSet {
        self.inversions
    }

    /// `E = Phi+ \ Inv(w^-1)`, the subposet whose antichains index the cone.
    pub fn dominant_subset(&self) -> ElemSet {
        self.dominant_subset
    }

    /// Roots whose level-1 hyperplane can meet the cone: `Phi+ \ Inv(w)`.
    pub fn relevant(&self) -> ElemSet {
        self.rs.all_positive().difference(self.inversions)
    }

    /// The `rank` walls `<v, w(alpha_i)> > 0`.
    pub fn walls(&self) -> Vec<LinearConstraint> {
        (0..self.rs.rank())
            .map(|i| {
                let image = self.w.act(self.rs.root(i));
                let (j, positive) = self.rs.signed_index(&image).expect("W permutes roots");
                let rel = if positive { Relation::Gt } else { Relation::Lt };
                root_constraint(self.rs, j, rel, 0)
            })
            .collect()
    }

    /// Sign conditions for every positive root (`< 0` on inversions).
    pub fn full_description(&self) -> Vec<LinearConstraint> {
        (0..self.rs.num_positive())
            .map(|b| {
                let rel = if self.inversions.contains(b) {
                    Relation::Lt
                } else {
                    Relation::Gt
                };
                root_constraint(self.rs, b, rel, 0)
            })
            .collect()
    }

    /// `w(set)` for a subset of `E`.
    pub fn transport(&self, set: ElemSet) -> ElemSet {
        act_on_set(self.rs, &self.w, set).expect("w maps E into positive roots")
    }

    /// `w^-1(set)` for a subset of `Phi+ \ Inv(w)`.
    pub fn pull_back(&self, set: ElemSet) -> ElemSet {
        act_on_set(self.rs, &self.w_inv, set).expect("w^-1 maps Phi+ \\ Inv(w) into positive roots")
    }
}

/// A region of `Shi(E)` inside the dominant cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiRegion {
    pub e: ElemSet,
    /// Roots of `E` with `<v, gamma> < 1` on the region (an ideal of `E`).
    pub ideal: OrderIdeal,
    /// Maximal elements of the ideal.
    pub ceiling: Antichain,
    /// An interior point.
    pub witness: Vec<Rational>,
}

impl ShiRegion {
    /// Whether `v` lies in the region: `0 < <v,gamma>` for all positive
    /// roots, `< 1` on the ideal and `> 1` on the rest of `E`.
    pub fn contains(&self, rs: &RootSystem, v: &[Rational]) -> bool {
        (0..rs.num_positive()).all(|g| {
            let x = rs.pair(v, g);
            if !x.is_positive_strict() {
                return false;
            }
            if self.ideal.contains(g) {
                x < Rational::one()
            } else if self.e.contains(g) {
                x > Rational::one()
            } else {
                true
            }
        })
    }
}

trait PositiveStrict {
    fn is_positive_strict(&self) -> bool;
}

impl PositiveStrict for Rational {
    fn is_positive_strict(&self) -> bool {
        *self > Rational::zero()
    }
}

/// The region of `Shi(E)` in `C` with ceiling `antichain` (an antichain of
/// the root poset inside `E`). The witness comes from an irredundant
/// description: simple roots positive, ceilings below 1, minimal roots of
/// `E` outside the ideal above 1.
pub fn region_from_antichain(
    rs: &RootSystem,
    poset: &FinitePoset,
    e: ElemSet,
    antichain: ElemSet,
) -> Result<ShiRegion> {
    if !antichain.is_subset(e) || !poset.is_antichain(antichain) {
        return Err(Error::NotAntichain);
    }
    let ideal = poset.down_closure(antichain).intersection(e);
    let outside = e.difference(ideal);
    let mut system: Vec<LinearConstraint> = (0..rs.rank())
        .map(|i| root_constraint(rs, i, Relation::Gt, 0))
        .collect();
    system.extend(antichain.iter().map(|b| root_constraint(rs, b, Relation::Lt, 1)));
    system.extend(
        poset
            .min_elements(outside)
            .iter()
            .map(|b| root_constraint(rs, b, Relation::Gt, 1)),
    );
    let Feasibility::Witness(witness) = feasible(rs.rank(), &system)? else {
        return Err(Error::Violation(alloc::format!(
            "{}: no region of Shi(E) for antichain {antichain:?} of E = {e:?}",
            rs.cartan_type()
        )));
    };
    let region = ShiRegion {
        e,
        ideal: OrderIdeal(ideal),
        ceiling: Antichain(antichain),
        witness,
    };
    if !region.contains(rs, &region.witness) {
        return Err(Error::Violation(alloc::format!(
            "witness for {antichain:?} leaves its region"
        )));
    }
    Ok(region)
}

/// One region of `Shi(E)` in `C` per antichain of `E`, in antichain order.
pub fn regions_in_dominant(rs: &RootSystem, e: ElemSet) -> Result<Vec<ShiRegion>> {
    let poset = rs.root_poset();
    poset
        .restrict(e)
        .antichains()
        .into_iter()
        .map(|a| region_from_antichain(rs, &poset, e, a.0.spread(e)))
        .collect()
}

/// A region of the full Shi arrangement inside `wC`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeRegion {
    /// The region of `Shi(E)` in `C` it is transported from.
    pub dominant: ShiRegion,
    /// `w(dominant.witness)`.
    pub witness: Vec<Rational>,
    /// `w(ideal)`: roots with `0 < <v,gamma> < 1` on the region.
    pub below: ElemSet,
    /// `w(ceiling)`: the ceiling set in unrotated coordinates.
    pub ceiling: ElemSet,
}

/// Shi regions inside `wC`, one per antichain of `E = Phi+ \ Inv(w^-1)`.
pub fn regions_in_cone(cone: &Cone<'_>) -> Result<Vec<ConeRegion>> {
    let rs = cone.rs;
    regions_in_dominant(rs, cone.dominant_subset())?
        .into_iter()
        .map(|r| {
            Ok(ConeRegion {
                witness: cone.w.act_point(&r.witness),
                below: cone.transport(r.ideal.0),
                ceiling: cone.transport(r.ceiling.0),
                dominant: r,
            })
        })
        .collect()
}

/// All region constraints: the cone's sign conditions on every positive
/// root, and `< 1` / `> 1` on each relevant root depending on `below`.
pub fn region_system(
    rs: &RootSystem,
    inversions: ElemSet,
    relevant: ElemSet,
    below: ElemSet,
) -> Vec<LinearConstraint> {
    let mut system = Vec::new();
    for b in 0..rs.num_positive() {
        let sign = if inversions.contains(b) {
            Relation::Lt
        } else {
            Relation::Gt
        };
        system.push(root_constraint(rs, b, sign, 0));
        if relevant.contains(b) {
            let rel = if below.contains(b) {
                Relation::Lt
            } else {
                Relation::Gt
            };
            system.push(root_constraint(rs, b, rel, 1));
        }
    }
    system
}

/// Ceiling set by facet tests: `beta` in `below` is a ceiling iff moving
/// `<v,beta> < 1` to `<v,beta> = 1` keeps the other strict constraints
/// feasible.
pub fn facet_ceilings(
    rs: &RootSystem,
    inversions: ElemSet,
    relevant: ElemSet,
    below: ElemSet,
) -> Result<ElemSet> {
    let mut out = ElemSet::EMPTY;
    for beta in below {
        let others = relevant.difference(ElemSet::singleton(beta));
        let mut system = region_system(rs, inversions, others, below);
        system.push(root_constraint(rs, beta, Relation::Eq, 1));
        if feasible(rs.rank(), &system)?.is_feasible() {
            out.insert(beta);
        }
    }
    Ok(out)
}

/// Independent ceiling computation for a dominant region of `Shi(E)`.
pub fn ceiling_oracle(rs: &RootSystem, e: ElemSet, region: &ShiRegion) -> Result<Antichain> {
    facet_ceilings(rs, ElemSet::EMPTY, e, region.ideal.0).map(Antichain)
}

/// Ceilings of a cone region computed directly in `wC`.
pub fn ceiling_oracle_in_cone(cone: &Cone<'_>, region: &ConeRegion) -> Result<ElemSet> {
    facet_ceilings(cone.rs, cone.inversions, cone.relevant(), region.below)
}

/// Brute force over `< 1` / `> 1` choices on every relevant root of `wC`,
/// pruning infeasible prefixes. Returns the `below` set of each region,
/// sorted.
pub fn regions_by_sign_oracle(cone: &Cone<'_>) -> Result<Vec<ElemSet>> {
    let rs = cone.rs;
    if rs.rank() > MAX_ORACLE_RANK {
        return Err(Error::SizeBound(alloc::format!(
            "region oracle needs rank <= {MAX_ORACLE_RANK}"
        )));
    }
    let roots: Vec<usize> = cone.relevant().iter().collect();
    let mut found = Vec::new();
    let mut system = cone.full_description();
    sign_dfs(rs, &roots, 0, &mut system, ElemSet::EMPTY, &mut found)?;
    found.sort_unstable();
    Ok(found)
}

fn sign_dfs(
    rs: &RootSystem,
    roots: &[usize],
    depth: usize,
    system: &mut Vec<LinearConstraint>,
    below: ElemSet,
    found: &mut Vec<ElemSet>,
) -> Result<()> {
    if !feasible(rs.rank(), system)?.is_feasible() {
        return Ok(());
    }
    let Some(&beta) = roots.get(depth) else {
        found.push(below);
        return Ok(());
    };
    for (rel, in_below) in [(Relation::Lt, true), (Relation::Gt, false)] {
        system.push(root_constraint(rs, beta, rel, 1));
        let mut next = below;
        if in_below {
            next.insert(beta);
        }
        sign_dfs(rs, roots, depth + 1, system, next, found)?;
        system.pop();
    }
    Ok(())
}

/// A flat of the Shi arrangement meeting a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    /// Roots `beta` with the flat inside `H_{beta,1}` (cone frame).
    pub generators: ElemSet,
    /// `w^-1(generators)`, an antichain of `E`.
    pub antichain: Antichain,
    pub geometry: AffineFlat,
    pub codim: usize,
    /// `mu(V, X)`.
    pub mobius: i64,
}

/// Flats meeting a cone, ordered by reverse inclusion.
#[derive(Clone, Debug)]
pub struct IntersectionPoset {
    /// `flats[0]` is the ambient space.
    pub flats: Vec<Flat>,
    /// `order[i][j]`: flat `j` is contained in flat `i`.
    pub order: Vec<Vec<bool>>,
}

impl IntersectionPoset {
    /// Order by containment of generator sets; valid because every flat
    /// here is the intersection of the hyperplanes containing it.
    fn build(mut flats: Vec<Flat>) -> Self {
        flats.sort_by(|a, b| {
            a.codim
                .cmp(&b.codim)
                .then_with(|| a.generators.cmp(&b.generators))
        });
        let n = flats.len();
        let order: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| flats[i].generators.is_subset(flats[j].generators))
                    .collect()
            })
            .collect();
        let mut poset = Self { flats, order };
        if !poset.flats.is_empty() {
            let mu = poset.mobius_from(0);
            for (f, m) in poset.flats.iter_mut().zip(mu) {
                f.mobius = m;
            }
        }
        poset
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order[i][j]
    }

    /// Size of `[V, X_j]`.
    pub fn lower_interval_size(&self, j: usize) -> usize {
        (0..self.len()).filter(|&i| self.order[i][j]).count()
    }

    /// `mu(X_x, X_y)` for all `y`. Flats are sorted by codimension, which is
    /// a linear extension.
    pub fn mobius_from(&self, x: usize) -> Vec<i64> {
        mobius_row(&self.order, x)
    }

    pub fn poincare(&self) -> IntPolynomial {
        poincare_of(self.flats.iter().map(|f| (f.codim, f.mobius)))
    }

    pub fn geometries(&self) -> BTreeSet<AffineFlat> {
        self.flats.iter().map(|f| f.geometry.clone()).collect()
    }
}

/// Möbius row over a relation matrix whose index order is a linear
/// extension.
fn mobius_row(order: &[Vec<bool>], x: usize) -> Vec<i64> {
    let n = order.len();
    let mut mu = vec![0i64; n];
    for y in x..n {
        if !order[x][y] {
            continue;
        }
        if y == x {
            mu[y] = 1;
            continue;
        }
        mu[y] = -(x..y).filter(|&z| order[x][z] && order[z][y]).map(|z| mu[z]).sum::<i64>();
    }
    mu
}

fn poincare_of(items: impl Iterator<Item = (usize, i64)>) -> IntPolynomial {
    let mut coeffs = Vec::new();
    for (codim, mu) in items {
        if coeffs.len() <= codim {
            coeffs.resize(codim + 1, 0);
        }
        coeffs[codim] += mu.abs();
    }
    IntPolynomial::new(coeffs)
}

/// Roots in `candidates` whose level-1 hyperplane contains `flat`.
fn containing(rs: &RootSystem, flat: &AffineFlat, candidates: ElemSet) -> Result<ElemSet> {
    let base = flat.basepoint().ok_or(Error::EmptyFlat)?;
    let dirs = flat.directions();
    let one = Rational::one();
    Ok(candidates
        .iter()
        .filter(|&b| {
            let n = rs.normal(b);
            dot(&base, n) == one && dirs.iter().all(|d| dot(d, n).is_zero())
        })
        .collect())
}

fn level_one_flat(rs: &RootSystem, roots: ElemSet) -> Result<AffineFlat> {
    let rows: Vec<(Vec<Rational>, Rational)> = roots
        .iter()
        .map(|b| (rs.normal(b).to_vec(), Rational::one()))
        .collect();
    intersect_hyperplanes(rs.rank(), &rows)
}

fn meets(flat: &AffineFlat, region: &[LinearConstraint]) -> Result<bool> {
    if flat.is_empty() {
        return Ok(false);
    }
    let mut system: Vec<LinearConstraint> = flat
        .equations()
        .iter()
        .map(|(n, b)| LinearConstraint::new(n.clone(), Relation::Eq, b.clone()))
        .collect();
    system.extend_from_slice(region);
    Ok(feasible(flat.dim(), &system)?.is_feasible())
}

fn make_flat(cone: &Cone<'_>, geometry: AffineFlat) -> Result<Flat> {
    let generators = containing(cone.rs, &geometry, cone.relevant())?;
    let codim = geometry.codim().ok_or(Error::EmptyFlat)?;
    Ok(Flat {
        antichain: Antichain(cone.pull_back(generators)),
        generators,
        geometry,
        codim,
        mobius: 0,
    })
}

/// `L_w`: the flats `/\_{beta in wA} H_{beta,1}` for antichains `A` of `E`.
/// Each is checked to meet `wC`, to have codimension `#A`, and to be
/// contained in no further level-1 hyperplane; Möbius values are computed
/// by recursion and checked against `(-1)^codim`.
pub fn flats_in_cone(cone: &Cone<'_>) -> Result<IntersectionPoset> {
    let rs = cone.rs;
    let e = cone.dominant_subset();
    let walls = cone.walls();
    let mut flats = Vec::new();
    for a in rs.root_poset().restrict(e).antichains() {
        let a = a.0.spread(e);
        let hyperplanes = cone.transport(a);
        let geometry = level_one_flat(rs, hyperplanes)?;
        if geometry.codim() != Some(a.len()) {
            return Err(Error::Violation(alloc::format!(
                "antichain {a:?} is not linearly independent"
            )));
        }
        if !meets(&geometry, &walls)? {
            return Err(Error::Violation(alloc::format!(
                "flat of {hyperplanes:?} misses the cone {}",
                cone.w.label()
            )));
        }
        let flat = make_flat(cone, geometry)?;
        if flat.generators != hyperplanes {
            return Err(Error::Violation(alloc::format!(
                "flat of {hyperplanes:?} lies on the extra hyperplanes {:?}",
                flat.generators.difference(hyperplanes)
            )));
        }
        flats.push(flat);
    }
    let poset = IntersectionPoset::build(flats);
    for f in &poset.flats {
        let expected = if f.codim % 2 == 0 { 1 } else { -1 };
        if f.mobius != expected {
            return Err(Error::Violation(alloc::format!(
                "mu(V, X) = {} for a flat of codimension {}",
                f.mobius,
                f.codim
            )));
        }
    }
    Ok(poset)
}

/// Brute force for `L_w`: intersect every subset of the relevant level-1
/// hyperplanes, deduplicate, and keep what meets `wC`.
pub fn flats_oracle(cone: &Cone<'_>) -> Result<IntersectionPoset> {
    let rs = cone.rs;
    if rs.rank() > MAX_ORACLE_RANK {
        return Err(Error::SizeBound(alloc::format!(
            "flat oracle needs rank <= {MAX_ORACLE_RANK}"
        )));
    }
    let relevant: Vec<usize> = cone.relevant().iter().collect();
    let region = cone.full_description();
    let mut seen: BTreeSet<AffineFlat> = BTreeSet::new();
    for mask in 0u64..(1u64 << relevant.len()) {
        let subset: ElemSet = relevant
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &b)| b)
            .collect();
        let geometry = level_one_flat(rs, subset)?;
        if !seen.contains(&geometry) && meets(&geometry, &region)? {
            seen.insert(geometry);
        }
    }
    let flats = seen
        .into_iter()
        .map(|g| make_flat(cone, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntersectionPoset::build(flats))
}

/// `Poin(wC, t)` from the intersection poset of the cone.
pub fn poincare(cone: &Cone<'_>) -> Result<IntPolynomial> {
    Ok(flats_in_cone(cone)?.poincare())
}

/// Antichains of `E = Phi+ \ Inv(w^-1)` by size.
pub fn whitney_numbers(cone: &Cone<'_>) -> IntPolynomial {
    cone.rs
        .root_poset()
        .restrict(cone.dominant_subset())
        .antichain_polynomial()
}

/// Flats of an arbitrary set of hyperplanes, by closure under
/// intersection, optionally keeping only flats that meet an open region.
#[derive(Clone, Debug)]
pub struct FlatLattice {
    /// `(beta, level)`.
    pub hyperplanes: Vec<(usize, i64)>,
    /// Sorted by codimension; `flats[0]` is the ambient space.
    pub flats: Vec<AffineFlat>,
    /// Bit `k` set when the flat lies in `hyperplanes[k]`.
    pub contained_in: Vec<u64>,
    /// `mu(V, X)`.
    pub mobius: Vec<i64>,
}

impl FlatLattice {
    pub fn new(
        rs: &RootSystem,
        hyperplanes: Vec<(usize, i64)>,
        region: Option<&[LinearConstraint]>,
    ) -> Result<Self> {
        if hyperplanes.len() > 64 {
            return Err(Error::SizeBound(alloc::format!(
                "{} hyperplanes (max 64)",
                hyperplanes.len()
            )));
        }
        let rhs: Vec<Rational> = hyperplanes.iter().map(|&(_, k)| int(k)).collect();
        let keep = |flat: &AffineFlat| -> Result<bool> {
            match region {
                None => Ok(!flat.is_empty()),
                Some(r) => meets(flat, r),
            }
        };
        let ambient = AffineFlat::full(rs.rank());
        let mut found: BTreeMap<AffineFlat, ()> = BTreeMap::new();
        if keep(&ambient)? {
            found.insert(ambient.clone(), ());
        }
        let mut frontier = if found.is_empty() { vec![] } else { vec![ambient] };
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for (k, &(b, _)) in hyperplanes.iter().enumerate() {
                    let y = x.intersect(rs.normal(b), &rhs[k]);
                    if y.is_empty() || &y == x || found.contains_key(&y) {
                        continue;
                    }
                    if keep(&y)? {
                        found.insert(y.clone(), ());
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        let mut flats: Vec<AffineFlat> = found.into_keys().collect();
        flats.sort_by(|a, b| a.codim().cmp(&b.codim()).then_with(|| a.cmp(b)));
        let contained_in = flats
            .iter()
            .map(|f| {
                let mut bits = 0u64;
                for (k, &(b, _)) in hyperplanes.iter().enumerate() {
                    if f.contains_hyperplane(rs.normal(b), &rhs[k])? {
                        bits |= 1 << k;
                    }
                }
                Ok(bits)
            })
            .collect::<Result<Vec<u64>>>()?;
        let n = flats.len();
        let order: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| contained_in[i] & !contained_in[j] == 0)
                    .collect()
            })
            .collect();
        let mobius = if n == 0 { vec![] } else { mobius_row(&order, 0) };
        Ok(Self {
            hyperplanes,
            flats,
            contained_in,
            mobius,
        })
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn poincare(&self) -> IntPolynomial {
        poincare_of(
            self.flats
                .iter()
                .zip(&self.mobius)
                .map(|(f, &m)| (f.codim().unwrap_or(0), m)),
        )
    }
}

/// Poincaré polynomial of the whole Shi arrangement (rank at most 3).
pub fn full_arrangement_poincare(rs: &RootSystem) -> Result<IntPolynomial> {
    if rs.rank() > MAX_ORACLE_RANK {
        return Err(Error::SizeBound(alloc::format!(
            "full arrangement lattice needs rank <= {MAX_ORACLE_RANK}"
        )));
    }
    let arrangement = ShiArrangement::full(rs);
    Ok(FlatLattice::new(rs, arrangement.hyperplanes(), None)?.poincare())
}

/// Dominant-cone data of the extended arrangement `Shi^(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FussReport {
    pub poincare: IntPolynomial,
    pub n_flats: usize,
    pub n_regions: usize,
    pub max_abs_mobius: i64,
    /// Flats with `|mu(V, X)| != 1`.
    pub exceptional_flats: usize,
}

pub fn fuss_dominant(rs: &RootSystem, m: usize) -> Result<FussReport> {
    if rs.rank() > MAX_ORACLE_RANK || m > MAX_FUSS_M || m == 0 {
        return Err(Error::SizeBound(alloc::format!(
            "Fuss computations need rank <= {MAX_ORACLE_RANK} and 1 <= m <= {MAX_FUSS_M}"
        )));
    }
    let arrangement = ShiArrangement::extended(rs, m)?;
    let cone = Cone::dominant(rs);
    let walls = cone.walls();
    // Every pair of hyperplanes is intersected; no comparability pruning.
    let mut hyperplanes = Vec::new();
    for (b, k) in arrangement.hyperplanes() {
        let flat = AffineFlat::full(rs.rank()).intersect(rs.normal(b), &int(k));
        if meets(&flat, &walls)? {
            hyperplanes.push((b, k));
        }
    }
    let lattice = FlatLattice::new(rs, hyperplanes, Some(&walls))?;

    let mut n_regions = 0;
    let mut system = walls.clone();
    fuss_region_dfs(rs, m as i64, 0, &mut system, &mut n_regions)?;

    let max_abs_mobius = lattice.mobius.iter().map(|m| m.abs()).max().unwrap_or(0);
    Ok(FussReport {
        poincare: lattice.poincare(),
        n_flats: lattice.len(),
        n_regions,
        max_abs_mobius,
        exceptional_flats: lattice.mobius.iter().filter(|m| m.abs() != 1).count(),
    })
}

/// Each positive root picks one of the slabs `j < <v,beta> < j+1`
/// (`j < m`) or `<v,beta> > m`.
fn fuss_region_dfs(
    rs: &RootSystem,
    m: i64,
    beta: usize,
    system: &mut Vec<LinearConstraint>,
    count: &mut usize,
) -> Result<()> {
    if !feasible(rs.rank(), system)?.is_feasible() {
        return Ok(());
    }
    if beta == rs.num_positive() {
        *count += 1;
        return Ok(());
    }
    for j in 0..=m {
        let before = system.len();
        system.push(root_constraint(rs, beta, Relation::Gt, j));
        if j < m {
            system.push(root_constraint(rs, beta, Relation::Lt, j + 1));
        }
        fuss_region_dfs(rs, m, beta + 1, system, count)?;
        system.truncate(before);
    }
    Ok(())
}
