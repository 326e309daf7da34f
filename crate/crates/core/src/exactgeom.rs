//! Exact rational feasibility of mixed strict/non-strict linear systems via
//! Fourier–Motzkin elimination, and affine flats in reduced row-echelon form.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::{Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Gt,
    Lt,
    Ge,
    Le,
}

/// `normal . x  (relation)  rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub normal: Vec<Rational>,
    pub rhs: Rational,
    pub relation: Relation,
}

impl LinearConstraint {
    pub fn new(normal: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Self {
            normal,
            rhs,
            relation,
        }
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// For a zero normal the constraint is a constant truth value.
    pub fn trivial(&self) -> Option<bool> {
        if self.normal.iter().all(Zero::is_zero) {
            Some(compare(&Rational::zero(), self.relation, &self.rhs))
        } else {
            None
        }
    }

    pub fn is_satisfied(&self, point: &[Rational]) -> bool {
        compare(&dot(&self.normal, point), self.relation, &self.rhs)
    }
}

fn compare(lhs: &Rational, relation: Relation, rhs: &Rational) -> bool {
    match relation {
        Relation::Eq => lhs == rhs,
        Relation::Gt => lhs > rhs,
        Relation::Lt => lhs < rhs,
        Relation::Ge => lhs >= rhs,
        Relation::Le => lhs <= rhs,
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// A point satisfying every constraint exactly.
    Witness(Vec<Rational>),
    /// Elimination derived a contradictory constant constraint.
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Witness(_))
    }

    pub fn witness(self) -> Option<Vec<Rational>> {
        match self {
            Feasibility::Witness(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }
}

/// Decide whether the constraints have a common solution in `Q^dim`.
///
/// Equalities are eliminated by substitution first; the remaining
/// inequalities go through Fourier–Motzkin with Chernikov's history rule.
/// A returned witness has been re-checked against every input constraint.
pub fn feasible(dim: usize, constraints: &[LinearConstraint]) -> Result<Feasibility> {
    for c in constraints {
        if c.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c.dim(),
            });
        }
    }
    match solve(dim, constraints, true) {
        Ok(result) => Ok(result),
        // Pruning only ever drops implied constraints, so a failed back
        // substitution means a pruning rule misfired; redo without it.
        Err(_) => solve(dim, constraints, false).map_err(|_| {
            Error::Violation(alloc::string::String::from(
                "Fourier-Motzkin back-substitution failed",
            ))
        }),
    }
}

/// `coeffs . x >= rhs` (or `>` when strict).
#[derive(Clone, Debug)]
struct Ineq {
    coeffs: Vec<Rational>,
    rhs: Rational,
    strict: bool,
    history: History,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct History(Vec<u64>);

impl History {
    fn single(i: usize) -> Self {
        let mut words = vec![0u64; i / 64 + 1];
        words[i / 64] |= 1 << (i % 64);
        History(words)
    }

    fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.0.clone();
        for (w, s) in words.iter_mut().zip(&short.0) {
            *w |= s;
        }
        History(words)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Substitution {
    var: usize,
    /// `x_var = rhs - sum coeffs[k] x_k` with `coeffs[var] == 1`.
    coeffs: Vec<Rational>,
    rhs: Rational,
}

/// Marker for a back-substitution that found an empty interval.
struct BackSubstitutionFailed;

fn solve(
    dim: usize,
    constraints: &[LinearConstraint],
    prune: bool,
) -> core::result::Result<Feasibility, BackSubstitutionFailed> {
    let mut equalities: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut ineqs: Vec<Ineq> = Vec::new();
    for c in constraints {
        match c.relation {
            Relation::Eq => equalities.push((c.normal.clone(), c.rhs.clone())),
            Relation::Ge | Relation::Gt => ineqs.push(Ineq {
                coeffs: c.normal.clone(),
                rhs: c.rhs.clone(),
                strict: c.relation == Relation::Gt,
                history: History::default(),
            }),
            Relation::Le | Relation::Lt => ineqs.push(Ineq {
                coeffs: c.normal.iter().map(|x| -x).collect(),
                rhs: -&c.rhs,
                strict: c.relation == Relation::Lt,
                history: History::default(),
            }),
        }
    }

    // Substitute equalities away.
    let mut substitutions: Vec<Substitution> = Vec::new();
    while let Some((mut coeffs, mut rhs)) = equalities.pop() {
        let Some(var) = coeffs.iter().position(|c| !c.is_zero()) else {
            if rhs.is_zero() {
                continue;
            }
            return Ok(Feasibility::Infeasible);
        };
        let pivot = coeffs[var].clone();
        for c in coeffs.iter_mut() {
            *c /= &pivot;
        }
        rhs /= &pivot;
        for (row, row_rhs) in equalities.iter_mut() {
            eliminate_with(row, row_rhs, var, &coeffs, &rhs);
        }
        for ineq in ineqs.iter_mut() {
            eliminate_with(&mut ineq.coeffs, &mut ineq.rhs, var, &coeffs, &rhs);
        }
        substitutions.push(Substitution { var, coeffs, rhs });
    }

    for (i, ineq) in ineqs.iter_mut().enumerate() {
        ineq.history = History::single(i);
    }
    let Some(mut system) = tidy(ineqs) else {
        return Ok(Feasibility::Infeasible);
    };

    let mut free: Vec<usize> = (0..dim)
        .filter(|v| !substitutions.iter().any(|s| s.var == *v))
        .collect();
    let mut stages: Vec<(usize, Vec<Ineq>)> = Vec::new();
    let mut eliminated = 0usize;
    while !free.is_empty() {
        // Cheapest variable first: fewest new combinations.
        let (slot, &var) = free
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| {
                let pos = system.iter().filter(|q| q.coeffs[v].is_positive()).count();
                let neg = system.iter().filter(|q| q.coeffs[v].is_negative()).count();
                (pos * neg, v)
            })
            .expect("free is nonempty");
        free.remove(slot);
        eliminated += 1;

        let mut next = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for q in &system {
            match q.coeffs[var].sign_cmp() {
                Ordering::Greater => pos.push(q),
                Ordering::Less => neg.push(q),
                Ordering::Equal => next.push(q.clone()),
            }
        }
        for p in &pos {
            for n in &neg {
                let history = p.history.union(&n.history);
                if prune && history.len() > eliminated + 1 {
                    continue;
                }
                let a = &p.coeffs[var];
                let b = -&n.coeffs[var];
                let coeffs = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(x, y)| x * &b + y * a)
                    .collect();
                next.push(Ineq {
                    coeffs,
                    rhs: &p.rhs * &b + &n.rhs * a,
                    strict: p.strict || n.strict,
                    history,
                });
            }
        }
        stages.push((var, core::mem::take(&mut system)));
        match tidy(next) {
            Some(s) => system = s,
            None => return Ok(Feasibility::Infeasible),
        }
    }
    debug_assert!(system.is_empty());

    // Back-substitute, last eliminated variable first.
    let mut point = vec![Rational::zero(); dim];
    for (var, stage) in stages.iter().rev() {
        let mut lower: Option<(Rational, bool)> = None;
        let mut upper: Option<(Rational, bool)> = None;
        for q in stage {
            let a = &q.coeffs[*var];
            if a.is_zero() {
                continue;
            }
            let rest = q
                .coeffs
                .iter()
                .zip(&point)
                .enumerate()
                .filter(|(k, _)| k != var)
                .fold(Rational::zero(), |acc, (_, (c, x))| acc + c * x);
            let bound = (&q.rhs - rest) / a;
            if a.is_positive() {
                tighten(&mut lower, bound, q.strict, Ordering::Greater);
            } else {
                tighten(&mut upper, bound, q.strict, Ordering::Less);
            }
        }
        point[*var] = pick(lower, upper).ok_or(BackSubstitutionFailed)?;
    }
    for s in substitutions.iter().rev() {
        let rest = s
            .coeffs
            .iter()
            .zip(&point)
            .enumerate()
            .filter(|(k, _)| *k != s.var)
            .fold(Rational::zero(), |acc, (_, (c, x))| acc + c * x);
        point[s.var] = &s.rhs - rest;
    }
    if constraints.iter().all(|c| c.is_satisfied(&point)) {
        Ok(Feasibility::Witness(point))
    } else {
        Err(BackSubstitutionFailed)
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for Rational {
    fn sign_cmp(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

fn eliminate_with(
    row: &mut [Rational],
    row_rhs: &mut Rational,
    var: usize,
    pivot_row: &[Rational],
    pivot_rhs: &Rational,
) {
    let factor = row[var].clone();
    if factor.is_zero() {
        return;
    }
    for (x, p) in row.iter_mut().zip(pivot_row) {
        *x -= &factor * p;
    }
    *row_rhs -= &factor * pivot_rhs;
}

/// Keep the tighter of a stored bound and a new one. `better` is the
/// ordering a tighter bound has relative to a looser one.
fn tighten(slot: &mut Option<(Rational, bool)>, bound: Rational, strict: bool, better: Ordering) {
    match slot {
        None => *slot = Some((bound, strict)),
        Some((b, s)) => match bound.cmp(b) {
            o if o == better => *slot = Some((bound, strict)),
            Ordering::Equal => *s |= strict,
            _ => {}
        },
    }
}

fn pick(lower: Option<(Rational, bool)>, upper: Option<(Rational, bool)>) -> Option<Rational> {
    let two = Rational::from_integer(2.into());
    match (lower, upper) {
        (None, None) => Some(Rational::zero()),
        (Some((lo, _)), None) => Some(lo + Rational::one()),
        (None, Some((hi, _))) => Some(hi - Rational::one()),
        (Some((lo, ls)), Some((hi, hs))) => match lo.cmp(&hi) {
            Ordering::Less => Some((lo + hi) / two),
            Ordering::Equal if !ls && !hs => Some(lo),
            _ => None,
        },
    }
}

/// Normalize, drop constant constraints, and keep only the tightest of
/// parallel ones. `None` when a constant constraint is false.
fn tidy(ineqs: Vec<Ineq>) -> Option<Vec<Ineq>> {
    let mut kept: alloc::collections::BTreeMap<Vec<Rational>, Ineq> =
        alloc::collections::BTreeMap::new();
    for mut q in ineqs {
        let Some(lead) = q.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) else {
            let holds = if q.strict {
                q.rhs.is_negative()
            } else {
                !q.rhs.is_positive()
            };
            if holds {
                continue;
            }
            return None;
        };
        if !lead.is_one() {
            for c in q.coeffs.iter_mut() {
                *c /= &lead;
            }
            q.rhs /= &lead;
        }
        match kept.get_mut(&q.coeffs) {
            None => {
                kept.insert(q.coeffs.clone(), q);
            }
            Some(old) => {
                let replace = match q.rhs.cmp(&old.rhs) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => {
                        (q.strict && !old.strict)
                            || (q.strict == old.strict && q.history.len() < old.history.len())
                    }
                };
                if replace {
                    *old = q;
                }
            }
        }
    }
    Some(kept.into_values().collect())
}

/// An affine subspace of `Q^dim`, stored canonically as the reduced
/// row-echelon form of its defining equations. Equality of flats is
/// equality of this form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineFlat {
    dim: usize,
    /// `None` for the empty flat.
    rows: Option<Vec<(Vec<Rational>, Rational)>>,
}

impl AffineFlat {
    /// The ambient space `Q^dim`.
    pub fn full(dim: usize) -> Self {
        Self {
            dim,
            rows: Some(Vec::new()),
        }
    }

    pub fn empty(dim: usize) -> Self {
        Self { dim, rows: None }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_none()
    }

    /// Codimension; `None` for the empty flat.
    pub fn codim(&self) -> Option<usize> {
        self.rows.as_ref().map(Vec::len)
    }

    /// Canonical defining equations `(normal, rhs)`.
    pub fn equations(&self) -> &[(Vec<Rational>, Rational)] {
        self.rows.as_deref().unwrap_or(&[])
    }

    fn pivots(&self) -> Vec<usize> {
        self.equations()
            .iter()
            .map(|(row, _)| row.iter().position(|c| !c.is_zero()).expect("nonzero row"))
            .collect()
    }

    /// A point of the flat: free coordinates set to zero.
    pub fn basepoint(&self) -> Option<Vec<Rational>> {
        let rows = self.rows.as_ref()?;
        let mut p = vec![Rational::zero(); self.dim];
        for ((_, rhs), pivot) in rows.iter().zip(self.pivots()) {
            p[pivot] = rhs.clone();
        }
        Some(p)
    }

    /// Basis of the linear part, one vector per free coordinate.
    pub fn directions(&self) -> Vec<Vec<Rational>> {
        let Some(rows) = self.rows.as_ref() else {
            return Vec::new();
        };
        let pivots = self.pivots();
        (0..self.dim)
            .filter(|f| !pivots.contains(f))
            .map(|f| {
                let mut d = vec![Rational::zero(); self.dim];
                d[f] = Rational::one();
                for ((row, _), &p) in rows.iter().zip(&pivots) {
                    d[p] = -&row[f];
                }
                d
            })
            .collect()
    }

    /// Intersection with the hyperplane `normal . x = rhs`.
    pub fn intersect(&self, normal: &[Rational], rhs: &Rational) -> AffineFlat {
        let Some(rows) = &self.rows else {
            return self.clone();
        };
        let mut all = rows.clone();
        all.push((normal.to_vec(), rhs.clone()));
        rref(self.dim, all)
    }

    /// Whether the whole flat lies on `normal . x = rhs`.
    pub fn contains_hyperplane(&self, normal: &[Rational], rhs: &Rational) -> Result<bool> {
        if normal.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: normal.len(),
            });
        }
        let base = self.basepoint().ok_or(Error::EmptyFlat)?;
        Ok(&dot(&base, normal) == rhs
            && self.directions().iter().all(|d| dot(d, normal).is_zero()))
    }

    pub fn contains_point(&self, point: &[Rational]) -> bool {
        match &self.rows {
            None => false,
            Some(rows) => rows.iter().all(|(n, b)| &dot(n, point) == b),
        }
    }

    /// `self` is a subset of `other`.
    pub fn is_subset_of(&self, other: &AffineFlat) -> bool {
        if self.is_empty() {
            return true;
        }
        if other.is_empty() {
            return false;
        }
        other
            .equations()
            .iter()
            .all(|(n, b)| self.contains_hyperplane(n, b).unwrap_or(false))
    }
}

impl fmt::Debug for AffineFlat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rows {
            None => write!(f, "AffineFlat(empty in Q^{})", self.dim),
            Some(rows) => {
                write!(f, "AffineFlat(Q^{}", self.dim)?;
                for (n, b) in rows {
                    write!(f, "; [")?;
                    for (i, c) in n.iter().enumerate() {
                        if i > 0 {
                            write!(f, " ")?;
                        }
                        write!(f, "{c}")?;
                    }
                    write!(f, "] = {b}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Exact solution set of `normal . x = rhs` over all rows.
pub fn intersect_hyperplanes(dim: usize, rows: &[(Vec<Rational>, Rational)]) -> Result<AffineFlat> {
    for (n, _) in rows {
        if n.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: n.len(),
            });
        }
    }
    Ok(rref(dim, rows.to_vec()))
}

/// `true` iff every point of `flat` lies on the hyperplane.
pub fn flat_contains(flat: &AffineFlat, normal: &[Rational], rhs: &Rational) -> Result<bool> {
    flat.contains_hyperplane(normal, rhs)
}

fn rref(dim: usize, mut rows: Vec<(Vec<Rational>, Rational)>) -> AffineFlat {
    let mut rank = 0;
    for col in 0..dim {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot = rows[rank].0[col].clone();
        for c in rows[rank].0.iter_mut() {
            *c /= &pivot;
        }
        rows[rank].1 /= &pivot;
        let (pivot_row, pivot_rhs) = rows[rank].clone();
        for (r, (row, rhs)) in rows.iter_mut().enumerate() {
            if r != rank {
                eliminate_with(row, rhs, col, &pivot_row, &pivot_rhs);
            }
        }
        rank += 1;
    }
    if rows[rank..].iter().any(|(_, rhs)| !rhs.is_zero()) {
        return AffineFlat::empty(dim);
    }
    rows.truncate(rank);
    AffineFlat {
        dim,
        rows: Some(rows),
    }
}

/// Rank of a set of rational vectors.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let Some(dim) = vectors.first().map(Vec::len) else {
        return 0;
    };
    let rows = vectors
        .iter()
        .map(|v| (v.clone(), Rational::zero()))
        .collect();
    rref(dim, rows).codim().unwrap_or(0)
}
