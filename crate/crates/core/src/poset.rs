//! Finite posets on at most 64 elements, with antichain and order-ideal
//! machinery.
//!
//! Elements are addressed by position `0..len()`. Each poset also carries an
//! opaque id per position (for root posets, the index of the positive root),
//! which [`FinitePoset::restrict`] threads through to sub-posets.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, IntPolynomial, Result};

/// Hard cap on poset size; sets of elements are `u64` masks.
pub const MAX_ELEMENTS: usize = 64;

/// A set of element positions.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemSet(u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElemSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        ElemSet(1u64 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElemSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> ElemIter {
        ElemIter(self.0)
    }

    /// Re-index a set living on the positions of `within` (the `k`-th member
    /// of `within` is position `k` of the sub-poset) back to parent positions.
    pub fn spread(self, within: ElemSet) -> ElemSet {
        let mut out = 0u64;
        for (k, parent) in within.iter().enumerate() {
            if self.contains(k) {
                out |= 1u64 << parent;
            }
        }
        ElemSet(out)
    }

    /// Inverse of [`ElemSet::spread`] on subsets of `within`.
    pub fn compress(self, within: ElemSet) -> ElemSet {
        let mut out = 0u64;
        for (k, parent) in within.iter().enumerate() {
            if self.contains(parent) {
                out |= 1u64 << k;
            }
        }
        ElemSet(out)
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = ElemSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl IntoIterator for ElemSet {
    type Item = usize;
    type IntoIter = ElemIter;

    fn into_iter(self) -> ElemIter {
        self.iter()
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct ElemIter(u64);

impl Iterator for ElemIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Pairwise incomparable elements of a poset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Antichain(pub ElemSet);

/// A downward closed set of elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderIdeal(pub ElemSet);

impl Antichain {
    pub fn members(self) -> ElemSet {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }
}

impl OrderIdeal {
    pub fn members(self) -> ElemSet {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(self, i: usize) -> bool {
        self.0.contains(i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    elements: Vec<usize>,
    /// `below[i]` = `{ j : j <= i }`, including `i`.
    below: Vec<ElemSet>,
    above: Vec<ElemSet>,
    covers: Vec<(usize, usize)>,
}

impl FinitePoset {
    /// Poset on `elements` generated by the relations `(i, j)` meaning
    /// `i < j`. The relations need not be covers; the transitive closure is
    /// taken and shortcuts are dropped.
    pub fn from_covers(elements: Vec<usize>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        if n > MAX_ELEMENTS {
            return Err(Error::SizeBound(alloc::format!(
                "poset with {n} elements (max {MAX_ELEMENTS})"
            )));
        }
        let mut below: Vec<ElemSet> = (0..n).map(ElemSet::singleton).collect();
        for &(i, j) in relations {
            if i >= n {
                return Err(Error::UnknownElement(i));
            }
            if j >= n {
                return Err(Error::UnknownElement(j));
            }
            if i == j {
                return Err(Error::InvalidPoset(alloc::format!("self-relation on {i}")));
            }
            below[j].insert(i);
        }
        // Warshall on bitsets.
        for k in 0..n {
            for j in 0..n {
                if below[j].contains(k) {
                    below[j] = below[j].union(below[k]);
                }
            }
        }
        for i in 0..n {
            for j in below[i].iter() {
                if j != i && below[j].contains(i) {
                    return Err(Error::InvalidPoset(alloc::format!(
                        "cycle through {i} and {j}"
                    )));
                }
            }
        }
        Ok(Self::from_below(elements, below))
    }

    /// Poset from an arbitrary relation `leq(i, j)`, which must already be a
    /// partial order.
    pub fn from_relation(
        elements: Vec<usize>,
        mut leq: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        let n = elements.len();
        if n > MAX_ELEMENTS {
            return Err(Error::SizeBound(alloc::format!(
                "poset with {n} elements (max {MAX_ELEMENTS})"
            )));
        }
        let mut below = vec![ElemSet::EMPTY; n];
        for (j, b) in below.iter_mut().enumerate() {
            for i in 0..n {
                if leq(i, j) {
                    b.insert(i);
                }
            }
        }
        for i in 0..n {
            if !below[i].contains(i) {
                return Err(Error::InvalidPoset(alloc::format!("not reflexive at {i}")));
            }
            for j in below[i].iter() {
                if j != i && below[j].contains(i) {
                    return Err(Error::InvalidPoset(alloc::format!(
                        "not antisymmetric at {i}, {j}"
                    )));
                }
                if !below[j].is_subset(below[i]) {
                    return Err(Error::InvalidPoset(alloc::format!(
                        "not transitive below {i}"
                    )));
                }
            }
        }
        Ok(Self::from_below(elements, below))
    }

    fn from_below(elements: Vec<usize>, below: Vec<ElemSet>) -> Self {
        let n = elements.len();
        let mut above = vec![ElemSet::EMPTY; n];
        for (j, b) in below.iter().enumerate() {
            for i in b.iter() {
                above[i].insert(j);
            }
        }
        let mut covers = Vec::new();
        for j in 0..n {
            let strict = below[j].difference(ElemSet::singleton(j));
            for i in strict.iter() {
                // i is covered by j unless some k strictly between.
                let between = strict
                    .intersection(above[i])
                    .difference(ElemSet::singleton(i));
                if between.is_empty() {
                    covers.push((i, j));
                }
            }
        }
        covers.sort_unstable();
        Self {
            elements,
            below,
            above,
            covers,
        }
    }

    pub fn empty() -> Self {
        Self::from_below(Vec::new(), Vec::new())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Opaque ids, one per position.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> usize {
        self.elements[i]
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    /// Cover pairs `(i, j)`, `i` covered by `j`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Principal ideal of `i`.
    pub fn below(&self, i: usize) -> ElemSet {
        self.below[i]
    }

    /// Principal filter of `i`.
    pub fn above(&self, i: usize) -> ElemSet {
        self.above[i]
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        self.above[i] == ElemSet::singleton(i)
    }

    pub fn is_antichain(&self, set: ElemSet) -> bool {
        set.iter()
            .all(|i| self.below[i].union(self.above[i]).intersection(set) == ElemSet::singleton(i))
    }

    pub fn is_ideal(&self, set: ElemSet) -> bool {
        set.iter().all(|i| self.below[i].is_subset(set))
    }

    /// Whether `set` is an order ideal of the induced subposet on `within`.
    pub fn is_ideal_within(&self, set: ElemSet, within: ElemSet) -> bool {
        set.is_subset(within) && self.down_closure(set).intersection(within) == set
    }

    pub fn is_filter(&self, set: ElemSet) -> bool {
        set.iter().all(|i| self.above[i].is_subset(set))
    }

    pub fn down_closure(&self, set: ElemSet) -> ElemSet {
        set.iter().fold(ElemSet::EMPTY, |acc, i| acc.union(self.below[i]))
    }

    pub fn up_closure(&self, set: ElemSet) -> ElemSet {
        set.iter().fold(ElemSet::EMPTY, |acc, i| acc.union(self.above[i]))
    }

    pub fn max_elements(&self, set: ElemSet) -> ElemSet {
        set.iter()
            .filter(|&i| self.above[i].intersection(set) == ElemSet::singleton(i))
            .collect()
    }

    pub fn min_elements(&self, set: ElemSet) -> ElemSet {
        set.iter()
            .filter(|&i| self.below[i].intersection(set) == ElemSet::singleton(i))
            .collect()
    }

    /// Induced order on the positions in `subset`. Position `k` of the result
    /// is the `k`-th member of `subset`; ids are carried over.
    pub fn restrict(&self, subset: ElemSet) -> FinitePoset {
        debug_assert!(subset.is_subset(self.all()));
        let elements = subset.iter().map(|i| self.elements[i]).collect();
        let below = subset
            .iter()
            .map(|j| self.below[j].intersection(subset).compress(subset))
            .collect();
        Self::from_below(elements, below)
    }

    /// The inclusive ideal `{ x : x <= a for some a in A }`.
    pub fn ideal_generated(&self, antichain: Antichain) -> Result<OrderIdeal> {
        if !antichain.0.is_subset(self.all()) {
            return Err(Error::UnknownElement(
                antichain.0.difference(self.all()).iter().next().unwrap_or(0),
            ));
        }
        if !self.is_antichain(antichain.0) {
            return Err(Error::NotAntichain);
        }
        Ok(OrderIdeal(self.down_closure(antichain.0)))
    }

    /// Maximal elements of an ideal, which generate it.
    pub fn ideal_generators(&self, ideal: OrderIdeal) -> Antichain {
        Antichain(self.max_elements(ideal.0))
    }

    /// A linear extension, breaking ties by smallest position.
    pub fn natural_labeling(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = ElemSet::EMPTY;
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n)
                .find(|&i| {
                    !placed.contains(i)
                        && self.below[i]
                            .difference(ElemSet::singleton(i))
                            .is_subset(placed)
                })
                .expect("partial orders are acyclic");
            placed.insert(next);
            order.push(next);
        }
        order
    }

    /// Whether positions `0..n` in their own order form a linear extension.
    pub fn is_naturally_labelled(&self) -> bool {
        (0..self.len()).all(|j| self.below[j].iter().all(|i| i <= j))
    }

    /// All antichains, each exactly once, grouped by size (`{}` first).
    /// Within a size, depth-first order over the natural labeling.
    pub fn antichains(&self) -> Vec<Antichain> {
        let order = self.natural_labeling();
        let mut buckets: Vec<Vec<Antichain>> = Vec::new();
        self.antichain_dfs(&order, 0, ElemSet::EMPTY, ElemSet::EMPTY, &mut |a| {
            let k = a.len();
            if buckets.len() <= k {
                buckets.resize_with(k + 1, Vec::new);
            }
            buckets[k].push(Antichain(a));
        });
        buckets.into_iter().flatten().collect()
    }

    /// Number of antichains of each size.
    pub fn antichain_counts(&self) -> Vec<usize> {
        let order = self.natural_labeling();
        let mut counts = Vec::new();
        self.antichain_dfs(&order, 0, ElemSet::EMPTY, ElemSet::EMPTY, &mut |a| {
            let k = a.len();
            if counts.len() <= k {
                counts.resize(k + 1, 0);
            }
            counts[k] += 1;
        });
        counts
    }

    /// `sum over antichains A of t^|A|`.
    pub fn antichain_polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.antichain_counts().into_iter().map(|c| c as i64).collect())
    }

    fn antichain_dfs(
        &self,
        order: &[usize],
        start: usize,
        current: ElemSet,
        blocked: ElemSet,
        visit: &mut impl FnMut(ElemSet),
    ) {
        visit(current);
        for (t, &x) in order.iter().enumerate().skip(start) {
            if !blocked.contains(x) {
                let mut next = current;
                next.insert(x);
                self.antichain_dfs(
                    order,
                    t + 1,
                    next,
                    blocked.union(self.below[x]).union(self.above[x]),
                    visit,
                );
            }
        }
    }

    /// All order ideals, in the order of their generating antichains.
    pub fn ideals(&self) -> Vec<OrderIdeal> {
        self.antichains()
            .into_iter()
            .map(|a| OrderIdeal(self.down_closure(a.0)))
            .collect()
    }

    /// `(P \ {k}, P \ <k>)` for a maximal element `k`, as sub-posets on the
    /// surviving positions (see [`FinitePoset::restrict`]). Also returns the
    /// two position sets so callers can [`ElemSet::spread`] back.
    pub fn delete_split(&self, k: usize) -> Result<DeleteSplit> {
        if k >= self.len() {
            return Err(Error::UnknownElement(k));
        }
        if !self.is_maximal(k) {
            return Err(Error::NotMaximal(k));
        }
        let keep_deleted = self.all().difference(ElemSet::singleton(k));
        let keep_contracted = self.all().difference(self.below[k]);
        Ok(DeleteSplit {
            deleted: self.restrict(keep_deleted),
            deleted_positions: keep_deleted,
            contracted: self.restrict(keep_contracted),
            contracted_positions: keep_contracted,
        })
    }

    /// `mu(x, y)` for every `y`; zero where `x` is not below `y`.
    pub fn mobius_from(&self, x: usize) -> Vec<i64> {
        let order = self.natural_labeling();
        let mut mu = vec![0i64; self.len()];
        let up = self.above[x];
        for &y in &order {
            if !up.contains(y) {
                continue;
            }
            if y == x {
                mu[y] = 1;
                continue;
            }
            let interval = up.intersection(self.below[y]).difference(ElemSet::singleton(y));
            mu[y] = -interval.iter().map(|z| mu[z]).sum::<i64>();
        }
        mu
    }

    pub fn mobius_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.len()).map(|x| self.mobius_from(x)).collect()
    }
}

/// Output of [`FinitePoset::delete_split`].
#[derive(Clone, Debug)]
pub struct DeleteSplit {
    /// `P^1 = P \ {k}`.
    pub deleted: FinitePoset,
    pub deleted_positions: ElemSet,
    /// `P^0 = P \ <k>`.
    pub contracted: FinitePoset,
    pub contracted_positions: ElemSet,
}

/// Renders a set of positions through a label table, e.g. `{1,2}`.
pub fn format_set(set: ElemSet, labels: &[alloc::string::String]) -> alloc::string::String {
    let parts: Vec<_> = set
        .iter()
        .map(|i| labels.get(i).cloned().unwrap_or_else(|| i.to_string()))
        .collect();
    alloc::format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 1,2 < 3 < 4,5 (positions 0..5).
    fn example() -> FinitePoset {
        FinitePoset::from_covers((0..5).collect(), &[(0, 2), (1, 2), (2, 3), (2, 4)]).unwrap()
    }

    #[test]
    fn closure_and_covers() {
        let p = example();
        assert!(p.leq(0, 4));
        assert!(!p.leq(3, 4));
        assert_eq!(p.covers(), &[(0, 2), (1, 2), (2, 3), (2, 4)]);
        // Non-cover relations are dropped from covers.
        let q = FinitePoset::from_covers(vec![0, 1, 2], &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(q.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_cycles_and_bad_indices() {
        assert!(matches!(
            FinitePoset::from_covers(vec![0, 1], &[(0, 1), (1, 0)]),
            Err(Error::InvalidPoset(_))
        ));
        assert_eq!(
            FinitePoset::from_covers(vec![0, 1], &[(0, 2)]),
            Err(Error::UnknownElement(2))
        );
        assert!(FinitePoset::from_covers((0..65).collect(), &[]).is_err());
    }

    #[test]
    fn example_antichains() {
        let p = example();
        let ac: Vec<ElemSet> = p.antichains().into_iter().map(|a| a.0).collect();
        assert_eq!(ac.len(), 8);
        assert_eq!(ac[0], ElemSet::EMPTY);
        assert!(ac.contains(&ElemSet::from_iter([0, 1])));
        assert!(ac.contains(&ElemSet::from_iter([3, 4])));
        // Grouped by size.
        assert!(ac.windows(2).all(|w| w[0].len() <= w[1].len()));
        assert_eq!(p.antichain_counts(), vec![1, 5, 2]);
    }

    #[test]
    fn ideal_generated_is_inclusive() {
        let p = example();
        let ideal = p.ideal_generated(Antichain(ElemSet::from_iter([3, 4]))).unwrap();
        assert_eq!(ideal.0, ElemSet::full(5));
        assert_eq!(p.ideal_generated(Antichain::default()).unwrap().0, ElemSet::EMPTY);
        assert_eq!(
            p.ideal_generated(Antichain(ElemSet::from_iter([0, 2]))),
            Err(Error::NotAntichain)
        );
    }

    #[test]
    fn restrict_keeps_ids() {
        let p = example();
        let sub = p.restrict(ElemSet::from_iter([0, 4]));
        assert_eq!(sub.elements(), &[0, 4]);
        assert!(sub.leq(0, 1));
        assert_eq!(p.restrict(ElemSet::EMPTY).len(), 0);
        assert_eq!(p.restrict(p.all()), p);
    }

    #[test]
    fn natural_labeling_is_linear_extension() {
        let chain = FinitePoset::from_covers(vec![0, 1, 2], &[(2, 1), (1, 0)]).unwrap();
        assert_eq!(chain.natural_labeling(), vec![2, 1, 0]);
        let anti = FinitePoset::from_covers(vec![0, 1, 2], &[]).unwrap();
        assert_eq!(anti.natural_labeling(), vec![0, 1, 2]);
        assert!(example().is_naturally_labelled());
        assert!(!chain.is_naturally_labelled());
    }

    #[test]
    fn delete_split_requires_maximal() {
        let p = example();
        assert_eq!(p.delete_split(2).unwrap_err(), Error::NotMaximal(2));
        let single = FinitePoset::from_covers(vec![0], &[]).unwrap();
        let split = single.delete_split(0).unwrap();
        assert!(split.deleted.is_empty());
        assert!(split.contracted.is_empty());
    }

    #[test]
    fn mobius_of_chain_and_boolean() {
        let chain = FinitePoset::from_covers(vec![0, 1, 2], &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(chain.mobius_from(0), vec![1, -1, 0]);
        // Boolean lattice on 2 atoms: bottom 0, atoms 1 2, top 3.
        let b = FinitePoset::from_covers(vec![0, 1, 2, 3], &[(0, 1), (0, 2), (1, 3), (2, 3)])
            .unwrap();
        assert_eq!(b.mobius_from(0), vec![1, -1, -1, 1]);
    }

    #[test]
    fn spread_compress_roundtrip() {
        let within = ElemSet::from_iter([1, 4, 7]);
        let child = ElemSet::from_iter([0, 2]);
        assert_eq!(child.spread(within), ElemSet::from_iter([1, 7]));
        assert_eq!(child.spread(within).compress(within), child);
    }
}
