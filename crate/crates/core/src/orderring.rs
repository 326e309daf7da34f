//! Order rings of finite posets.
//!
//! Ring elements are integer functions on order ideals, stored densely in
//! the delta basis. Points of the order polytope are indicators of order
//! filters; the two sides meet through complementation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::poset::{ElemSet, FinitePoset, OrderIdeal};
use crate::rootsys::RootSystem;
use crate::shi::ShiRegion;
use crate::{Error, IntPolynomial, Result};

/// Largest poset accepted by [`OrderRing::new`].
pub const MAX_RING_ELEMENTS: usize = 24;

/// `OR(P)`: functions from the order ideals of `P` to the integers.
#[derive(Clone, Debug)]
pub struct OrderRing {
    poset: FinitePoset,
    ideals: Vec<OrderIdeal>,
    index: BTreeMap<ElemSet, usize>,
    fingerprint: u64,
}

/// An element of an [`OrderRing`], as its values on the ring's ideals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    fingerprint: u64,
    values: Vec<i64>,
}

impl RingElement {
    pub fn values(&self) -> &[i64] {
        &self.values
    }
}

fn fingerprint(poset: &FinitePoset) -> u64 {
    // FNV-1a over the element ids and the down-sets.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    eat(poset.len() as u64);
    for i in 0..poset.len() {
        eat(poset.element(i) as u64);
        eat(poset.below(i).bits());
    }
    h
}

impl OrderRing {
    pub fn new(poset: FinitePoset) -> Result<Self> {
        if poset.len() > MAX_RING_ELEMENTS {
            return Err(Error::SizeBound(format!(
                "order ring of {} elements (max {MAX_RING_ELEMENTS})",
                poset.len()
            )));
        }
        let ideals = poset.ideals();
        let index = ideals.iter().enumerate().map(|(k, i)| (i.0, k)).collect();
        let fingerprint = fingerprint(&poset);
        Ok(Self {
            poset,
            ideals,
            index,
            fingerprint,
        })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn ideals(&self) -> &[OrderIdeal] {
        &self.ideals
    }

    /// Rank of the ring as a free module.
    pub fn rank(&self) -> usize {
        self.ideals.len()
    }

    fn element(&self, f: impl Fn(ElemSet) -> i64) -> RingElement {
        RingElement {
            fingerprint: self.fingerprint,
            values: self.ideals.iter().map(|i| f(i.0)).collect(),
        }
    }

    fn check(&self, f: &RingElement) -> Result<()> {
        if f.fingerprint == self.fingerprint {
            Ok(())
        } else {
            Err(Error::PosetMismatch)
        }
    }

    pub fn zero(&self) -> RingElement {
        self.element(|_| 0)
    }

    pub fn one(&self) -> RingElement {
        self.element(|_| 1)
    }

    pub fn delta(&self, ideal: OrderIdeal) -> Result<RingElement> {
        if !self.index.contains_key(&ideal.0) {
            return Err(Error::InvalidPoset(format!("{:?} is not an order ideal", ideal.0)));
        }
        Ok(self.element(|i| i64::from(i == ideal.0)))
    }

    /// `y_p`: 1 on the ideals containing `p`.
    pub fn heaviside(&self, p: usize) -> Result<RingElement> {
        if p >= self.poset.len() {
            return Err(Error::UnknownElement(p));
        }
        Ok(self.element(|i| i64::from(i.contains(p))))
    }

    pub fn value(&self, f: &RingElement, ideal: OrderIdeal) -> Result<i64> {
        self.check(f)?;
        self.index
            .get(&ideal.0)
            .map(|&k| f.values[k])
            .ok_or_else(|| Error::InvalidPoset(format!("{:?} is not an order ideal", ideal.0)))
    }

    fn zip(
        &self,
        f: &RingElement,
        g: &RingElement,
        op: impl Fn(i64, i64) -> i64,
    ) -> Result<RingElement> {
        self.check(f)?;
        self.check(g)?;
        Ok(RingElement {
            fingerprint: self.fingerprint,
            values: f.values.iter().zip(&g.values).map(|(&a, &b)| op(a, b)).collect(),
        })
    }

    pub fn add(&self, f: &RingElement, g: &RingElement) -> Result<RingElement> {
        self.zip(f, g, |a, b| a + b)
    }

    pub fn subtract(&self, f: &RingElement, g: &RingElement) -> Result<RingElement> {
        self.zip(f, g, |a, b| a - b)
    }

    pub fn multiply(&self, f: &RingElement, g: &RingElement) -> Result<RingElement> {
        self.zip(f, g, |a, b| a * b)
    }
}

/// `x_beta(R)`: 1 when the region lies below `H_{beta,1}`, read off its
/// witness.
pub fn vg_heaviside(rs: &RootSystem, region: &ShiRegion, beta: usize) -> i64 {
    i64::from(rs.pair(&region.witness, beta) < num_traits::One::one())
}

/// A vertex of the order polytope.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolytopeVertex {
    pub indicator: Vec<u8>,
}

impl PolytopeVertex {
    /// The indicator as a `0`/`1` string in position order.
    pub fn bitstring(&self) -> String {
        self.indicator.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
    }

    pub fn support(&self) -> ElemSet {
        self.indicator
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Filter indicators, one per order ideal (as its complement), sorted.
pub fn polytope_vertices(poset: &FinitePoset) -> Vec<PolytopeVertex> {
    let all = poset.all();
    let mut out: Vec<PolytopeVertex> = poset
        .ideals()
        .into_iter()
        .map(|i| {
            let filter = all.difference(i.0);
            PolytopeVertex {
                indicator: (0..poset.len()).map(|p| u8::from(filter.contains(p))).collect(),
            }
        })
        .collect();
    out.sort();
    out
}

/// The generator `z_p (1 - z_q)` for `p <= q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub p: usize,
    pub q: usize,
}

impl Generator {
    pub fn evaluate(&self, vertex: &PolytopeVertex) -> i64 {
        let z = |i: usize| i64::from(vertex.indicator[i]);
        z(self.p) * (1 - z(self.q))
    }

    /// Canonical text using the poset's element ids, e.g. `z_1*(1-z_3)`.
    pub fn text(&self, poset: &FinitePoset) -> String {
        format!("z_{}*(1-z_{})", poset.element(self.p), poset.element(self.q))
    }
}

/// All pairs `p <= q`, including `p = q`, sorted by `(p, q)`.
pub fn generators(poset: &FinitePoset) -> Vec<Generator> {
    let mut out = Vec::new();
    for p in 0..poset.len() {
        for q in poset.above(p) {
            out.push(Generator { p, q });
        }
    }
    out
}

/// A square-free monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub support: ElemSet,
}

impl Monomial {
    pub fn degree(&self) -> usize {
        self.support.len()
    }

    pub fn is_standard(&self, poset: &FinitePoset) -> bool {
        poset.is_antichain(self.support)
    }

    /// `1`, or a product like `z_1*z_2`.
    pub fn text(&self, poset: &FinitePoset) -> String {
        if self.support.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .support
            .iter()
            .map(|p| format!("z_{}", poset.element(p)))
            .collect();
        parts.join("*")
    }
}

/// Standard monomials of the associated graded ring, grouped by degree.
pub fn standard_monomials(poset: &FinitePoset) -> Vec<Vec<Monomial>> {
    let mut by_degree: Vec<Vec<Monomial>> = vec![Vec::new()];
    for a in poset.antichains() {
        let d = a.len();
        if by_degree.len() <= d {
            by_degree.resize(d + 1, Vec::new());
        }
        by_degree[d].push(Monomial { support: a.0 });
    }
    for group in &mut by_degree {
        group.sort();
    }
    by_degree
}

pub fn hilbert_series(poset: &FinitePoset) -> IntPolynomial {
    IntPolynomial::new(
        standard_monomials(poset)
            .iter()
            .map(|g| g.len() as i64)
            .collect(),
    )
}
