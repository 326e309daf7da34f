//! Irreducible crystallographic root systems given in the basis of simple
//! roots, their root posets, and their Weyl groups.
//!
//! Every vector (roots and points of `V` alike) is written in simple-root
//! coordinates. The inner product is the symmetrized Cartan form, normalized
//! so long roots have squared length 2.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::Zero;

use crate::exactgeom::dot;
use crate::poset::{ElemSet, FinitePoset, MAX_ELEMENTS};
use crate::{Error, IntPolynomial, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
    F,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::G => 'G',
            Family::F => 'F',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::G => rank == 2,
            Family::F => rank == 4,
        };
        if !ok {
            return Err(Error::InadmissibleType {
                family: family.letter(),
                rank,
                reason: "no such irreducible type",
            });
        }
        Ok(Self { family, rank })
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// `(h, degrees)` from the classification tables.
    fn coxeter_data(self) -> (usize, Vec<usize>) {
        let n = self.rank;
        match self.family {
            Family::A => (n + 1, (2..=n + 1).collect()),
            Family::B | Family::C => (2 * n, (1..=n).map(|i| 2 * i).collect()),
            Family::D => {
                let mut d: Vec<usize> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d.sort_unstable();
                (2 * n - 2, d)
            }
            Family::G => (6, vec![2, 6]),
            Family::F => (12, vec![2, 6, 8, 12]),
        }
    }

    /// Squared lengths of the simple roots (long roots have length 2) and
    /// the edges of the Dynkin diagram.
    fn dynkin(self) -> (Vec<Rational>, Vec<(usize, usize)>) {
        let n = self.rank;
        let int = |k: i64| Rational::from_integer(k.into());
        let chain: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        match self.family {
            Family::A => (vec![int(2); n], chain),
            // Short simple root first, so B2 reads {a, b, a+b, 2a+b}.
            Family::B => {
                let mut len = vec![int(2); n];
                len[0] = int(1);
                (len, chain)
            }
            Family::C => {
                let mut len = vec![int(1); n];
                len[n - 1] = int(2);
                (len, chain)
            }
            Family::D => {
                let mut edges: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
                edges.push((n - 3, n - 1));
                (vec![int(2); n], edges)
            }
            Family::G => (
                vec![Rational::new(2.into(), 3.into()), int(2)],
                vec![(0, 1)],
            ),
            Family::F => (vec![int(2), int(2), int(1), int(1)], chain),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Parses `"A3"`, `"b2"`, `"F4"`.
impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::TypeParse(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::TypeParse(s.to_string()))?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'G' => Family::G,
            'F' => Family::F,
            'E' => {
                return Err(Error::InadmissibleType {
                    family: 'E',
                    rank,
                    reason: "E-type Weyl groups exceed the supported size bound",
                })
            }
            _ => return Err(Error::TypeParse(s.to_string())),
        };
        CartanType::new(family, rank)
    }
}

/// Integer coordinates in the basis of simple roots.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c != 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c != 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    ctype: CartanType,
    cartan: Vec<Vec<i64>>,
    form: Vec<Vec<Rational>>,
    positive_roots: Vec<Root>,
    coxeter_number: usize,
    degrees: Vec<usize>,
    index: BTreeMap<Vec<i64>, usize>,
    /// `form * beta` for each positive root, so `<v, beta> = v . normal`.
    normals: Vec<Vec<Rational>>,
}

/// Build the root system of an admissible Cartan type.
pub fn build_root_system(ctype: CartanType) -> Result<RootSystem> {
    RootSystem::new(ctype)
}

impl RootSystem {
    pub fn new(ctype: CartanType) -> Result<Self> {
        let n = ctype.rank();
        let (h, degrees) = ctype.coxeter_data();
        if n * h / 2 > MAX_ELEMENTS {
            return Err(Error::SizeBound(alloc::format!(
                "{ctype} has {} positive roots (max {MAX_ELEMENTS})",
                n * h / 2
            )));
        }
        let (lengths, edges) = ctype.dynkin();
        let two = Rational::from_integer(2.into());
        let mut form = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            form[i][i] = lengths[i].clone();
        }
        for &(i, j) in &edges {
            let long = core::cmp::max(&lengths[i], &lengths[j]).clone();
            form[i][j] = -(long / &two);
            form[j][i] = form[i][j].clone();
        }
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let a = &form[i][j] * &two / &form[j][j];
                if !a.is_integer() {
                    return Err(Error::Violation(alloc::format!(
                        "non-integral Cartan entry ({i},{j}) for {ctype}"
                    )));
                }
                cartan[i][j] = i64::try_from(a.to_integer()).expect("small Cartan entry");
            }
        }

        let positive_roots = positive_roots(&cartan);
        if positive_roots.len() != n * h / 2 {
            return Err(Error::Violation(alloc::format!(
                "{ctype}: closure produced {} positive roots, expected {}",
                positive_roots.len(),
                n * h / 2
            )));
        }
        let index = positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.0.clone(), i))
            .collect();
        let normals = positive_roots
            .iter()
            .map(|r| {
                let r = r.to_rational();
                form.iter().map(|row| dot(row, &r)).collect()
            })
            .collect();
        Ok(Self {
            ctype,
            cartan,
            form,
            positive_roots,
            coxeter_number: h,
            degrees,
            index,
            normals,
        })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ctype
    }

    pub fn rank(&self) -> usize {
        self.ctype.rank()
    }

    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn form(&self) -> &[Vec<Rational>] {
        &self.form
    }

    /// Sorted by height, then by coordinates in decreasing lexicographic
    /// order; the simple roots come first, in index order.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.positive_roots[i]
    }

    pub fn all_positive(&self) -> ElemSet {
        ElemSet::full(self.num_positive())
    }

    pub fn coxeter_number(&self) -> usize {
        self.coxeter_number
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Index of a positive root by coordinates.
    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// `(index of +-root, is_positive)` for any root.
    pub fn signed_index(&self, root: &Root) -> Option<(usize, bool)> {
        if let Some(i) = self.index_of(&root.0) {
            return Some((i, true));
        }
        self.index_of(&root.neg().0).map(|i| (i, false))
    }

    pub fn inner_product(&self, beta: &Root, gamma: &Root) -> Rational {
        let b = beta.to_rational();
        let g = gamma.to_rational();
        self.form
            .iter()
            .zip(&b)
            .fold(Rational::zero(), |acc, (row, x)| acc + x * dot(row, &g))
    }

    /// Linear functional `v -> <v, beta_i>` as a coefficient vector.
    pub fn normal(&self, i: usize) -> &[Rational] {
        &self.normals[i]
    }

    /// `<v, beta_i>` for a point `v` in simple-root coordinates.
    pub fn pair(&self, point: &[Rational], i: usize) -> Rational {
        dot(point, &self.normals[i])
    }

    /// Cover relations `beta < gamma` with `gamma - beta` simple.
    pub fn root_poset(&self) -> FinitePoset {
        let n = self.rank();
        let mut covers = Vec::new();
        for (i, r) in self.positive_roots.iter().enumerate() {
            for k in 0..n {
                let mut up = r.0.clone();
                up[k] += 1;
                if let Some(j) = self.index_of(&up) {
                    covers.push((i, j));
                }
            }
        }
        FinitePoset::from_covers((0..self.num_positive()).collect(), &covers)
            .expect("root poset is a partial order")
    }

    /// Catalan, parking and Narayana numbers.
    pub fn numerology(&self) -> Numerology {
        let h = self.coxeter_number as u128;
        let num: u128 = self.degrees.iter().map(|&d| d as u128 + h).product();
        let den: u128 = self.degrees.iter().map(|&d| d as u128).product();
        debug_assert_eq!(num % den, 0);
        Numerology {
            catalan: (num / den) as u64,
            parking: (h as u64 + 1).pow(self.rank() as u32),
            narayana: self.root_poset().antichain_polynomial(),
        }
    }

    /// `prod d_i`.
    pub fn weyl_order(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).product()
    }
}

pub fn inner_product(rs: &RootSystem, beta: &Root, gamma: &Root) -> Rational {
    rs.inner_product(beta, gamma)
}

pub fn root_poset(rs: &RootSystem) -> FinitePoset {
    rs.root_poset()
}

pub fn numerology(rs: &RootSystem) -> Numerology {
    rs.numerology()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Numerology {
    /// `prod (d_i + h) / d_i`.
    pub catalan: u64,
    /// `(h + 1)^rank`.
    pub parking: u64,
    /// Antichains of the root poset by size.
    pub narayana: IntPolynomial,
}

/// Positive roots by root strings: `beta + alpha_i` is a root iff
/// `p - <beta, alpha_i^vee> > 0`, where `p` is the largest `k` with
/// `beta - k alpha_i` a root.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Root> {
    let n = cartan.len();
    let mut known: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut all = Vec::new();
    while !layer.is_empty() {
        layer.sort_unstable_by(|a, b| b.cmp(a));
        layer.dedup();
        for r in &layer {
            known.insert(r.clone(), ());
        }
        let mut next = Vec::new();
        for r in &layer {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| r[j] * cartan[j][i]).sum();
                let mut p = 0;
                let mut down = r.clone();
                loop {
                    down[i] -= 1;
                    if known.contains_key(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = r.clone();
                    up[i] += 1;
                    next.push(up);
                }
            }
        }
        all.append(&mut layer);
        layer = next;
    }
    all.into_iter().map(Root).collect()
}

/// An element of the Weyl group, acting on simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    matrix: Vec<Vec<i64>>,
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut matrix = vec![vec![0; rank]; rank];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 1;
        }
        Self {
            matrix,
            word: Vec::new(),
        }
    }

    /// `s_i(v) = v - <v, alpha_i^vee> alpha_i`.
    pub fn simple_reflection(rs: &RootSystem, i: usize) -> Self {
        let n = rs.rank();
        let mut w = Self::identity(n);
        for j in 0..n {
            w.matrix[i][j] -= rs.cartan()[j][i];
        }
        w.word = vec![i];
        w
    }

    /// Product of simple reflections; the word is kept as given.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(rs.rank());
        for &i in word {
            if i >= rs.rank() {
                return Err(Error::UnknownElement(i));
            }
            w = w.compose(&Self::simple_reflection(rs, i));
        }
        Ok(w)
    }

    /// Parse a word: `s`/`t` for rank 2, 1-based digits for any rank, and
    /// `""` or `"e"` for the identity.
    pub fn parse_word(rs: &RootSystem, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(Self::identity(rs.rank()));
        }
        let mut word = Vec::new();
        for c in text.chars() {
            let i = match c {
                's' if rs.rank() == 2 => 0,
                't' if rs.rank() == 2 => 1,
                '1'..='9' => c as usize - '1' as usize,
                _ => return Err(Error::InvalidWord(c)),
            };
            if i >= rs.rank() {
                return Err(Error::InvalidWord(c));
            }
            word.push(i);
        }
        Self::from_word(rs, &word)
    }

    /// `self * other`, acting as `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.matrix.len();
        let mut matrix = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                matrix[i][j] = (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum();
            }
        }
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Self { matrix, word }
    }

    pub fn inverse(&self, rs: &RootSystem) -> Self {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        Self::from_word(rs, &word).expect("word indices are in range")
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
    }

    /// `w(beta)`.
    pub fn act(&self, beta: &Root) -> Root {
        Root(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(&beta.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// `w(v)` for a point of `V`.
    pub fn act_point(&self, v: &[Rational]) -> Vec<Rational> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter().zip(v).fold(Rational::zero(), |acc, (&a, x)| {
                    acc + x * Rational::from_integer(a.into())
                })
            })
            .collect()
    }

    /// Letters `s`, `t` in rank 2, 1-based digits otherwise; `e` for the
    /// identity.
    pub fn label(&self) -> String {
        if self.word.is_empty() {
            return String::from("e");
        }
        let rank = self.matrix.len();
        self.word
            .iter()
            .map(|&i| match (rank, i) {
                (2, 0) => 's',
                (2, 1) => 't',
                _ => char::from_digit(i as u32 + 1, 10).unwrap_or('?'),
            })
            .collect()
    }
}

/// Largest rank for which the whole Weyl group is enumerated.
pub const MAX_WEYL_RANK: usize = 4;

/// All of `W` by breadth-first search over right multiplication by simple
/// reflections; each element carries the first reduced word found.
pub fn weyl_group(rs: &RootSystem) -> Result<Vec<WeylElement>> {
    if rs.rank() > MAX_WEYL_RANK {
        return Err(Error::SizeBound(alloc::format!(
            "Weyl group enumeration needs rank <= {MAX_WEYL_RANK}, got {}",
            rs.cartan_type()
        )));
    }
    let gens: Vec<WeylElement> = (0..rs.rank())
        .map(|i| WeylElement::simple_reflection(rs, i))
        .collect();
    let id = WeylElement::identity(rs.rank());
    let mut seen: BTreeMap<Vec<Vec<i64>>, ()> = BTreeMap::new();
    seen.insert(id.matrix.clone(), ());
    let mut out = Vec::new();
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let next = w.compose(g);
            if !seen.contains_key(&next.matrix) {
                seen.insert(next.matrix.clone(), ());
                queue.push_back(next);
            }
        }
        out.push(w);
    }
    Ok(out)
}

/// `Inv(w)`: positive roots `beta` with `w^-1(beta)` negative.
pub fn inversion_set(rs: &RootSystem, w: &WeylElement) -> ElemSet {
    let inv = w.inverse(rs);
    inversion_set_of_inverse(rs, &inv)
}

/// `Inv(u^-1)`, computed from `u` directly: positive `beta` with `u(beta)`
/// negative.
pub fn inversion_set_of_inverse(rs: &RootSystem, u: &WeylElement) -> ElemSet {
    rs.positive_roots()
        .iter()
        .enumerate()
        .filter(|(_, r)| u.act(r).is_negative())
        .map(|(i, _)| i)
        .collect()
}

pub fn act(w: &WeylElement, beta: &Root) -> Root {
    w.act(beta)
}

/// Apply `w` to a set of positive roots all of which stay positive.
pub fn act_on_set(rs: &RootSystem, w: &WeylElement, set: ElemSet) -> Option<ElemSet> {
    let mut out = ElemSet::EMPTY;
    for i in set {
        match rs.signed_index(&w.act(rs.root(i)))? {
            (j, true) => out.insert(j),
            (_, false) => return None,
        }
    }
    Some(out)
}
