//! Arithmetic in the dicyclic group `Dic_n = <α, β | α^{2n} = 1, β² = αⁿ, β⁻¹αβ = α⁻¹>`.
//!
//! Every element has a unique normal form `α^e β^f` with `e ∈ Z_2n` and
//! `f ∈ {0, 1}`, which is what [`Element`] stores. Products are computed
//! directly from the defining relations, so no permutation or matrix
//! representation is needed.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::ConnectionSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("dicyclic groups need n >= 1, got n = {0}")]
    InvalidN(u32),
    #[error("no subgroup of order {order}: it does not divide |Dic_{n}| = {}", 4 * *n as u64)]
    InvalidOrder { n: u32, order: u32 },
    #[error("u = {u} is not a unit modulo {modulus}")]
    InvalidAutomorphism { u: u32, modulus: u32 },
    #[error("element set must be non-empty")]
    EmptyGenerators,
}

/// `α^exp β^flip`. `exp` is kept reduced modulo `2n` by [`Dicyclic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element {
    pub exp: u32,
    pub flip: bool,
}

impl Element {
    pub const IDENTITY: Element = Element { exp: 0, flip: false };

    pub const fn new(exp: u32, flip: bool) -> Self {
        Self { exp, flip }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.exp, self.flip) {
            (0, false) => write!(f, "1"),
            (0, true) => write!(f, "b"),
            (1, false) => write!(f, "a"),
            (1, true) => write!(f, "ab"),
            (e, false) => write!(f, "a^{e}"),
            (e, true) => write!(f, "a^{e}b"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubgroupKind {
    Cyclic,
    Dicyclic,
}

/// A subgroup of `Dic_n`, members sorted by vertex index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub order: usize,
    pub members: Vec<Element>,
    pub kind: SubgroupKind,
}

impl Subgroup {
    pub fn contains(&self, g: &Element) -> bool {
        self.members.contains(g)
    }
}

/// The dicyclic group of order `4n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dicyclic {
    n: u32,
}

impl Dicyclic {
    pub fn new(n: u32) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidN(n));
        }
        Ok(Self { n })
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `2n`, the order of `α`.
    #[inline]
    pub fn modulus(&self) -> u32 {
        2 * self.n
    }

    #[inline]
    pub fn order(&self) -> usize {
        4 * self.n as usize
    }

    #[inline]
    fn reduce(&self, e: i64) -> u32 {
        e.rem_euclid(self.modulus() as i64) as u32
    }

    /// `α^e`.
    pub fn alpha_pow(&self, e: i64) -> Element {
        Element::new(self.reduce(e), false)
    }

    /// `α^e β`.
    pub fn alpha_pow_beta(&self, e: i64) -> Element {
        Element::new(self.reduce(e), true)
    }

    pub fn element(&self, e: i64, flip: bool) -> Element {
        Element::new(self.reduce(e), flip)
    }

    pub fn multiply(&self, g: Element, h: Element) -> Element {
        let (a, b) = (g.exp as i64, h.exp as i64);
        match (g.flip, h.flip) {
            (false, false) => self.element(a + b, false),
            (false, true) => self.element(a + b, true),
            (true, false) => self.element(a - b, true),
            (true, true) => self.element(a - b + self.n as i64, false),
        }
    }

    pub fn inverse(&self, g: Element) -> Element {
        if g.flip {
            self.element(g.exp as i64 + self.n as i64, true)
        } else {
            self.element(-(g.exp as i64), false)
        }
    }

    pub fn pow(&self, g: Element, mut k: u64) -> Element {
        let mut acc = Element::IDENTITY;
        let mut base = g;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(acc, base);
            }
            base = self.multiply(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: Element) -> usize {
        let mut x = g;
        let mut m = 1;
        while x != Element::IDENTITY {
            x = self.multiply(x, g);
            m += 1;
        }
        m
    }

    /// Vertex index: `α^i ↦ i`, `α^i β ↦ 2n + i`.
    #[inline]
    pub fn index_of(&self, g: Element) -> usize {
        g.exp as usize + if g.flip { self.modulus() as usize } else { 0 }
    }

    #[inline]
    pub fn element_at(&self, index: usize) -> Element {
        let m = self.modulus() as usize;
        assert!(index < 2 * m, "index {index} out of range for Dic_{}", self.n);
        if index < m {
            Element::new(index as u32, false)
        } else {
            Element::new((index - m) as u32, true)
        }
    }

    /// All elements in vertex-index order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// The subgroup generated by `gens` (closure under multiplication).
    pub fn generate(&self, gens: &[Element]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        let mut stack = vec![Element::IDENTITY];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.multiply(x, g);
                let idx = self.index_of(y);
                if !seen[idx] {
                    seen[idx] = true;
                    stack.push(y);
                }
            }
        }
        let members: Vec<Element> = seen
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| self.element_at(i))
            .collect();
        let order = members.len();
        let kind = if members.iter().any(|&g| self.element_order(g) == order) {
            SubgroupKind::Cyclic
        } else {
            SubgroupKind::Dicyclic
        };
        Subgroup {
            order,
            members,
            kind,
        }
    }

    /// The subgroups of index 2: `<α>` always, plus `<α², β>` and
    /// `<α², αβ>` when `n` is even.
    pub fn index2_subgroups(&self) -> Vec<Subgroup> {
        let candidates = [
            vec![self.alpha_pow(1)],
            vec![self.alpha_pow(2), self.alpha_pow_beta(0)],
            vec![self.alpha_pow(2), self.alpha_pow_beta(1)],
        ];
        let mut out: Vec<Subgroup> = Vec::new();
        for gens in candidates {
            let h = self.generate(&gens);
            if h.order * 2 == self.order() && !out.iter().any(|o| o.members == h.members) {
                out.push(h);
            }
        }
        out
    }

    /// One subgroup of order `m`: `<α^{2n/m}>` when `m | 2n`, otherwise
    /// `<α^{n/d}, β>` with `d = m/4`.
    pub fn subgroup_of_order(&self, m: u32) -> Result<Subgroup, GroupError> {
        let four_n = 4 * self.n;
        if m == 0 || !four_n.is_multiple_of(m) {
            return Err(GroupError::InvalidOrder { n: self.n, order: m });
        }
        let two_n = 2 * self.n;
        let h = if two_n.is_multiple_of(m) {
            self.generate(&[self.alpha_pow((two_n / m) as i64)])
        } else {
            let d = m / 4;
            self.generate(&[self.alpha_pow((self.n / d) as i64), self.alpha_pow_beta(0)])
        };
        debug_assert_eq!(h.order, m as usize);
        Ok(h)
    }

    /// Multiplication table indexed by vertex index.
    pub fn table(&self) -> GroupTable {
        let order = self.order();
        let mut table = Vec::with_capacity(order * order);
        for a in self.elements() {
            for b in self.elements() {
                table.push(self.index_of(self.multiply(a, b)));
            }
        }
        GroupTable::new(order, table).expect("Dic_n multiplication is a group")
    }

    /// Multiplication table of `sub`, indexed by position in `sub.members`.
    pub fn subgroup_table(&self, sub: &Subgroup) -> GroupTable {
        let pos = |g: Element| {
            sub.members
                .iter()
                .position(|&x| x == g)
                .expect("subgroup is closed")
        };
        let mut table = Vec::with_capacity(sub.order * sub.order);
        for &a in &sub.members {
            for &b in &sub.members {
                table.push(pos(self.multiply(a, b)));
            }
        }
        GroupTable::new(sub.order, table).expect("subgroup multiplication is a group")
    }
}

/// Parameters `(u, v)` of the automorphism `α ↦ α^u`, `β ↦ α^v β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AutomorphismParams {
    u: u32,
    v: u32,
    modulus: u32,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl AutomorphismParams {
    pub fn new(n: u32, u: i64, v: i64) -> Result<Self, GroupError> {
        let modulus = 2 * n;
        let m = modulus as i64;
        let (u, v) = (u.rem_euclid(m) as u32, v.rem_euclid(m) as u32);
        if gcd(u as u64, modulus as u64) != 1 {
            return Err(GroupError::InvalidAutomorphism { u, modulus });
        }
        Ok(Self { u, v, modulus })
    }

    pub fn u(&self) -> u32 {
        self.u
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    /// Every admissible `(u, v)` for `Dic_n`, `u` then `v` ascending.
    pub fn all(n: u32) -> Vec<Self> {
        let m = 2 * n;
        (0..m)
            .filter(|&u| gcd(u as u64, m as u64) == 1)
            .flat_map(|u| (0..m).map(move |v| (u, v)))
            .map(|(u, v)| Self { u, v, modulus: m })
            .collect()
    }

    pub fn apply(&self, g: Element) -> Element {
        let m = self.modulus as u64;
        let e = (g.exp as u64 * self.u as u64) % m;
        if g.flip {
            Element::new(((e + self.v as u64) % m) as u32, true)
        } else {
            Element::new(e as u32, false)
        }
    }

    /// Checks that the images of `α` and `β` satisfy the defining relations.
    pub fn preserves_relations(&self, group: &Dicyclic) -> bool {
        let a = self.apply(group.alpha_pow(1));
        let b = self.apply(group.alpha_pow_beta(0));
        let n = group.n() as u64;
        let rel1 = group.pow(a, 2 * n) == Element::IDENTITY;
        let rel2 = group.multiply(b, b) == group.pow(a, n);
        let rel3 = group.multiply(group.multiply(group.inverse(b), a), b) == group.inverse(a);
        rel1 && rel2 && rel3
    }
}

/// `(n, R, T) ↦ (n, uR, uT + v)`.
pub fn apply_automorphism(
    params: &AutomorphismParams,
    spec: &ConnectionSpec,
) -> Result<ConnectionSpec, GroupError> {
    if params.modulus != 2 * spec.n() {
        return Err(GroupError::InvalidAutomorphism {
            u: params.u,
            modulus: 2 * spec.n(),
        });
    }
    let r = spec.r().scale(params.u as i64);
    let t = spec.t().scale(params.u as i64).translate(params.v as i64);
    Ok(ConnectionSpec::from_parts_unchecked(spec.n(), r, t))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupTableError {
    #[error("table has {found} entries, expected {expected}")]
    WrongSize { expected: usize, found: usize },
    #[error("empty group")]
    Empty,
    #[error("entry {0} out of range")]
    EntryOutOfRange(usize),
    #[error("no two-sided identity")]
    NoIdentity,
    #[error("row or column {0} is not a permutation")]
    NotLatin(usize),
    #[error("not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
}

/// A finite group given by its Cayley table over `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Validates the group axioms (closure, identity, inverses, associativity).
    pub fn new(order: usize, table: Vec<usize>) -> Result<Self, GroupTableError> {
        if order == 0 {
            return Err(GroupTableError::Empty);
        }
        if table.len() != order * order {
            return Err(GroupTableError::WrongSize {
                expected: order * order,
                found: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(GroupTableError::EntryOutOfRange(bad));
        }
        for i in 0..order {
            let row: BTreeSet<usize> = (0..order).map(|j| table[i * order + j]).collect();
            let col: BTreeSet<usize> = (0..order).map(|j| table[j * order + i]).collect();
            if row.len() != order || col.len() != order {
                return Err(GroupTableError::NotLatin(i));
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
            .ok_or(GroupTableError::NoIdentity)?;
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    if table[ab * order + c] != table[a * order + table[b * order + c]] {
                        return Err(GroupTableError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let inverse = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| table[a * order + b] == identity)
                    .expect("latin square has an inverse in every row")
            })
            .collect();
        Ok(Self {
            order,
            table,
            identity,
            inverse,
        })
    }

    /// `Z_m` under addition.
    pub fn cyclic(m: usize) -> Self {
        let table = (0..m * m).map(|k| (k / m + k % m) % m).collect();
        Self::new(m, table).expect("Z_m is a group")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }
}
