//! Connection sets `(n, R, T)` and the dicirculants `Dic(n, R, T) = Cay(Dic_n, α^R ∪ α^T β)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::graph::{Graph, MAX_VERTICES};
use crate::group::{apply_automorphism, AutomorphismParams, Dicyclic, Element};
use crate::residue::ResidueSet;

/// One violated constraint of a connection set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecViolation {
    /// `0 ∈ R`.
    ZeroInR,
    /// `R ≠ -R`.
    RNotSymmetric,
    /// `T ≠ n + T`.
    TNotHalfPeriodic,
    /// `<S> ≠ Dic_n`, so the graph is disconnected.
    NotGenerating,
}

impl fmt::Display for SpecViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpecViolation::ZeroInR => "ZeroInR: 0 must not be in R",
            SpecViolation::RNotSymmetric => "RNotSymmetric: R must equal -R",
            SpecViolation::TNotHalfPeriodic => "TNotHalfPeriodic: T must equal n+T",
            SpecViolation::NotGenerating => "NotGenerating: S does not generate Dic_n",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("invalid connection set: {}", join_violations(.0))]
    Invalid(Vec<SpecViolation>),
    #[error("n must be positive")]
    ZeroN,
    #[error("n = {0} gives more than {MAX_VERTICES} vertices")]
    TooLarge(u32),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

fn join_violations(v: &[SpecViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A validated triple `(n, R, T)` with `0 ∉ R`, `R = -R` and `T = n + T`.
///
/// Connectivity is recorded rather than enforced: disconnected specs are
/// valid values, flagged by [`ConnectionSpec::is_connected`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectionSpec {
    n: u32,
    r: ResidueSet,
    t: ResidueSet,
    connected: bool,
}

impl PartialOrd for ConnectionSpec {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ConnectionSpec {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.r, &self.t).cmp(&(other.n, &other.r, &other.t))
    }
}

impl ConnectionSpec {
    /// Validates `(n, R, T)`, reducing all residues modulo `2n`.
    ///
    /// Fails only on the structural constraints; a non-generating `S` is
    /// reported through [`ConnectionSpec::is_connected`].
    pub fn new(n: u32, r: impl IntoIterator<Item = i64>, t: impl IntoIterator<Item = i64>) -> Result<Self, SpecError> {
        if n == 0 {
            return Err(SpecError::ZeroN);
        }
        if 4 * n as usize > MAX_VERTICES {
            return Err(SpecError::TooLarge(n));
        }
        let r = ResidueSet::from_residues(2 * n, r);
        let t = ResidueSet::from_residues(2 * n, t);
        Self::from_sets(n, r, t)
    }

    pub fn from_sets(n: u32, r: ResidueSet, t: ResidueSet) -> Result<Self, SpecError> {
        let violations = structural_violations(n, &r, &t);
        if !violations.is_empty() {
            return Err(SpecError::Invalid(violations));
        }
        Ok(Self::from_parts_unchecked(n, r, t))
    }

    /// Skips the structural checks; callers must preserve them.
    pub(crate) fn from_parts_unchecked(n: u32, r: ResidueSet, t: ResidueSet) -> Self {
        debug_assert!(structural_violations(n, &r, &t).is_empty());
        let connected = generates(n, &r, &t);
        Self { n, r, t, connected }
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn r(&self) -> &ResidueSet {
        &self.r
    }

    #[inline]
    pub fn t(&self) -> &ResidueSet {
        &self.t
    }

    /// `k = |R| + |T|`.
    pub fn valency(&self) -> usize {
        self.r.len() + self.t.len()
    }

    pub fn vertex_count(&self) -> usize {
        4 * self.n as usize
    }

    pub fn group(&self) -> Dicyclic {
        Dicyclic::new(self.n).expect("validated n")
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// `Err(NotGenerating)` for disconnected specs.
    pub fn require_connected(&self) -> Result<&Self, SpecError> {
        if self.connected {
            Ok(self)
        } else {
            Err(SpecError::Invalid(vec![SpecViolation::NotGenerating]))
        }
    }

    /// The connection set `S = α^R ∪ α^T β`.
    pub fn connection_set(&self) -> Vec<Element> {
        self.r
            .iter()
            .map(|i| Element::new(i, false))
            .chain(self.t.iter().map(|i| Element::new(i, true)))
            .collect()
    }
}

impl fmt::Display for ConnectionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; R={}; T={}", self.n, self.r, self.t)
    }
}

fn structural_violations(n: u32, r: &ResidueSet, t: &ResidueSet) -> Vec<SpecViolation> {
    let mut v = Vec::new();
    if r.contains(0) {
        v.push(SpecViolation::ZeroInR);
    }
    if r.negate() != *r {
        v.push(SpecViolation::RNotSymmetric);
    }
    if t.translate(n as i64) != *t {
        v.push(SpecViolation::TNotHalfPeriodic);
    }
    v
}

fn generates(n: u32, r: &ResidueSet, t: &ResidueSet) -> bool {
    let g = Dicyclic::new(n).expect("n >= 1");
    let gens: Vec<Element> = r
        .iter()
        .map(|i| Element::new(i, false))
        .chain(t.iter().map(|i| Element::new(i, true)))
        .collect();
    if gens.is_empty() {
        return g.order() == 1;
    }
    g.generate(&gens).order == g.order()
}

/// Checks every constraint, including generation, and lists all violations.
pub fn validate_spec(
    n: u32,
    r: impl IntoIterator<Item = i64>,
    t: impl IntoIterator<Item = i64>,
) -> Result<ConnectionSpec, SpecError> {
    if n == 0 {
        return Err(SpecError::ZeroN);
    }
    let r = ResidueSet::from_residues(2 * n, r);
    let t = ResidueSet::from_residues(2 * n, t);
    let mut violations = structural_violations(n, &r, &t);
    if !generates(n, &r, &t) {
        violations.push(SpecViolation::NotGenerating);
    }
    if violations.is_empty() {
        Ok(ConnectionSpec::from_parts_unchecked(n, r, t))
    } else {
        Err(SpecError::Invalid(violations))
    }
}

/// Builds `Dic(n, R, T)` from the neighbourhood formulas
/// `N(α^i) = α^{i+R} ∪ α^{i+T}β` and `N(α^iβ) = α^{i-T} ∪ α^{i+R}β`.
///
/// Vertex `i` is `α^i` and vertex `2n + i` is `α^i β`.
pub fn build_graph(spec: &ConnectionSpec) -> Graph {
    let m = 2 * spec.n as usize;
    let v = 2 * m;
    let mut rows = vec![BitSet::new(v); v];
    for i in 0..m {
        let ii = i as i64;
        let row = &mut rows[i];
        for r in spec.r.iter() {
            row.insert(spec.r.reduce(ii + r as i64) as usize);
        }
        for t in spec.t.iter() {
            row.insert(m + spec.t.reduce(ii + t as i64) as usize);
        }
        let row = &mut rows[m + i];
        for t in spec.t.iter() {
            row.insert(spec.t.reduce(ii - t as i64) as usize);
        }
        for r in spec.r.iter() {
            row.insert(m + spec.r.reduce(ii + r as i64) as usize);
        }
    }
    let group = spec.group();
    Graph::from_rows(rows).with_labels(group.elements().collect())
}

/// `Cay(G, S)` straight from the definition: `g ~ h` iff `g⁻¹h ∈ S`.
///
/// `S` must be inverse-closed and exclude the identity.
pub fn cayley_graph(group: &Dicyclic, connection: &[Element]) -> Graph {
    let order = group.order();
    let mut in_s = vec![false; order];
    for &s in connection {
        in_s[group.index_of(s)] = true;
    }
    let mut rows = vec![BitSet::new(order); order];
    for g in group.elements() {
        let gi = group.inverse(g);
        let row = &mut rows[group.index_of(g)];
        for h in group.elements() {
            if in_s[group.index_of(group.multiply(gi, h))] {
                row.insert(group.index_of(h));
            }
        }
    }
    Graph::from_rows(rows).with_labels(group.elements().collect())
}

/// Lexicographically least `(uR, uT + v)` over all automorphism parameters.
///
/// This deduplicates up to the `(u, v)` automorphism family; it is not a
/// full isomorphism-class reduction.
pub fn canonicalize(spec: &ConnectionSpec) -> ConnectionSpec {
    canonicalize_with_params(spec).0
}

/// Like [`canonicalize`], also returning the first parameters reaching the minimum.
pub fn canonicalize_with_params(spec: &ConnectionSpec) -> (ConnectionSpec, AutomorphismParams) {
    let n = spec.n;
    let m = 2 * n;
    let mut best: Option<(ResidueSet, ResidueSet, AutomorphismParams)> = None;
    for u in (1..m.max(2)).filter(|&u| gcd(u, m) == 1) {
        let r = spec.r.scale(u as i64);
        if let Some((br, _, _)) = &best {
            if r > *br {
                continue;
            }
        }
        let ut = spec.t.scale(u as i64);
        for v in 0..m {
            let t = ut.translate(v as i64);
            let better = match &best {
                None => true,
                Some((br, bt, _)) => (&r, &t) < (br, bt),
            };
            if better {
                let p = AutomorphismParams::new(n, u as i64, v as i64).expect("unit");
                best = Some((r.clone(), t, p));
            }
        }
    }
    let (r, t, p) = best.expect("at least u = 1 is a unit");
    let canonical = ConnectionSpec {
        n,
        r,
        t,
        connected: spec.connected,
    };
    debug_assert_eq!(apply_automorphism(&p, spec).as_ref(), Ok(&canonical));
    (canonical, p)
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl FromStr for ConnectionSpec {
    type Err = SpecError;

    /// Parses `n=<int>; R=<list>; T=<list>`, whitespace-insensitive.
    fn from_str(s: &str) -> Result<Self, SpecError> {
        let (n, r, t) = parse_spec_fields(s)?;
        ConnectionSpec::new(n, r, t)
    }
}

/// Raw fields of a spec string, before validation.
pub fn parse_spec_fields(s: &str) -> Result<(u32, Vec<i64>, Vec<i64>), SpecError> {
    let mut n: Option<u32> = None;
    let mut r: Option<Vec<i64>> = None;
    let mut t: Option<Vec<i64>> = None;
    let mut offset = 0;
    for part in s.split(';') {
        let start = offset;
        offset += part.len() + 1;
        if part.trim().is_empty() {
            continue;
        }
        let lead = part.len() - part.trim_start().len();
        let Some(eq) = part.find('=') else {
            return Err(SpecError::Parse {
                position: start + lead,
                message: format!("expected `key=value`, found `{}`", part.trim()),
            });
        };
        let key = part[..eq].trim();
        let value = &part[eq + 1..];
        let value_pos = start + eq + 1;
        let dup = |name: &str| SpecError::Parse {
            position: start + lead,
            message: format!("duplicate field `{name}`"),
        };
        match key {
            "n" => {
                if n.is_some() {
                    return Err(dup("n"));
                }
                let v = value.trim();
                let parsed = v.parse::<u32>().map_err(|_| SpecError::Parse {
                    position: value_pos + (value.len() - value.trim_start().len()),
                    message: format!("`{v}` is not a positive integer"),
                })?;
                n = Some(parsed);
            }
            "R" | "T" => {
                let list = parse_list(value, value_pos)?;
                let slot = if key == "R" { &mut r } else { &mut t };
                if slot.is_some() {
                    return Err(dup(key));
                }
                *slot = Some(list);
            }
            other => {
                return Err(SpecError::Parse {
                    position: start + lead,
                    message: format!("unknown field `{other}` (expected n, R or T)"),
                })
            }
        }
    }
    let missing = |name: &str| SpecError::Parse {
        position: s.len(),
        message: format!("missing field `{name}`"),
    };
    let n = n.ok_or_else(|| missing("n"))?;
    if n == 0 {
        return Err(SpecError::ZeroN);
    }
    Ok((n, r.ok_or_else(|| missing("R"))?, t.ok_or_else(|| missing("T"))?))
}

fn parse_list(value: &str, base: usize) -> Result<Vec<i64>, SpecError> {
    let mut out = Vec::new();
    if value.trim().is_empty() {
        return Ok(out);
    }
    let mut offset = 0;
    for item in value.split(',') {
        let pos = base + offset + (item.len() - item.trim_start().len());
        offset += item.len() + 1;
        let it = item.trim();
        let parsed: i64 = it.parse().map_err(|_| SpecError::Parse {
            position: pos,
            message: format!("`{it}` is not an integer"),
        })?;
        out.push(parsed);
    }
    Ok(out)
}
