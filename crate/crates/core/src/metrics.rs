//! Distances, intersection numbers and the distance-regularity test.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::cayley::ConnectionSpec;
use crate::graph::Graph;
use crate::group::Element;
use crate::residue::ResidueSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("graph is disconnected")]
    DisconnectedGraph,
}

/// Shortest-path distances from `source`; `None` marks unreachable vertices.
///
/// Expands whole frontiers at once by OR-ing adjacency rows.
pub fn bfs_distances(g: &Graph, source: usize) -> Vec<Option<u32>> {
    let n = g.vertex_count();
    let mut dist = vec![None; n];
    let mut visited = BitSet::new(n);
    let mut frontier = BitSet::new(n);
    visited.insert(source);
    frontier.insert(source);
    let mut level = 0u32;
    while !frontier.is_empty() {
        for v in frontier.iter() {
            dist[v] = Some(level);
        }
        let mut next = BitSet::new(n);
        for v in frontier.iter() {
            next.union_with(g.neighbors(v));
        }
        next.difference_with(&visited);
        visited.union_with(&next);
        frontier = next;
        level += 1;
    }
    dist
}

/// Reference implementations kept for cross-checking the fast paths.
pub mod oracle {
    use std::collections::VecDeque;

    use crate::graph::Graph;

    /// Textbook queue BFS.
    pub fn naive_bfs_distances(g: &Graph, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; g.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have distances");
            for v in 0..g.vertex_count() {
                if g.has_edge(u, v) && dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

/// The shells `N_0(base), N_1(base), ...` of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistancePartition {
    pub base: usize,
    pub shells: Vec<BitSet>,
    dist: Vec<u32>,
}

impl DistancePartition {
    pub fn new(g: &Graph, base: usize) -> Result<Self, MetricsError> {
        let raw = bfs_distances(g, base);
        let dist: Vec<u32> = raw
            .into_iter()
            .collect::<Option<_>>()
            .ok_or(MetricsError::DisconnectedGraph)?;
        let ecc = dist.iter().copied().max().unwrap_or(0) as usize;
        let mut shells = vec![BitSet::new(g.vertex_count()); ecc + 1];
        for (v, &d) in dist.iter().enumerate() {
            shells[d as usize].insert(v);
        }
        Ok(Self { base, shells, dist })
    }

    pub fn eccentricity(&self) -> usize {
        self.shells.len() - 1
    }

    #[inline]
    pub fn distance(&self, v: usize) -> usize {
        self.dist[v] as usize
    }

    pub fn distances(&self) -> &[u32] {
        &self.dist
    }

    /// `|N_i ∩ set|`, zero outside `0..=eccentricity`.
    pub fn shell_count(&self, i: isize, set: &BitSet) -> usize {
        if i < 0 || i as usize >= self.shells.len() {
            0
        } else {
            self.shells[i as usize].intersection_count(set)
        }
    }

    /// `(R_j, T_j)` for each shell, for a dicirculant on `4n` vertices
    /// indexed `α^i ↦ i`, `α^iβ ↦ 2n + i`.
    pub fn exponent_shells(&self, n: u32) -> Vec<(ResidueSet, ResidueSet)> {
        let m = 2 * n as usize;
        assert_eq!(self.dist.len(), 2 * m, "not a dicirculant on 4n vertices");
        self.shells
            .iter()
            .map(|shell| {
                let r = ResidueSet::from_residues(2 * n, shell.iter().filter(|&v| v < m).map(|v| v as i64));
                let t = ResidueSet::from_residues(2 * n, shell.iter().filter(|&v| v >= m).map(|v| (v - m) as i64));
                (r, t)
            })
            .collect()
    }
}

/// `(c_i, a_i, b_i)` for one ordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionTriple {
    pub c: usize,
    pub a: usize,
    pub b: usize,
}

fn triple_for(g: &Graph, part: &DistancePartition, v: usize) -> IntersectionTriple {
    let i = part.distance(v) as isize;
    let nv = g.neighbors(v);
    IntersectionTriple {
        c: part.shell_count(i - 1, nv),
        a: part.shell_count(i, nv),
        b: part.shell_count(i + 1, nv),
    }
}

/// `(|N_{i-1}(u) ∩ N(v)|, |N_i(u) ∩ N(v)|, |N_{i+1}(u) ∩ N(v)|)` with `i = ∂(u, v)`.
pub fn intersection_numbers(g: &Graph, u: usize, v: usize) -> Result<IntersectionTriple, MetricsError> {
    let part = DistancePartition::new(g, u)?;
    Ok(triple_for(g, &part, v))
}

/// `{b_0, ..., b_{d-1}; c_1, ..., c_d}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl IntersectionArray {
    pub fn new(b: Vec<usize>, c: Vec<usize>) -> Self {
        assert_eq!(b.len(), c.len(), "b and c must both have d entries");
        Self { b, c }
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    /// Valency `k = b_0` (zero for the one-vertex graph).
    pub fn k(&self) -> usize {
        self.b.first().copied().unwrap_or(0)
    }

    /// `b_i`, with `b_d = 0`.
    pub fn b_at(&self, i: usize) -> usize {
        self.b.get(i).copied().unwrap_or(0)
    }

    /// `c_i`, with `c_0 = 0`.
    pub fn c_at(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }

    /// `a_i = k - b_i - c_i`.
    pub fn a_at(&self, i: usize) -> usize {
        self.k() - self.b_at(i) - self.c_at(i)
    }

    /// `λ = a_1`.
    pub fn lambda(&self) -> Option<usize> {
        (self.diameter() >= 1).then(|| self.a_at(1))
    }

    /// `μ = c_2`, undefined for diameter below 2.
    pub fn mu(&self) -> Option<usize> {
        self.c.get(1).copied()
    }

    /// Shell sizes `|N_i| = |N_{i-1}| b_{i-1} / c_i`.
    pub fn shell_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![1];
        for i in 1..=self.diameter() {
            let prev = sizes[i - 1];
            sizes.push(prev * self.b[i - 1] / self.c[i - 1]);
        }
        sizes
    }

    pub fn vertex_count(&self) -> usize {
        self.shell_sizes().iter().sum()
    }

    /// `c_1 = 1`, all entries non-negative, `a_i + b_i + c_i = k` for every `i`.
    pub fn is_consistent(&self) -> bool {
        if self.diameter() == 0 {
            return true;
        }
        let k = self.k();
        self.c[0] == 1
            && (0..=self.diameter()).all(|i| self.b_at(i) + self.c_at(i) <= k)
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

/// A pair whose intersection numbers disagree with the reference constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotDrgWitness {
    pub u: usize,
    pub v: usize,
    pub distance: usize,
    /// Constants recorded first for this distance, if that distance occurred before.
    pub expected: Option<IntersectionTriple>,
    pub found: IntersectionTriple,
}

impl fmt::Display for NotDrgWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = |x: &IntersectionTriple| format!("(c={}, a={}, b={})", x.c, x.a, x.b);
        match &self.expected {
            Some(e) => write!(
                f,
                "pair ({}, {}) at distance {}: found {} but expected {}",
                self.u,
                self.v,
                self.distance,
                t(&self.found),
                t(e)
            ),
            None => write!(
                f,
                "pair ({}, {}) at distance {} exceeds the reference diameter",
                self.u, self.v, self.distance
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DrgOutcome {
    Regular(IntersectionArray),
    NotRegular(NotDrgWitness),
}

impl DrgOutcome {
    pub fn array(&self) -> Option<&IntersectionArray> {
        match self {
            DrgOutcome::Regular(a) => Some(a),
            DrgOutcome::NotRegular(_) => None,
        }
    }

    pub fn is_regular(&self) -> bool {
        matches!(self, DrgOutcome::Regular(_))
    }
}

/// Decides distance-regularity.
///
/// With `vertex_transitive_hint` only pairs `(0, v)` are inspected, which is
/// sufficient when automorphisms move vertex 0 everywhere (all Cayley graphs).
/// Otherwise every ordered pair is checked against the constants seen first.
pub fn is_distance_regular(g: &Graph, vertex_transitive_hint: bool) -> Result<DrgOutcome, MetricsError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(DrgOutcome::Regular(IntersectionArray::new(vec![], vec![])));
    }
    let bases = if vertex_transitive_hint { 1 } else { n };
    let mut constants: Vec<Option<IntersectionTriple>> = Vec::new();
    for u in 0..bases {
        let part = DistancePartition::new(g, u)?;
        if constants.len() < part.shells.len() && u > 0 {
            // A later base sees a larger eccentricity than the reference.
            let v = part.shells[constants.len()].first().expect("non-empty shell");
            return Ok(DrgOutcome::NotRegular(NotDrgWitness {
                u,
                v,
                distance: constants.len(),
                expected: None,
                found: triple_for(g, &part, v),
            }));
        }
        if u == 0 {
            constants = vec![None; part.shells.len()];
        }
        for v in 0..n {
            let i = part.distance(v);
            let found = triple_for(g, &part, v);
            match constants[i] {
                None => constants[i] = Some(found),
                Some(expected) if expected != found => {
                    return Ok(DrgOutcome::NotRegular(NotDrgWitness {
                        u,
                        v,
                        distance: i,
                        expected: Some(expected),
                        found,
                    }))
                }
                Some(_) => {}
            }
        }
        if u > 0 && part.shells.len() < constants.len() {
            // Smaller eccentricity: some reference b_i would be non-zero at the top shell.
            let top = part.shells.len() - 1;
            let v = part.shells[top].first().expect("non-empty shell");
            return Ok(DrgOutcome::NotRegular(NotDrgWitness {
                u,
                v,
                distance: top,
                expected: constants[top],
                found: triple_for(g, &part, v),
            }));
        }
    }
    let d = constants.len() - 1;
    let triples: Vec<IntersectionTriple> = constants.into_iter().map(|t| t.expect("every shell is non-empty")).collect();
    let b = (0..d).map(|i| triples[i].b).collect();
    let c = (1..=d).map(|i| triples[i].c).collect();
    Ok(DrgOutcome::Regular(IntersectionArray::new(b, c)))
}

/// `|N(x) ∩ N(y)|` in `Dic(n, R, T)` from the counting formulas:
/// `|R ∩ (j-i+R)| + |T ∩ (j-i+T)|` for same-type vertices and
/// `2|(j-i+R) ∩ T|` for `x = α^i`, `y = α^j β` (or the reverse).
pub fn common_neighbors_count(spec: &ConnectionSpec, x: Element, y: Element) -> usize {
    let r = spec.r();
    let t = spec.t();
    let (i, j) = (x.exp as i64, y.exp as i64);
    match (x.flip, y.flip) {
        (false, false) | (true, true) => {
            r.shifted_intersection_count(j - i, r) + t.shifted_intersection_count(j - i, t)
        }
        (false, true) => 2 * t.shifted_intersection_count(0, &r.translate(j - i)),
        (true, false) => 2 * t.shifted_intersection_count(0, &r.translate(i - j)),
    }
}
