//! Imprimitivity of distance-regular graphs and recognition of named families.
//!
//! Conventions:
//! - A complete graph (diameter 1) is reported as antipodal with a single
//!   fibre equal to the whole vertex set. Antipodality is otherwise only
//!   meaningful for diameter at least 2.
//! - When several family tags apply, the primary tag follows the precedence
//!   `Complete > CompleteMultipartite > CrownGraph > Paley > Cycle`; the
//!   other matches are kept as secondary tags.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::graph::Graph;
use crate::metrics::{bfs_distances, IntersectionArray};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("distance index {index} outside 1..={diameter}")]
    IndexOutOfRange { index: usize, diameter: usize },
}

/// All-pairs distance table, `u32::MAX` for unreachable pairs.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceTable {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut dist = Vec::with_capacity(n * n);
        for u in 0..n {
            dist.extend(bfs_distances(g, u).into_iter().map(|d| d.unwrap_or(u32::MAX)));
        }
        Self { n, dist }
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn diameter(&self) -> Option<usize> {
        let m = self.dist.iter().copied().max().unwrap_or(0);
        (m != u32::MAX).then_some(m as usize)
    }
}

/// A 2-colouring, part containing vertex 0 first. Each part is sorted.
pub fn bipartition(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.vertex_count();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let cu = colour[u].expect("coloured before push");
            for v in g.neighbors(u).iter() {
                match colour[v] {
                    None => {
                        colour[v] = Some(!cu);
                        stack.push(v);
                    }
                    Some(cv) if cv == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let (a, b): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| colour[v] == Some(false));
    Some((a, b))
}

/// Fibres of the relation `∂(u, v) ∈ {0, d}` and the antipodal quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntipodalStructure {
    pub fibres: Vec<Vec<usize>>,
    /// Common fibre size.
    pub fibre_size: usize,
    pub quotient: Graph,
}

/// The antipodal classes of a connected graph of diameter `d`, if the
/// relation `∂(u, v) ∈ {0, d}` is an equivalence with equal-sized classes.
pub fn antipodal_classes(g: &Graph, d: usize) -> Option<AntipodalStructure> {
    let n = g.vertex_count();
    if d <= 1 {
        return Some(AntipodalStructure {
            fibres: vec![(0..n).collect()],
            fibre_size: n,
            quotient: Graph::empty(1),
        });
    }
    let table = DistanceTable::new(g);
    let class_of = |u: usize| -> Vec<usize> {
        (0..n)
            .filter(|&v| {
                let x = table.get(u, v);
                x == 0 || x as usize == d
            })
            .collect()
    };
    let mut fibre_index = vec![usize::MAX; n];
    let mut fibres: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        if fibre_index[u] != usize::MAX {
            continue;
        }
        let class = class_of(u);
        for &v in &class {
            if class_of(v) != class {
                return None;
            }
            fibre_index[v] = fibres.len();
        }
        fibres.push(class);
    }
    let fibre_size = fibres[0].len();
    if fibres.iter().any(|f| f.len() != fibre_size) {
        return None;
    }
    let quotient = quotient_graph(g, &fibres);
    Some(AntipodalStructure {
        fibres,
        fibre_size,
        quotient,
    })
}

/// Blocks become vertices, adjacent when some edge joins the two blocks.
pub fn quotient_graph(g: &Graph, blocks: &[Vec<usize>]) -> Graph {
    let n = g.vertex_count();
    let masks: Vec<BitSet> = blocks.iter().map(|b| BitSet::from_indices(n, b.iter().copied())).collect();
    let mut q = Graph::empty(blocks.len());
    for i in 0..blocks.len() {
        let mut reach = BitSet::new(n);
        for &v in &blocks[i] {
            reach.union_with(g.neighbors(v));
        }
        for j in i + 1..blocks.len() {
            if !reach.is_disjoint(&masks[j]) {
                q.add_edge(i, j);
            }
        }
    }
    q
}

/// `Γ_i`: distinct vertices adjacent iff at distance exactly `i`.
pub fn distance_i_graph(g: &Graph, i: usize) -> Result<Graph, StructureError> {
    let table = DistanceTable::new(g);
    let diameter = table.diameter().ok_or(StructureError::Disconnected)?;
    if i == 0 || i > diameter {
        return Err(StructureError::IndexOutOfRange { index: i, diameter });
    }
    Ok(distance_graph_from_table(&table, g.vertex_count(), i))
}

fn distance_graph_from_table(table: &DistanceTable, n: usize, i: usize) -> Graph {
    let mut out = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if table.get(u, v) as usize == i {
                out.add_edge(u, v);
            }
        }
    }
    out
}

/// The two halved graphs of a connected bipartite graph: the distance-2
/// graph induced on each part. The part containing vertex 0 comes first.
pub fn halved_graphs(g: &Graph) -> Result<(Graph, Graph), StructureError> {
    let (p, q) = bipartition(g).ok_or(StructureError::NotBipartite)?;
    if !g.is_connected() {
        return Err(StructureError::Disconnected);
    }
    let table = DistanceTable::new(g);
    let gamma2 = distance_graph_from_table(&table, g.vertex_count(), 2);
    Ok((gamma2.induced_subgraph(&p), gamma2.induced_subgraph(&q)))
}

/// True iff every distance graph `Γ_1..Γ_d` is connected.
pub fn is_primitive(g: &Graph, d: usize) -> bool {
    let table = DistanceTable::new(g);
    (1..=d).all(|i| distance_graph_from_table(&table, g.vertex_count(), i).is_connected())
}

/// The quotient matrix `(b_ij)` if `partition` is equitable.
pub fn is_equitable(g: &Graph, partition: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    let masks: Vec<BitSet> = partition
        .iter()
        .map(|b| BitSet::from_indices(n, b.iter().copied()))
        .collect();
    let covered: usize = masks.iter().map(BitSet::count).sum();
    if covered != n || partition.iter().map(Vec::len).sum::<usize>() != n {
        return None;
    }
    let mut matrix = vec![vec![0; partition.len()]; partition.len()];
    for (i, block) in partition.iter().enumerate() {
        let first = *block.first()?;
        for (j, mask) in masks.iter().enumerate() {
            let count = g.neighbors(first).intersection_count(mask);
            if block.iter().any(|&v| g.neighbors(v).intersection_count(mask) != count) {
                return None;
            }
            matrix[i][j] = count;
        }
    }
    Some(matrix)
}

/// Named distance-regular families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyTag {
    Cycle(usize),
    Complete(usize),
    /// `K_{t×m}`: `t` parts of size `m`.
    CompleteMultipartite { t: usize, m: usize },
    /// `K_{m,m} - mK_2`.
    CrownGraph(usize),
    Paley(usize),
    Unrecognized,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Cycle(n) => write!(f, "Cycle({n})"),
            FamilyTag::Complete(n) => write!(f, "Complete({n})"),
            FamilyTag::CompleteMultipartite { t, m } => write!(f, "CompleteMultipartite({t},{m})"),
            FamilyTag::CrownGraph(m) => write!(f, "CrownGraph({m})"),
            FamilyTag::Paley(q) => write!(f, "Paley({q})"),
            FamilyTag::Unrecognized => write!(f, "Unrecognized"),
        }
    }
}

/// The primary tag plus every other family the graph also belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecognition {
    pub primary: FamilyTag,
    pub also: Vec<FamilyTag>,
}

impl FamilyRecognition {
    pub fn matches(&self, pred: impl Fn(&FamilyTag) -> bool) -> bool {
        pred(&self.primary) || self.also.iter().any(pred)
    }
}

/// Structural recognition of the circulant distance-regular families.
pub fn recognize_family(g: &Graph) -> FamilyRecognition {
    let mut tags = Vec::new();
    let n = g.vertex_count();
    if n >= 1 && g.is_complete() {
        tags.push(FamilyTag::Complete(n));
    }
    if let Some((t, m)) = complete_multipartite_shape(g) {
        tags.push(FamilyTag::CompleteMultipartite { t, m });
    }
    if let Some(m) = crown_order(g) {
        tags.push(FamilyTag::CrownGraph(m));
    }
    if is_paley(g) {
        tags.push(FamilyTag::Paley(n));
    }
    if n >= 3 && g.regular_degree() == Some(2) && g.is_connected() {
        tags.push(FamilyTag::Cycle(n));
    }
    let mut it = tags.into_iter();
    FamilyRecognition {
        primary: it.next().unwrap_or(FamilyTag::Unrecognized),
        also: it.collect(),
    }
}

/// `(t, m)` with `t, m >= 2` when the complement is `t` disjoint copies of `K_m`.
pub fn complete_multipartite_shape(g: &Graph) -> Option<(usize, usize)> {
    let comp = g.complement();
    let parts = comp.components();
    let m = parts.first()?.len();
    if m < 2 || parts.len() < 2 || parts.iter().any(|p| p.len() != m) {
        return None;
    }
    let all_cliques = parts
        .iter()
        .all(|p| p.iter().all(|&v| comp.degree(v) == m - 1));
    all_cliques.then_some((parts.len(), m))
}

/// `m` when `g` is `K_{m,m}` minus a perfect matching with `m >= 3`.
pub fn crown_order(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    if n < 6 || !n.is_multiple_of(2) || !g.is_connected() {
        return None;
    }
    let m = n / 2;
    let (p, q) = bipartition(g)?;
    // A balanced (m-1)-regular bipartite graph misses exactly one vertex of the
    // other side per vertex, and those misses form a perfect matching.
    (p.len() == m && q.len() == m && g.regular_degree() == Some(m - 1)).then_some(m)
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// `P(q)` on `Z_q`: `x ~ y` iff `x - y` is a non-zero square. `q` prime, `q ≡ 1 (mod 4)`.
pub fn paley_graph(q: usize) -> Graph {
    assert!(is_prime(q) && q % 4 == 1, "Paley graphs need a prime q ≡ 1 (mod 4)");
    let squares: Vec<bool> = {
        let mut s = vec![false; q];
        for x in 1..q {
            s[x * x % q] = true;
        }
        s
    };
    let mut g = Graph::empty(q);
    for x in 0..q {
        for y in x + 1..q {
            if squares[(y - x) % q] {
                g.add_edge(x, y);
            }
        }
    }
    g
}

fn is_paley(g: &Graph) -> bool {
    let q = g.vertex_count();
    if !is_prime(q) || q % 4 != 1 || g.regular_degree() != Some((q - 1) / 2) {
        return false;
    }
    is_isomorphic(g, &paley_graph(q))
}

/// Backtracking isomorphism test for small graphs.
///
/// Vertices of `g` are mapped in BFS order so every new vertex (after the
/// first in each component) has an already-mapped neighbour to constrain it.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut dg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for s in 0..n {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        let start = order.len();
        order.push(s);
        let mut k = start;
        while k < order.len() {
            let u = order[k];
            for v in g.neighbors(u).iter() {
                if !placed[v] {
                    placed[v] = true;
                    order.push(v);
                }
            }
            k += 1;
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_isomorphism(g, h, &order, 0, &mut map, &mut used)
}

fn extend_isomorphism(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    for cand in 0..h.vertex_count() {
        if used[cand] || g.degree(u) != h.degree(cand) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&w| g.has_edge(u, w) == h.has_edge(cand, map[w]));
        if !consistent {
            continue;
        }
        map[u] = cand;
        used[cand] = true;
        if extend_isomorphism(g, h, order, depth + 1, map, used) {
            return true;
        }
        used[cand] = false;
        map[u] = usize::MAX;
    }
    false
}

/// `{k, μ(r-1), 1; 1, μ, k}` for an `r`-fold antipodal non-bipartite DRG of diameter 3.
pub fn antipodal_d3_shape_holds(array: &IntersectionArray, r: usize) -> bool {
    let Some(mu) = array.mu() else { return false };
    let k = array.k();
    array.diameter() == 3 && r >= 1 && array.b == vec![k, mu * (r - 1), 1] && array.c == vec![1, mu, k]
}

/// `{rμ, rμ-1, (r-1)μ, 1; 1, μ, rμ-1, rμ}` for an `r`-fold antipodal bipartite DRG of diameter 4.
pub fn antipodal_bipartite_d4_shape_holds(array: &IntersectionArray, r: usize) -> bool {
    let Some(mu) = array.mu() else { return false };
    if array.diameter() != 4 || r == 0 || r * mu == 0 {
        return false;
    }
    let rm = r * mu;
    array.b == vec![rm, rm - 1, (r - 1) * mu, 1] && array.c == vec![1, mu, rm - 1, rm]
}
