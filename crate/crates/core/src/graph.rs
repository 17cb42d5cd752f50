//! Dense undirected simple graphs with bitset adjacency rows.

use crate::bitset::BitSet;
use crate::group::Element;

/// Upper bound on the vertex count; rows stay dense.
pub const MAX_VERTICES: usize = 4096;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<BitSet>,
    labels: Option<Vec<Element>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertex_count())
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl Graph {
    pub fn empty(vertex_count: usize) -> Self {
        assert!(
            vertex_count <= MAX_VERTICES,
            "graph with {vertex_count} vertices exceeds {MAX_VERTICES}"
        );
        Self {
            rows: vec![BitSet::new(vertex_count); vertex_count],
            labels: None,
        }
    }

    pub fn complete(vertex_count: usize) -> Self {
        let mut g = Self::empty(vertex_count);
        for (u, row) in g.rows.iter_mut().enumerate() {
            *row = BitSet::full(vertex_count);
            row.remove(u);
        }
        g
    }

    pub fn cycle(len: usize) -> Self {
        let mut g = Self::empty(len);
        for i in 0..len {
            g.add_edge(i, (i + 1) % len);
        }
        g
    }

    pub fn from_edges(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::empty(vertex_count);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Builds a graph from symmetric adjacency rows. Panics on loops or asymmetry.
    pub fn from_rows(rows: Vec<BitSet>) -> Self {
        let n = rows.len();
        for (u, row) in rows.iter().enumerate() {
            assert_eq!(row.capacity(), n);
            assert!(!row.contains(u), "loop at {u}");
            for v in row.iter() {
                assert!(rows[v].contains(u), "asymmetric edge {u}->{v}");
            }
        }
        Self { rows, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<Element>) -> Self {
        assert_eq!(labels.len(), self.vertex_count());
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[Element]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "loops are not allowed");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    /// The common degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.rows.first().map_or(0, BitSet::count);
        self.rows.iter().all(|r| r.count() == k).then_some(k)
    }

    pub fn complement(&self) -> Graph {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(u, r)| {
                let mut c = r.complement();
                c.remove(u);
                c
            })
            .collect();
        Graph { rows, labels: None }
    }

    /// Subgraph induced on `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut g = Graph::empty(k);
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(vertices.iter().map(|&v| labels[v]).collect());
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = BitSet::new(n);
        let mut out = Vec::new();
        for s in 0..n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = BitSet::new(n);
            comp.insert(s);
            let mut frontier = comp.clone();
            while !frontier.is_empty() {
                let mut next = BitSet::new(n);
                for v in frontier.iter() {
                    next.union_with(&self.rows[v]);
                }
                next.difference_with(&comp);
                comp.union_with(&next);
                frontier = next;
            }
            seen.union_with(&comp);
            out.push(comp.to_vec());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    /// True when every pair of distinct vertices is adjacent.
    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        n == 0 || self.regular_degree() == Some(n - 1)
    }
}
