//! Simple graphs and multigraphs on at most [`MAX_VERTICES`] labeled vertices.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest supported vertex count. Adjacency rows are single `u32` words.
pub const MAX_VERTICES: usize = 32;

#[inline]
fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Simple undirected graph on vertices `0..n` with bit-set adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// Panics if `n > MAX_VERTICES`.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graph order {n} exceeds {MAX_VERTICES}");
        Graph { n, adj: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.adj[v] = full_mask(n) & !(1 << v);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    /// Star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::empty(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Adds the edge `uv`. Panics on loops or out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range for order {}", self.n);
        assert_ne!(u, v, "loops are not allowed in a simple graph");
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Neighbourhood of `v` as a bit set.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u32 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            let mut row = self.adj[u] & !full_mask(u + 1);
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                out.push((u, v));
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mask = full_mask(self.n);
        let adj = (0..self.n).map(|v| !self.adj[v] & mask & !(1 << v)).collect();
        Graph { n: self.n, adj }
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence(d)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Subgraph induced on the vertices in `keep` (a bit set), relabeled in increasing order.
    pub fn induced(&self, keep: u32) -> Graph {
        let verts: Vec<usize> = (0..self.n).filter(|&v| keep >> v & 1 == 1).collect();
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }

    /// Vertex sets of the connected components, each as a bit set, ordered by smallest vertex.
    pub fn component_masks(&self) -> Vec<u32> {
        let mut seen = 0u32;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u32 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.component_masks().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn to_multigraph(&self) -> MultiGraph {
        let mut m = MultiGraph::new(self.n);
        for (u, v) in self.edges() {
            m.add_edges(u, v, 1);
        }
        m
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Undirected multigraph with loops, stored as a symmetric multiplicity matrix.
///
/// `mult[u * n + v]` is the number of `uv` edges; the diagonal counts loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    n: usize,
    mult: Vec<u32>,
}

impl MultiGraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graph order {n} exceeds {MAX_VERTICES}");
        MultiGraph { n, mult: vec![0; n * n] }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.mult[u * self.n + v]
    }

    pub fn loops(&self, v: usize) -> u32 {
        self.multiplicity(v, v)
    }

    /// Adds `count` parallel copies of `uv` (a loop when `u == v`).
    pub fn add_edges(&mut self, u: usize, v: usize, count: u32) {
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range for order {}", self.n);
        self.mult[u * self.n + v] += count;
        if u != v {
            self.mult[v * self.n + u] += count;
        }
    }

    /// Removes every `uv` edge.
    pub fn remove_class(&mut self, u: usize, v: usize) {
        self.mult[u * self.n + v] = 0;
        self.mult[v * self.n + u] = 0;
    }

    /// Total number of edges, loops and parallel copies included.
    pub fn edge_count(&self) -> usize {
        let mut total = 0usize;
        for u in 0..self.n {
            for v in u..self.n {
                total += self.multiplicity(u, v) as usize;
            }
        }
        total
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n).map(|v| self.loops(v) as usize).sum()
    }

    /// Non-loop neighbours of `v` as a bit set.
    pub fn neighbor_mask(&self, v: usize) -> u32 {
        let row = &self.mult[v * self.n..(v + 1) * self.n];
        let mut mask = 0u32;
        for (u, &m) in row.iter().enumerate() {
            if m > 0 && u != v {
                mask |= 1 << u;
            }
        }
        mask
    }

    /// Edge classes `(u, v, multiplicity)` with `u <= v`.
    pub fn edge_classes(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u..self.n {
                let m = self.multiplicity(u, v);
                if m > 0 {
                    out.push((u, v, m));
                }
            }
        }
        out
    }

    /// Contracts every `uv` edge (`u != v`) by merging `v` into `u`.
    ///
    /// The contracted class itself disappears; all other edges at `v` move to `u`
    /// with multiplicities added, so former `uv`-parallel partners of other
    /// vertices become parallel edges and `v`'s loops become loops at `u`.
    /// Vertex `v` is removed and later vertices shift down by one.
    pub fn contract_class(&self, u: usize, v: usize) -> MultiGraph {
        assert_ne!(u, v);
        let n = self.n;
        let mut out = MultiGraph::new(n - 1);
        let map = |w: usize| -> usize {
            let w = if w == v { u } else { w };
            if w > v {
                w - 1
            } else {
                w
            }
        };
        for a in 0..n {
            for b in a..n {
                let m = self.multiplicity(a, b);
                if m == 0 || (a.min(b) == u.min(v) && a.max(b) == u.max(v)) {
                    continue;
                }
                out.add_edges(map(a), map(b), m);
            }
        }
        out
    }

    /// Removes the vertices whose bit is clear in `keep`, relabeling the rest in order.
    pub fn induced(&self, keep: u32) -> MultiGraph {
        let verts: Vec<usize> = (0..self.n).filter(|&v| keep >> v & 1 == 1).collect();
        let mut out = MultiGraph::new(verts.len());
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate().skip(i) {
                let m = self.multiplicity(a, b);
                if m > 0 {
                    out.add_edges(i, j, m);
                }
            }
        }
        out
    }

    pub fn relabel(&self, perm: &[usize]) -> MultiGraph {
        assert_eq!(perm.len(), self.n);
        let mut out = MultiGraph::new(self.n);
        for (u, v, m) in self.edge_classes() {
            out.add_edges(perm[u], perm[v], m);
        }
        out
    }

    /// Vertex sets of connected components, isolated vertices included.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        self.component_masks().into_iter().map(|mask| (0..self.n).filter(|&v| mask >> v & 1 == 1).collect()).collect()
    }

    pub fn component_masks(&self) -> Vec<u32> {
        let rows: Vec<u32> = (0..self.n).map(|v| self.neighbor_mask(v)).collect();
        let mut seen = 0u32;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u32 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let w = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = rows[w] & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }
}

impl fmt::Debug for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiGraph(n={}, classes={:?})", self.n, self.edge_classes())
    }
}

impl From<&Graph> for MultiGraph {
    fn from(g: &Graph) -> Self {
        g.to_multigraph()
    }
}

/// Vertex degrees in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// Connected components of a multigraph (free-function form).
pub fn connected_components(g: &MultiGraph) -> Vec<Vec<usize>> {
    g.connected_components()
}
