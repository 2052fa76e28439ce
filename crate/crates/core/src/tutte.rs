//! Tutte polynomials by full subset expansion and by memoized
//! deletion–contraction on multigraphs, with brute-force evaluation oracles.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use thiserror::Error;

use crate::canon::{canonical_form, CanonKey};
use crate::chromatic::CacheStats;
use crate::exec::Exec;
use crate::graph::{Graph, MultiGraph};
use crate::poly::{BiPoly, UniPoly};
use crate::subsets::{for_each_subset, RollbackDsu, SubsetVisitor, Walk};

/// Edge limit for anything that walks all `2^|E|` edge subsets.
pub const SUBSET_EDGE_LIMIT: usize = 25;
pub const DC_MAX_ORDER: usize = 16;
pub const DC_MAX_EDGES: usize = 60;
/// Candidate limit for the brute-force oracles.
pub const ORACLE_CANDIDATE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TutteError {
    #[error("{edges} edges exceed the subset-enumeration limit of {limit}")]
    TooManyEdges { edges: usize, limit: usize },
    #[error("multigraph with {order} vertices and {edges} edges exceeds the deletion-contraction budget ({DC_MAX_ORDER} vertices, {DC_MAX_EDGES} edges)")]
    TooLarge { order: usize, edges: usize },
    #[error("deletion-contraction stopped after {nodes} recursion nodes: time budget exhausted")]
    Deadline { nodes: u64 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{candidates} candidates exceed the oracle limit of {ORACLE_CANDIDATE_LIMIT}")]
    OracleLimit { candidates: u64 },
}

struct ComponentEdgeTally {
    stride: usize,
    counts: Vec<u64>,
}

impl SubsetVisitor for ComponentEdgeTally {
    fn visit(&mut self, edges_in: usize, dsu: &RollbackDsu) {
        self.counts[dsu.components() * self.stride + edges_in] += 1;
    }
    fn merge(&mut self, other: Self) {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
    }
}

/// Sum over all edge subsets `F` of `(x-1)^(c(F)-c(E)) (y-1)^(c(F)+|F|-n)`.
pub fn tutte_subset_expansion(g: &Graph) -> Result<BiPoly, TutteError> {
    tutte_subset_expansion_with(g, Walk::default(), Exec::default())
}

pub fn tutte_subset_expansion_with(g: &Graph, walk: Walk, exec: Exec) -> Result<BiPoly, TutteError> {
    let edges = g.edges();
    let m = edges.len();
    if m > SUBSET_EDGE_LIMIT {
        return Err(TutteError::TooManyEdges { edges: m, limit: SUBSET_EDGE_LIMIT });
    }
    let n = g.order();
    let stride = m + 1;
    let tally =
        for_each_subset(n, &edges, walk, exec, || ComponentEdgeTally { stride, counts: vec![0; (n + 1) * stride] });
    let c_full = g.component_count();
    let mut t = BiPoly::zero();
    for c in 0..=n {
        for f in 0..=m {
            let count = tally.counts[c * stride + f];
            if count == 0 {
                continue;
            }
            let term = BiPoly::shifted_monomial((c - c_full) as u32, (c + f - n) as u32);
            t = &t + &term.scale(&BigInt::from(count));
        }
    }
    Ok(t)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TutteStats {
    pub cache: CacheStats,
    /// Recursion nodes visited (one per block or component handled).
    pub nodes: u64,
}

/// Deletion–contraction for multigraphs.
///
/// Loops contribute a factor `y` each and isolated vertices are dropped; the
/// rest is split into blocks (maximal 2-connected pieces of the underlying
/// simple graph) and `T` is the product over blocks. A two-vertex block with
/// `m` parallel edges is `x + y + ... + y^(m-1)`; a simple cycle on `r`
/// vertices is `y + x + ... + x^(r-1)`. Any other block picks an edge class
/// `uv` of multiplicity `m` and uses
/// `T(B) = T(B - uv) + (1 + y + ... + y^(m-1)) T(B / uv)`,
/// where the class cannot be a bridge because the block is 2-connected.
/// Blocks are memoized by canonical form.
pub struct TutteEngine {
    cache: HashMap<CanonKey, BiPoly>,
    cap: usize,
    stats: TutteStats,
    deadline: Option<Instant>,
}

impl Default for TutteEngine {
    fn default() -> Self {
        Self::with_cache_cap(crate::chromatic::DEFAULT_CACHE_CAP)
    }
}

impl TutteEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// A cap of zero disables memoization.
    pub fn with_cache_cap(cap: usize) -> Self {
        TutteEngine { cache: HashMap::new(), cap, stats: TutteStats::default(), deadline: None }
    }

    /// Abort with [`TutteError::Deadline`] once `deadline` has passed.
    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    pub fn stats(&self) -> TutteStats {
        self.stats
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    pub fn compute(&mut self, g: &MultiGraph) -> Result<BiPoly, TutteError> {
        let edges = g.edge_count();
        if g.order() > DC_MAX_ORDER || edges > DC_MAX_EDGES {
            return Err(TutteError::TooLarge { order: g.order(), edges });
        }
        self.general(g)
    }

    pub fn compute_graph(&mut self, g: &Graph) -> Result<BiPoly, TutteError> {
        self.compute(&g.to_multigraph())
    }

    fn tick(&mut self) -> Result<(), TutteError> {
        self.stats.nodes += 1;
        if self.stats.nodes.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(TutteError::Deadline { nodes: self.stats.nodes });
                }
            }
        }
        Ok(())
    }

    fn general(&mut self, g: &MultiGraph) -> Result<BiPoly, TutteError> {
        self.tick()?;
        let n = g.order();
        let loops = g.loop_count() as u32;
        let rows: Vec<u32> = (0..n).map(|v| g.neighbor_mask(v)).collect();
        let mut result = BiPoly::y().pow(loops);
        for block in blocks(&rows) {
            let b = g.induced(block);
            let factor = self.block(&strip_loops(&b))?;
            result = &result * &factor;
        }
        Ok(result)
    }

    fn block(&mut self, b: &MultiGraph) -> Result<BiPoly, TutteError> {
        let n = b.order();
        if n == 2 {
            return Ok(edge_bundle(b.multiplicity(0, 1), true));
        }
        let classes = b.edge_classes();
        if classes.len() == n && classes.iter().all(|&(_, _, m)| m == 1) {
            // 2-connected with n edges: a simple cycle
            let mut t = BiPoly::y();
            for e in 1..n as u32 {
                t.add_term(e, 0, BigInt::from(1));
            }
            return Ok(t);
        }

        let key = (self.cap > 0).then(|| canonical_form(b));
        if let Some(key) = &key {
            if let Some(p) = self.cache.get(key) {
                self.stats.cache.hits += 1;
                return Ok(p.clone());
            }
            self.stats.cache.misses += 1;
        }

        let (u, v, m) = pick_class(b);
        let mut deleted = b.clone();
        deleted.remove_class(u, v);
        let contracted = b.contract_class(u, v);
        let t_del = self.general(&deleted)?;
        let t_con = self.general(&contracted)?;
        let result = &t_del + &(&edge_bundle(m, false) * &t_con);

        if let Some(key) = key {
            if self.cache.len() >= self.cap {
                self.cache.clear();
                self.stats.cache.resets += 1;
            }
            self.cache.insert(key, result.clone());
        }
        Ok(result)
    }
}

fn strip_loops(g: &MultiGraph) -> MultiGraph {
    if g.loop_count() == 0 {
        return g.clone();
    }
    let mut out = MultiGraph::new(g.order());
    for (u, v, m) in g.edge_classes() {
        if u != v {
            out.add_edges(u, v, m);
        }
    }
    out
}

/// `x + y + ... + y^(m-1)` when `bridge`, otherwise `1 + y + ... + y^(m-1)`.
fn edge_bundle(m: u32, bridge: bool) -> BiPoly {
    let mut t = BiPoly::zero();
    t.add_term(u32::from(bridge), 0, BigInt::from(1));
    for e in 1..m {
        t.add_term(0, e, BigInt::from(1));
    }
    t
}

/// The edge class whose endpoints share the most neighbours, ties to the
/// smallest pair.
fn pick_class(b: &MultiGraph) -> (usize, usize, u32) {
    let n = b.order();
    let rows: Vec<u32> = (0..n).map(|v| b.neighbor_mask(v)).collect();
    let mut best: Option<(u32, usize, usize, u32)> = None;
    for (u, v, m) in b.edge_classes() {
        if u == v {
            continue;
        }
        let common = (rows[u] & rows[v]).count_ones();
        if best.is_none_or(|(c, ..)| common > c) {
            best = Some((common, u, v, m));
        }
    }
    let (_, u, v, m) = best.expect("block has an edge");
    (u, v, m)
}

/// Vertex sets of the blocks (2-connected pieces and bridges) of the simple
/// graph with adjacency `rows`. Isolated vertices belong to no block.
pub(crate) fn blocks(rows: &[u32]) -> Vec<u32> {
    struct Dfs<'a> {
        rows: &'a [u32],
        disc: Vec<u32>,
        low: Vec<u32>,
        time: u32,
        stack: Vec<(usize, usize)>,
        out: Vec<u32>,
    }
    impl Dfs<'_> {
        fn visit(&mut self, u: usize, parent: usize) {
            self.time += 1;
            self.disc[u] = self.time;
            self.low[u] = self.time;
            let mut nb = self.rows[u];
            while nb != 0 {
                let v = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if self.disc[v] == 0 {
                    self.stack.push((u, v));
                    self.visit(v, u);
                    self.low[u] = self.low[u].min(self.low[v]);
                    if self.low[v] >= self.disc[u] {
                        let mut mask = 0u32;
                        while let Some((a, b)) = self.stack.pop() {
                            mask |= 1 << a | 1 << b;
                            if (a, b) == (u, v) {
                                break;
                            }
                        }
                        self.out.push(mask);
                    }
                } else if v != parent && self.disc[v] < self.disc[u] {
                    self.stack.push((u, v));
                    self.low[u] = self.low[u].min(self.disc[v]);
                }
            }
        }
    }
    let n = rows.len();
    let mut dfs = Dfs { rows, disc: vec![0; n], low: vec![0; n], time: 0, stack: Vec::new(), out: Vec::new() };
    for (s, &row) in rows.iter().enumerate() {
        if dfs.disc[s] == 0 && row != 0 {
            dfs.visit(s, usize::MAX);
        }
    }
    dfs.out
}

/// Tutte polynomial by deletion–contraction with a fresh cache.
pub fn tutte_poly(g: &MultiGraph) -> Result<BiPoly, TutteError> {
    TutteEngine::new().compute(g)
}

/// `(-1)^(n-c) k^c T(1-k, 0)`: the chromatic polynomial recovered from `T`,
/// where `c` is the number of connected components.
pub fn chromatic_from_tutte(t: &BiPoly, order: usize, components: usize) -> UniPoly {
    let at = t.substitute(&UniPoly::from_i64s(&[1, -1]), &UniPoly::zero());
    let sign = if (order - components).is_multiple_of(2) { 1 } else { -1 };
    at.shift_up(components).scale(&BigInt::from(sign))
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Counts spanning trees by checking every `(n-1)`-edge subset for acyclicity.
pub fn spanning_tree_count_oracle(g: &Graph) -> Result<BigInt, TutteError> {
    if !g.is_connected() {
        return Err(TutteError::Disconnected);
    }
    let n = g.order();
    if n <= 1 {
        return Ok(BigInt::from(1));
    }
    let edges = g.edges();
    let candidates = binomial(edges.len() as u64, n as u64 - 1);
    if candidates > ORACLE_CANDIDATE_LIMIT {
        return Err(TutteError::OracleLimit { candidates });
    }
    fn choose(edges: &[(usize, usize)], need: usize, dsu: &mut RollbackDsu) -> u64 {
        if need == 0 {
            return 1;
        }
        if edges.len() < need {
            return 0;
        }
        let (&(a, b), rest) = edges.split_first().unwrap();
        let mut total = choose(rest, need, dsu);
        if dsu.union(a, b) {
            total += choose(rest, need - 1, dsu);
        }
        dsu.rollback();
        total
    }
    let mut dsu = RollbackDsu::new(n);
    Ok(BigInt::from(choose(&edges, n - 1, &mut dsu)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrientationCounts {
    pub acyclic: u64,
    /// Orientations in which every edge lies on a directed cycle.
    pub totally_cyclic: u64,
}

/// Enumerates all `2^|E|` orientations.
pub fn orientation_counts_oracle(g: &Graph) -> Result<OrientationCounts, TutteError> {
    let edges = g.edges();
    let m = edges.len();
    let candidates = 1u64.checked_shl(m as u32).unwrap_or(u64::MAX);
    if m >= 64 || candidates > ORACLE_CANDIDATE_LIMIT {
        return Err(TutteError::OracleLimit { candidates });
    }
    let n = g.order();
    let low_bits = m.min(12);
    let (acyclic, cyclic) = Exec::default().map_reduce(
        0..1usize << (m - low_bits),
        |hi| {
            let mut acyclic = 0u64;
            let mut cyclic = 0u64;
            let mut out = vec![0u32; n];
            let mut reach = vec![0u32; n];
            for lo in 0..1u64 << low_bits {
                let mask = (hi as u64) << low_bits | lo;
                out.iter_mut().for_each(|r| *r = 0);
                for (i, &(a, b)) in edges.iter().enumerate() {
                    if mask >> i & 1 == 0 {
                        out[a] |= 1 << b;
                    } else {
                        out[b] |= 1 << a;
                    }
                }
                reach.copy_from_slice(&out);
                loop {
                    let mut changed = false;
                    for v in 0..n {
                        let mut acc = reach[v];
                        let mut r = reach[v];
                        while r != 0 {
                            let u = r.trailing_zeros() as usize;
                            r &= r - 1;
                            acc |= reach[u];
                        }
                        if acc != reach[v] {
                            reach[v] = acc;
                            changed = true;
                        }
                    }
                    if !changed {
                        break;
                    }
                }
                if (0..n).all(|v| reach[v] >> v & 1 == 0) {
                    acyclic += 1;
                }
                let every_arc_cyclic = edges.iter().enumerate().all(|(i, &(a, b))| {
                    let (tail, head) = if mask >> i & 1 == 0 { (a, b) } else { (b, a) };
                    reach[head] >> tail & 1 == 1
                });
                if every_arc_cyclic {
                    cyclic += 1;
                }
            }
            (acyclic, cyclic)
        },
        || (0, 0),
        |a, b| (a.0 + b.0, a.1 + b.1),
    );
    Ok(OrientationCounts { acyclic, totally_cyclic: cyclic })
}

struct ConnectedTally(u64);

impl SubsetVisitor for ConnectedTally {
    fn visit(&mut self, _edges_in: usize, dsu: &RollbackDsu) {
        if dsu.components() <= 1 {
            self.0 += 1;
        }
    }
    fn merge(&mut self, other: Self) {
        self.0 += other.0;
    }
}

/// Counts edge subsets `F` for which `(V, F)` is connected.
pub fn connected_spanning_subgraph_count_oracle(g: &Graph) -> Result<BigInt, TutteError> {
    let edges = g.edges();
    if edges.len() > SUBSET_EDGE_LIMIT {
        return Err(TutteError::TooManyEdges { edges: edges.len(), limit: SUBSET_EDGE_LIMIT });
    }
    let t = for_each_subset(g.order(), &edges, Walk::Incremental, Exec::default(), || ConnectedTally(0));
    Ok(BigInt::from(t.0))
}
