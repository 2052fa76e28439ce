//! Chromatic polynomials by memoized deletion–contraction, plus a brute-force
//! coloring counter used as an independent oracle.

use std::collections::HashMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::canon::{canonical_form_graph, CanonKey};
use crate::graph::Graph;
use crate::poly::{InterpolationError, UniPoly};

/// Largest `k^n` the coloring counter will enumerate.
pub const COLORING_ENUMERATION_LIMIT: u64 = 100_000_000;
/// Largest order accepted by [`chromatic_poly_oracle`].
pub const ORACLE_MAX_ORDER: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChromaticError {
    #[error("{k}^{n} colorings exceed the enumeration limit of {COLORING_ENUMERATION_LIMIT}")]
    TooManyColorings { k: u64, n: usize },
    #[error("order {0} exceeds the oracle limit of {ORACLE_MAX_ORDER}")]
    OracleOrder(usize),
    #[error(transparent)]
    Interpolation(#[from] InterpolationError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    /// Whole-cache resets after the entry cap was reached.
    pub resets: u64,
}

impl CacheStats {
    pub fn hit_rate(&self) -> f64 {
        let total = self.hits + self.misses;
        if total == 0 {
            0.0
        } else {
            self.hits as f64 / total as f64
        }
    }
}

pub const DEFAULT_CACHE_CAP: usize = 1 << 20;

/// Deletion–contraction engine with a private canonical-form cache.
///
/// Sparse graphs recurse by `P(G) = P(G - e) - P(G / e)` over an edge, dense
/// ones by `P(G) = P(G + e) + P(G / e)` over a non-edge; contraction yields the
/// simple quotient. Components, trees, complete graphs and simplicial vertices
/// are handled in closed form before any recursion.
pub struct ChromaticEngine {
    cache: HashMap<CanonKey, UniPoly>,
    cap: usize,
    stats: CacheStats,
}

impl Default for ChromaticEngine {
    fn default() -> Self {
        Self::with_cache_cap(DEFAULT_CACHE_CAP)
    }
}

impl ChromaticEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// A cap of zero disables memoization.
    pub fn with_cache_cap(cap: usize) -> Self {
        ChromaticEngine { cache: HashMap::new(), cap, stats: CacheStats::default() }
    }

    pub fn stats(&self) -> CacheStats {
        self.stats
    }

    pub fn compute(&mut self, g: &Graph) -> UniPoly {
        let n = g.order();
        if n == 0 {
            return UniPoly::one();
        }
        let comps = g.component_masks();
        if comps.len() > 1 {
            let parts: Vec<UniPoly> = comps.iter().map(|&c| self.connected(&g.induced(c))).collect();
            return UniPoly::product(&parts);
        }
        self.connected(g)
    }

    fn connected(&mut self, g: &Graph) -> UniPoly {
        let n = g.order();
        let m = g.size();
        if m + 1 == n {
            return &UniPoly::k() * &UniPoly::linear(-1).pow(n as u32 - 1);
        }
        if m == n * (n - 1) / 2 {
            return UniPoly::falling_factorial(n);
        }
        if let Some(v) = simplicial_vertex(g) {
            let d = g.degree(v) as i64;
            let rest = g.induced(!(1u32 << v));
            return &UniPoly::linear(-d) * &self.compute(&rest);
        }

        let key = (self.cap > 0).then(|| canonical_form_graph(g));
        if let Some(key) = &key {
            if let Some(p) = self.cache.get(key) {
                self.stats.hits += 1;
                return p.clone();
            }
            self.stats.misses += 1;
        }

        let dense = 2 * m > n * (n - 1) / 2;
        let (u, v) = pick_pair(g, dense);
        let merged = self.compute(&contract(g, u, v));
        let mut other = g.clone();
        let result = if dense {
            other.add_edge(u, v);
            &self.compute(&other) + &merged
        } else {
            other.remove_edge(u, v);
            &self.compute(&other) - &merged
        };

        if let Some(key) = key {
            if self.cache.len() >= self.cap {
                self.cache.clear();
                self.stats.resets += 1;
            }
            self.cache.insert(key, result.clone());
        }
        result
    }
}

/// A vertex whose neighbourhood is a clique, if any (lowest label first).
fn simplicial_vertex(g: &Graph) -> Option<usize> {
    (0..g.order()).find(|&v| {
        let nb = g.neighbors(v);
        let mut rest = nb;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (g.neighbors(u) | 1 << u) & nb != nb {
                return false;
            }
        }
        true
    })
}

/// The edge (or, when `dense`, the non-edge) whose endpoints share the most
/// neighbours; ties go to the lexicographically smallest pair.
fn pick_pair(g: &Graph, dense: bool) -> (usize, usize) {
    let n = g.order();
    let mut best: Option<(u32, usize, usize)> = None;
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) == dense {
                continue;
            }
            let common = (g.neighbors(u) & g.neighbors(v)).count_ones();
            if best.is_none_or(|(c, _, _)| common > c) {
                best = Some((common, u, v));
            }
        }
    }
    let (_, u, v) = best.expect("graph is neither edgeless nor complete");
    (u, v)
}

/// Simple quotient identifying `v` with `u`; parallel edges collapse.
fn contract(g: &Graph, u: usize, v: usize) -> Graph {
    let n = g.order();
    let idx = |w: usize| if w > v { w - 1 } else { w };
    let mut out = Graph::empty(n - 1);
    for (a, b) in g.edges() {
        let a = if a == v { u } else { a };
        let b = if b == v { u } else { b };
        if a != b {
            out.add_edge(idx(a), idx(b));
        }
    }
    out
}

/// Chromatic polynomial with a fresh cache.
pub fn chromatic_poly(g: &Graph) -> UniPoly {
    ChromaticEngine::new().compute(g)
}

/// Counts proper `k`-colorings by exhaustive backtracking assignment.
pub fn count_colorings(g: &Graph, k: u64) -> Result<BigInt, ChromaticError> {
    let n = g.order();
    let feasible = k.checked_pow(n as u32).is_some_and(|total| total <= COLORING_ENUMERATION_LIMIT);
    if !feasible {
        return Err(ChromaticError::TooManyColorings { k, n });
    }
    fn assign(g: &Graph, k: u64, v: usize, colors: &mut [u64]) -> u64 {
        if v == g.order() {
            return 1;
        }
        let mut total = 0;
        for c in 0..k {
            let clash = (0..v).any(|u| g.has_edge(u, v) && colors[u] == c);
            if !clash {
                colors[v] = c;
                total += assign(g, k, v + 1, colors);
            }
        }
        total
    }
    let mut colors = vec![0u64; n];
    Ok(BigInt::from(assign(g, k, 0, &mut colors)))
}

/// Chromatic polynomial interpolated from coloring counts at `k = 0..=n`.
pub fn chromatic_poly_oracle(g: &Graph) -> Result<UniPoly, ChromaticError> {
    let n = g.order();
    if n > ORACLE_MAX_ORDER {
        return Err(ChromaticError::OracleOrder(n));
    }
    let points = (0..=n as u64)
        .map(|k| Ok((BigInt::from(k), count_colorings(g, k)?)))
        .collect::<Result<Vec<_>, ChromaticError>>()?;
    Ok(UniPoly::interpolate(&points)?)
}
