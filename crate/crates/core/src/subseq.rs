//! Subgraph sequences: for every edge subset `F`, the description
//! `(|F|, h1 >= h2 >= ... >= hk)` of the component orders of `(V, F)`, kept as
//! a multiset. Equal sequences force equal Tutte polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::exec::Exec;
use crate::graph::{Graph, MAX_VERTICES};
use crate::poly::BiPoly;
use crate::subsets::{for_each_subset, RollbackDsu, SubsetVisitor, Walk};
use crate::tutte::{TutteEngine, TutteError, SUBSET_EDGE_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgraphDescription {
    pub edge_count: usize,
    /// Component orders, non-increasing.
    pub component_orders: Vec<usize>,
}

impl SubgraphDescription {
    pub fn components(&self) -> usize {
        self.component_orders.len()
    }

    pub fn order(&self) -> usize {
        self.component_orders.iter().sum()
    }
}

impl fmt::Display for SubgraphDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.edge_count)?;
        for h in &self.component_orders {
            write!(f, ",{h}")?;
        }
        write!(f, ")")
    }
}

/// Multiset of subgraph descriptions as a count map.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SubgraphSequence {
    counts: BTreeMap<SubgraphDescription, u64>,
}

impl SubgraphSequence {
    pub fn counts(&self) -> &BTreeMap<SubgraphDescription, u64> {
        &self.counts
    }

    pub fn multiplicity(&self, d: &SubgraphDescription) -> u64 {
        self.counts.get(d).copied().unwrap_or(0)
    }

    /// Number of edge subsets, `2^|E|`.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Smallest description whose multiplicities differ, with both counts.
    pub fn first_difference(&self, other: &SubgraphSequence) -> Option<(SubgraphDescription, u64, u64)> {
        let mut keys: Vec<&SubgraphDescription> = self.counts.keys().chain(other.counts.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|d| {
            let (a, b) = (self.multiplicity(d), other.multiplicity(d));
            (a != b).then(|| (d.clone(), a, b))
        })
    }

    /// The lexicographically sorted tuple with one entry per edge subset.
    pub fn expanded(&self) -> Vec<SubgraphDescription> {
        self.counts.iter().flat_map(|(d, &c)| std::iter::repeat_n(d.clone(), c as usize)).collect()
    }

    /// Tutte polynomial read off the sequence alone: `c(F)`, `|F|` and `n` are
    /// functions of each description, and `c(E)` is the fewest components seen.
    pub fn tutte(&self) -> BiPoly {
        let Some(c_full) = self.counts.keys().map(SubgraphDescription::components).min() else {
            return BiPoly::zero();
        };
        let mut t = BiPoly::zero();
        for (d, &count) in &self.counts {
            let c = d.components();
            let term = BiPoly::shifted_monomial((c - c_full) as u32, (c + d.edge_count - d.order()) as u32);
            t = &t + &term.scale(&BigInt::from(count));
        }
        t
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .counts
            .iter()
            .map(|(d, c)| json!({ "edges": d.edge_count, "components": d.component_orders, "count": c }))
            .collect();
        json!({ "total": self.total(), "descriptions": entries })
    }
}

/// Histogram key: `[|F|, hist[0], ..., hist[32]]`.
type RawKey = [u8; MAX_VERTICES + 2];

struct DescriptionTally(HashMap<RawKey, u64>);

impl SubsetVisitor for DescriptionTally {
    fn visit(&mut self, edges_in: usize, dsu: &RollbackDsu) {
        let mut key = [0u8; MAX_VERTICES + 2];
        key[0] = edges_in as u8;
        key[1..].copy_from_slice(dsu.size_histogram());
        *self.0.entry(key).or_insert(0) += 1;
    }
    fn merge(&mut self, other: Self) {
        for (k, v) in other.0 {
            *self.0.entry(k).or_insert(0) += v;
        }
    }
}

fn describe(key: &RawKey) -> SubgraphDescription {
    let mut orders = Vec::new();
    for size in (1..=MAX_VERTICES).rev() {
        for _ in 0..key[size + 1] {
            orders.push(size);
        }
    }
    SubgraphDescription { edge_count: key[0] as usize, component_orders: orders }
}

pub fn subgraph_sequence(g: &Graph) -> Result<SubgraphSequence, TutteError> {
    subgraph_sequence_with(g, Walk::default(), Exec::default())
}

pub fn subgraph_sequence_with(g: &Graph, walk: Walk, exec: Exec) -> Result<SubgraphSequence, TutteError> {
    let edges = g.edges();
    if edges.len() > SUBSET_EDGE_LIMIT {
        return Err(TutteError::TooManyEdges { edges: edges.len(), limit: SUBSET_EDGE_LIMIT });
    }
    let tally = for_each_subset(g.order(), &edges, walk, exec, || DescriptionTally(HashMap::new()));
    let counts = tally.0.iter().map(|(k, &c)| (describe(k), c)).collect();
    Ok(SubgraphSequence { counts })
}

/// `true` when `s(g) = s(h)`, in which case the deletion–contraction Tutte
/// polynomials are also checked equal (a mismatch is an engine bug and panics).
/// `false` says nothing about the Tutte polynomials.
pub fn seq_implies_tutte_check(g: &Graph, h: &Graph) -> Result<bool, TutteError> {
    let (sg, sh) = (subgraph_sequence(g)?, subgraph_sequence(h)?);
    if sg != sh {
        return Ok(false);
    }
    let tg = TutteEngine::new().compute_graph(g)?;
    let th = TutteEngine::new().compute_graph(h)?;
    assert_eq!(tg, th, "equal subgraph sequences but different Tutte polynomials");
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc(e: usize, orders: &[usize]) -> SubgraphDescription {
        SubgraphDescription { edge_count: e, component_orders: orders.to_vec() }
    }

    #[test]
    fn k2_sequence() {
        let s = subgraph_sequence(&Graph::complete(2)).unwrap();
        let expected: BTreeMap<_, _> = [(desc(0, &[1, 1]), 1), (desc(1, &[2]), 1)].into_iter().collect();
        assert_eq!(s.counts(), &expected);
    }

    #[test]
    fn path_and_star_differ() {
        let p4 = subgraph_sequence(&Graph::path(4)).unwrap();
        let star = subgraph_sequence(&Graph::star(3)).unwrap();
        assert_ne!(p4, star);
        assert_eq!(p4.multiplicity(&desc(2, &[2, 2])), 1);
        assert_eq!(star.multiplicity(&desc(2, &[2, 2])), 0);
        let (d, a, b) = p4.first_difference(&star).unwrap();
        assert_eq!((d, a, b), (desc(2, &[2, 2]), 1, 0));
        assert!(seq_implies_tutte_check(&Graph::path(4), &Graph::star(3)).map(|eq| !eq).unwrap());
    }

    #[test]
    fn expanded_is_sorted_with_full_length() {
        let s = subgraph_sequence(&Graph::cycle(4)).unwrap();
        let e = s.expanded();
        assert_eq!(e.len(), 16);
        assert!(e.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(e[0], desc(0, &[1, 1, 1, 1]));
    }

    #[test]
    fn walks_and_exec_agree() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (0, 5), (1, 4)]);
        let base = subgraph_sequence_with(&g, Walk::PerSubset, Exec::Serial).unwrap();
        for walk in [Walk::Incremental, Walk::PerSubset] {
            for exec in [Exec::Serial, Exec::Parallel] {
                assert_eq!(subgraph_sequence_with(&g, walk, exec).unwrap(), base);
            }
        }
    }

    #[test]
    fn sequence_determines_tutte() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]);
        let s = subgraph_sequence(&g).unwrap();
        assert_eq!(s.tutte(), crate::tutte::tutte_subset_expansion(&g).unwrap());
    }

    #[test]
    fn guard() {
        assert!(matches!(subgraph_sequence(&Graph::complete(8)), Err(TutteError::TooManyEdges { edges: 28, .. })));
    }
}
