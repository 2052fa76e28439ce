//! Enumeration of all spanning subgraphs `(V, F)`, `F ⊆ E`, with their
//! component structure.
//!
//! The incremental walk is a depth-first include/exclude recursion over the
//! edges with a union-find that supports rollback (union by size, no path
//! compression). The per-subset walk rebuilds the union-find for every subset
//! and exists as a cross-check. The top `split` edges are fixed per task so
//! that subset ranges can be tallied in parallel and merged.

use crate::exec::Exec;
use crate::graph::MAX_VERTICES;

/// Union-find over at most [`MAX_VERTICES`] elements that also keeps a
/// histogram of component sizes.
#[derive(Clone, Debug)]
pub struct RollbackDsu {
    parent: [u8; MAX_VERTICES],
    size: [u8; MAX_VERTICES],
    hist: [u8; MAX_VERTICES + 1],
    components: usize,
    history: Vec<(u8, u8)>,
}

impl RollbackDsu {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        let mut parent = [0u8; MAX_VERTICES];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        let mut hist = [0u8; MAX_VERTICES + 1];
        hist[1] = n as u8;
        RollbackDsu { parent, size: [1; MAX_VERTICES], hist, components: n, history: Vec::new() }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }

    /// Joins the classes of `a` and `b`. Returns `false` when already joined.
    /// Every call, successful or not, pushes one entry for [`Self::rollback`].
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push((u8::MAX, u8::MAX));
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        let (sa, sb) = (self.size[ra] as usize, self.size[rb] as usize);
        self.hist[sa] -= 1;
        self.hist[sb] -= 1;
        self.hist[sa + sb] += 1;
        self.parent[rb] = ra as u8;
        self.size[ra] = (sa + sb) as u8;
        self.components -= 1;
        self.history.push((rb as u8, ra as u8));
        true
    }

    /// Undoes the most recent [`Self::union`] call.
    pub fn rollback(&mut self) {
        let (rb, ra) = self.history.pop().expect("rollback without union");
        if rb == u8::MAX {
            return;
        }
        let (rb, ra) = (rb as usize, ra as usize);
        let total = self.size[ra] as usize;
        let sb = self.size[rb] as usize;
        let sa = total - sb;
        self.hist[total] -= 1;
        self.hist[sa] += 1;
        self.hist[sb] += 1;
        self.size[ra] = sa as u8;
        self.parent[rb] = rb as u8;
        self.components += 1;
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// `hist[s]` is the number of components of order `s`.
    pub fn size_histogram(&self) -> &[u8; MAX_VERTICES + 1] {
        &self.hist
    }
}

/// Receives every spanning subgraph exactly once.
pub trait SubsetVisitor: Send {
    fn visit(&mut self, edges_in: usize, dsu: &RollbackDsu);
    fn merge(&mut self, other: Self);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Walk {
    /// Include/exclude recursion with union-find rollback.
    #[default]
    Incremental,
    /// Fresh union-find per subset.
    PerSubset,
}

const DEFAULT_SPLIT: usize = 8;

/// Visits all `2^edges.len()` spanning subgraphs of the graph on `n` vertices.
pub fn for_each_subset<V, M>(n: usize, edges: &[(usize, usize)], walk: Walk, exec: Exec, make: M) -> V
where
    V: SubsetVisitor,
    M: Fn() -> V + Sync + Send,
{
    assert!(edges.len() < 64, "too many edges for subset enumeration");
    let m = edges.len();
    match walk {
        Walk::Incremental => {
            let split = m.min(DEFAULT_SPLIT);
            let (head, tail) = edges.split_at(split);
            exec.map_reduce(
                0..1usize << split,
                |prefix| {
                    let mut v = make();
                    let mut dsu = RollbackDsu::new(n);
                    let mut count = 0;
                    for (i, &(a, b)) in head.iter().enumerate() {
                        if prefix >> i & 1 == 1 {
                            dsu.union(a, b);
                            count += 1;
                        }
                    }
                    recurse(tail, &mut dsu, count, &mut v);
                    v
                },
                &make,
                |mut a, b| {
                    a.merge(b);
                    a
                },
            )
        }
        Walk::PerSubset => {
            let chunk_bits = m.saturating_sub(DEFAULT_SPLIT);
            exec.map_reduce(
                0..1usize << (m - chunk_bits),
                |hi| {
                    let mut v = make();
                    for lo in 0..1u64 << chunk_bits {
                        let mask = (hi as u64) << chunk_bits | lo;
                        let mut dsu = RollbackDsu::new(n);
                        for (i, &(a, b)) in edges.iter().enumerate() {
                            if mask >> i & 1 == 1 {
                                dsu.union(a, b);
                            }
                        }
                        v.visit(mask.count_ones() as usize, &dsu);
                    }
                    v
                },
                &make,
                |mut a, b| {
                    a.merge(b);
                    a
                },
            )
        }
    }
}

fn recurse<V: SubsetVisitor>(edges: &[(usize, usize)], dsu: &mut RollbackDsu, count: usize, v: &mut V) {
    match edges.split_first() {
        None => v.visit(count, dsu),
        Some((&(a, b), rest)) => {
            recurse(rest, dsu, count, v);
            dsu.union(a, b);
            recurse(rest, dsu, count + 1, v);
            dsu.rollback();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Default)]
    struct Tally(Vec<(usize, usize)>);

    impl SubsetVisitor for Tally {
        fn visit(&mut self, edges_in: usize, dsu: &RollbackDsu) {
            self.0.push((edges_in, dsu.components()));
        }
        fn merge(&mut self, other: Self) {
            self.0.extend(other.0);
        }
    }

    #[test]
    fn rollback_restores_state() {
        let mut d = RollbackDsu::new(5);
        d.union(0, 1);
        d.union(2, 3);
        let before = (d.components(), *d.size_histogram());
        d.union(1, 3);
        d.union(0, 2);
        assert_eq!(d.components(), 2);
        assert_eq!(d.size_histogram()[4], 1);
        d.rollback();
        d.rollback();
        assert_eq!((d.components(), *d.size_histogram()), before);
    }

    #[test]
    fn walks_agree_on_triangle_plus_pendant() {
        let edges = [(0, 1), (1, 2), (0, 2), (2, 3)];
        for exec in [Exec::Serial, Exec::Parallel] {
            let mut a = for_each_subset(4, &edges, Walk::Incremental, exec, Tally::default).0;
            let mut b = for_each_subset(4, &edges, Walk::PerSubset, exec, Tally::default).0;
            a.sort();
            b.sort();
            assert_eq!(a.len(), 16);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn empty_edge_set_visits_once() {
        let t = for_each_subset(3, &[], Walk::Incremental, Exec::Serial, Tally::default);
        assert_eq!(t.0, vec![(0, 3)]);
        let t = for_each_subset(0, &[], Walk::PerSubset, Exec::Serial, Tally::default);
        assert_eq!(t.0, vec![(0, 0)]);
    }
}
