//! Canonical forms for multigraphs and an isomorphism test for simple graphs.
//!
//! Canonical labeling uses individualization-refinement: vertices are colored
//! by an equitable refinement of (loop count, weighted neighbour colors), a
//! non-singleton cell is split by individualizing each of its vertices in turn,
//! and the lexicographically smallest adjacency encoding over all discrete
//! leaves is the key. Branches are pruned with twin transpositions and with
//! automorphisms discovered at equal leaves.

use crate::graph::{Graph, MultiGraph};

/// Byte key identifying a multigraph up to isomorphism.
pub type CanonKey = Vec<u8>;

/// Canonical key of a multigraph (multiplicities and loops included).
pub fn canonical_form(g: &MultiGraph) -> CanonKey {
    canonical_labeling(g).0
}

/// Canonical key of a simple graph.
pub fn canonical_form_graph(g: &Graph) -> CanonKey {
    canonical_form(&g.to_multigraph())
}

/// Canonical key together with the labeling that produced it: vertex `v`
/// takes position `perm[v]` in the canonical order.
pub fn canonical_labeling(g: &MultiGraph) -> (CanonKey, Vec<usize>) {
    let n = g.order();
    let w: Vec<u32> = (0..n * n).map(|i| g.multiplicity(i / n, i % n)).collect();
    let mut search = Search { n, w, best: None, autos: Vec::new() };
    let init: Vec<u32> = (0..n).map(|v| search.w[v * n + v]).collect();
    let colors = rank(&init);
    search.descend(colors, &mut Vec::new());
    match search.best {
        Some((key, perm)) => (key, perm),
        None => (encode(n, &search.w, &[]), Vec::new()),
    }
}

struct Search {
    n: usize,
    w: Vec<u32>,
    best: Option<(CanonKey, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search {
    fn descend(&mut self, colors: Vec<u32>, prefix: &mut Vec<usize>) {
        let colors = refine(self.n, &self.w, colors);
        let n = self.n;
        let mut cell_size = vec![0usize; n];
        for &c in &colors {
            cell_size[c as usize] += 1;
        }
        let target = (0..n).find(|&c| cell_size[c] > 1);
        let Some(target) = target else {
            self.leaf(&colors);
            return;
        };
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] as usize == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if explored.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            if !explored.is_empty() && self.same_orbit(prefix, &explored, v) {
                continue;
            }
            explored.push(v);
            prefix.push(v);
            self.descend(individualize(&colors, v), prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, colors: &[u32]) {
        let perm: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let key = encode(self.n, &self.w, &perm);
        match &self.best {
            None => self.best = Some((key, perm)),
            Some((best_key, best_perm)) => {
                if key < *best_key {
                    self.best = Some((key, perm));
                } else if key == *best_key {
                    // equal images: best⁻¹ ∘ leaf... stored as v ↦ leaf⁻¹(best(v))
                    let mut inv = vec![0usize; self.n];
                    for (v, &p) in perm.iter().enumerate() {
                        inv[p] = v;
                    }
                    let gamma: Vec<usize> = best_perm.iter().map(|&p| inv[p]).collect();
                    if gamma.iter().enumerate().any(|(v, &g)| v != g) {
                        self.autos.push(gamma);
                    }
                }
            }
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        let n = self.n;
        if self.w[u * n + u] != self.w[v * n + v] {
            return false;
        }
        (0..n).all(|x| x == u || x == v || self.w[u * n + x] == self.w[v * n + x])
    }

    /// Whether `v` shares an orbit with an explored vertex under the stored
    /// automorphisms that fix `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], explored: &[usize], v: usize) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.autos {
            if prefix.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            any = true;
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }
}

/// Dense ranks of `values`, preserving order.
fn rank(values: &[u32]) -> Vec<u32> {
    let mut sorted: Vec<u32> = values.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    values.iter().map(|v| sorted.binary_search(v).unwrap() as u32).collect()
}

/// Equitable refinement. New colors are ranks of label-independent signatures
/// that begin with the old color, so cell order is preserved across rounds.
fn refine(n: usize, w: &[u32], mut colors: Vec<u32>) -> Vec<u32> {
    let mut cells = count_distinct(&colors);
    let mut sig: Vec<Vec<u64>> = vec![Vec::with_capacity(n + 1); n];
    loop {
        if cells == n {
            return colors;
        }
        for v in 0..n {
            let s = &mut sig[v];
            s.clear();
            s.push(colors[v] as u64);
            let row = &w[v * n..(v + 1) * n];
            let start = s.len();
            for (u, &m) in row.iter().enumerate() {
                if m > 0 && u != v {
                    s.push(((colors[u] as u64) << 32) | m as u64);
                }
            }
            s[start..].sort_unstable();
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| sig[a].cmp(&sig[b]));
        let mut next = vec![0u32; n];
        let mut c = 0u32;
        for i in 0..n {
            if i > 0 && sig[order[i]] != sig[order[i - 1]] {
                c += 1;
            }
            next[order[i]] = c;
        }
        let new_cells = c as usize + 1;
        colors = next;
        if new_cells == cells {
            return colors;
        }
        cells = new_cells;
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut seen = 0u64;
    let mut extra = Vec::new();
    for &c in colors {
        if c < 64 {
            seen |= 1 << c;
        } else if !extra.contains(&c) {
            extra.push(c);
        }
    }
    seen.count_ones() as usize + extra.len()
}

fn individualize(colors: &[u32], v: usize) -> Vec<u32> {
    let cv = colors[v];
    let raw: Vec<u32> = colors.iter().enumerate().map(|(u, &c)| 2 * c + u32::from(c == cv && u != v)).collect();
    rank(&raw)
}

fn encode(n: usize, w: &[u32], perm: &[usize]) -> CanonKey {
    let mut inv = vec![0usize; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let mut key = Vec::with_capacity(1 + n * (n + 1) / 2);
    push_varint(&mut key, n as u32);
    for i in 0..n {
        for j in i..n {
            push_varint(&mut key, w[inv[i] * n + inv[j]]);
        }
    }
    key
}

fn push_varint(out: &mut Vec<u8>, mut x: u32) {
    while x >= 0x80 {
        out.push((x as u8) | 0x80);
        x >>= 7;
    }
    out.push(x as u8);
}

/// Isomorphism test for simple graphs by joint color refinement and
/// backtracking over color-compatible vertex assignments.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.order();
    if n != h.order() || g.size() != h.size() {
        return false;
    }
    if g.degree_sequence() != h.degree_sequence() {
        return false;
    }
    let Some((cg, ch)) = joint_refine(g, h) else {
        return false;
    };
    let mut sizes = vec![0usize; n];
    for &c in &cg {
        sizes[c] += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (sizes[cg[v]], v));
    let mut map = vec![usize::MAX; n];
    let mut used = 0u32;
    extend(g, h, &cg, &ch, &order, 0, &mut map, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut u32,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for t in 0..h.order() {
        if *used >> t & 1 == 1 || ch[t] != cg[v] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| g.has_edge(u, v) == h.has_edge(map[u], t));
        if !consistent {
            continue;
        }
        map[v] = t;
        *used |= 1 << t;
        if extend(g, h, cg, ch, order, depth + 1, map, used) {
            return true;
        }
        *used &= !(1 << t);
        map[v] = usize::MAX;
    }
    false
}

/// Refines both graphs with a shared color numbering. Returns `None` as soon
/// as the color class sizes differ.
fn joint_refine(g: &Graph, h: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.order();
    let mut cg: Vec<usize> = vec![0; n];
    let mut ch: Vec<usize> = vec![0; n];
    let mut classes = 1usize;
    loop {
        let sig = |gr: &Graph, col: &[usize], v: usize| -> (usize, Vec<usize>) {
            let mut nb: Vec<usize> = (0..n).filter(|&u| gr.has_edge(v, u)).map(|u| col[u]).collect();
            nb.sort_unstable();
            (col[v], nb)
        };
        let sg: Vec<_> = (0..n).map(|v| sig(g, &cg, v)).collect();
        let sh: Vec<_> = (0..n).map(|v| sig(h, &ch, v)).collect();
        let mut all: Vec<&(usize, Vec<usize>)> = sg.iter().chain(sh.iter()).collect();
        all.sort();
        all.dedup();
        let idx = |s: &(usize, Vec<usize>)| all.binary_search(&s).unwrap();
        let ng: Vec<usize> = sg.iter().map(idx).collect();
        let nh: Vec<usize> = sh.iter().map(idx).collect();
        let mut count = vec![0isize; all.len()];
        for &c in &ng {
            count[c] += 1;
        }
        for &c in &nh {
            count[c] -= 1;
        }
        if count.iter().any(|&c| c != 0) {
            return None;
        }
        cg = ng;
        ch = nh;
        if all.len() == classes {
            return Some((cg, ch));
        }
        classes = all.len();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        fn rec(cur: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left.is_empty() {
                out.push(cur.clone());
                return;
            }
            for i in 0..left.len() {
                let x = left.remove(i);
                cur.push(x);
                rec(cur, left, out);
                cur.pop();
                left.insert(i, x);
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
        out
    }

    #[test]
    fn c5_has_a_single_key_under_all_relabelings() {
        let c5 = Graph::cycle(5);
        let base = canonical_form_graph(&c5);
        let perms = permutations(5);
        assert_eq!(perms.len(), 120);
        for p in perms {
            assert_eq!(canonical_form_graph(&c5.relabel(&p)), base);
        }
    }

    #[test]
    fn p4_and_star_differ() {
        assert_ne!(canonical_form_graph(&Graph::path(4)), canonical_form_graph(&Graph::star(3)));
        assert!(!is_isomorphic(&Graph::path(4), &Graph::star(3)));
    }

    #[test]
    fn multiplicity_and_loops_matter() {
        let mut a = MultiGraph::new(3);
        a.add_edges(0, 1, 2);
        a.add_edges(1, 2, 1);
        let mut b = MultiGraph::new(3);
        b.add_edges(0, 1, 1);
        b.add_edges(1, 2, 2);
        assert_eq!(canonical_form(&a), canonical_form(&b));
        let mut c = MultiGraph::new(3);
        c.add_edges(0, 1, 1);
        c.add_edges(1, 2, 1);
        c.add_edges(0, 2, 1);
        assert_ne!(canonical_form(&a), canonical_form(&c));
        let mut d = a.clone();
        d.add_edges(2, 2, 1);
        let mut e = a.clone();
        e.add_edges(0, 0, 1);
        assert_ne!(canonical_form(&d), canonical_form(&e));
        assert_ne!(canonical_form(&a), canonical_form(&d));
    }

    #[test]
    fn highly_symmetric_graphs_finish() {
        for n in [0, 1, 12, 16] {
            let k = Graph::complete(n);
            assert_eq!(canonical_form_graph(&k), canonical_form_graph(&k.relabel(&(0..n).rev().collect::<Vec<_>>())));
            assert!(is_isomorphic(&k, &k));
        }
        // 4 disjoint triangles: no twins across components
        let mut g = Graph::empty(12);
        for t in 0..4 {
            g.add_edge(3 * t, 3 * t + 1);
            g.add_edge(3 * t + 1, 3 * t + 2);
            g.add_edge(3 * t, 3 * t + 2);
        }
        let perm: Vec<usize> = (0..12).map(|v| (v * 5) % 12).collect();
        assert_eq!(canonical_form_graph(&g), canonical_form_graph(&g.relabel(&perm)));
    }

    #[test]
    fn labeling_maps_graph_onto_key() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]).to_multigraph();
        let (key, perm) = canonical_labeling(&g);
        assert_eq!(canonical_form(&g.relabel(&perm)), key);
    }
}
