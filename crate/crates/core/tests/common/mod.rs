#![allow(dead_code)]

use cotwin::Graph;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const CHROMATIC_PAIR_G6: &str = "HCpVdZY";
pub const SUBSEQ_PAIR_G6: &str = "GCRdvK";

/// `g` plus one new vertex adjacent to every existing vertex.
pub fn cone(g: &Graph) -> Graph {
    let n = g.order();
    let mut out = Graph::empty(n + 1);
    for (u, v) in g.edges() {
        out.add_edge(u, v);
    }
    for v in 0..n {
        out.add_edge(v, n);
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Edge bit mask over pairs in graph6 order.
pub fn edge_mask(g: &Graph) -> u64 {
    let mut mask = 0u64;
    let mut bit = 0;
    for v in 1..g.order() {
        for u in 0..v {
            if g.has_edge(u, v) {
                mask |= 1 << bit;
            }
            bit += 1;
        }
    }
    mask
}

pub fn from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut bit = 0;
    for v in 1..n {
        for u in 0..v {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v);
            }
            bit += 1;
        }
    }
    g
}

/// Brute-force isomorphism over all `n!` bijections.
pub fn brute_isomorphic(g: &Graph, h: &Graph, perms: &[Vec<usize>]) -> bool {
    g.order() == h.order() && g.size() == h.size() && perms.iter().any(|p| &g.relabel(p) == h)
}

/// Smallest edge mask over all relabelings: a brute-force canonical form.
pub fn brute_key(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    perms.iter().map(|p| edge_mask(&g.relabel(p))).min().unwrap_or(0)
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn random_perm(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        p.swap(i, j);
    }
    p
}
