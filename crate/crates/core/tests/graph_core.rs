mod common;

use common::*;
use cotwin::canon::canonical_labeling;
use cotwin::search::generate_all;
use cotwin::{canonical_form, canonical_form_graph, decode, encode, is_isomorphic, Graph, MultiGraph};
use proptest::prelude::*;
use rand::Rng as _;

#[test]
fn witness_degree_sequences() {
    let g = decode(CHROMATIC_PAIR_G6).unwrap();
    assert_eq!(g.degree_sequence().0, vec![5, 5, 5, 4, 4, 4, 4, 3, 2]);
    assert_eq!(g.complement().degree_sequence().0, vec![6, 5, 4, 4, 4, 4, 3, 3, 3]);

    let w = decode(SUBSEQ_PAIR_G6).unwrap();
    let twos = w.degree_sequence().0.iter().filter(|&&d| d == 2).count();
    assert_eq!(twos, 2);
    let twos_c = w.complement().degree_sequence().0.iter().filter(|&&d| d == 2).count();
    assert_eq!(twos_c, 2);
}

#[test]
fn order_eight_witness_degree_two_vertices() {
    // in G the two degree-2 vertices share a neighbour, in the complement they do not
    let shared = |g: &Graph| {
        let v: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) == 2).collect();
        g.neighbors(v[0]) & g.neighbors(v[1]) != 0
    };
    let w = decode(SUBSEQ_PAIR_G6).unwrap();
    assert!(shared(&w));
    assert!(!shared(&w.complement()));
    assert!(!is_isomorphic(&w, &w.complement()));
}

#[test]
fn isomorphism_matches_brute_force_exhaustively_to_six() {
    for n in 0..=6 {
        let perms = permutations(n);
        let reps = generate_all(n).unwrap();
        // every pair of representatives is non-isomorphic, and each is isomorphic to a relabeling of itself
        let mut r = rng(n as u64);
        for (i, g) in reps.iter().enumerate() {
            let h = g.relabel(&random_perm(&mut r, n));
            assert!(is_isomorphic(g, &h));
            assert!(brute_isomorphic(g, &h, &perms));
            for other in &reps[i + 1..] {
                if other.size() != g.size() {
                    continue;
                }
                assert!(!is_isomorphic(g, other));
                assert!(!brute_isomorphic(g, other, &perms), "generator kept isomorphic pair");
            }
        }
    }
}

#[test]
fn isomorphism_matches_brute_force_on_random_pairs() {
    let mut r = rng(7);
    for n in [7usize, 8] {
        let perms = permutations(n);
        for _ in 0..500 {
            let g = random_graph(&mut r, n, 0.5);
            // half the time a relabeled copy with one edge flipped, so both outcomes occur
            let mut h = g.relabel(&random_perm(&mut r, n));
            if r.random_bool(0.5) {
                let u = r.random_range(0..n);
                let v = (u + 1 + r.random_range(0..n - 1)) % n;
                if h.has_edge(u, v) {
                    h.remove_edge(u, v);
                } else {
                    h.add_edge(u, v);
                }
            }
            let fast = is_isomorphic(&g, &h);
            assert_eq!(fast, brute_isomorphic(&g, &h, &perms), "{g:?} vs {h:?}");
            assert_eq!(fast, canonical_form_graph(&g) == canonical_form_graph(&h));
        }
    }
}

#[test]
fn canonical_form_agrees_with_brute_force_key() {
    for n in 0..=6 {
        let perms = permutations(n);
        let total = 1u64 << (n * n.saturating_sub(1) / 2);
        let step = (total / 2000).max(1);
        let mut by_brute = std::collections::HashMap::new();
        let mut mask = 0;
        while mask < total {
            let g = from_mask(n, mask);
            let ours = canonical_form_graph(&g);
            let theirs = brute_key(&g, &perms);
            if let Some(prev) = by_brute.insert(theirs, ours.clone()) {
                assert_eq!(prev, ours, "n={n} mask={mask}");
            }
            mask += step;
        }
        let distinct_ours: std::collections::HashSet<_> = by_brute.values().collect();
        assert_eq!(distinct_ours.len(), by_brute.len());
    }
}

#[test]
fn multigraph_keys_are_relabeling_invariant() {
    let mut r = rng(11);
    for _ in 0..200 {
        let n = r.random_range(1..=8);
        let mut m = MultiGraph::new(n);
        for _ in 0..r.random_range(0..15) {
            let u = r.random_range(0..n);
            let v = r.random_range(0..n);
            m.add_edges(u, v, r.random_range(1..4));
        }
        let p = random_perm(&mut r, n);
        assert_eq!(canonical_form(&m), canonical_form(&m.relabel(&p)));
        let (key, lab) = canonical_labeling(&m);
        assert_eq!(canonical_form(&m.relabel(&lab)), key);
    }
}

#[test]
fn complement_of_witness_round_trips_through_graph6() {
    let c = decode(CHROMATIC_PAIR_G6).unwrap().complement();
    let back = decode(&encode(&c)).unwrap();
    assert_eq!(back, c);
    assert_eq!(back.degree_sequence().0, vec![6, 5, 4, 4, 4, 4, 3, 3, 3]);
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut it = bits.into_iter();
            for v in 1..n {
                for u in 0..v {
                    if it.next().unwrap() {
                        g.add_edge(u, v);
                    }
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn complement_is_an_involution(g in graph_strategy(10)) {
        let c = g.complement();
        prop_assert_eq!(c.complement(), g.clone());
        let n = g.order();
        prop_assert_eq!(g.size() + c.size(), n * n.saturating_sub(1) / 2);
    }

    #[test]
    fn degree_sum_is_twice_size(g in graph_strategy(12)) {
        prop_assert_eq!(g.degree_sequence().sum(), 2 * g.size());
        let d = g.degree_sequence().0;
        prop_assert!(d.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn graph6_round_trips(g in graph_strategy(16)) {
        let s = encode(&g);
        prop_assert_eq!(decode(&s).unwrap(), g);
        prop_assert_eq!(encode(&decode(&s).unwrap()), s);
    }
}
