mod common;

use std::fs;
use std::path::Path;

use cotwin::construct::hat_chromatic_from;
use cotwin::search::{classify_for, SearchOptions, SearchResult, Source};
use cotwin::subseq::seq_implies_tutte_check;
use cotwin::{
    chromatic_poly, classify, decode, encode, hat, is_isomorphic, iterate_hat, search, Budget, ErrorKind, Exec, Graph,
    Predicate,
};
use rand::Rng as _;

use common::{random_graph, rng, CHROMATIC_PAIR_G6, SUBSEQ_PAIR_G6};

fn write_lines(dir: &Path, name: &str, lines: &[&str]) -> std::path::PathBuf {
    let path = dir.join(name);
    fs::write(&path, lines.join("\n")).unwrap();
    path
}

fn run(source: &Source, predicate: &str, opts: &SearchOptions) -> SearchResult {
    search(source, &predicate.parse().unwrap(), opts).unwrap()
}

#[test]
fn file_of_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let g9 = decode(CHROMATIC_PAIR_G6).unwrap();
    let g8 = decode(SUBSEQ_PAIR_G6).unwrap();
    let c9 = encode(&g9.complement());
    let c8 = encode(&g8.complement());
    let path = write_lines(dir.path(), "w.g6", &[">>graph6<<HCpVdZY", &c9, "", SUBSEQ_PAIR_G6, &c8]);
    let source = Source::File { path, strict: true };
    let all = run(&source, "all", &SearchOptions::default());
    assert!(all.complete);
    assert_eq!(all.summary.processed, 4);
    assert_eq!(all.matches.len(), 4);
    for r in &all.matches {
        r.check_implications().unwrap();
        assert!(r.half_edge_condition);
        assert_eq!(r.self_complementary, Some(false));
        assert_eq!(r.chromatic_equal, Some(true));
    }
    assert_eq!(all.summary.tag_counts["chromatic-twin"], 4);
    assert_eq!(all.summary.tag_counts["chromatic-degree-split"], 2);
    assert_eq!(all.summary.tag_counts["subseq-twin"], 2);
    assert_eq!(all.summary.tag_counts["tutte-twin"], 2);

    let twins = run(&source, "subseq-twin", &SearchOptions::default());
    let found: Vec<_> = twins.matches.iter().map(|r| (r.order, r.tutte_equal)).collect();
    assert_eq!(found, [(8, Some(true)), (8, Some(true))]);
    assert_eq!(twins.matches[0].graph6, SUBSEQ_PAIR_G6);
}

#[test]
fn empty_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_lines(dir.path(), "empty.g6", &[]);
    let r = run(&Source::File { path, strict: true }, "all", &SearchOptions::default());
    assert!(r.complete);
    assert_eq!(r.summary.processed, 0);
    assert!(r.matches.is_empty());
}

#[test]
fn malformed_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_lines(dir.path(), "bad.g6", &["DQc", "D!!", "A_", ":Fa@x^"]);
    let lenient = run(&Source::File { path: path.clone(), strict: false }, "all", &SearchOptions::default());
    assert!(lenient.complete);
    assert_eq!(lenient.summary.processed, 2);
    let lines: Vec<usize> = lenient.summary.errors.iter().map(|e| e.line).collect();
    assert_eq!(lines, [2, 4]);

    let err = search(&Source::File { path, strict: true }, &Predicate::any(), &SearchOptions::default()).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Parse);

    let missing = Source::File { path: dir.path().join("nope.g6"), strict: true };
    let err = search(&missing, &Predicate::any(), &SearchOptions::default()).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Io);
}

#[test]
fn five_vertex_half_edge_graphs() {
    let r = run(&Source::Generate(5), "half-edge", &SearchOptions::default());
    assert_eq!(r.matches.len(), 6);
    assert!(r.matches.iter().all(|m| m.self_complementary.is_none()));
    let sc = run(&Source::Generate(5), "half_edge_condition & self_complementary", &SearchOptions::default());
    let sc: Vec<Graph> = sc.matches.iter().map(|m| decode(&m.graph6).unwrap()).collect();
    assert_eq!(sc.len(), 2);
    let bull = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (1, 3), (2, 4)]);
    assert!(sc.iter().any(|g| is_isomorphic(g, &Graph::cycle(5))));
    assert!(sc.iter().any(|g| is_isomorphic(g, &bull)));
}

#[test]
fn generator_order_guard() {
    let err = search(&Source::Generate(8), &Predicate::any(), &SearchOptions::default()).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Usage);
}

#[test]
fn checkpoint_resume_matches_uninterrupted_run() {
    let dir = tempfile::tempdir().unwrap();
    let source = Source::Generate(5);
    let full = run(&source, "half-edge", &SearchOptions { batch: 4, ..Default::default() });

    let ckpt = dir.path().join("state.json");
    let opts = SearchOptions { batch: 4, limit: Some(5), checkpoint: Some(ckpt.clone()), ..Default::default() };
    let mut rounds = 0;
    let resumed = loop {
        rounds += 1;
        let r = run(&source, "half-edge", &opts);
        if r.complete {
            break r;
        }
        assert!(rounds < 100);
    };
    assert!(rounds > 2);
    assert_eq!(serde_json::to_string(&resumed).unwrap(), serde_json::to_string(&full).unwrap());

    // a checkpoint is tied to its source and predicate
    let err = search(&source, &"tutte-twin".parse().unwrap(), &opts).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Usage);
    fs::write(&ckpt, "not json").unwrap();
    assert_eq!(search(&source, &Predicate::any(), &opts).unwrap_err().kind(), ErrorKind::Usage);
}

#[test]
fn worker_count_does_not_change_results() {
    let mut r = rng(42);
    let mut graphs = Vec::new();
    while graphs.len() < 40 {
        let g = random_graph(&mut r, 8, 0.5);
        if g.size() == 14 {
            graphs.push(g);
        }
    }
    graphs.push(decode(SUBSEQ_PAIR_G6).unwrap());
    let source = Source::Graphs(graphs);
    let base = run(&source, "all", &SearchOptions { exec: Exec::Serial, batch: 7, ..Default::default() });
    for jobs in [1, 4] {
        let opts = SearchOptions { exec: Exec::Parallel, jobs: Some(jobs), batch: 7, ..Default::default() };
        assert_eq!(run(&source, "all", &opts), base);
    }
    for m in &base.matches {
        m.check_implications().unwrap();
    }
}

#[test]
fn early_abort_leaves_later_fields_unset() {
    let g = decode(CHROMATIC_PAIR_G6).unwrap();
    let p: Predicate = "degree_seq_equal".parse().unwrap();
    let r = classify_for(&g, &Budget::default(), &p).unwrap();
    assert_eq!(r.degree_seq_equal, Some(false));
    assert_eq!(p.evaluate(&r), Some(false));
    assert_eq!(r.tutte_equal, None);

    let full = classify(&g, &Budget::default()).unwrap();
    assert_eq!(full.chromatic_equal, Some(true));
    assert_eq!(full.tutte_equal, Some(false));
    assert_eq!(full.subgraph_seq_equal, Some(false));
}

#[test]
fn budget_skips_are_reported() {
    let g = decode(SUBSEQ_PAIR_G6).unwrap();
    let budget = Budget { max_subset_edges: 10, max_tutte_edges: 10, ..Default::default() };
    let r = classify(&g, &budget).unwrap();
    assert_eq!(r.subgraph_seq_equal, None);
    assert_eq!(r.tutte_equal, None);
    assert!(r.skipped.contains_key("subgraph_seq_equal"));
    assert!(r.skipped.contains_key("tutte_equal"));
    let json = serde_json::to_value(&r).unwrap();
    assert!(json["tutte_equal"].is_null());
}

#[test]
fn report_json_shape() {
    let r = classify(&Graph::cycle(5), &Budget::default()).unwrap();
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["graph6"], "Dhc");
    assert_eq!(json["self_complementary"], true);
    assert_eq!(json["tutte_equal"], true);
    assert!(json.get("skipped").is_none());
    let back: cotwin::WitnessReport = serde_json::from_value(json).unwrap();
    assert_eq!(back, r);
}

#[test]
fn sequence_equality_forces_tutte_equality() {
    let g = decode(SUBSEQ_PAIR_G6).unwrap();
    assert!(seq_implies_tutte_check(&g, &g.complement()).unwrap());
    let g9 = decode(CHROMATIC_PAIR_G6).unwrap();
    assert!(!seq_implies_tutte_check(&g9, &g9.complement()).unwrap());
    let mut r = rng(3);
    for _ in 0..30 {
        let n = r.random_range(1..=7);
        let g = random_graph(&mut r, n, 0.4);
        let perm = common::random_perm(&mut r, n);
        assert!(seq_implies_tutte_check(&g, &g.relabel(&perm)).unwrap());
    }
}

#[test]
fn iterated_hats() {
    assert!(is_isomorphic(&iterate_hat(&Graph::empty(1), 1).unwrap(), &Graph::cycle(5)));
    let g = decode(SUBSEQ_PAIR_G6).unwrap();
    let once = iterate_hat(&g, 1).unwrap();
    assert_eq!(once, hat(&g).unwrap());
    let twice = iterate_hat(&g, 2).unwrap();
    assert_eq!((twice.order(), twice.size()), (16, 33 + 3 + 24));
    assert_eq!(4 * twice.size(), twice.order() * (twice.order() - 1));

    let k2 = Graph::complete(2);
    let expected = hat_chromatic_from(&hat_chromatic_from(&chromatic_poly(&k2)));
    assert_eq!(chromatic_poly(&iterate_hat(&k2, 2).unwrap()), expected);
}
