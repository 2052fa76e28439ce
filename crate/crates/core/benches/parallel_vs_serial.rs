use std::hint::black_box;
use std::time::Duration;

use cotwin::search::{generate_all_with, SearchOptions, Source};
use cotwin::subseq::subgraph_sequence_with;
use cotwin::subsets::Walk;
use cotwin::tutte::tutte_subset_expansion_with;
use cotwin::{decode, search, Exec, Predicate};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Exec); 2] = [("serial", Exec::Serial), ("parallel", Exec::Parallel)];

fn subset_walks(c: &mut Criterion) {
    // 8 vertices, 14 edges
    let g = decode("GCRdvK").unwrap();
    let mut group = c.benchmark_group("subset_enumeration");
    group.sample_size(10).measurement_time(Duration::from_secs(3));
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("tutte", name), &exec, |b, &exec| {
            b.iter(|| tutte_subset_expansion_with(black_box(&g), Walk::Incremental, exec).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("subgraph_sequence", name), &exec, |b, &exec| {
            b.iter(|| subgraph_sequence_with(black_box(&g), Walk::Incremental, exec).unwrap())
        });
    }
    group.finish();
}

fn generation(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate_all");
    group.sample_size(10).measurement_time(Duration::from_secs(3));
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("n6", name), &exec, |b, &exec| {
            b.iter(|| generate_all_with(black_box(6), exec).unwrap())
        });
    }
    group.finish();
}

fn witness_search(c: &mut Criterion) {
    let predicate = Predicate::any();
    let mut group = c.benchmark_group("search");
    group.sample_size(10).measurement_time(Duration::from_secs(3));
    for (name, exec) in MODES {
        let opts = SearchOptions { exec, ..Default::default() };
        group.bench_with_input(BenchmarkId::new("gen5_all", name), &opts, |b, opts| {
            b.iter(|| search(&Source::Generate(5), &predicate, opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, subset_walks, generation, witness_search);
criterion_main!(benches);
