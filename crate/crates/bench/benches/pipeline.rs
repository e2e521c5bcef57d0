use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use mild_bench::{cycle_forms, cycle_presentation, dense_matrix, long_element, prime};
use mild_core::fplinalg::row_reduce;
use mild_core::magnus::expand;
use mild_core::mildness::{raag_bipartite_check, strong_freeness_oracle};
use mild_core::Graph;

fn magnus(c: &mut Criterion) {
    let g = long_element(4);
    let mut group = c.benchmark_group("expand");
    for cap in [4, 6, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(cap), &cap, |b, &cap| {
            b.iter(|| expand(black_box(&g), 4, prime(3), cap).unwrap())
        });
    }
    group.finish();
}

fn elimination(c: &mut Criterion) {
    let mut group = c.benchmark_group("row_reduce");
    for n in [32, 128, 256] {
        let m = dense_matrix(101, n, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| row_reduce(black_box(m))));
    }
    group.finish();
}

fn certification(c: &mut Criterion) {
    let mut group = c.benchmark_group("raag_cycle");
    for n in [4, 8, 12] {
        let graph = Graph::cycle(n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &graph, |b, g| {
            b.iter(|| raag_bipartite_check(black_box(g), prime(2)).unwrap())
        });
    }
    group.finish();

    let pres = cycle_presentation(6, 2);
    c.bench_function("zassenhaus_degrees_c6", |b| b.iter(|| black_box(&pres).zassenhaus_degrees().unwrap()));
}

fn oracle(c: &mut Criterion) {
    let forms = cycle_forms(4);
    let tau = [1; 4];
    let mut group = c.benchmark_group("oracle_square");
    group.sample_size(20);
    for depth in [4, 6] {
        group.bench_with_input(BenchmarkId::from_parameter(depth), &depth, |b, &n| {
            b.iter(|| strong_freeness_oracle(black_box(&forms), &tau, n).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, magnus, elimination, certification, oracle);
criterion_main!(benches);
