use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use k3walls::arith::ratio;
use k3walls::walls::{count_h, g_total};
use k3walls_bench::{LARGE_TARGETS, MEDIUM_TARGETS};

fn bench_count_h(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_h");
    for &(n, m) in MEDIUM_TARGETS.iter().chain(LARGE_TARGETS) {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{n}/{m}")),
            &(n, m),
            |b, &(n, m)| b.iter(|| count_h(&ratio(n, m)).h_value),
        );
    }
    group.finish();
}

fn bench_g_total(c: &mut Criterion) {
    let mut group = c.benchmark_group("g_total");
    group.sample_size(20);
    for m in [60u64, 120, 240] {
        group.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| {
            b.iter(|| g_total(m).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_count_h, bench_g_total);
criterion_main!(benches);
