use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ensdiv::evolve::evolve_on_table;
use ensdiv::*;
use ensdiv_bench::trained_pool;

fn voting(c: &mut Criterion) {
    let (pool, val) = trained_pool(40, 2000, 1);
    let ens = Ensemble::new((0..21).collect()).unwrap();
    let table = VoteTable::new(&pool, &val).unwrap();

    c.bench_function("forward_pass", |b| b.iter(|| pool[0].forward(black_box(val.row(0))).unwrap()));
    c.bench_function("accuracy_direct_21", |b| {
        b.iter(|| accuracy(&pool, black_box(&ens), &val).unwrap())
    });
    c.bench_function("accuracy_table_21", |b| b.iter(|| table.accuracy(black_box(&ens)).unwrap()));
    c.bench_function("vote_table_build_40", |b| b.iter(|| VoteTable::new(&pool, black_box(&val)).unwrap()));
}

fn ga(c: &mut Criterion) {
    let (pool, val) = trained_pool(40, 2000, 2);
    let table = VoteTable::new(&pool, &val).unwrap();
    let cfg = GaConfig { generations: 10, ..Default::default() };
    let mut g = c.benchmark_group("ga");
    g.sample_size(20);
    g.bench_function("10_generations", |b| {
        b.iter(|| evolve_on_table(&table, black_box(0.75), &cfg, 21).unwrap())
    });
    g.finish();
}

criterion_group!(benches, voting, ga);
criterion_main!(benches);
