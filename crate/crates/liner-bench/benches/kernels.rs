//! Microbenchmarks for the hot kernels: hull closure, lattice saturation,
//! rank search, and a representative axiom scan.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use liner_core::axioms::CheckConfig;
use liner_core::hull::saturated_lattice;
use liner_core::parallels::parallelity_profile;
use liner_core::{flat_hull, gallery_entry, rank, Liner, PointSet, RankBudget};

fn build(name: &str) -> Liner {
    (gallery_entry(name).expect("catalog entry").build)().expect("constructor")
}

fn bench_hull_closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("hull_closure");
    for name in ["fano", "ag33", "hall81"] {
        let liner = build(name);
        let n = liner.point_count();
        // A spread-out seed: four points marching through the point range.
        let seed = PointSet::from_points(n, (0..4).map(|i| i * n / 4));
        group.bench_function(name, |b| {
            b.iter(|| flat_hull(black_box(&liner), black_box(&seed)))
        });
    }
    group.finish();
}

fn bench_lattice_saturation(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice_saturation");
    group.sample_size(20);
    for name in ["fano", "ag33", "table25"] {
        group.bench_function(name, |b| {
            // Rebuild each iteration: saturation is cached per structure.
            b.iter_batched(
                || build(name),
                |liner| saturated_lattice(black_box(&liner)).expect("saturation"),
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn bench_rank_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank_search");
    for name in ["ag33", "tao"] {
        let liner = build(name);
        let full = PointSet::full(liner.point_count());
        let budget = RankBudget::default();
        group.bench_function(name, |b| {
            b.iter(|| rank(black_box(&liner), black_box(&full), &budget).expect("rank"))
        });
    }
    group.finish();
}

fn bench_parallel_profile(c: &mut Criterion) {
    let mut group = c.benchmark_group("parallel_profile");
    group.sample_size(20);
    let cfg = CheckConfig::default();
    for name in ["ag33", "table25"] {
        let liner = build(name);
        group.bench_function(name, |b| {
            b.iter(|| parallelity_profile(black_box(&liner), &cfg).expect("profile"))
        });
    }
    group.finish();
}

criterion_group!(
    kernels,
    bench_hull_closure,
    bench_lattice_saturation,
    bench_rank_search,
    bench_parallel_profile
);
criterion_main!(kernels);
