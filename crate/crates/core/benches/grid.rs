use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use crystal_partitions::characters::{character_grid, main_grid, Level2Module, MainRelation};
use crystal_partitions::Parallelism;

const MODES: [(&str, Parallelism); 2] = [
    ("sequential", Parallelism::Sequential),
    ("rayon", Parallelism::Auto),
];

fn main_identity_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("main_grid_n4_order20");
    group.sample_size(20);
    for (name, par) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &par, |b, &par| {
            b.iter(|| {
                main_grid(
                    Some(4),
                    &[MainRelation::Exact, MainRelation::Atleast],
                    20,
                    par,
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

fn level2_character_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("character_grid_order8");
    group.sample_size(20);
    for (name, par) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &par, |b, &par| {
            b.iter(|| character_grid(&Level2Module::ALL, 8, par).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, main_identity_grid, level2_character_grid);
criterion_main!(benches);
