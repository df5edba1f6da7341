use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use threept_core::fock::FockVector;
use threept_core::realization::{apply_mode, ModeCache, RealizationConfig};
use threept_core::{Generator, Rational};

fn modes(c: &mut Criterion) {
    let cfg = RealizationConfig::standard(0, Rational::one()).unwrap();
    let v: FockVector = "x_1*y1_-2*v0 + 2*x1_-1*v1".parse().unwrap();
    for g in [Generator::E, Generator::F1, Generator::H1] {
        c.bench_function(&format!("apply_mode_{g}"), |b| {
            b.iter(|| apply_mode(g, black_box(-1), black_box(&v), &cfg))
        });
    }
}

fn residual(c: &mut Criterion) {
    let v: FockVector = "x_2*y_-1*v0".parse().unwrap();
    c.bench_function("relation_residual_cold_f1_f1", |b| {
        b.iter_batched(
            || ModeCache::new(RealizationConfig::standard(0, Rational::one()).unwrap()),
            |mut cache| cache.relation_residual(Generator::F1, 1, Generator::F1, -2, &v),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, modes, residual);
criterion_main!(benches);
