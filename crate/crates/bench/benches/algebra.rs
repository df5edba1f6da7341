use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use threept_core::current::bracket;
use threept_core::kahler::pairing;
use threept_core::ring::to_s;
use threept_core::{CurrentElem, RingElem};

fn ring(c: &mut Criterion) {
    let x: RingElem = "3*t^4*u - 2*t^-3 + 1/2*u".parse().unwrap();
    let y: RingElem = "t^-5*u + 7*t^2".parse().unwrap();
    c.bench_function("ring_mul", |b| b.iter(|| black_box(&x) * black_box(&y)));
    c.bench_function("to_s", |b| b.iter(|| to_s(black_box(&x))));
}

fn kahler(c: &mut Criterion) {
    let f: RingElem = "t^6*u + t^-4".parse().unwrap();
    let g: RingElem = "t^-7*u - 3*t^5".parse().unwrap();
    c.bench_function("pairing", |b| {
        b.iter(|| pairing(black_box(&f), black_box(&g)))
    });
}

fn current(c: &mut Criterion) {
    let x: CurrentElem = "2*e[t^3*u] + h[t^-2] - f1[1]".parse().unwrap();
    let y: CurrentElem = "f[t^-4*u] + 3*h1[2] + e[t^1]".parse().unwrap();
    c.bench_function("bracket", |b| {
        b.iter(|| bracket(black_box(&x), black_box(&y)))
    });
}

criterion_group!(benches, ring, kahler, current);
criterion_main!(benches);
