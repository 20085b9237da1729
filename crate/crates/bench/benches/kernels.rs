use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use minkowski_bench::EXPONENTS;
use minkowski_core::{ball, covering, lattice, matroid, numerics};

fn scalar_kernels(c: &mut Criterion) {
    c.bench_function("gamma", |b| {
        b.iter(|| numerics::gamma(black_box(1.0 + 1.0 / 3.0)).unwrap())
    });
    c.bench_function("tau_p", |b| {
        b.iter(|| {
            for p in EXPONENTS {
                black_box(ball::tau(black_box(p)).unwrap());
            }
        })
    });
    c.bench_function("moduli_area", |b| {
        b.iter(|| covering::moduli_area(black_box(3.0), black_box(1.5)).unwrap())
    });
}

fn lattice_kernels(c: &mut Criterion) {
    let basis = lattice::critical_lattice_1(3.0).unwrap();
    c.bench_function("admissibility", |b| {
        b.iter(|| lattice::is_admissible(black_box(3.0), 1.0, &basis))
    });
    c.bench_function("critical_lattice_1", |b| {
        b.iter(|| lattice::critical_lattice_1(black_box(3.0)).unwrap())
    });
}

fn search_kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("max_inscribed_hexagon", |b| {
        b.iter(|| covering::max_inscribed_hexagon(black_box(3.0)).unwrap())
    });
    let m = matroid::uniform(4, 8).unwrap();
    group.bench_function("flats_u48", |b| b.iter(|| black_box(&m).flats()));
    group.finish();
}

criterion_group!(benches, scalar_kernels, lattice_kernels, search_kernels);
criterion_main!(benches);
