use criterion::{black_box, criterion_group, criterion_main, Criterion};

use supermod::rng::{random_supermodular, Lcg64};
use supermod::{balanced, cone, matroid, transform, twolayer};

fn rays(c: &mut Criterion) {
    c.bench_function("enumerate rays n=4", |b| {
        b.iter(|| cone::enumerate_irreducible_supermodular(black_box(4)).unwrap())
    });
    c.bench_function("two-layer face n=5 t=2", |b| {
        b.iter(|| cone::enumerate_irreducible_on_layers(5, black_box(&[2, 3])).unwrap())
    });
    c.bench_function("two-layer family n=6 t=3", |b| b.iter(|| twolayer::enumerate_two_layer(6, black_box(3)).unwrap()));
}

fn transform_roundtrip(c: &mut Criterion) {
    let f = random_supermodular(5, &mut Lcg64::new(11)).unwrap();
    c.bench_function("apply_t + reconstruct n=5", |b| {
        b.iter(|| transform::reconstruct(&transform::apply_t(black_box(&f)).unwrap()).unwrap())
    });
    let rays = cone::enumerate_irreducible_supermodular(4).unwrap();
    let g = random_supermodular(4, &mut Lcg64::new(12)).unwrap();
    c.bench_function("conic decomposition n=4", |b| b.iter(|| cone::conic_decompose(black_box(&g), &rays).unwrap()));
}

fn balanced_and_matroids(c: &mut Criterion) {
    c.bench_function("balanced enumeration N=3", |b| {
        b.iter(|| balanced::enumerate_irreducible_balanced(black_box(3)).unwrap())
    });
    c.bench_function("determinant experiment N=6", |b| {
        b.iter(|| balanced::determinant_experiment(6, black_box(1000), 1).unwrap())
    });
    c.bench_function("loopless matroids n=4", |b| b.iter(|| matroid::enumerate_loopless_matroids(black_box(4)).unwrap()));
}

criterion_group!(benches, rays, transform_roundtrip, balanced_and_matroids);
criterion_main!(benches);
