use std::hint::black_box;

use apolar_bench::{bicubic, binary, diagonal_conic, ternary_quartic};
use apolar_core::pipeline::{fingerprint, reconstruct_binary_odd, reconstruct_genus3, Options};
use apolar_core::recon::parametrize_conic;
use apolar_core::transvectant::{transvect, transvect2};
use criterion::{criterion_group, criterion_main, Criterion};

fn transvectants(c: &mut Criterion) {
    let (f, g) = (binary(6, 1), binary(6, 2));
    c.bench_function("transvectant (6,6)_2", |b| b.iter(|| transvect(black_box(&f), black_box(&g), 2).unwrap()));
    c.bench_function("transvectant (6,6)_4", |b| b.iter(|| transvect(black_box(&f), black_box(&g), 4).unwrap()));
    let h = bicubic(3);
    c.bench_function("double transvectant (3,3)_(2,2)", |b| {
        b.iter(|| transvect2(black_box(&h), black_box(&h), 2, 2).unwrap())
    });
}

fn fingerprints(c: &mut Criterion) {
    let f = binary(5, 4);
    c.bench_function("fingerprint binary quintic", |b| b.iter(|| fingerprint(&[black_box(f.clone())]).unwrap()));
    let q = ternary_quartic(5);
    c.bench_function("fingerprint ternary quartic", |b| b.iter(|| fingerprint(&[black_box(q.clone())]).unwrap()));
}

fn conics(c: &mut Criterion) {
    let q = diagonal_conic(7, 11, -13 * 17);
    c.bench_function("parametrize diagonal conic", |b| b.iter(|| parametrize_conic(black_box(&q), 10_000).unwrap()));
}

fn pipelines(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipelines");
    group.sample_size(10);
    let f = binary(5, 6);
    group.bench_function("binary quintic", |b| b.iter(|| reconstruct_binary_odd(black_box(&f), &Options::default()).unwrap()));
    let q = ternary_quartic(7);
    group.bench_function("ternary quartic", |b| b.iter(|| reconstruct_genus3(black_box(&q), &Options::default()).unwrap()));
    group.finish();
}

criterion_group!(benches, transvectants, fingerprints, conics, pipelines);
criterion_main!(benches);
