use criterion::{black_box, criterion_group, criterion_main, Criterion};
use tilelab_bench::{pi_cubic, triple_root};
use tilelab_core::{find_roots, FindOptions, Mode};

fn bench_find(c: &mut Criterion) {
    let opts = FindOptions::default();
    let cubic = pi_cubic();
    let triple = triple_root();
    c.bench_function("find_pi_cubic_real", |b| b.iter(|| find_roots(black_box(&cubic), Mode::Real, &opts).unwrap()));
    c.bench_function("find_pi_cubic_complex", |b| b.iter(|| find_roots(black_box(&cubic), Mode::Complex, &opts).unwrap()));
    c.bench_function("find_triple_root", |b| b.iter(|| find_roots(black_box(&triple), Mode::Real, &opts).unwrap()));
}

criterion_group!(benches, bench_find);
criterion_main!(benches);
