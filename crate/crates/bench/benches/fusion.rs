use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fusionkit_core::condense::{induced_fusion, resolve_split};
use fusionkit_core::exactnum::CycNum;
use fusionkit_core::fusring::{balancing_s, verlinde};
use fusionkit_core::wzw::{self, AlgebraSpec, LevelWeight};

fn wzw_benches(c: &mut Criterion) {
    let sl3 = AlgebraSpec::sl3(9).unwrap();
    c.bench_function("sl3 k=9 fuse (2,2)x(3,3)", |b| {
        b.iter(|| wzw::fuse(&sl3, black_box(&LevelWeight::A2(2, 2)), black_box(&LevelWeight::A2(3, 3))))
    });
    c.bench_function("sl3 k=9 fusion ring", |b| b.iter(|| wzw::fusion_ring(black_box(&sl3))));
    let mut g = c.benchmark_group("modular data");
    g.sample_size(10);
    g.bench_function("sl3 k=6", |b| b.iter(|| wzw::modular_data(black_box(&AlgebraSpec::sl3(6).unwrap()))));
    g.bench_function("sl2 k=30", |b| b.iter(|| wzw::modular_data(black_box(&AlgebraSpec::sl2(30).unwrap()))));
    g.finish();
}

fn condense_benches(c: &mut Criterion) {
    let spec = AlgebraSpec::sl3(9).unwrap();
    let induced = induced_fusion(&spec).unwrap();
    let mut g = c.benchmark_group("condense sl3 k=9");
    g.sample_size(10);
    g.bench_function("induced fusion", |b| b.iter(|| induced_fusion(black_box(&spec))));
    g.bench_function("resolve split", |b| b.iter(|| resolve_split(&spec, black_box(&induced))));
    let ring = resolve_split(&spec, &induced).unwrap();
    let dims: Vec<CycNum> = induced.simples.iter().map(|s| s.dim.clone()).collect();
    let twists: Vec<CycNum> = induced.simples.iter().map(|s| s.twist.clone()).collect();
    g.bench_function("balancing S", |b| b.iter(|| balancing_s(black_box(&ring), &dims, &twists)));
    let md = fusionkit_core::fusring::ModularData::from_balancing(ring.clone(), dims.clone(), twists.clone()).unwrap();
    g.bench_function("verlinde", |b| b.iter(|| verlinde(black_box(&md))));
    g.finish();
}

fn arithmetic_benches(c: &mut Criterion) {
    let x = CycNum::root_of_unity(72, 5).unwrap() + CycNum::root_of_unity(72, 11).unwrap();
    let y = CycNum::root_of_unity(72, 7).unwrap() - CycNum::one();
    c.bench_function("Q(ζ72) multiply", |b| b.iter(|| black_box(&x) * black_box(&y)));
    c.bench_function("Q(ζ72) inverse", |b| b.iter(|| black_box(&y).inverse()));
}

criterion_group!(benches, wzw_benches, condense_benches, arithmetic_benches);
criterion_main!(benches);
