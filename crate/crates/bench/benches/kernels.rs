use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use fintop_bench::{divisibility_preorder, six_point_space, sphere3};
use fintop_core::algebra::{antipode, coproduct_space};
use fintop_core::enumeration::{count_topologies, enumerate_spaces};
use fintop_core::homotopy::{core, euler_characteristic};
use fintop_core::qsym::phi_q_space;
use fintop_core::tensor::check_tensor_identities;
use fintop_core::FVector;

fn canonical_forms(c: &mut Criterion) {
    let p = divisibility_preorder(12);
    c.bench_function("canonicalize divisibility-12", |b| b.iter(|| black_box(&p).canonicalize()));
    let s3 = sphere3().expand();
    c.bench_function("canonicalize 3-sphere", |b| b.iter(|| black_box(&s3).canonicalize()));
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumeration");
    g.sample_size(10);
    g.bench_function("spaces n=6", |b| b.iter(|| enumerate_spaces(black_box(6)).unwrap()));
    g.bench_function("topologies n=6", |b| b.iter(|| count_topologies(black_box(6)).unwrap()));
    g.finish();
}

fn hopf(c: &mut Criterion) {
    let s3 = sphere3();
    c.bench_function("coproduct 3-sphere", |b| b.iter(|| coproduct_space(black_box(&s3))));
    let x = FVector::basis(six_point_space());
    c.bench_function("antipode 6 points", |b| b.iter(|| antipode(black_box(&x))));
}

fn qsym(c: &mut Criterion) {
    let x = six_point_space();
    c.bench_function("phi_q 6 points", |b| b.iter(|| phi_q_space(black_box(&x))));
}

fn homotopy(c: &mut Criterion) {
    let x = divisibility_preorder(12).canonicalize();
    c.bench_function("core divisibility-12", |b| b.iter(|| core(black_box(&x))));
    c.bench_function("euler divisibility-12", |b| b.iter(|| euler_characteristic(black_box(&x))));
}

fn tensor(c: &mut Criterion) {
    let mut g = c.benchmark_group("tensor");
    g.sample_size(10);
    g.bench_function("identity suite length 3", |b| b.iter(|| check_tensor_identities(black_box(3), 1)));
    g.finish();
}

criterion_group!(benches, canonical_forms, enumeration, hopf, qsym, homotopy, tensor);
criterion_main!(benches);
