use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use heis_bench::{moved_kernels, random_gl4, rng};
use heis_core::classify::{representative, OrbitLabel};
use heis_core::exterior::{compound, pfaffian};
use heis_core::heisenberg::{membership_predicate, sigma_generators};
use heis_core::orbits::{generate_group, omega_counts};
use heis_core::{classify_subspace, Field, FiniteField, QuatAlgebra, Rationals};

fn classify(c: &mut Criterion) {
    let mut r = rng();
    for (name, f) in [("gf3", FiniteField::prime(3).unwrap()), ("gf4", FiniteField::new(2, 2, None).unwrap())] {
        let kernels = moved_kernels(&f, &mut r);
        c.bench_function(&format!("classify_all_labels_{name}"), |b| {
            b.iter(|| kernels.iter().map(|u| classify_subspace(&f, black_box(u)).unwrap()).count())
        });
    }
}

fn exterior(c: &mut Criterion) {
    let f = FiniteField::prime(5).unwrap();
    let mut r = rng();
    let a = random_gl4(&f, &mut r);
    let x: Vec<_> = (0..6).map(|_| f.random(&mut r)).collect();
    c.bench_function("compound_gf5", |b| b.iter(|| compound(&f, black_box(&a))));
    c.bench_function("pfaffian_gf5", |b| b.iter(|| pfaffian(&f, black_box(&x))));
}

fn stabilizers(c: &mut Criterion) {
    let f = FiniteField::prime(3).unwrap();
    let label = OrbitLabel::PlaneTS;
    let gens = sigma_generators(&f, &label).unwrap().matrices;
    let mut r = rng();
    let samples: Vec<_> = (0..64).map(|_| random_gl4(&f, &mut r)).collect();
    c.bench_function("membership_predicate_ts_gf3", |b| {
        b.iter(|| samples.iter().filter(|m| membership_predicate(&f, &label, black_box(m))).count())
    });
    c.bench_function("generate_group_ts_gf3", |b| b.iter(|| generate_group(&f, black_box(&gens), 1 << 20).unwrap().len()));
    let kernel = representative(&f, &OrbitLabel::LineT);
    let t_gens = sigma_generators(&f, &OrbitLabel::LineT).unwrap().matrices;
    c.bench_function("omega_counts_line_t_gf3", |b| b.iter(|| omega_counts(&f, black_box(&kernel), &t_gens).unwrap()));
}

fn quaternions(c: &mut Criterion) {
    let q = Rationals;
    let h = QuatAlgebra::new(q.clone(), q.one(), q.one()).unwrap();
    let v = h.from_ints([1, 2, -1, 3]);
    let a = h.from_ints([2, -1, 1, 1]);
    let x = h.conjugate_by(&a, &v).unwrap();
    c.bench_function("conjugate_solver_hamilton", |b| b.iter(|| h.conjugate_solver(black_box(&v), black_box(&x)).unwrap()));
}

criterion_group!(benches, classify, exterior, stabilizers, quaternions);
criterion_main!(benches);
