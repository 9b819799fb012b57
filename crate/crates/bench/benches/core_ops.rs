//! Benchmarks for the hot paths: symbolic and recursive basis
//! construction, per-point basis value streams, kernel evaluation with
//! certified tails, Gram assembly and Schur boundary certification.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use dalattice::basis::{basis_poly, basis_poly_recursive, basis_values_at};
use dalattice::hardy::{kernel_eval, kernel_gram};
use dalattice::schur::{blaschke_lambda, schur_check, InterpolationProblem};
use dalattice::{LatticePoint, Window};

fn bench_basis(c: &mut Criterion) {
    let mut group = c.benchmark_group("basis");
    for n in [4u32, 8, 16] {
        group.bench_with_input(BenchmarkId::new("symbolic", n), &n, |b, &n| {
            b.iter(|| basis_poly(std::hint::black_box(n)))
        });
        let w = Window::new(-3, 4, -4, 3).unwrap();
        group.bench_with_input(BenchmarkId::new("recursive_8x8", n), &n, |b, &n| {
            b.iter(|| basis_poly_recursive(std::hint::black_box(n), w).unwrap())
        });
    }
    group.bench_function("values_at_3+2i_n64", |b| {
        let z = LatticePoint::new(3, 2);
        b.iter(|| basis_values_at(std::hint::black_box(z), 64))
    });
    group.finish();
}

fn bench_kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel");
    let w = LatticePoint::new(1, 1);
    let z = LatticePoint::new(2, -1);
    for n in [32usize, 64, 128] {
        group.bench_with_input(BenchmarkId::new("eval", n), &n, |b, &n| {
            b.iter(|| kernel_eval(w, z, std::hint::black_box(n)).unwrap())
        });
    }
    let pts: Vec<LatticePoint> = (0..4)
        .map(|k| LatticePoint::new(k, (k % 3) - 1))
        .collect();
    group.bench_function("gram_4pts_n64", |b| {
        b.iter(|| kernel_gram(std::hint::black_box(&pts), 64).unwrap())
    });
    group.finish();
}

fn bench_schur(c: &mut Criterion) {
    let mut group = c.benchmark_group("schur");
    for (x, y) in [(1i64, 1i64), (2, 2), (3, 3)] {
        let prob = InterpolationProblem::new(LatticePoint::new(x, y)).unwrap();
        let b_lambda = blaschke_lambda(&prob);
        group.bench_with_input(
            BenchmarkId::new("check_blaschke_lambda", format!("{x}+{y}i")),
            &b_lambda,
            |b, s| b.iter(|| schur_check(std::hint::black_box(s)).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_basis, bench_kernel, bench_schur);
criterion_main!(benches);
