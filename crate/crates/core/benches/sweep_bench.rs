//! Parallel vs sequential sweep throughput, plus the sparse matvec that
//! dominates the iterative eigensolver.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ndarray::Array1;
use num_complex::Complex64 as C64;

use double_dicke::exactdiag::{build_hamiltonian, BasisSpec};
use double_dicke::model::ModelParams;
use double_dicke::sweep::{spectrum_surface, spectrum_surface_seq, GridSpec};

fn bench_spectrum_sweep(c: &mut Criterion) {
    let p0 = ModelParams::resonant(0.0, 0.0, 4, 4).unwrap();
    let mut group = c.benchmark_group("spectrum_surface");
    for n in [32usize, 96] {
        let grid = GridSpec {
            min_c: 0.0,
            max_c: 1.5,
            n_c: n,
            min_i: 0.0,
            max_i: 1.5,
            n_i: n,
        };
        let points = grid.points();
        group.bench_with_input(BenchmarkId::new("parallel", n), &points, |b, pts| {
            b.iter(|| spectrum_surface(pts, &p0))
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &points, |b, pts| {
            b.iter(|| spectrum_surface_seq(pts, &p0))
        });
    }
    group.finish();
}

fn bench_matvec(c: &mut Criterion) {
    let p = ModelParams::resonant(1.2, 1.2, 4, 4).unwrap();
    let basis = BasisSpec::new(4, 4, 200);
    let h = build_hamiltonian(&p, &basis).unwrap();
    let v = Array1::<C64>::from_elem(h.matrix.dim, C64::new(1.0, 0.5));
    let mut out = Array1::<C64>::zeros(h.matrix.dim);
    c.bench_function("hamiltonian_matvec_dim5025", |b| {
        b.iter(|| h.matrix.matvec(&v, &mut out))
    });
}

criterion_group!(benches, bench_spectrum_sweep, bench_matvec);
criterion_main!(benches);
