use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use fnrlax_core::poisson::{hamiltonian_density, sklyanin_check};
use fnrlax_core::zerocurv::dual_equivalence;
use fnrlax_core::{build_psi, zero_curvature, DiffPoly};

fn diffpoly_ops(c: &mut Criterion) {
    let p: DiffPoly = "1/2*b1'' - b1^2*c1 + 3/4*b2*c2' - b1*c1*b2*c2"
        .parse()
        .unwrap();
    let q: DiffPoly = "c1''' - 3/2*b1*c1*c1' + b2^2*c2 - 1/4*b1^3*c1^2"
        .parse()
        .unwrap();
    c.bench_function("diffpoly/mul", |b| b.iter(|| black_box(&p) * black_box(&q)));
    let pq = &p * &q;
    c.bench_function("diffpoly/derive", |b| b.iter(|| black_box(&pq).derive()));
    c.bench_function("diffpoly/euler", |b| {
        b.iter(|| black_box(&pq).euler_derivative(fnrlax_core::FieldVar::b(1)))
    });
}

fn psi(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_psi/depth14");
    for k in [1u32, 3, 6] {
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| build_psi(k, 14).unwrap())
        });
    }
    g.finish();
}

fn flows(c: &mut Criterion) {
    let t = build_psi(2, 6).unwrap();
    c.bench_function("zero_curvature/k2n4", |b| {
        b.iter(|| zero_curvature(&t, 4).unwrap())
    });
    c.bench_function("hamiltonian/k2n4", |b| {
        b.iter(|| hamiltonian_density(&t, 4).unwrap())
    });
    c.bench_function("dual_equivalence/n2k4", |b| {
        b.iter(|| dual_equivalence(2, 4, 8).unwrap())
    });
}

fn sklyanin(c: &mut Criterion) {
    let mut g = c.benchmark_group("sklyanin");
    for k in 1u32..=4 {
        let t = build_psi(k, k).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(k), &t, |b, t| {
            b.iter(|| sklyanin_check(t).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, diffpoly_ops, psi, flows, sklyanin);
criterion_main!(benches);
