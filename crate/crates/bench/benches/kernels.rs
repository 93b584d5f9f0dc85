use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use varkernel::lowrank::{approximate_on_variety_with, ApproxOptions};
use varkernel::norming::approx_fekete;
use varkernel::rff::build;
use varkernel::{cheb_fit, hf, hf_via_rank, IsotropicKernel};
use varkernel_bench::{pairs, variety};

fn hilbert(c: &mut Criterion) {
    let so3 = variety("so3");
    let sparse = variety("sparse:d=100,k=5");
    c.bench_function("hf_closed_form_sparse_100_5", |b| b.iter(|| hf(black_box(&sparse), 8)));
    c.bench_function("hf_rank_so3_n3", |b| b.iter(|| hf_via_rank(black_box(&so3), 3, 4, 1, 1e-8).unwrap()));
}

fn chebyshev(c: &mut Criterion) {
    let k = IsotropicKernel::gaussian(1.0, 20).unwrap();
    let v = variety("sparse:d=20,k=1");
    c.bench_function("cheb_fit_gaussian_n12", |b| b.iter(|| cheb_fit(black_box(&k), 12)));
    let opts = ApproxOptions { audit_pairs: 0, ..Default::default() };
    let mut g = c.benchmark_group("approximate_on_variety");
    g.sample_size(10);
    for eps in [1e-3, 1e-6] {
        g.bench_with_input(BenchmarkId::from_parameter(eps), &eps, |b, &eps| {
            b.iter(|| approximate_on_variety_with(&k, &v, eps, 1, opts).unwrap())
        });
    }
    g.finish();
}

fn random_features(c: &mut Criterion) {
    let mut g = c.benchmark_group("rff_eval_1000_pairs");
    for d in [32usize, 128] {
        let v = variety(&format!("sparse:d={d},k=1"));
        let k = IsotropicKernel::gaussian(1.0, d).unwrap();
        let model = build(&k, 1024, 0.1, 3).unwrap();
        let (xs, ys) = pairs(&v, 1000, 4);
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, _| b.iter(|| model.eval_pairs(&xs, &ys).unwrap()));
    }
    g.finish();
}

fn fekete(c: &mut Criterion) {
    let v = variety("so3");
    let mut g = c.benchmark_group("approx_fekete");
    g.sample_size(10);
    g.bench_function("so3_n3", |b| b.iter(|| approx_fekete(&v, 3, 840, 2).unwrap()));
    g.finish();
}

criterion_group!(benches, hilbert, chebyshev, random_features, fekete);
criterion_main!(benches);
