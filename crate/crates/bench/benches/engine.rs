use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hopfcalc::verify::run_all;
use hopfcalc::wedge::build_exterior;
use hopfcalc::{CrossAlgebra, WedgeOptions};
use hopfcalc_bench::{calculus, cross, element};

fn construction(c: &mut Criterion) {
    let s3 = calculus("s3");
    c.bench_function("exterior s3 deg5", |b| b.iter(|| build_exterior(black_box(&s3), 5).unwrap()));
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("cross algebra s3 deg4", |b| {
        b.iter(|| CrossAlgebra::new(black_box(s3.clone()), WedgeOptions::with_max_degree(4)).unwrap())
    });
    g.bench_function("run_all s3 deg3", |b| b.iter(|| run_all(black_box(&s3), 3)));
    g.finish();
}

fn products(c: &mut Criterion) {
    let cp = cross("s3", 4);
    let x = element(&cp, "(e[p12] - 2*e[c123])*w[1]*gamma[2]*u[p13] + gamma[3]");
    let y = element(&cp, "gamma[1]*gamma[2] + e[e]*w[2]*w[3] - u[c132]*w[1]");
    c.bench_function("cross_multiply s3", |b| b.iter(|| cp.cross_multiply(black_box(&x), black_box(&y))));
    c.bench_function("parse+evaluate s3", |b| {
        b.iter(|| element(&cp, black_box("L(chi[1]; e[p23]*w[2]*w[3]) + iota(2; w[1]*w[3])")))
    });
}

criterion_group!(benches, construction, products);
criterion_main!(benches);
