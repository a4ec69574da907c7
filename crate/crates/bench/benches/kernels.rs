use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hypercolor::maximizer::gradient;
use hypercolor::moments::{rate, rate_log_domain};
use hypercolor::oracle::{enumerate_colorings, Filter, DEFAULT_BUDGET};
use hypercolor::polytope::{project_to_d, random_point_in_d};
use hypercolor::rng::from_seed;
use hypercolor::simulator::{extract_core, sample_hypergraph, sample_planted};
use hypercolor::{Coloring, ModelParams, Thresholds};
use rand::Rng;
use std::hint::black_box;

fn rate_and_gradient(c: &mut Criterion) {
    let mut g = c.benchmark_group("rate");
    for q in [10usize, 100] {
        let p = ModelParams::new(q as u32, 3, 0.5 * (q * q) as f64 * (q as f64).ln()).unwrap();
        let a = random_point_in_d(q, &mut from_seed(1)).unwrap();
        g.bench_with_input(BenchmarkId::new("native", q), &a, |b, a| b.iter(|| rate(black_box(a), &p).unwrap()));
        g.bench_with_input(BenchmarkId::new("log_domain", q), &a, |b, a| {
            b.iter(|| rate_log_domain(black_box(a), &p).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("gradient", q), &a, |b, a| b.iter(|| gradient(black_box(a), &p)));
    }
    g.finish();
}

fn sinkhorn(c: &mut Criterion) {
    let mut g = c.benchmark_group("project_to_d");
    for q in [10usize, 100] {
        let mut rng = from_seed(2);
        let raw: Vec<f64> = (0..q * q).map(|_| rng.random_range(0.0..1.0)).collect();
        g.bench_with_input(BenchmarkId::from_parameter(q), &raw, |b, raw| {
            b.iter(|| project_to_d(q, black_box(raw), 10_000, 1e-12).unwrap())
        });
    }
    g.finish();
}

fn core(c: &mut Criterion) {
    let n = 3000;
    let p = ModelParams::new(3, 3, 9.0).unwrap().with_n(n as u64).unwrap();
    let sigma = Coloring::round_robin(n, 3).unwrap();
    let h = sample_planted(&p, &sigma, &mut from_seed(3)).unwrap().value;
    let thr = Thresholds::uniform(2);
    c.bench_function("extract_core/n3000", |b| b.iter(|| extract_core(black_box(&h), &sigma, &thr).unwrap()));
}

fn enumeration(c: &mut Criterion) {
    let h = sample_hypergraph(12, 3, 20, &mut from_seed(4)).unwrap();
    c.bench_function("enumerate/n12_q3", |b| {
        b.iter(|| enumerate_colorings(black_box(&h), 3, Filter::All, false, DEFAULT_BUDGET).unwrap())
    });
}

criterion_group!(benches, rate_and_gradient, sinkhorn, core, enumeration);
criterion_main!(benches);
