use criterion::{criterion_group, criterion_main, Criterion};
use randset_core::analytics::{expected_volume_quadrature, g_sum, RadiusLaw};
use randset_core::geom::direction_grid;
use randset_core::models::{sample_intersection, ShapeKind};
use randset_core::{Dimension, RadialMeasure, RngStream};
use std::hint::black_box;

fn queries(c: &mut Criterion) {
    let d = Dimension::new(2).unwrap();
    let grid = direction_grid(d, 720, 0).unwrap();
    let mut rng = RngStream::new(1, 0).rng();
    let mu = RadialMeasure::uniform_ball(d);
    for lambda in [1e2, 1e4] {
        let m = sample_intersection(d, lambda, &mu, ShapeKind::Ball, &mut rng).unwrap();
        c.bench_function(&format!("ball radius grid 720, lambda {lambda}"), |b| {
            b.iter(|| grid.iter().map(|t| m.radius(t.as_slice())).fold(0.0, f64::max))
        });
    }
}

fn quadrature(c: &mut Criterion) {
    for d in [2, 3] {
        let d = Dimension::new(d).unwrap();
        let law = RadiusLaw::ball(d, 1e4).unwrap();
        c.bench_function(&format!("expected volume quadrature d={}", d.get()), |b| {
            b.iter(|| expected_volume_quadrature(d, black_box(1e4), |r| law.f(r)).unwrap())
        });
    }
    let d = Dimension::new(6).unwrap();
    c.bench_function("G sum d=6", |b| b.iter(|| g_sum(d, black_box(0.7)).unwrap()));
}

fn exact_sampler(c: &mut Criterion) {
    let d = Dimension::new(3).unwrap();
    let law = RadiusLaw::ball(d, 200.0).unwrap();
    let mut rng = RngStream::new(2, 0).rng();
    c.bench_function("exact radius draw d=3", |b| b.iter(|| law.sample(&mut rng)));
}

criterion_group!(benches, queries, quadrature, exact_sampler);
criterion_main!(benches);
