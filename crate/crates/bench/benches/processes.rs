use criterion::{criterion_group, criterion_main, Criterion};
use randset_core::geom::direction_grid;
use randset_core::models::{crofton_cell, sample_coupling, sample_intersection, Normalization, ShapeKind};
use randset_core::{Dimension, RadialMeasure, RngStream};

fn intersections(c: &mut Criterion) {
    let d = Dimension::new(2).unwrap();
    let mu = RadialMeasure::uniform_ball(d);
    let mut rng = RngStream::new(3, 0).rng();
    c.bench_function("sample ball intersection lambda 200", |b| {
        b.iter(|| sample_intersection(d, 200.0, &mu, ShapeKind::Ball, &mut rng).unwrap())
    });
}

fn cells(c: &mut Criterion) {
    let mut rng = RngStream::new(4, 0).rng();
    for d in [2, 3] {
        let d = Dimension::new(d).unwrap();
        c.bench_function(&format!("zero cell d={}", d.get()), |b| {
            b.iter(|| crofton_cell(d, Normalization::DiameterRate, 10.0, &mut rng).unwrap().volume())
        });
    }
}

fn coupling(c: &mut Criterion) {
    let grid = direction_grid(Dimension::new(2).unwrap(), 720, 0).unwrap();
    let mut i = 0;
    let mut g = c.benchmark_group("coupling");
    g.sample_size(10);
    g.bench_function("lambda 1e4", |b| {
        b.iter(|| {
            i += 1;
            sample_coupling(1e4, &grid, RngStream::new(5, i)).unwrap().hausdorff_scaled
        })
    });
    g.finish();
}

criterion_group!(benches, intersections, cells, coupling);
criterion_main!(benches);
