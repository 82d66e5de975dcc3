use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use extrudekit::geomkern::{model_occupancy, Vec3};
use extrudekit::imaging::{camera_ring, default_elevations, edge_map, render};
use extrudekit::metrics::chamfer;
use extrudekit::pipeline::Config;
use extrudekit_bench::{cloud, mesh, model, view};

fn kernels(c: &mut Criterion) {
    let m = model(3);
    let (a, b) = (cloud(&m, 2000, 1), cloud(&model(4), 2000, 2));
    c.bench_function("chamfer 2000x2000", |bench| bench.iter(|| chamfer(black_box(&a), black_box(&b)).unwrap()));

    let probes: Vec<Vec3> = (0..4096)
        .map(|i| {
            let t = i as f64 / 4096.0;
            Vec3::new((t * 37.0).sin() * 0.5, (t * 53.0).cos() * 0.5, t - 0.5)
        })
        .collect();
    c.bench_function("occupancy 4096 points", |bench| {
        bench.iter(|| probes.iter().filter(|p| model_occupancy(black_box(&m), p)).count())
    });

    let tri = mesh(&m);
    let cfg = Config::default();
    let cam = camera_ring(3, cfg.camera_radius, &default_elevations(), cfg.fov(), 512, 512).unwrap()[0];
    c.bench_function("render 512", |bench| bench.iter(|| render(black_box(&tri), &cam)));

    let img = view(&tri, 512);
    c.bench_function("edge_map 512", |bench| {
        bench.iter(|| edge_map(black_box(&img), cfg.sigma, cfg.t_low, cfg.t_high).unwrap())
    });
}

criterion_group!(benches, kernels);
criterion_main!(benches);
