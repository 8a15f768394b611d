use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use autdim_bench::{disk_pair, q_domain, q_points};
use autdim_core::dim::{aut_dim_estimate, disk_cloud, field_convergence_experiment};
use autdim_core::domain::{hausdorff_distance, DomainSpec};
use autdim_core::estimates::delta_for;
use autdim_core::flow::flow;
use autdim_core::metric::{extremal_search, model_caratheodory, poincare_distance};
use autdim_core::point::CxPoint;
use autdim_core::poly::VectorFieldPoly;
use num_complex::Complex64;

fn bench_poincare(c: &mut Criterion) {
    c.bench_function("poincare_distance", |b| {
        b.iter(|| {
            poincare_distance(
                black_box(Complex64::new(0.3, 0.1)),
                black_box(Complex64::new(-0.2, 0.5)),
            )
            .unwrap()
        })
    });
}

fn bench_model_metric_q(c: &mut Criterion) {
    let q = q_domain();
    let (z, w) = q_points();
    c.bench_function("model_caratheodory_q", |b| {
        b.iter(|| model_caratheodory(black_box(&q), black_box(z), black_box(w)).unwrap())
    });
}

fn bench_hausdorff(c: &mut Criterion) {
    let a = DomainSpec::q_j(5);
    let q = q_domain();
    c.bench_function("hausdorff_qj_vs_q", |b| {
        b.iter(|| hausdorff_distance(black_box(&a), black_box(&q), 0.02).unwrap())
    });
}

fn bench_flow(c: &mut Criterion) {
    let field = VectorFieldPoly::disk_field(Complex64::ONE, 0.0);
    let z0 = CxPoint::scalar(Complex64::new(0.2, 0.3));
    let disk = DomainSpec::UnitDisk;
    c.bench_function("flow_disk_field_t1", |b| {
        b.iter(|| flow(black_box(&field), black_box(&z0), 1.0, 1e-9, &disk).unwrap())
    });
}

fn bench_extremal_search(c: &mut Criterion) {
    let (w, z) = disk_pair();
    let disk = DomainSpec::UnitDisk;
    let mut group = c.benchmark_group("extremal_search");
    group.sample_size(10);
    group.bench_function("disk_degree3", |b| {
        b.iter(|| extremal_search(&disk, black_box(&w), black_box(&z), 3, 800, 7).unwrap())
    });
    group.finish();
}

fn bench_dim_estimate(c: &mut Criterion) {
    let disk = DomainSpec::UnitDisk;
    c.bench_function("aut_dim_disk_degree2", |b| {
        b.iter(|| aut_dim_estimate(black_box(&disk), 2, 1e-8).unwrap())
    });
}

fn bench_delta_for(c: &mut Criterion) {
    let mut group = c.benchmark_group("delta_for");
    group.sample_size(10);
    group.bench_function("quarter_ball", |b| {
        b.iter(|| delta_for(black_box(0.25), 0.25, 1.0).unwrap())
    });
    group.finish();
}

fn bench_convergence(c: &mut Criterion) {
    let cloud = disk_cloud(Complex64::new(-0.5, 0.0), 0.1, 3);
    let js: Vec<u32> = (3..=8).collect();
    c.bench_function("field_convergence_j3_8", |b| {
        b.iter(|| {
            field_convergence_experiment(
                black_box(&js),
                Complex64::new(-0.5, 0.0),
                0.25,
                &cloud,
                0.05,
            )
            .unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_poincare,
    bench_model_metric_q,
    bench_hausdorff,
    bench_flow,
    bench_extremal_search,
    bench_dim_estimate,
    bench_delta_for,
    bench_convergence
);
criterion_main!(benches);
