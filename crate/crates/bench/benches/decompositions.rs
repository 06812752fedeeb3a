use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hhd_bench::*;
use hhd_core::linear::{newton_riccati, solve_2x2, solve_riccati, symmetric_split};
use hhd_core::planar::{complex_potential, solve_quadratic};
use hhd_core::report::casestudy_vdp;
use hhd_core::stability::VdpCaseStudy;
use hhd_core::SolverOptions;

fn linear(c: &mut Criterion) {
    let opts = SolverOptions::default();
    let normal = normal_3x3();
    c.bench_function("riccati/normal_shortcut_3x3", |b| {
        b.iter(|| solve_riccati(black_box(&normal), &opts).unwrap())
    });
    let a2 = generic_2x2();
    c.bench_function("riccati/closed_form_2x2", |b| {
        b.iter(|| solve_2x2(black_box(&a2)).unwrap())
    });
    let mut group = c.benchmark_group("riccati/newton");
    for n in [3, 4, 6] {
        let a = strict_non_normal(n);
        let seed = symmetric_split(&a).p;
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| newton_riccati(black_box(a), &seed, &opts))
        });
    }
    group.finish();
}

fn planar(c: &mut Criterion) {
    let mut group = c.benchmark_group("planar/complex_potential");
    for deg in [2, 4, 8] {
        let (f, g) = planar_field(deg);
        group.bench_with_input(BenchmarkId::from_parameter(deg), &(f, g), |b, (f, g)| {
            b.iter(|| complex_potential(black_box(f), black_box(g)))
        });
    }
    group.finish();
    let q = solvable_quadratic();
    c.bench_function("planar/solve_quadratic", |b| {
        b.iter(|| solve_quadratic(black_box(&q)).unwrap())
    });
}

fn stability(c: &mut Criterion) {
    let cs = VdpCaseStudy::new(3.0, vdp_grid(201)).unwrap();
    c.bench_function("stability/level_sets_201", |b| {
        b.iter(|| cs.level_sets(black_box(&[-0.5, -1.0, -2.0])).unwrap())
    });
    c.bench_function("stability/wdot_zero_set_201", |b| {
        b.iter(|| cs.wdot_zero_set().unwrap())
    });
    let grid = vdp_grid(101);
    c.bench_function("report/casestudy_vdp_101", |b| {
        b.iter(|| casestudy_vdp(3.0, grid, &[-0.5, -1.0, -2.0]).unwrap())
    });
}

criterion_group!(benches, linear, planar, stability);
criterion_main!(benches);
