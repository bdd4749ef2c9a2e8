use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hallspde_bench::{ball_state, grid};
use hallspde_core::operators::{form_mhd, hall_riesz, mhd_riesz, nonlinear_rhs, PhysParams};
use hallspde_core::spectral::CutoffLevel;

fn bench_riesz_maps(c: &mut Criterion) {
    let g = grid(16);
    let params = PhysParams::default();
    let mut group = c.benchmark_group("riesz_maps_n16");
    group.sample_size(20);
    for cutoff in [2.0f64, 4.0, 8.0] {
        let level = CutoffLevel::new(cutoff).unwrap();
        let state = ball_state(g, cutoff, 10);
        group.bench_with_input(
            BenchmarkId::new("mhd", cutoff),
            &cutoff,
            |b, _| b.iter(|| mhd_riesz(&state, &params, level).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new("hall", cutoff),
            &cutoff,
            |b, _| b.iter(|| hall_riesz(&state, &params, level).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new("fused", cutoff),
            &cutoff,
            |b, _| b.iter(|| nonlinear_rhs(&state, &params, level).unwrap()),
        );
    }
    group.finish();
}

fn bench_forms(c: &mut Criterion) {
    let g = grid(16);
    let p1 = ball_state(g, 8.0, 11);
    let p2 = ball_state(g, 8.0, 12);
    let p3 = ball_state(g, 8.0, 13);
    let mut group = c.benchmark_group("trilinear_forms_n16");
    group.sample_size(20);
    group.bench_function("form_mhd", |b| {
        b.iter(|| form_mhd(&p1, &p2, &p3).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_riesz_maps, bench_forms);
criterion_main!(benches);
