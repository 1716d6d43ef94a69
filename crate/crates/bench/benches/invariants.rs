use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rotsurf_bench::{closed_form_spec, flat_ivp, grid, minimal_spec, sampled_spec};
use rotsurf_core::families::{integrate_special, SpecialClass};
use rotsurf_core::verify::{run_suite, VerifyParams};
use rotsurf_core::{invariant_sample, parse_meridian, SurfaceType};

fn bench_sample(c: &mut Criterion) {
    let us = grid(-0.9, 0.9, 256);
    let mut g = c.benchmark_group("invariant_sample");
    for (name, spec) in
        [("closed_form", closed_form_spec()), ("sampled_401", sampled_spec(401)), ("minimal", minimal_spec())]
    {
        g.bench_function(name, |b| {
            b.iter(|| {
                for &u in &us {
                    black_box(invariant_sample(&spec, black_box(u)));
                }
            })
        });
    }
    g.finish();
}

fn bench_frames(c: &mut Criterion) {
    let spec = closed_form_spec();
    c.bench_function("frame", |b| b.iter(|| spec.frame(black_box(0.3), black_box(0.7)).unwrap()));
}

fn bench_parse(c: &mut Criterion) {
    let src = "(sqrt(2)/1.5)*sin((1.5/0.7)*ln(abs(0.7*u + sqrt(2 + 0.49*u^2))) + 0.3)";
    c.bench_function("parse_meridian", |b| b.iter(|| parse_meridian(black_box(src)).unwrap()));
}

fn bench_rk4(c: &mut Criterion) {
    let mut g = c.benchmark_group("integrate_flat");
    for h in [1e-2, 1e-3] {
        g.bench_with_input(BenchmarkId::from_parameter(h), &h, |b, &h| {
            b.iter(|| integrate_special(SpecialClass::Flat, SurfaceType::TypeI, 1.0, 1.0, flat_ivp(h)).unwrap())
        });
    }
    g.finish();
}

fn bench_suite(c: &mut Criterion) {
    let p = VerifyParams::default();
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    g.bench_function("frames", |b| b.iter(|| run_suite("frames", &p).unwrap()));
    g.bench_function("structural", |b| b.iter(|| run_suite("structural", &p).unwrap()));
    g.finish();
}

criterion_group!(benches, bench_sample, bench_frames, bench_parse, bench_rk4, bench_suite);
criterion_main!(benches);
