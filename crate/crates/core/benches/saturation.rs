//! Saturation throughput: the rayon-backed candidate generation against
//! the sequential fallback on the two heaviest built-in workloads, plus
//! batch polynomial evaluation.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use omega_core::combin::antisymmetrizer;
use omega_core::eval::evaluate_poly;
use omega_core::kits::builtin_algebra;
use omega_core::saturate::{saturate, saturate_sequential, SaturationOptions};
use omega_core::scalar::FieldKind;

fn bench_saturation(c: &mut Criterion) {
    let field = FieldKind::Rational;
    let cases = [
        (
            "group-hopf-order2-m2-k5",
            "kc2-hopf",
            None,
            vec![2u32],
            5u32,
        ),
        ("sigma-module-m4-k5", "yd-kc2-sigma", None, vec![4], 5),
        ("plane-m5-k6", "vector-space", Some("2"), vec![5], 6),
    ];
    for (label, name, param, inputs, bound) in cases {
        let alg = builtin_algebra(name, param, field).unwrap();
        let opts = SaturationOptions::with_bound(bound);
        let mut group = c.benchmark_group(label);
        group.sample_size(10);
        group.bench_function("parallel", |b| {
            b.iter(|| black_box(saturate(&alg, &inputs, &opts).unwrap()))
        });
        group.bench_function("sequential", |b| {
            b.iter(|| black_box(saturate_sequential(&alg, &inputs, &opts).unwrap()))
        });
        group.finish();
    }
}

fn bench_poly_eval(c: &mut Criterion) {
    let alg = builtin_algebra("vector-space", Some("3"), FieldKind::Rational).unwrap();
    let anti = antisymmetrizer(3, 4).unwrap();
    c.bench_function("antisymmetrizer-dim3-n4", |b| {
        b.iter(|| black_box(evaluate_poly(&alg, &anti).unwrap()))
    });
}

criterion_group!(benches, bench_saturation, bench_poly_eval);
criterion_main!(benches);
