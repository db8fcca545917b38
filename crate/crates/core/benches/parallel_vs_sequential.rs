use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use galois_core::arith::QPoly;
use galois_core::correspondence::{verify_fundamental_theorem, VerifyOptions};
use galois_core::finite_fields::sweep;
use galois_core::number_field::splitting_field;
use galois_core::Execution;

const MODES: [(&str, Execution); 2] = [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)];

fn correspondence(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_fundamental_theorem");
    group.sample_size(10);
    for (name, coeffs) in [
        ("x^4-10x^2+1", vec![1, 0, -10, 0, 1]),
        ("x^3-2", vec![-2, 0, 0, 1]),
        ("cyclotomic7", vec![1; 7]),
    ] {
        let l = splitting_field(&QPoly::from_ints(&coeffs)).unwrap().field;
        for (mode, execution) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &l, |b, l| {
                b.iter(|| {
                    let opts = VerifyOptions {
                        execution,
                        ..Default::default()
                    };
                    black_box(verify_fundamental_theorem(l, opts).unwrap())
                })
            });
        }
    }
    group.finish();
}

fn lemma_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("finite_field_sweep");
    group.sample_size(10);
    for (mode, execution) in MODES {
        group.bench_function(BenchmarkId::new(mode, "pmax=256"), |b| {
            b.iter(|| black_box(sweep(256, 4, execution).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, correspondence, lemma_sweep);
criterion_main!(benches);
