use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use banded_toeplitz::sweep::{f2_exhaustive_specs, run_sweep};
use banded_toeplitz::{det_fast, inverse_dense_with, BandSpec, Execution, PrimeModulus};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn dense_inverse(c: &mut Criterion) {
    let spec = BandSpec::new(PrimeModulus::new(5).unwrap(), 2, vec![1, 4, 2, 0, 3]).unwrap();
    let mut group = c.benchmark_group("inverse_dense");
    group.sample_size(10);
    for n in [256usize, 1024] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| inverse_dense_with(&spec, n, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn oracle_sweep(c: &mut Criterion) {
    let specs = f2_exhaustive_specs();
    let mut group = c.benchmark_group("sweep_f2");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| run_sweep(&specs, 1..=32, exec)));
    }
    group.finish();
}

fn det_orders(c: &mut Criterion) {
    let spec = BandSpec::new(PrimeModulus::new(2).unwrap(), 2, vec![1, 1, 1, 1, 1]).unwrap();
    let mut group = c.benchmark_group("det_fast");
    for n in [1_000u64, 1_000_000, 1_000_000_000, 1_000_000_000_000] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| det_fast(&spec, black_box(n)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, dense_inverse, oracle_sweep, det_orders);
criterion_main!(benches);
