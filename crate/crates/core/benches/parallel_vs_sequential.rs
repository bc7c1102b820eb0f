use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use weil_core::debranges::{frequency_grid, time_grid, ThetaTable};
use weil_core::numerics::Grid;
use weil_core::zero_catalog::{compute_zeros, load_zeros};
use weil_core::Exec;

const TABLE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/zeros_first_30.txt");
const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn theta_table(c: &mut Criterion) {
    let out = time_grid(1000.0, -4.0, 24.0).unwrap();
    let freq = frequency_grid(1000.0, &out).unwrap();
    let mut group = c.benchmark_group("theta_table");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| ThetaTable::xi(freq, exec).unwrap())
        });
    }
    group.finish();
}

fn zero_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("compute_zeros_T60");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| compute_zeros(60.0, exec).unwrap()));
    }
    group.finish();
}

fn screw_sum(c: &mut Criterion) {
    let zs = load_zeros(TABLE, 100.0).unwrap();
    let nodes = Grid::new(-3.0, 3.0, 4001).unwrap();
    let mut group = c.benchmark_group("screw_kernel_row");
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| -> Vec<Complex64> {
                exec.map_range(nodes.len(), |i| weil_core::weil_form::screw_kernel(nodes.node(i), 0.5, &zs))
            })
        });
    }
    group.finish();
}

criterion_group!(benches, theta_table, zero_search, screw_sum);
criterion_main!(benches);
