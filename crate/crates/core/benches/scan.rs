//! Sequential vs data-parallel execution of enumeration and scans.
//!
//! Built without the `parallel` feature, both modes run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spectra_core::checkers::CheckerId;
use spectra_core::search::{enumerate_families, scan, EnumSpec};
use spectra_core::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn bench_enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for (n, k) in [(6, 3), (7, 2)] {
        let spec = EnumSpec::new(n, k);
        for (name, exec) in MODES {
            group.bench_with_input(
                BenchmarkId::new(name, format!("n{n}k{k}")),
                &spec,
                |b, s| b.iter(|| enumerate_families(black_box(s), exec).unwrap().len()),
            );
        }
    }
    group.finish();
}

fn bench_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    let cases = [
        (EnumSpec::new(5, 3).connected(), CheckerId::Brouwer),
        (EnumSpec::new(6, 3), CheckerId::Brouwer),
        (EnumSpec::new(6, 2), CheckerId::Majorization),
    ];
    for (spec, checker) in cases {
        let label = format!("{checker}/n{}k{}", spec.n, spec.k);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, &label), &spec, |b, s| {
                b.iter(|| {
                    scan(black_box(s), checker, None, exec)
                        .unwrap()
                        .families_checked
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_enumerate, bench_scan);
criterion_main!(benches);
