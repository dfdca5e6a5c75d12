use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qkepler_core::{compare_spectrum, CompareOptions, Exec, Params};

fn schedulers() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn grid() -> Vec<Params> {
    let mut out = Vec::new();
    for n in [3usize, 4, 5] {
        for (c1, c2) in [(0.0, 0.0), (0.1, 0.2), (1.0, 2.0)] {
            out.push(Params::new(n, 1.0, c1, c2, 1.0).unwrap());
        }
    }
    out
}

fn spectrum_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("compare_spectrum_grid");
    group.sample_size(10);
    for (name, exec) in schedulers() {
        let opts = CompareOptions { with_printed: false, exec };
        group.bench_function(name, |b| {
            b.iter(|| {
                for p in grid() {
                    for i in [0u32, 1] {
                        compare_spectrum(&p, i, 3, opts).unwrap();
                    }
                }
            })
        });
    }
    group.finish();
}

fn grid_fanout(c: &mut Criterion) {
    let cases: Vec<(Params, u32)> = grid().into_iter().flat_map(|p| [(p, 0), (p, 1)]).collect();
    let mut group = c.benchmark_group("spectrum_grid_fanout");
    group.sample_size(10);
    for (name, exec) in schedulers() {
        let opts = CompareOptions { with_printed: false, exec: Exec::Sequential };
        group.bench_with_input(BenchmarkId::from_parameter(name), &cases, |b, cases| {
            b.iter(|| exec.map(cases, |(p, i)| compare_spectrum(p, *i, 3, opts).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, spectrum_grid, grid_fanout);
criterion_main!(benches);
