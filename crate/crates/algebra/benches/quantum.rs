use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qkepler_algebra::{build_quantum, verify_quantum, Ctx, ModelParams, QuantumChecks, RungeLenzForm};
use qkepler_symbolic::Exec;

fn schedulers() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn commutator(c: &mut Criterion) {
    let mut group = c.benchmark_group("commutator_ab");
    group.sample_size(10);
    for n in [4usize, 5] {
        let params = ModelParams::symbolic(n).unwrap();
        for (name, exec) in schedulers() {
            let ctx = Ctx::new(exec);
            let q = build_quantum(&params, &ctx, RungeLenzForm::Symmetrized).unwrap();
            group.bench_with_input(BenchmarkId::new(name, n), &q, |b, q| b.iter(|| ctx.comm(&q.a, &q.b).unwrap()));
        }
    }
    group.finish();
}

fn quantum_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_quantum");
    group.sample_size(10);
    let params = ModelParams::symbolic(4).unwrap();
    for (name, exec) in schedulers() {
        let ctx = Ctx::new(exec);
        let q = build_quantum(&params, &ctx, RungeLenzForm::Symmetrized).unwrap();
        group.bench_function(BenchmarkId::new(name, 4), |b| {
            b.iter(|| verify_quantum(&q, &ctx, QuantumChecks::ALL).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, commutator, quantum_suite);
criterion_main!(benches);
