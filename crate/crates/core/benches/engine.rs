use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lingroup::graph::WindowUniverse;
use lingroup::group::growth_in;
use lingroup::oracle::cross_check;
use lingroup::symbolic::builtin::{galpha, ghat, grigorchuk};
use lingroup::symbolic::AlphaSequence;
use lingroup::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn universes(c: &mut Criterion) {
    let mut group = c.benchmark_group("universe");
    let systems = [("grigorchuk", grigorchuk(), 64), ("ghat", ghat(), 64)];
    for (name, system, radius) in &systems {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(*name, mode), radius, |b, &r| {
                b.iter(|| WindowUniverse::from_system(system, black_box(r), 2, 24, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn growth(c: &mut Criterion) {
    let mut group = c.benchmark_group("growth");
    group.sample_size(10);
    let cases = [
        ("grigorchuk", WindowUniverse::build(&grigorchuk(), 10).unwrap(), 10),
        ("ghat", WindowUniverse::build(&ghat(), 6).unwrap(), 5),
        ("galpha", WindowUniverse::build(&galpha(&AlphaSequence::all_sigma()).unwrap(), 5).unwrap(), 4),
    ];
    for (name, universe, n) in &cases {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(*name, mode), n, |b, &n| {
                b.iter(|| growth_in(universe, black_box(n), exec, 1 << 22).unwrap())
            });
        }
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for (mode, exec) in MODES {
        group.bench_function(mode, |b| b.iter(|| cross_check(black_box(8), 5, 8, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, universes, growth, oracle);
criterion_main!(benches);
