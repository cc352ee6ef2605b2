use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ckgraph::par::Execution;
use ckgraph::sweep::{check_graph, enumerate_connected, run_sweep, SweepConfig, SweepMode};

fn sweep_exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep_exhaustive");
    group.sample_size(10);
    for (v, e) in [(3, 5), (4, 6)] {
        for execution in [Execution::Sequential, Execution::Parallel] {
            let config = SweepConfig {
                max_vertices: v,
                max_edges: e,
                execution,
                ..Default::default()
            };
            group.bench_with_input(
                BenchmarkId::new(format!("{execution:?}"), format!("v{v}_e{e}")),
                &config,
                |b, cfg| b.iter(|| run_sweep(cfg)),
            );
        }
    }
    group.finish();
}

fn sweep_random(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep_random");
    group.sample_size(10);
    for execution in [Execution::Sequential, Execution::Parallel] {
        let config = SweepConfig {
            max_vertices: 4,
            max_edges: 8,
            mode: SweepMode::Random {
                samples: 100,
                seed: 42,
            },
            execution,
            ..Default::default()
        };
        group.bench_function(format!("{execution:?}"), |b| b.iter(|| run_sweep(&config)));
    }
    group.finish();
}

fn single_graph(c: &mut Criterion) {
    let graphs = enumerate_connected(4, 6);
    let largest = graphs.last().unwrap().clone();
    c.bench_function("check_graph_largest", |b| {
        b.iter(|| check_graph(&largest, false))
    });
}

criterion_group!(benches, sweep_exhaustive, sweep_random, single_graph);
criterion_main!(benches);
