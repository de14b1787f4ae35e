//! Sequential versus parallel execution of the main sweeps.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rainbow_core::census::{run_census, CensusMode, CensusOptions};
use rainbow_core::graph::enumerate_connected_graphs;
use rainbow_core::rainbow::{exact_rx_k_with, verify_k_rainbow_with, SolveOptions};
use rainbow_core::steiner::steiner_diameter_with;
use rainbow_core::{Exec, Graph};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn census(c: &mut Criterion) {
    let graphs = enumerate_connected_graphs(6, Exec::Parallel).unwrap();
    let mut group = c.benchmark_group("census_n6_decide3");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = CensusOptions { mode: CensusMode::Decide3, exec, ..Default::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| run_census(&graphs, &opts)));
    }
    group.finish();

    let mut group = c.benchmark_group("enumerate_n7");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| enumerate_connected_graphs(7, exec).unwrap()));
    }
    group.finish();
}

fn solver(c: &mut Criterion) {
    // Wheel on 7 vertices: several infeasible palettes before the answer.
    let wheel = Graph::from_edges(7, (1..7).flat_map(|i| [(0, i), (i, i % 6 + 1)])).unwrap();
    let mut group = c.benchmark_group("exact_rx4_wheel7");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = SolveOptions { exec, ..Default::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| exact_rx_k_with(&wheel, 4, &opts).unwrap()));
    }
    group.finish();

    let report = exact_rx_k_with(&wheel, 4, &SolveOptions::default()).unwrap();
    let (g, coloring) = report.certificate.decode().unwrap();
    let mut group = c.benchmark_group("verify_rx4_wheel7");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_k_rainbow_with(&g, &coloring, 4, exec).unwrap())
        });
    }
    group.finish();
}

fn steiner(c: &mut Criterion) {
    let petersen = rainbow_core::graph::parse_graph6("IheA@GUAo").unwrap();
    let mut group = c.benchmark_group("sdiam5_petersen");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| steiner_diameter_with(&petersen, 5, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, census, solver, steiner);
criterion_main!(benches);
