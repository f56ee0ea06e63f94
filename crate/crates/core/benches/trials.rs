//! Sequential against work-stealing trial execution on two workloads: cheap
//! tree walks, and Cremona walks where each step composes polynomial maps.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hypwalk::cremona::{CremonaGroup, Generator};
use hypwalk::estimators::{degree_growth_experiment, estimate_drift, DegreeGrowthSpec, DriftSpec, RunSettings};
use hypwalk::exec::Executor;
use hypwalk::free::FreeGroup;
use hypwalk::measure::FiniteMeasure;

fn executors() -> Vec<(&'static str, Executor)> {
    let mut out = vec![("sequential", Executor::sequential())];
    if cfg!(feature = "parallel") {
        out.push(("parallel", Executor::default()));
    }
    out
}

fn tree_drift(c: &mut Criterion) {
    let g = FreeGroup::new(2).unwrap();
    let mu = g.uniform_measure();
    let spec = DriftSpec::new(2000);
    let mut group = c.benchmark_group("tree_drift_200_trials");
    for (name, executor) in executors() {
        let run = RunSettings::new(1, 200).with_executor(executor);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(estimate_drift(&g, &mu, &spec, &run).unwrap()))
        });
    }
    group.finish();
}

fn cremona_degrees(c: &mut Criterion) {
    let group_model = CremonaGroup::default();
    let h = Generator::Henon { n: 2 }.letter();
    let s = Generator::Sigma.letter();
    let words = FiniteMeasure::uniform(
        vec![vec![s], vec![h], vec![h.inverse()]],
        vec!["sigma".into(), "h2".into(), "h2^-1".into()],
    )
    .unwrap();
    let mut spec = DegreeGrowthSpec::new((1..=6).collect());
    spec.iterate_budget = 1;
    let mut group = c.benchmark_group("cremona_degrees_32_trials");
    group.sample_size(10);
    for (name, executor) in executors() {
        let run = RunSettings::new(1, 32).with_executor(executor);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(degree_growth_experiment(&group_model, &words, &spec, &run).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, tree_drift, cremona_degrees);
criterion_main!(benches);
