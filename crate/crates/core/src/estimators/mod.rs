//! Seeded Monte-Carlo experiments over random walks, each reporting per-trial
//! records, aggregates with standard errors, and pass/fail checks.
//!
//! Decay rates of the form `c^√n` are not fitted: at these sample sizes they
//! cannot be told apart from `c^n`. Those experiments only check monotone
//! trends.

mod acylindricity;
mod cancellation;
mod characteristic;
mod degree;
mod growth;
mod matches;
mod result;
mod shadow;

pub use acylindricity::{stab_acylindricity, AcylindricitySpec, CensusModel};
pub use cancellation::{
    small_cancellation_certificate, small_cancellation_experiment, CancellationSpec, Certificate,
};
pub use characteristic::{characteristic_index_experiment, CharacteristicSpec};
pub use degree::{degree_growth_experiment, DegreeGrowthSpec};
pub use growth::{
    estimate_drift, gromov_tail, translation_growth, DriftSpec, GromovTailSpec, TranslationSpec,
};
pub use matches::{match_census, random_reduced_word, MatchKind, MatchSpec};
pub use result::{
    Aggregate, Check, ExperimentResult, Fit, FitPoint, Outcome, Record, Statistic, Transform,
    TruncatedTrial, INTERVAL_Z, MAX_TRUNCATED_FRACTION,
};
pub use shadow::{shadow_decay, ShadowSpec};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::geometry::ActionOracle;
use crate::measure::FiniteMeasure;
use crate::walk::run_walk;

/// Seed, trial count and scheduling shared by every experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSettings {
    pub seed: u64,
    pub trials: u64,
    pub executor: Executor,
}

impl RunSettings {
    pub fn new(seed: u64, trials: u64) -> Self {
        RunSettings {
            seed,
            trials,
            executor: Executor::default(),
        }
    }

    pub fn with_executor(self, executor: Executor) -> Self {
        RunSettings { executor, ..self }
    }
}

pub(crate) fn validate_grid(grid: &[usize]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::input("n-grid is empty"));
    }
    if grid[0] == 0 || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::input(format!(
            "n-grid must be strictly increasing and positive, got {grid:?}"
        )));
    }
    Ok(())
}

pub(crate) fn grid_string(grid: &[usize]) -> String {
    grid.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub(crate) fn parameters<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub(crate) struct Collected {
    pub records: Vec<Record>,
    pub truncated: Vec<TruncatedTrial>,
}

/// Runs every trial to the end of `grid`, calling `observe(n, w_n)` at each
/// grid point. A trial whose walk or observation fails is reported as
/// truncated and contributes no records. Input errors abort the experiment.
pub(crate) fn collect<O, F>(
    oracle: &O,
    measure: &FiniteMeasure<O::Element>,
    grid: &[usize],
    run: &RunSettings,
    observe: F,
) -> Result<Collected>
where
    O: ActionOracle + ?Sized,
    F: Fn(usize, &O::Element) -> Result<Vec<(String, f64)>> + Sync,
{
    let last = *grid.last().expect("validated grid");
    let per_trial = run.executor.map(run.trials, |trial| {
        let mut records = Vec::new();
        let mut next = 0;
        let outcome = run_walk(oracle, measure, last, run.seed, trial, |i, w| {
            if next < grid.len() && grid[next] == i {
                next += 1;
                for (observable, value) in observe(i, w)? {
                    records.push(Record {
                        trial,
                        n: i as u64,
                        observable,
                        value,
                    });
                }
            }
            Ok(())
        });
        match outcome.truncation {
            None => Ok(Ok(records)),
            Some(t) if matches!(t.error, Error::Input(_)) => Err(t.error),
            Some(t) => Ok(Err(TruncatedTrial::from_truncation(trial, &t))),
        }
    });
    let mut out = Collected {
        records: Vec::new(),
        truncated: Vec::new(),
    };
    for r in per_trial {
        match r? {
            Ok(records) => out.records.extend(records),
            Err(t) => out.truncated.push(t),
        }
    }
    Ok(out)
}

pub(crate) fn indicator(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Frequency statistic for 0/1 indicator records.
pub(crate) fn hit_frequency() -> Statistic {
    Statistic::Frequency {
        at_least: 1.0,
        z: INTERVAL_Z,
    }
}
