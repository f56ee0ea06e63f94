//! Joint coarse stabilizer census along random walks.

use super::{collect, grid_string, parameters, validate_grid, ExperimentResult, RunSettings, Statistic};
use crate::error::{Error, Result};
use crate::free::{ExtendedElement, FreeGroup, SemidirectGroup, Word};
use crate::geometry::ActionOracle;
use crate::measure::FiniteMeasure;

/// Models that can count `|Stab_K(x, g·x)|` exactly.
pub trait CensusModel: ActionOracle {
    fn census(&self, k: usize, g: &Self::Element, cap: usize) -> Result<usize>;
}

impl CensusModel for FreeGroup {
    fn census(&self, k: usize, g: &Word, cap: usize) -> Result<usize> {
        self.stab_census(k, g, cap)
    }
}

impl CensusModel for SemidirectGroup {
    fn census(&self, k: usize, g: &ExtendedElement, cap: usize) -> Result<usize> {
        self.stab_census(k, g, cap)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcylindricitySpec {
    pub k: usize,
    pub n_grid: Vec<usize>,
    pub cap: usize,
    pub quantile: f64,
}

impl AcylindricitySpec {
    pub fn new(k: usize, n_grid: Vec<usize>) -> Self {
        AcylindricitySpec {
            k,
            n_grid,
            cap: crate::free::DEFAULT_CENSUS_CAP,
            quantile: 0.99,
        }
    }
}

/// Census counts per `n`, and the smallest `N` covering the requested
/// quantile of trials, which must not depend on `n`.
pub fn stab_acylindricity<M: CensusModel + ?Sized>(
    model: &M,
    measure: &FiniteMeasure<M::Element>,
    spec: &AcylindricitySpec,
    run: &RunSettings,
) -> Result<ExperimentResult> {
    validate_grid(&spec.n_grid)?;
    if spec.k > spec.cap {
        return Err(Error::resource(format!("census radius {} above cap {}", spec.k, spec.cap)));
    }
    if !(spec.quantile > 0.0 && spec.quantile <= 1.0) {
        return Err(Error::input(format!("quantile must lie in (0, 1], got {}", spec.quantile)));
    }
    let collected = collect(model, measure, &spec.n_grid, run, |_, w| {
        Ok(vec![("stab_census".to_string(), model.census(spec.k, w, spec.cap)? as f64)])
    })?;
    let params = parameters([
        ("k", spec.k.to_string()),
        ("n_grid", grid_string(&spec.n_grid)),
        ("cap", spec.cap.to_string()),
        ("quantile", spec.quantile.to_string()),
        ("support", measure.tags().join(",")),
    ]);
    let mut result = ExperimentResult::new("stab_acylindricity", params, run.seed, run.trials, collected.records);
    result.truncated = collected.truncated;
    let mut quantiles = Vec::new();
    for &n in &spec.n_grid {
        let key = Some(n as u64);
        quantiles.push(result.aggregate(
            format!("census_quantile_{n}"),
            "stab_census",
            key,
            Statistic::Quantile { q: spec.quantile },
        ));
        result.aggregate(format!("census_max_{n}"), "stab_census", key, Statistic::Max);
        result.aggregate(format!("census_mean_{n}"), "stab_census", key, Statistic::Mean);
    }
    let spread = quantiles.iter().copied().fold(f64::MIN, f64::max)
        - quantiles.iter().copied().fold(f64::MAX, f64::min);
    result.check(
        "quantile_constant",
        format!("{}-quantile of the census identical across n", spec.quantile),
        spread,
        spread == 0.0,
    );
    Ok(result.finish())
}
