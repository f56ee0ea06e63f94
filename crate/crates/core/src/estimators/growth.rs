//! Drift, translation length growth and the Gromov-product tail.

use super::{
    collect, grid_string, parameters, validate_grid, ExperimentResult, RunSettings, Statistic,
    Transform,
};
use crate::error::{Error, Result};
use crate::geometry::{orbit_gromov_product, translation_residual, ActionOracle, TOLERANCE};
use crate::measure::FiniteMeasure;

#[derive(Debug, Clone, PartialEq)]
pub struct DriftSpec {
    pub n: usize,
    /// Declared drift to compare against.
    pub expected: Option<f64>,
    pub tolerance: f64,
}

impl DriftSpec {
    pub fn new(n: usize) -> Self {
        DriftSpec {
            n,
            expected: None,
            tolerance: 0.02,
        }
    }
}

/// Mean of `d(x, w_n·x)/n`, plus `(1/n) log deg w_n` on models that have degrees.
pub fn estimate_drift<O: ActionOracle + ?Sized>(
    oracle: &O,
    measure: &FiniteMeasure<O::Element>,
    spec: &DriftSpec,
    run: &RunSettings,
) -> Result<ExperimentResult> {
    if run.trials < 30 {
        return Err(Error::input(format!("drift needs at least 30 trials, got {}", run.trials)));
    }
    if measure.flags.displacement_bound.is_none() {
        return Err(Error::input("drift needs a measure with a verified displacement bound"));
    }
    validate_grid(&[spec.n])?;
    let nf = spec.n as f64;
    let collected = collect(oracle, measure, &[spec.n], run, |_, w| {
        let mut obs = vec![("displacement_rate".to_string(), oracle.displacement(w)? / nf)];
        if let Some(ld) = oracle.log_degree(w)? {
            obs.push(("log_degree_rate".to_string(), ld / nf));
        }
        Ok(obs)
    })?;
    let mut params = parameters([("n", spec.n.to_string()), ("support", measure.tags().join(","))]);
    if let Some(e) = spec.expected {
        params.insert("expected".into(), e.to_string());
        params.insert("tolerance".into(), spec.tolerance.to_string());
    }
    let mut result = ExperimentResult::new("drift", params, run.seed, run.trials, collected.records);
    result.truncated = collected.truncated;
    let n = Some(spec.n as u64);
    let mean = result.aggregate("mean_displacement_rate", "displacement_rate", n, Statistic::Mean);
    if !result.values("log_degree_rate", n).is_empty() {
        result.aggregate("mean_log_degree_rate", "log_degree_rate", n, Statistic::Mean);
    }
    if measure.len() == 1 {
        result.note("point-mass measure: the walk is elementary");
    }
    if let Some(expected) = spec.expected {
        let gap = (mean - expected).abs();
        result.check(
            "drift",
            format!("|mean d/n - {expected}| <= {}", spec.tolerance),
            gap,
            gap <= spec.tolerance,
        );
    }
    Ok(result.finish())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TranslationSpec {
    pub n_grid: Vec<usize>,
    /// Power budget for models without a closed-form translation length.
    pub budget: usize,
    /// Drift to compare against; defaults to the same runs' mean `d/n`.
    pub reference: Option<f64>,
    pub tolerance: f64,
    /// Record `d − 2⟨w x, w⁻¹x⟩ − τ`; needs `w_n⁻²`, which may be out of
    /// reach for degree-capped models.
    pub residual: bool,
}

impl TranslationSpec {
    pub fn new(n_grid: Vec<usize>) -> Self {
        TranslationSpec {
            n_grid,
            budget: 8,
            reference: None,
            tolerance: 0.03,
            residual: true,
        }
    }
}

/// Distribution of `τ(w_n)/n` per `n` against the drift of the same runs.
pub fn translation_growth<O: ActionOracle + ?Sized>(
    oracle: &O,
    measure: &FiniteMeasure<O::Element>,
    spec: &TranslationSpec,
    run: &RunSettings,
) -> Result<ExperimentResult> {
    validate_grid(&spec.n_grid)?;
    if spec.budget == 0 {
        return Err(Error::input("translation budget must be >= 1"));
    }
    let collected = collect(oracle, measure, &spec.n_grid, run, |n, w| {
        let nf = n as f64;
        let d = oracle.displacement(w)?;
        let tau = oracle.translation_length(w, spec.budget)?;
        let mut obs = vec![
            ("displacement_rate".to_string(), d / nf),
            ("translation_rate".to_string(), tau / nf),
        ];
        if let Some(ld) = oracle.log_degree(w)? {
            obs.push(("log_degree_rate".to_string(), ld / nf));
        }
        if spec.residual {
            obs.push(("residual".to_string(), translation_residual(oracle, w, tau)?));
        }
        Ok(obs)
    })?;
    let mut params = parameters([
        ("n_grid", grid_string(&spec.n_grid)),
        ("budget", spec.budget.to_string()),
        ("tolerance", spec.tolerance.to_string()),
        ("support", measure.tags().join(",")),
    ]);
    if let Some(r) = spec.reference {
        params.insert("reference".into(), r.to_string());
    }
    let mut result =
        ExperimentResult::new("translation_growth", params, run.seed, run.trials, collected.records);
    result.truncated = collected.truncated;
    for &n in &spec.n_grid {
        let key = Some(n as u64);
        let tau = result.aggregate(format!("mean_translation_rate_{n}"), "translation_rate", key, Statistic::Mean);
        result.aggregate(format!("median_translation_rate_{n}"), "translation_rate", key, Statistic::Median);
        let drift = result.aggregate(format!("mean_displacement_rate_{n}"), "displacement_rate", key, Statistic::Mean);
        if spec.residual {
            result.aggregate(format!("mean_residual_{n}"), "residual", key, Statistic::Mean);
            result.aggregate(format!("max_residual_{n}"), "residual", key, Statistic::Max);
        }
        if !result.values("log_degree_rate", key).is_empty() {
            result.aggregate(format!("mean_log_degree_rate_{n}"), "log_degree_rate", key, Statistic::Mean);
        }
        let reference = spec.reference.unwrap_or(drift);
        let gap = (tau - reference).abs();
        result.check(
            format!("translation_vs_drift_{n}"),
            format!("|mean tau/n - {reference}| <= {}", spec.tolerance),
            gap,
            gap <= spec.tolerance,
        );
        result.check(
            format!("translation_below_displacement_{n}"),
            "mean tau/n <= mean d/n",
            tau - drift,
            tau <= drift + TOLERANCE,
        );
    }
    Ok(result.finish())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GromovTailSpec {
    pub n_grid: Vec<usize>,
    pub epsilon: f64,
    /// Largest acceptable `P(⟨w_n x, w_n⁻¹x⟩ ≥ εn)` at each `n`.
    pub max_frequency: f64,
    /// Allowed rise of the median between the first and last `n`.
    pub median_slack: f64,
}

impl GromovTailSpec {
    pub fn new(n_grid: Vec<usize>) -> Self {
        GromovTailSpec {
            n_grid,
            epsilon: 0.1,
            max_frequency: 0.01,
            median_slack: 1.0,
        }
    }
}

/// Tail frequency of `⟨w_n x, w_n⁻¹x⟩_x ≥ εn` per `n`, its log-linear
/// slope, and the median product.
pub fn gromov_tail<O: ActionOracle + ?Sized>(
    oracle: &O,
    measure: &FiniteMeasure<O::Element>,
    spec: &GromovTailSpec,
    run: &RunSettings,
) -> Result<ExperimentResult> {
    validate_grid(&spec.n_grid)?;
    if !(spec.epsilon > 0.0 && spec.epsilon < 1.0) {
        return Err(Error::input(format!("epsilon must lie in (0, 1), got {}", spec.epsilon)));
    }
    let collected = collect(oracle, measure, &spec.n_grid, run, |_, w| {
        let wi = oracle.invert(w)?;
        Ok(vec![("gromov_product".to_string(), orbit_gromov_product(oracle, w, &wi)?)])
    })?;
    let params = parameters([
        ("n_grid", grid_string(&spec.n_grid)),
        ("epsilon", spec.epsilon.to_string()),
        ("max_frequency", spec.max_frequency.to_string()),
        ("support", measure.tags().join(",")),
    ]);
    let mut result = ExperimentResult::new("gromov_tail", params, run.seed, run.trials, collected.records);
    result.truncated = collected.truncated;
    let mut points = Vec::new();
    let mut medians = Vec::new();
    for &n in &spec.n_grid {
        let key = Some(n as u64);
        let threshold = spec.epsilon * n as f64;
        let label = format!("tail_frequency_{n}");
        let freq = result.aggregate(
            label.clone(),
            "gromov_product",
            key,
            Statistic::Frequency {
                at_least: threshold,
                z: super::INTERVAL_Z,
            },
        );
        points.push((n as f64, label));
        medians.push(result.aggregate(format!("median_{n}"), "gromov_product", key, Statistic::Median));
        result.aggregate(format!("mean_{n}"), "gromov_product", key, Statistic::Mean);
        result.check(
            format!("tail_{n}"),
            format!("P(product >= {threshold}) <= {}", spec.max_frequency),
            freq,
            freq <= spec.max_frequency,
        );
    }
    result.fit("log_tail_frequency", Transform::Ln, points);
    let rise = medians.last().unwrap() - medians[0];
    result.check(
        "median_trend",
        format!("median rises by at most {} over the grid", spec.median_slack),
        rise,
        rise <= spec.median_slack,
    );
    Ok(result.finish())
}
