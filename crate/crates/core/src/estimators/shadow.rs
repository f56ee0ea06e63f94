//! Hitting frequencies of nested shadows.

use super::{parameters, ExperimentResult, Record, RunSettings, Statistic, Transform, TruncatedTrial};
use crate::error::{Error, Result};
use crate::geometry::{shadow_contains, ActionOracle, Shadow};
use crate::measure::FiniteMeasure;
use crate::walk::run_walk;

/// Shadows `S_x(y_m, R)` seen from the basepoint for targets `y_1, y_2, …`
/// along a geodesic ray, so that the shadows are nested.
#[derive(Debug, Clone)]
pub struct ShadowSpec<E> {
    pub targets: Vec<E>,
    pub slack: f64,
    /// Steps per sample; the walk's position stands in for its limit point.
    pub walk_length: usize,
    /// Exact hitting measure of each shadow, if known.
    pub exact: Option<Vec<f64>>,
    /// Wilson `z` for the comparison with `exact`.
    pub z: f64,
    /// Expected slope of `log ν(S_m)` against the distance parameter.
    pub expected_rate: Option<f64>,
    /// Relative tolerance on the slope.
    pub rate_tolerance: f64,
}

impl<E> ShadowSpec<E> {
    pub fn new(targets: Vec<E>) -> Self {
        ShadowSpec {
            targets,
            slack: 0.0,
            walk_length: 100,
            exact: None,
            z: 3.0,
            expected_rate: None,
            rate_tolerance: 0.1,
        }
    }
}

/// Per sample, the number of leading targets whose shadow contains
/// `w_N·x`; frequencies of depth `≥ m` estimate the shadow measures.
pub fn shadow_decay<O: ActionOracle + ?Sized>(
    oracle: &O,
    measure: &FiniteMeasure<O::Element>,
    spec: &ShadowSpec<O::Element>,
    run: &RunSettings,
) -> Result<ExperimentResult> {
    if spec.targets.is_empty() {
        return Err(Error::input("shadow experiment needs at least one target"));
    }
    if spec.walk_length == 0 {
        return Err(Error::input("walk length must be >= 1"));
    }
    if let Some(exact) = &spec.exact {
        if exact.len() != spec.targets.len() {
            return Err(Error::input("need one exact value per target"));
        }
    }
    let source = oracle.identity();
    let shadows = spec
        .targets
        .iter()
        .map(|y| Shadow::new(source.clone(), y.clone(), spec.slack))
        .collect::<Result<Vec<_>>>()?;
    let radii = shadows
        .iter()
        .map(|s| s.distance_parameter(oracle))
        .collect::<Result<Vec<_>>>()?;

    let n = spec.walk_length;
    let per_trial = run.executor.map(run.trials, |trial| {
        let mut depth = 0usize;
        let outcome = run_walk(oracle, measure, n, run.seed, trial, |i, w| {
            if i == n {
                for s in &shadows {
                    if !shadow_contains(oracle, s, w)? {
                        break;
                    }
                    depth += 1;
                }
            }
            Ok(())
        });
        match outcome.truncation {
            None => Ok(Ok(depth)),
            Some(t) if matches!(t.error, Error::Input(_)) => Err(t.error),
            Some(t) => Ok(Err(TruncatedTrial::from_truncation(trial, &t))),
        }
    });
    let mut records = Vec::new();
    let mut truncated = Vec::new();
    for (trial, r) in per_trial.into_iter().enumerate() {
        match r? {
            Ok(depth) => records.push(Record {
                trial: trial as u64,
                n: n as u64,
                observable: "shadow_depth".into(),
                value: depth as f64,
            }),
            Err(t) => truncated.push(t),
        }
    }

    let params = parameters([
        ("targets", spec.targets.len().to_string()),
        ("slack", spec.slack.to_string()),
        ("walk_length", n.to_string()),
        ("z", spec.z.to_string()),
        ("support", measure.tags().join(",")),
    ]);
    let mut result = ExperimentResult::new("shadow_decay", params, run.seed, run.trials, records);
    result.truncated = truncated;
    let mut points = Vec::new();
    for (m, &r) in radii.iter().enumerate() {
        let label = format!("hit_frequency_{}", m + 1);
        result.aggregate(
            label.clone(),
            "shadow_depth",
            Some(n as u64),
            Statistic::Frequency {
                at_least: (m + 1) as f64,
                z: spec.z,
            },
        );
        points.push((r, label.clone()));
        if let Some(exact) = &spec.exact {
            let agg = result.get(&label).expect("just added");
            let [lo, hi] = agg.interval.expect("frequencies carry an interval");
            let value = agg.value;
            result.check(
                format!("shadow_{}", m + 1),
                format!("exact {} inside the z = {} Wilson interval [{lo}, {hi}]", exact[m], spec.z),
                value - exact[m],
                lo <= exact[m] && exact[m] <= hi,
            );
        }
    }
    let line = result.fit("shadow_decay_rate", Transform::Ln, points);
    if let Some(expected) = spec.expected_rate {
        let slope = line.map_or(f64::NAN, |l| l.slope);
        let rel = ((slope - expected) / expected).abs();
        result.check(
            "decay_rate",
            format!("slope within {} of {expected} (relative)", spec.rate_tolerance),
            slope,
            rel <= spec.rate_tolerance,
        );
    }
    Ok(result.finish())
}
