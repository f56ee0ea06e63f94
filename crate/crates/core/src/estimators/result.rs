//! Experiment reports: per-trial records, aggregates recomputable from them,
//! and checks against declared tolerances.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::stats::{self, LinearFit};
use crate::walk::Truncation;

/// Fraction of truncated trials above which an experiment is a resource failure.
pub const MAX_TRUNCATED_FRACTION: f64 = 0.1;

/// Standard errors used for the intervals attached to means and frequencies.
pub const INTERVAL_Z: f64 = 1.96;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub trial: u64,
    pub n: u64,
    pub observable: String,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Statistic {
    Mean,
    Median,
    Quantile { q: f64 },
    /// Fraction of values `≥ at_least`, with a Wilson interval at `z`.
    Frequency { at_least: f64, z: f64 },
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub label: String,
    pub observable: String,
    /// Restricts to records at this `n`; `None` pools every `n`.
    pub n: Option<u64>,
    pub statistic: Statistic,
    pub count: u64,
    pub value: f64,
    pub std_error: Option<f64>,
    pub interval: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    Identity,
    /// Natural log of the aggregate value; non-positive values are skipped.
    Ln,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitPoint {
    pub x: f64,
    pub aggregate: String,
}

/// A least-squares line through transformed aggregate values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    pub label: String,
    pub transform: Transform,
    pub points: Vec<FitPoint>,
    pub line: Option<LinearFit>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub requirement: String,
    pub value: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedTrial {
    pub trial: u64,
    pub step: u64,
    pub message: String,
    pub raw_degree: Option<u64>,
    /// Degrees reached before the cap, when the model reports them.
    pub sequence: Vec<u64>,
}

impl TruncatedTrial {
    pub fn from_truncation(trial: u64, t: &Truncation) -> Self {
        let (raw_degree, sequence) = match &t.error {
            crate::Error::Resource {
                raw_degree,
                sequence,
                ..
            } => (*raw_degree, sequence.clone()),
            _ => (None, Vec::new()),
        };
        TruncatedTrial {
            trial,
            step: t.step as u64,
            message: t.error.to_string(),
            raw_degree,
            sequence,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Passed,
    ToleranceFailure,
    ResourceFailure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub experiment: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    pub trials: u64,
    /// Sorted by `(trial, n, observable)`.
    pub records: Vec<Record>,
    pub aggregates: Vec<Aggregate>,
    pub fits: Vec<Fit>,
    pub checks: Vec<Check>,
    pub truncated: Vec<TruncatedTrial>,
    /// Trials that needed more than one prime.
    pub retried: u64,
    /// Trials dropped after exhausting their primes.
    pub discarded: u64,
    pub notes: Vec<String>,
    pub outcome: Outcome,
}

impl ExperimentResult {
    pub fn new(
        experiment: impl Into<String>,
        parameters: BTreeMap<String, String>,
        seed: u64,
        trials: u64,
        mut records: Vec<Record>,
    ) -> Self {
        records.sort_by(|a, b| {
            (a.trial, a.n, &a.observable).cmp(&(b.trial, b.n, &b.observable))
        });
        ExperimentResult {
            experiment: experiment.into(),
            parameters,
            seed,
            trials,
            records,
            aggregates: Vec::new(),
            fits: Vec::new(),
            checks: Vec::new(),
            truncated: Vec::new(),
            retried: 0,
            discarded: 0,
            notes: Vec::new(),
            outcome: Outcome::Passed,
        }
    }

    pub fn values(&self, observable: &str, n: Option<u64>) -> Vec<f64> {
        self.records
            .iter()
            .filter(|r| r.observable == observable && n.is_none_or(|n| r.n == n))
            .map(|r| r.value)
            .collect()
    }

    /// Computes and stores an aggregate, returning its value.
    pub fn aggregate(
        &mut self,
        label: impl Into<String>,
        observable: &str,
        n: Option<u64>,
        statistic: Statistic,
    ) -> f64 {
        let agg = compute_aggregate(label.into(), observable, n, statistic, &self.values(observable, n));
        let v = agg.value;
        self.aggregates.push(agg);
        v
    }

    pub fn get(&self, label: &str) -> Option<&Aggregate> {
        self.aggregates.iter().find(|a| a.label == label)
    }

    /// Fits a line through `(x, transform(aggregate))` and stores it.
    pub fn fit(&mut self, label: impl Into<String>, transform: Transform, points: Vec<(f64, String)>) -> Option<LinearFit> {
        let points = points
            .into_iter()
            .map(|(x, aggregate)| FitPoint { x, aggregate })
            .collect();
        let mut fit = Fit {
            label: label.into(),
            transform,
            points,
            line: None,
        };
        fit.line = self.compute_fit(&fit);
        let line = fit.line.clone();
        self.fits.push(fit);
        line
    }

    fn compute_fit(&self, fit: &Fit) -> Option<LinearFit> {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for p in &fit.points {
            let v = self.get(&p.aggregate)?.value;
            let y = match fit.transform {
                Transform::Identity => v,
                Transform::Ln if v > 0.0 => v.ln(),
                Transform::Ln => continue,
            };
            xs.push(p.x);
            ys.push(y);
        }
        stats::linear_fit(&xs, &ys)
    }

    pub fn check(&mut self, name: impl Into<String>, requirement: impl Into<String>, value: f64, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            requirement: requirement.into(),
            value: finite(value),
            passed,
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn truncated_fraction(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.truncated.len() as f64 / self.trials as f64
        }
    }

    fn derived_outcome(&self) -> Outcome {
        if self.truncated_fraction() > MAX_TRUNCATED_FRACTION {
            Outcome::ResourceFailure
        } else if self.checks.iter().all(|c| c.passed) {
            Outcome::Passed
        } else {
            Outcome::ToleranceFailure
        }
    }

    /// Records the truncation check and settles the outcome.
    pub fn finish(mut self) -> Self {
        let frac = self.truncated_fraction();
        self.check(
            "truncation_rate",
            format!("truncated fraction <= {MAX_TRUNCATED_FRACTION}"),
            frac,
            frac <= MAX_TRUNCATED_FRACTION,
        );
        self.outcome = self.derived_outcome();
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Passed
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// Recomputes every aggregate and fit from the stored records and
    /// compares bit for bit.
    pub fn audit(&self) -> Result<(), String> {
        let sorted = self.records.windows(2).all(|w| {
            (w[0].trial, w[0].n, &w[0].observable) <= (w[1].trial, w[1].n, &w[1].observable)
        });
        if !sorted {
            return Err("records are not sorted by (trial, n, observable)".into());
        }
        for agg in &self.aggregates {
            let again = compute_aggregate(
                agg.label.clone(),
                &agg.observable,
                agg.n,
                agg.statistic,
                &self.values(&agg.observable, agg.n),
            );
            if !same_aggregate(&again, agg) {
                return Err(format!("aggregate {} does not match its records", agg.label));
            }
        }
        for fit in &self.fits {
            if self.compute_fit(fit) != fit.line {
                return Err(format!("fit {} does not match its aggregates", fit.label));
            }
        }
        if self.derived_outcome() != self.outcome {
            return Err("outcome does not match checks and truncations".into());
        }
        Ok(())
    }
}

fn same_aggregate(a: &Aggregate, b: &Aggregate) -> bool {
    let bits = |x: f64| x.to_bits();
    a.count == b.count
        && bits(a.value) == bits(b.value)
        && a.std_error.map(bits) == b.std_error.map(bits)
        && a.interval.map(|i| i.map(bits)) == b.interval.map(|i| i.map(bits))
}

fn finite(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else if x.is_nan() {
        0.0
    } else {
        x.signum() * f64::MAX
    }
}

fn compute_aggregate(
    label: String,
    observable: &str,
    n: Option<u64>,
    statistic: Statistic,
    values: &[f64],
) -> Aggregate {
    let count = values.len() as u64;
    let (value, std_error, interval) = match statistic {
        Statistic::Mean => {
            let m = stats::mean(values);
            let se = stats::std_error(values);
            (m, Some(se), Some([m - INTERVAL_Z * se, m + INTERVAL_Z * se]))
        }
        Statistic::Median => (stats::median(values), None, None),
        Statistic::Quantile { q } => (stats::quantile(values, q), None, None),
        Statistic::Frequency { at_least, z } => {
            let hits = values.iter().filter(|&&v| v >= at_least).count();
            let p = if values.is_empty() {
                0.0
            } else {
                hits as f64 / values.len() as f64
            };
            let se = if values.is_empty() {
                0.0
            } else {
                (p * (1.0 - p) / values.len() as f64).sqrt()
            };
            (p, Some(se), Some(stats::wilson_interval(hits, values.len(), z)))
        }
        Statistic::Min => (values.iter().copied().reduce(f64::min).unwrap_or(0.0), None, None),
        Statistic::Max => (values.iter().copied().reduce(f64::max).unwrap_or(0.0), None, None),
    };
    Aggregate {
        label,
        observable: observable.to_string(),
        n,
        statistic,
        count,
        value: finite(value),
        std_error: std_error.map(finite),
        interval: interval.map(|i| i.map(finite)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExperimentResult {
        let records = (0..10)
            .flat_map(|t| {
                [10u64, 20].into_iter().map(move |n| Record {
                    trial: 9 - t,
                    n,
                    observable: "x".into(),
                    value: (t * n) as f64 / 7.0,
                })
            })
            .collect();
        ExperimentResult::new("demo", BTreeMap::new(), 1, 10, records)
    }

    #[test]
    fn records_are_sorted_and_audit_passes() {
        let mut r = sample();
        assert_eq!(r.records[0].trial, 0);
        r.aggregate("mean10", "x", Some(10), Statistic::Mean);
        r.aggregate("mean20", "x", Some(20), Statistic::Mean);
        r.aggregate("freq", "x", None, Statistic::Frequency { at_least: 5.0, z: 1.96 });
        r.fit("slope", Transform::Ln, vec![(10.0, "mean10".into()), (20.0, "mean20".into())]);
        r.check("demo", "always", 1.0, true);
        let r = r.finish();
        assert_eq!(r.outcome, Outcome::Passed);
        r.audit().unwrap();
    }

    #[test]
    fn tampering_is_detected() {
        let mut r = sample();
        r.aggregate("mean10", "x", Some(10), Statistic::Mean);
        let mut r = r.finish();
        r.records[0].value += 1.0;
        assert!(r.audit().is_err());
    }

    #[test]
    fn truncations_force_resource_failure() {
        let mut r = sample();
        r.truncated = (0..2)
            .map(|trial| TruncatedTrial {
                trial,
                step: 3,
                message: "cap".into(),
                raw_degree: Some(1024),
                sequence: vec![],
            })
            .collect();
        assert_eq!(r.finish().outcome, Outcome::ResourceFailure);
    }
}
