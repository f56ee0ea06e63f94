//! Small cancellation certificates for tree elements.

use serde::{Deserialize, Serialize};

use super::{collect, hit_frequency, indicator, parameters, validate_grid, ExperimentResult, RunSettings};
use crate::error::{Error, Result};
use crate::free::{axis_overlap_delta, FreeGroup, Word};
use crate::measure::FiniteMeasure;

/// Outcome of testing the `(A, ε)` condition for the conjugates of `w`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub tau: usize,
    /// Longest axis overlap found; a lower bound for the fellow-travelling constant.
    pub delta: usize,
    /// Whether `delta` is the fellow-travelling constant itself.
    pub delta_certified: bool,
    pub a: f64,
    pub epsilon: f64,
    /// `delta` certified and `delta ≤ ε·τ`.
    pub passed: bool,
    pub injectivity: String,
}

/// Checks the `(A, ε)` condition for `w` on the Cayley tree, using `τ(w)`
/// as the injectivity radius.
pub fn small_cancellation_certificate(w: &Word, a: f64, epsilon: f64, search_radius: usize) -> Result<Certificate> {
    if w.cyclic_reduce().core.is_empty() {
        return Err(Error::input(format!("{w} is not loxodromic")));
    }
    if !(epsilon > 0.0) {
        return Err(Error::input(format!("epsilon must be positive, got {epsilon}")));
    }
    let tau = w.translation_length();
    let overlap = axis_overlap_delta(w, search_radius)?;
    Ok(Certificate {
        tau,
        delta: overlap.delta,
        delta_certified: overlap.certified,
        a,
        epsilon,
        passed: overlap.certified && overlap.delta as f64 <= epsilon * tau as f64,
        injectivity: format!("injectivity radius {tau} >= A·δ = 0 holds vacuously on a tree"),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CancellationSpec {
    pub n: usize,
    pub a: f64,
    pub epsilon: f64,
    pub search_radius: usize,
    pub min_frequency: f64,
}

impl CancellationSpec {
    pub fn new(n: usize) -> Self {
        CancellationSpec {
            n,
            a: 1.0,
            epsilon: 0.1,
            search_radius: usize::MAX,
            min_frequency: 0.95,
        }
    }
}

/// Certificate pass frequency for `w_n`. Non-loxodromic `w_n` count as failures.
pub fn small_cancellation_experiment(
    group: &FreeGroup,
    measure: &FiniteMeasure<Word>,
    spec: &CancellationSpec,
    run: &RunSettings,
) -> Result<ExperimentResult> {
    validate_grid(&[spec.n])?;
    let collected = collect(group, measure, &[spec.n], run, |_, w| {
        if w.cyclic_reduce().core.is_empty() {
            return Ok(vec![("certificate_pass".to_string(), 0.0), ("tau".to_string(), 0.0)]);
        }
        let c = small_cancellation_certificate(w, spec.a, spec.epsilon, spec.search_radius)?;
        Ok(vec![
            ("certificate_pass".to_string(), indicator(c.passed)),
            ("delta".to_string(), c.delta as f64),
            ("delta_certified".to_string(), indicator(c.delta_certified)),
            ("tau".to_string(), c.tau as f64),
        ])
    })?;
    let params = parameters([
        ("n", spec.n.to_string()),
        ("a", spec.a.to_string()),
        ("epsilon", spec.epsilon.to_string()),
        ("search_radius", spec.search_radius.to_string()),
        ("support", measure.tags().join(",")),
    ]);
    let mut result = ExperimentResult::new("small_cancellation", params, run.seed, run.trials, collected.records);
    result.truncated = collected.truncated;
    let key = Some(spec.n as u64);
    let f = result.aggregate("pass_frequency", "certificate_pass", key, hit_frequency());
    result.aggregate("mean_delta", "delta", key, super::Statistic::Mean);
    result.aggregate("max_delta", "delta", key, super::Statistic::Max);
    result.aggregate("mean_tau", "tau", key, super::Statistic::Mean);
    result.check(
        "pass_frequency",
        format!("certificate pass frequency >= {}", spec.min_frequency),
        f,
        f >= spec.min_frequency,
    );
    result.note("trees are 0-hyperbolic, so the injectivity condition inj >= A·δ is vacuous");
    Ok(result.finish())
}
