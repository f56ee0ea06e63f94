//! Characteristic index of a walk on a finite extension of a free group.

use super::{collect, grid_string, hit_frequency, indicator, parameters, validate_grid, ExperimentResult, RunSettings};
use crate::error::{Error, Result};
use crate::free::{ExtendedElement, SemidirectGroup};
use crate::measure::FiniteMeasure;

#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicSpec {
    pub n_grid: Vec<usize>,
    /// Allowed gap between `P(φ(w_n) = id)` and `1/k`.
    pub tolerance: f64,
    pub expected_index: Option<usize>,
}

impl CharacteristicSpec {
    pub fn new(n_grid: Vec<usize>) -> Self {
        CharacteristicSpec {
            n_grid,
            tolerance: 0.03,
            expected_index: None,
        }
    }
}

/// `k(μ)`, the frequency of `φ(w_n) = id` against `1/k`, and `φ(w_n^k) = id`,
/// which must hold in every trial.
pub fn characteristic_index_experiment(
    group: &SemidirectGroup,
    measure: &FiniteMeasure<ExtendedElement>,
    spec: &CharacteristicSpec,
    run: &RunSettings,
) -> Result<ExperimentResult> {
    validate_grid(&spec.n_grid)?;
    if !measure.flags.reversible {
        return Err(Error::input("characteristic index needs a measure flagged reversible"));
    }
    let k = group.characteristic_index(measure.support())?;
    let central = group.kernel_is_central(measure.support())?;
    let collected = collect(group, measure, &spec.n_grid, run, |_, w| {
        let mut power = group.identity();
        for _ in 0..k {
            group.op_assign(&mut power, w)?;
        }
        Ok(vec![
            ("phi_identity".to_string(), indicator(group.phi(w).is_identity())),
            ("phi_power_identity".to_string(), indicator(group.phi(&power).is_identity())),
        ])
    })?;
    let params = parameters([
        ("n_grid", grid_string(&spec.n_grid)),
        ("tolerance", spec.tolerance.to_string()),
        ("kernel_order", group.torsion_group().order().to_string()),
        ("support", measure.tags().join(",")),
    ]);
    let mut result = ExperimentResult::new("characteristic_index", params, run.seed, run.trials, collected.records);
    result.truncated = collected.truncated;
    let target = 1.0 / k as f64;
    for &n in &spec.n_grid {
        let key = Some(n as u64);
        let f = result.aggregate(format!("phi_identity_frequency_{n}"), "phi_identity", key, hit_frequency());
        let fk = result.aggregate(format!("phi_power_identity_frequency_{n}"), "phi_power_identity", key, hit_frequency());
        let gap = (f - target).abs();
        result.check(
            format!("phi_identity_{n}"),
            format!("|P(phi(w_n) = id) - 1/{k}| <= {}", spec.tolerance),
            gap,
            gap <= spec.tolerance,
        );
        result.check(
            format!("phi_power_identity_{n}"),
            format!("phi(w_n^{k}) = id in every trial"),
            fk,
            fk == 1.0,
        );
    }
    result.check(
        "index_one_iff_central",
        format!("k = {k}, kernel central = {central}"),
        k as f64,
        (k == 1) == central,
    );
    if let Some(expected) = spec.expected_index {
        result.check("characteristic_index", format!("k = {expected}"), k as f64, k == expected);
    }
    result.note(format!("characteristic index k = {k}; kernel central: {central}"));
    Ok(result.finish())
}
