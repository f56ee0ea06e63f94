//! Sample paths `w_i = g_1·…·g_i` with i.i.d. increments.

use serde::{Deserialize, Serialize};

use super::rng::trial_rng;
use crate::error::{Error, Result};
use crate::geometry::{orbit_gromov_product, ActionOracle};
use crate::measure::FiniteMeasure;

/// Which partial products a path keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Retention {
    /// `w_0, …, w_n`.
    Full,
    /// Only the latest product.
    Current,
}

/// Where and why a trial stopped early.
#[derive(Debug, Clone, PartialEq)]
pub struct Truncation {
    /// The step that failed; steps before it completed.
    pub step: usize,
    pub error: Error,
}

/// Result of driving one walk.
#[derive(Debug, Clone)]
pub struct WalkOutcome<E> {
    pub current: E,
    /// Support indices of the completed increments.
    pub increments: Vec<usize>,
    pub truncation: Option<Truncation>,
}

/// Runs `n` steps of the walk for `(seed, trial)`, calling `visit(i, w_i)`
/// for `i = 0..=n`. The first oracle or visitor error stops the walk.
pub fn run_walk<O, F>(
    oracle: &O,
    measure: &FiniteMeasure<O::Element>,
    n: usize,
    seed: u64,
    trial: u64,
    mut visit: F,
) -> WalkOutcome<O::Element>
where
    O: ActionOracle + ?Sized,
    F: FnMut(usize, &O::Element) -> Result<()>,
{
    let mut rng = trial_rng(seed, trial);
    let mut current = oracle.identity();
    let mut increments = Vec::with_capacity(n);
    if let Err(error) = visit(0, &current) {
        return WalkOutcome {
            current,
            increments,
            truncation: Some(Truncation { step: 0, error }),
        };
    }
    for step in 1..=n {
        let idx = measure.sample_index(&mut rng);
        let result = oracle
            .multiply_assign(&mut current, &measure.support()[idx])
            .and_then(|()| {
                increments.push(idx);
                visit(step, &current)
            });
        if let Err(error) = result {
            return WalkOutcome {
                current,
                increments,
                truncation: Some(Truncation { step, error }),
            };
        }
    }
    WalkOutcome {
        current,
        increments,
        truncation: None,
    }
}

/// One realized random product with its displacement track.
#[derive(Debug, Clone)]
pub struct SamplePath<E> {
    pub seed: u64,
    pub trial: u64,
    /// Requested number of steps.
    pub steps: usize,
    /// Support indices of `g_1, …`.
    pub increments: Vec<usize>,
    /// `d(x, w_i·x)` from `i = 0`; may stop one short of `len()` when the
    /// last displacement itself failed.
    pub displacements: Vec<f64>,
    pub truncation: Option<Truncation>,
    retention: Retention,
    products: Vec<E>,
}

impl<E> SamplePath<E> {
    /// Number of completed steps.
    pub fn len(&self) -> usize {
        self.increments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.increments.is_empty()
    }

    pub fn retention(&self) -> Retention {
        self.retention
    }

    /// The last computed product.
    pub fn current(&self) -> &E {
        self.products.last().expect("a path holds at least w_0")
    }

    /// `w_i`, if retained.
    pub fn product(&self, i: usize) -> Option<&E> {
        match self.retention {
            Retention::Full => self.products.get(i),
            Retention::Current if i == self.len() => self.products.last(),
            Retention::Current => None,
        }
    }

    pub fn is_truncated(&self) -> bool {
        self.truncation.is_some()
    }
}

/// Samples `w_n` for `(seed, trial)`, keeping the displacement track.
pub fn sample_path<O: ActionOracle + ?Sized>(
    oracle: &O,
    measure: &FiniteMeasure<O::Element>,
    n: usize,
    seed: u64,
    trial: u64,
    retention: Retention,
) -> SamplePath<O::Element> {
    let mut displacements = Vec::with_capacity(n + 1);
    let mut products = Vec::new();
    let outcome = run_walk(oracle, measure, n, seed, trial, |_, w| {
        displacements.push(oracle.displacement(w)?);
        if retention == Retention::Full {
            products.push(w.clone());
        }
        Ok(())
    });
    match retention {
        Retention::Current => products = vec![outcome.current],
        // A failing visitor leaves the last product unrecorded.
        Retention::Full if products.len() == outcome.increments.len() => {
            products.push(outcome.current)
        }
        Retention::Full => {}
    }
    SamplePath {
        seed,
        trial,
        steps: n,
        increments: outcome.increments,
        displacements,
        truncation: outcome.truncation,
        retention,
        products,
    }
}

/// A path of the reflected measure `μ̌(g) = μ(g⁻¹)`. Support indices refer
/// to the original measure, so the increments are `g_i⁻¹`.
pub fn reflected_path<O: ActionOracle + ?Sized>(
    oracle: &O,
    measure: &FiniteMeasure<O::Element>,
    n: usize,
    seed: u64,
    trial: u64,
    retention: Retention,
) -> Result<SamplePath<O::Element>> {
    let reflected = measure.reflected(oracle)?;
    Ok(sample_path(oracle, &reflected, n, seed, trial, retention))
}

/// A quantity read off a sample path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    /// `d(x, w_i·x)`.
    Displacement { i: usize },
    /// `⟨w_i·x, w_j·x⟩_x`; needs full retention.
    GromovProduct { i: usize, j: usize },
    /// `⟨w_n·x, w_n⁻¹·x⟩_x` at the end of the path.
    SymmetricGromovProduct,
    /// `τ(w_n)` by the model's routine.
    TranslationLength { budget: usize },
}

/// Evaluates `requests` on `path`. `measure` must be the one the path was
/// sampled from; `w_n⁻¹` is rebuilt as `g_n⁻¹·…·g_1⁻¹`.
pub fn path_observables<O: ActionOracle + ?Sized>(
    oracle: &O,
    measure: &FiniteMeasure<O::Element>,
    path: &SamplePath<O::Element>,
    requests: &[Observable],
) -> Result<Vec<(Observable, f64)>> {
    let n = path.len();
    let retained = |i: usize| {
        if i > n {
            return Err(Error::input(format!("index {i} beyond path length {n}")));
        }
        path.product(i)
            .ok_or_else(|| Error::input(format!("w_{i} is not retained by this path")))
    };
    let mut out = Vec::with_capacity(requests.len());
    for &req in requests {
        let value = match req {
            Observable::Displacement { i } => *path
                .displacements
                .get(i)
                .ok_or_else(|| Error::input(format!("index {i} beyond path length {n}")))?,
            Observable::GromovProduct { i, j } => {
                orbit_gromov_product(oracle, retained(i)?, retained(j)?)?
            }
            Observable::SymmetricGromovProduct => {
                let mut inverse = oracle.identity();
                for &idx in path.increments.iter().rev() {
                    let gi = oracle.invert(&measure.support()[idx])?;
                    oracle.multiply_assign(&mut inverse, &gi)?;
                }
                orbit_gromov_product(oracle, path.current(), &inverse)?
            }
            Observable::TranslationLength { budget } => {
                crate::geometry::translation_length_estimate(oracle, path.current(), budget)?
            }
        };
        out.push((req, value));
    }
    Ok(out)
}
