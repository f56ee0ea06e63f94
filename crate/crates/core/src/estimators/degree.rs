//! Degree growth of random Cremona products, cross-checked at two primes.

use super::{
    grid_string, hit_frequency, parameters, validate_grid, ExperimentResult, Record, RunSettings,
    Statistic, TruncatedTrial,
};
use crate::cremona::{CremonaGroup, Letter};
use crate::error::{Error, Result};
use crate::geometry::TOLERANCE;
use crate::measure::FiniteMeasure;
use crate::poly::{PrimeField, DEFAULT_PRIME, SECOND_PRIME};
use crate::walk::{auxiliary_rng, run_walk, Truncation};

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeGrowthSpec {
    pub n_grid: Vec<usize>,
    /// Powers used by the dynamical degree track.
    pub iterate_budget: usize,
    /// Every `subsample`-th trial runs the dynamical degree track.
    pub subsample: u64,
    /// Allowed gap between the two rate tracks at the largest `n`.
    pub max_gap: f64,
    /// Require the mean log-degree rate to be positive at every `n`.
    pub require_positive: bool,
    /// Every trial's rate must equal this, up to rounding.
    pub expected_rate: Option<f64>,
    /// Prime pairs tried before a trial is discarded.
    pub prime_attempts: u32,
}

impl DegreeGrowthSpec {
    pub fn new(n_grid: Vec<usize>) -> Self {
        DegreeGrowthSpec {
            n_grid,
            iterate_budget: 2,
            subsample: 1,
            max_gap: 0.2,
            require_positive: false,
            expected_rate: None,
            prime_attempts: 3,
        }
    }
}

struct PrimeRun {
    degrees: Vec<u32>,
    records: Vec<Record>,
    truncation: Option<Truncation>,
}

enum TrialOutcome {
    Done {
        records: Vec<Record>,
        attempts: u32,
        /// The first prime pair disagreed without signalling a bad prime.
        first_disagreed: bool,
        first_degenerate: bool,
    },
    Truncated(TruncatedTrial),
    Discarded { first_disagreed: bool, first_degenerate: bool },
}

/// `(1/n) log deg w_n` per `n`, degrees compared at two primes, a line
/// restriction cross-check of every degree, and on a subsample
/// `(1/n) log λ̂(w_n)` from the dynamical degree estimate.
///
/// A trial whose prime pair degenerates or disagrees is rerun at fresh
/// random primes, and discarded after `prime_attempts` pairs.
pub fn degree_growth_experiment(
    group: &CremonaGroup,
    words: &FiniteMeasure<Vec<Letter>>,
    spec: &DegreeGrowthSpec,
    run: &RunSettings,
) -> Result<ExperimentResult> {
    validate_grid(&spec.n_grid)?;
    if spec.iterate_budget == 0 || spec.subsample == 0 || spec.prime_attempts == 0 {
        return Err(Error::input("iterate budget, subsample and prime attempts must be >= 1"));
    }
    for w in words.support() {
        for l in w {
            l.generator.validate()?;
        }
    }
    let outcomes = run.executor.map(run.trials, |trial| run_trial(group, words, spec, run.seed, trial));

    let mut records = Vec::new();
    let mut truncated = Vec::new();
    let (mut retried, mut discarded) = (0u64, 0u64);
    let (mut clean_first, mut agreed_first) = (0u64, 0u64);
    for outcome in outcomes {
        let (first_disagreed, first_degenerate) = match outcome? {
            TrialOutcome::Done {
                records: r,
                attempts,
                first_disagreed,
                first_degenerate,
            } => {
                records.extend(r);
                if attempts > 1 {
                    retried += 1;
                }
                (first_disagreed, first_degenerate)
            }
            TrialOutcome::Truncated(t) => {
                truncated.push(t);
                continue;
            }
            TrialOutcome::Discarded {
                first_disagreed,
                first_degenerate,
            } => {
                retried += 1;
                discarded += 1;
                (first_disagreed, first_degenerate)
            }
        };
        if !first_degenerate {
            clean_first += 1;
            if !first_disagreed {
                agreed_first += 1;
            }
        }
    }

    let params = parameters([
        ("n_grid", grid_string(&spec.n_grid)),
        ("iterate_budget", spec.iterate_budget.to_string()),
        ("subsample", spec.subsample.to_string()),
        ("max_gap", spec.max_gap.to_string()),
        ("degree_cap", group.degree_cap().to_string()),
        ("line_cap", group.line_cap().to_string()),
        ("prime", group.field().p().to_string()),
        ("support", words.tags().join(",")),
    ]);
    let mut result = ExperimentResult::new("degree_growth", params, run.seed, run.trials, records);
    result.truncated = truncated;
    result.retried = retried;
    result.discarded = discarded;

    let mut means = Vec::new();
    let mut dynamical = Vec::new();
    for &n in &spec.n_grid {
        let key = Some(n as u64);
        means.push(result.aggregate(format!("mean_log_degree_rate_{n}"), "log_degree_rate", key, Statistic::Mean));
        let lo = result.aggregate(format!("min_log_degree_rate_{n}"), "log_degree_rate", key, Statistic::Min);
        let hi = result.aggregate(format!("max_log_degree_rate_{n}"), "log_degree_rate", key, Statistic::Max);
        result.aggregate(format!("mean_degree_{n}"), "degree", key, Statistic::Mean);
        let agree = result.aggregate(format!("restriction_agreement_{n}"), "restriction_agrees", key, hit_frequency());
        result.check(
            format!("restriction_degree_{n}"),
            "line restriction degree equals the composed degree in every trial",
            agree,
            agree == 1.0,
        );
        if !result.values("dynamical_rate", key).is_empty() {
            dynamical.push(result.aggregate(format!("mean_dynamical_rate_{n}"), "dynamical_rate", key, Statistic::Mean));
        }
        if let Some(expected) = spec.expected_rate {
            let worst = (lo - expected).abs().max((hi - expected).abs());
            result.check(
                format!("rate_{n}"),
                format!("(1/n) log deg = {expected} in every trial"),
                worst,
                worst <= TOLERANCE,
            );
        }
    }
    if spec.require_positive {
        let low = means.iter().copied().fold(f64::INFINITY, f64::min);
        result.check("positive_rate", "mean (1/n) log deg > 0 at every n", low, low > 0.0);
    }
    if dynamical.len() == spec.n_grid.len() {
        let n = *spec.n_grid.last().unwrap();
        let dyn_last = *dynamical.last().unwrap();
        if spec.require_positive {
            result.check(
                "positive_dynamical_rate",
                format!("mean (1/n) log lambda > 0 at n = {n}"),
                dyn_last,
                dyn_last > 0.0,
            );
        }
        // The subsample's own log-degree mean is the fair comparison.
        let sub_deg = subsample_mean(&result, n as u64, spec.subsample);
        let gap = (dyn_last - sub_deg).abs();
        result.check(
            "track_gap",
            format!("|mean (1/n) log lambda - mean (1/n) log deg| <= {} at n = {n}", spec.max_gap),
            gap,
            gap <= spec.max_gap,
        );
    }
    let agreement = if clean_first == 0 { 1.0 } else { agreed_first as f64 / clean_first as f64 };
    result.check(
        "two_prime_agreement",
        "degrees agree at both primes in every trial whose first primes did not degenerate",
        agreement,
        agreed_first == clean_first,
    );
    result.note(format!(
        "{retried} trials retried at fresh primes, {discarded} discarded, {} truncated",
        result.truncated.len()
    ));
    Ok(result.finish())
}

fn subsample_mean(result: &ExperimentResult, n: u64, every: u64) -> f64 {
    let xs: Vec<f64> = result
        .records
        .iter()
        .filter(|r| r.n == n && r.observable == "log_degree_rate" && r.trial % every == 0)
        .map(|r| r.value)
        .collect();
    crate::stats::mean(&xs)
}

fn prime_pair(seed: u64, trial: u64, attempt: u32, base: PrimeField) -> (PrimeField, PrimeField) {
    if attempt == 0 {
        let second = if base.p() == SECOND_PRIME { DEFAULT_PRIME } else { SECOND_PRIME };
        return (base, PrimeField::new(second).expect("built-in prime"));
    }
    let mut rng = auxiliary_rng(seed, trial, attempt as u64);
    let p = PrimeField::random(&mut rng);
    loop {
        let q = PrimeField::random(&mut rng);
        if q != p {
            return (p, q);
        }
    }
}

fn run_trial(
    group: &CremonaGroup,
    words: &FiniteMeasure<Vec<Letter>>,
    spec: &DegreeGrowthSpec,
    seed: u64,
    trial: u64,
) -> Result<TrialOutcome> {
    let (mut first_disagreed, mut first_degenerate) = (false, false);
    for attempt in 0..spec.prime_attempts {
        let (p, q) = prime_pair(seed, trial, attempt, group.field());
        let observe = trial.is_multiple_of(spec.subsample);
        let main = walk_at(&group.at_prime(p), words, spec, seed, trial, true, observe)?;
        let check = match &main {
            Ok(run) if run.truncation.is_none() => {
                Some(walk_at(&group.at_prime(q), words, spec, seed, trial, false, false)?)
            }
            _ => None,
        };
        if main.is_err() || matches!(check, Some(Err(()))) {
            if attempt == 0 {
                first_degenerate = true;
            }
            continue;
        }
        let main = main.expect("checked above");
        if let Some(t) = main.truncation {
            return Ok(TrialOutcome::Truncated(TruncatedTrial::from_truncation(trial, &t)));
        }
        let other = check.expect("main run completed").expect("checked above");
        if let Some(t) = other.truncation {
            return Ok(TrialOutcome::Truncated(TruncatedTrial::from_truncation(trial, &t)));
        }
        if other.degrees != main.degrees {
            if attempt == 0 {
                first_disagreed = true;
            }
            continue;
        }
        let mut records = main.records;
        records.push(Record {
            trial,
            n: *spec.n_grid.last().unwrap() as u64,
            observable: "prime_attempts".into(),
            value: (attempt + 1) as f64,
        });
        return Ok(TrialOutcome::Done {
            records,
            attempts: attempt + 1,
            first_disagreed,
            first_degenerate,
        });
    }
    Ok(TrialOutcome::Discarded {
        first_disagreed,
        first_degenerate,
    })
}

/// One walk at one prime. `Err(())` flags a degenerate reduction; input
/// errors propagate.
fn walk_at(
    group: &CremonaGroup,
    words: &FiniteMeasure<Vec<Letter>>,
    spec: &DegreeGrowthSpec,
    seed: u64,
    trial: u64,
    record: bool,
    dynamical: bool,
) -> Result<std::result::Result<PrimeRun, ()>> {
    let measure = match words.map_support(|w| group.element(w.clone())) {
        Ok(m) => m,
        Err(Error::BadPrime { .. }) => return Ok(Err(())),
        Err(e) => return Err(e),
    };
    let grid = &spec.n_grid;
    let mut degrees = Vec::with_capacity(grid.len());
    let mut records = Vec::new();
    let mut next = 0;
    let outcome = run_walk(group, &measure, *grid.last().unwrap(), seed, trial, |i, w| {
        if next >= grid.len() || grid[next] != i {
            return Ok(());
        }
        next += 1;
        let deg = w.degree();
        degrees.push(deg);
        if !record {
            return Ok(());
        }
        let n = i as u64;
        let nf = i as f64;
        let mut push = |observable: &str, value: f64| {
            records.push(Record {
                trial,
                n,
                observable: observable.into(),
                value,
            })
        };
        push("degree", deg as f64);
        push("log_degree_rate", (deg as f64).ln() / nf);
        let by_line = group.degree_by_restriction(w)?;
        push("restriction_agrees", super::indicator(by_line == deg as u64));
        if dynamical {
            let estimate = match group.dynamical_degree(w, spec.iterate_budget) {
                Ok(d) => Some(d.estimate),
                Err(Error::Resource { partial, .. }) => partial,
                Err(e) => return Err(e),
            };
            if let Some(lambda) = estimate {
                push("dynamical_rate", lambda.ln() / nf);
            }
        }
        Ok(())
    });
    match outcome.truncation {
        Some(Truncation { error: Error::BadPrime { .. }, .. }) => Ok(Err(())),
        Some(Truncation { error: Error::Input(m), .. }) => Err(Error::Input(m)),
        truncation => Ok(Ok(PrimeRun {
            degrees,
            records,
            truncation,
        })),
    }
}
