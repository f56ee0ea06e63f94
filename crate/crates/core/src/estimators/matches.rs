//! Matches of random geodesics with an axis, with a fixed pattern, and with
//! themselves, on the Cayley tree of a free group with `K = 0`.

use rand::Rng;

use super::{
    collect, grid_string, hit_frequency, indicator, parameters, validate_grid, ExperimentResult,
    RunSettings,
};
use crate::error::{Error, Result};
use crate::free::{contains_translate, match_detect, self_match_detect, FreeGroup, Letter, Word};
use crate::measure::FiniteMeasure;
use crate::walk::auxiliary_rng;

/// RNG purpose for the experiment-wide random pattern.
const PATTERN_STREAM: u64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum MatchKind {
    /// Some length-`length` factor of `w_n` lies on the axis of `core`.
    Axis { core: Word, length: usize },
    /// `w_n` contains a translate of the length-`s` prefix of `pattern`,
    /// for each `s` in `lengths`. With no pattern given, one of length
    /// `max(lengths)` is drawn from the experiment seed.
    NonMatch {
        pattern: Option<Word>,
        lengths: Vec<usize>,
    },
    /// A self-match of length `⌊fraction·n⌋`.
    SelfMatch { fraction: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchSpec {
    pub kind: MatchKind,
    pub n_grid: Vec<usize>,
    /// Axis matches must reach this frequency at every `n`.
    pub min_frequency: f64,
    /// Pattern matches at the longest pattern must stay below this.
    pub max_frequency: f64,
}

impl MatchSpec {
    pub fn new(kind: MatchKind, n_grid: Vec<usize>) -> Self {
        MatchSpec {
            kind,
            n_grid,
            min_frequency: 0.95,
            max_frequency: 0.05,
        }
    }
}

/// A uniformly random reduced word of the given length.
pub fn random_reduced_word<R: Rng + ?Sized>(rank: usize, len: usize, rng: &mut R) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let g = rng.random_range(1..=rank as Letter);
        let l = if rng.random_bool(0.5) { g } else { -g };
        if letters.last() != Some(&-l) {
            letters.push(l);
        }
    }
    Word::from_letters(letters)
}

pub fn match_census(
    group: &FreeGroup,
    measure: &FiniteMeasure<Word>,
    spec: &MatchSpec,
    run: &RunSettings,
) -> Result<ExperimentResult> {
    validate_grid(&spec.n_grid)?;
    let mut params = parameters([
        ("n_grid", grid_string(&spec.n_grid)),
        ("support", measure.tags().join(",")),
    ]);
    let (collected, name) = match &spec.kind {
        MatchKind::Axis { core, length } => {
            if *length == 0 {
                return Err(Error::input("match length must be >= 1"));
            }
            let axis = core.cyclic_reduce();
            if axis.core.is_empty() {
                return Err(Error::input("axis core must be loxodromic"));
            }
            for &l in core.letters() {
                if !measure.support().contains(&Word::from_letters([l])) {
                    return Err(Error::input(format!(
                        "axis core {core} is not a product of support elements"
                    )));
                }
            }
            params.insert("core".into(), core.to_string());
            params.insert("length".into(), length.to_string());
            params.insert("min_frequency".into(), spec.min_frequency.to_string());
            let c = collect(group, measure, &spec.n_grid, run, |_, w| {
                Ok(vec![("axis_match".to_string(), indicator(match_detect(w, &axis, *length)?))])
            })?;
            (c, "axis_match")
        }
        MatchKind::NonMatch { pattern, lengths } => {
            let longest = lengths.iter().copied().max().unwrap_or(0);
            if lengths.is_empty() || lengths.contains(&0) {
                return Err(Error::input("pattern lengths must be positive"));
            }
            let pattern = match pattern {
                Some(p) if p.len() >= longest => p.clone(),
                Some(p) => {
                    return Err(Error::input(format!(
                        "pattern {p} shorter than requested length {longest}"
                    )))
                }
                None => {
                    let mut rng = auxiliary_rng(run.seed, u64::MAX, PATTERN_STREAM);
                    random_reduced_word(group.rank(), longest, &mut rng)
                }
            };
            params.insert("pattern".into(), pattern.to_string());
            params.insert("lengths".into(), grid_string(lengths));
            params.insert("max_frequency".into(), spec.max_frequency.to_string());
            let prefixes: Vec<(usize, Word)> =
                lengths.iter().map(|&s| (s, pattern.prefix(s))).collect();
            let c = collect(group, measure, &spec.n_grid, run, |_, w| {
                Ok(prefixes
                    .iter()
                    .map(|(s, p)| (format!("pattern_match_{s}"), indicator(contains_translate(w, p))))
                    .collect())
            })?;
            (c, "non_match")
        }
        MatchKind::SelfMatch { fraction } => {
            if !(*fraction > 0.0 && *fraction <= 1.0) {
                return Err(Error::input(format!("self-match fraction must lie in (0, 1], got {fraction}")));
            }
            params.insert("fraction".into(), fraction.to_string());
            let c = collect(group, measure, &spec.n_grid, run, |n, w| {
                let l = ((fraction * n as f64).floor() as usize).max(1);
                Ok(vec![("self_match".to_string(), indicator(self_match_detect(w, l)?))])
            })?;
            (c, "self_match")
        }
    };
    let mut result = ExperimentResult::new(name, params, run.seed, run.trials, collected.records);
    result.truncated = collected.truncated;

    match &spec.kind {
        MatchKind::Axis { .. } => {
            for &n in &spec.n_grid {
                let f = result.aggregate(format!("axis_match_frequency_{n}"), "axis_match", Some(n as u64), hit_frequency());
                result.check(
                    format!("axis_match_{n}"),
                    format!("frequency >= {}", spec.min_frequency),
                    f,
                    f >= spec.min_frequency,
                );
            }
        }
        MatchKind::NonMatch { lengths, .. } => {
            let mut sorted = lengths.clone();
            sorted.sort_unstable();
            sorted.dedup();
            for &n in &spec.n_grid {
                let freqs: Vec<f64> = sorted
                    .iter()
                    .map(|s| {
                        result.aggregate(
                            format!("pattern_match_frequency_{n}_{s}"),
                            &format!("pattern_match_{s}"),
                            Some(n as u64),
                            hit_frequency(),
                        )
                    })
                    .collect();
                let last = *freqs.last().unwrap();
                result.check(
                    format!("non_match_{n}"),
                    format!("frequency at s = {} <= {}", sorted.last().unwrap(), spec.max_frequency),
                    last,
                    last <= spec.max_frequency,
                );
                result.check(
                    format!("non_match_trend_{n}"),
                    "frequency non-increasing in s",
                    max_rise(&freqs),
                    max_rise(&freqs) <= 0.0,
                );
            }
        }
        MatchKind::SelfMatch { .. } => {
            let freqs: Vec<f64> = spec
                .n_grid
                .iter()
                .map(|&n| {
                    result.aggregate(format!("self_match_frequency_{n}"), "self_match", Some(n as u64), hit_frequency())
                })
                .collect();
            result.check(
                "self_match_trend",
                "frequency non-increasing in n",
                max_rise(&freqs),
                max_rise(&freqs) <= 0.0,
            );
        }
    }
    Ok(result.finish())
}

/// Largest increase between consecutive values; zero or less when non-increasing.
fn max_rise(xs: &[f64]) -> f64 {
    xs.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn random_words_are_reduced() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for len in [0, 1, 30, 200] {
            let w = random_reduced_word(2, len, &mut rng);
            assert_eq!(w.len(), len);
            assert_eq!(Word::reduce(w.letters(), 2).unwrap(), w);
        }
    }

    #[test]
    fn rise_detection() {
        assert_eq!(max_rise(&[0.3, 0.1, 0.1]), 0.0);
        assert!(max_rise(&[0.1, 0.2]) > 0.0);
    }
}
