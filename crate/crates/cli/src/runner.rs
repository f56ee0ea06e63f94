//! Builds the configured model and measure and runs the experiment.

use num_rational::Ratio;

use hypwalk::cremona::{
    degree_by_restriction, CremonaGroup, Generator, Letter, MonomialGroup, MonomialMap, RationalMapP2,
};
use hypwalk::estimators::*;
use hypwalk::exec::Executor;
use hypwalk::free::{exact_shadow_measure, Automorphism, FiniteGroup, FreeGroup, SemidirectGroup, Word};
use hypwalk::geometry::ActionOracle;
use hypwalk::measure::FiniteMeasure;
use hypwalk::poly::PrimeField;
use hypwalk::Error;

use crate::config::*;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    /// The config is well-formed TOML but describes something invalid.
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] Error),
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Model(e) if e.is_resource() => 3,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, RunError>;

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(RunError::Config(msg.into()))
}

/// Prefixes model errors with the config field they came from.
fn at<T>(field: impl std::fmt::Display, r: hypwalk::Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Input(m) => RunError::Config(format!("{field}: {m}")),
        other => RunError::Model(other),
    })
}

pub fn execute(config: &ExperimentConfig, executor: Executor) -> Result<ExperimentResult> {
    let exp = &config.experiment;
    match &config.model {
        ModelConfig::Free { rank } => {
            let g = at("model.rank", FreeGroup::new(*rank))?;
            let mu = free_measure(&g, config)?;
            let run = settings(config, executor)?;
            if let Some(r) = generic(&g, &mu, exp, &run)? {
                return Ok(r);
            }
            free_only(&g, &mu, exp, &run)
        }
        ModelConfig::Semidirect { rank, kernel, actions } => {
            let g = semidirect(*rank, kernel, actions.as_deref())?;
            let mu = semidirect_measure(&g, config)?;
            let run = settings(config, executor)?;
            if let Some(r) = generic(&g, &mu, exp, &run)? {
                return Ok(r);
            }
            Ok(match exp {
                ExperimentSpec::Acylindricity { .. } => at("experiment", stab_acylindricity(&g, &mu, &acylindricity(exp), &run))?,
                ExperimentSpec::Characteristic { n_grid, tolerance, expected_index } => {
                    let mut spec = CharacteristicSpec::new(n_grid.clone());
                    set(&mut spec.tolerance, *tolerance);
                    spec.expected_index = *expected_index;
                    at("experiment", characteristic_index_experiment(&g, &mu, &spec, &run))?
                }
                _ => return unavailable(exp, "semidirect"),
            })
        }
        ModelConfig::Cremona { prime, degree_cap, line_cap } => {
            let field = match prime {
                Some(p) => at("model.prime", PrimeField::new(*p))?,
                None => PrimeField::default(),
            };
            let mut group = CremonaGroup::new(field, degree_cap.unwrap_or(hypwalk::cremona::DEFAULT_DEGREE_CAP));
            if let Some(cap) = line_cap {
                group = group.with_line_cap(*cap);
            }
            if let ExperimentSpec::Composition { cases } = exp {
                return composition(&group, cases, config.seed);
            }
            let words = cremona_words(&group, config)?;
            let run = settings(config, executor)?;
            if let ExperimentSpec::DegreeGrowth { .. } = exp {
                return at("experiment", degree_growth_experiment(&group, &words, &degree_growth(exp), &run));
            }
            let mu = at("measure.support", words.map_support(|w| group.element(w.clone())))?;
            match generic(&group, &mu, exp, &run)? {
                Some(r) => Ok(r),
                None => unavailable(exp, "cremona"),
            }
        }
        ModelConfig::Monomial => {
            let group = MonomialGroup;
            let entries = support_entries(config, "monomial", &["matrix"])?;
            let mut elements = Vec::new();
            for (i, e) in entries.iter().enumerate() {
                let m = e.matrix.ok_or_else(|| RunError::Config(format!("measure.support[{i}].matrix: required")))?;
                elements.push(at(format!("measure.support[{i}].matrix"), MonomialMap::new(m))?);
            }
            let tags = tags(entries, |i| format!("{:?}", elements[i].matrix()));
            let mu = build_measure(&group, measure_config(config)?, elements, tags)?;
            let run = settings(config, executor)?;
            match generic(&group, &mu, exp, &run)? {
                Some(r) => Ok(r),
                None => unavailable(exp, "monomial"),
            }
        }
    }
}

fn unavailable<T>(exp: &ExperimentSpec, model: &str) -> Result<T> {
    invalid(format!("experiment.kind: `{}` is not available for the {model} model", exp.name()))
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn settings(config: &ExperimentConfig, executor: Executor) -> Result<RunSettings> {
    match config.trials {
        Some(t) if t > 0 => Ok(RunSettings::new(config.seed, t).with_executor(executor)),
        Some(_) => invalid("trials: must be positive"),
        None => invalid(format!("trials: required for experiment `{}`", config.experiment.name())),
    }
}

/// Experiments that only need the action.
fn generic<O: ActionOracle>(
    oracle: &O,
    mu: &FiniteMeasure<O::Element>,
    exp: &ExperimentSpec,
    run: &RunSettings,
) -> Result<Option<ExperimentResult>> {
    let r = match exp {
        ExperimentSpec::Drift { n, expected, tolerance } => {
            let mut spec = DriftSpec::new(*n);
            spec.expected = *expected;
            set(&mut spec.tolerance, *tolerance);
            estimate_drift(oracle, mu, &spec, run)
        }
        ExperimentSpec::Translation { n_grid, budget, reference, tolerance, residual } => {
            let mut spec = TranslationSpec::new(n_grid.clone());
            set(&mut spec.budget, *budget);
            spec.reference = *reference;
            set(&mut spec.tolerance, *tolerance);
            set(&mut spec.residual, *residual);
            translation_growth(oracle, mu, &spec, run)
        }
        ExperimentSpec::GromovTail { n_grid, epsilon, max_frequency, median_slack } => {
            let mut spec = GromovTailSpec::new(n_grid.clone());
            set(&mut spec.epsilon, *epsilon);
            set(&mut spec.max_frequency, *max_frequency);
            set(&mut spec.median_slack, *median_slack);
            gromov_tail(oracle, mu, &spec, run)
        }
        _ => return Ok(None),
    };
    at("experiment", r).map(Some)
}

fn free_only(g: &FreeGroup, mu: &FiniteMeasure<Word>, exp: &ExperimentSpec, run: &RunSettings) -> Result<ExperimentResult> {
    let r = match exp {
        ExperimentSpec::Shadow {
            targets,
            slack,
            walk_length,
            exact,
            exact_harmonic,
            z,
            expected_rate,
            rate_tolerance,
        } => {
            let words = targets
                .iter()
                .enumerate()
                .map(|(i, t)| at(format!("experiment.targets[{i}]"), g.parse(t)))
                .collect::<Result<Vec<_>>>()?;
            let mut spec = ShadowSpec::new(words.clone());
            set(&mut spec.slack, *slack);
            set(&mut spec.walk_length, *walk_length);
            set(&mut spec.z, *z);
            spec.expected_rate = *expected_rate;
            set(&mut spec.rate_tolerance, *rate_tolerance);
            spec.exact = match (exact, exact_harmonic) {
                (Some(_), true) => return invalid("experiment.exact: conflicts with exact_harmonic"),
                (Some(v), false) => Some(v.clone()),
                (None, true) => {
                    let mut v = Vec::new();
                    for w in &words {
                        let m = at("experiment.exact_harmonic", exact_shadow_measure(g, mu, w.len() as u32))?;
                        v.push(*m.numer() as f64 / *m.denom() as f64);
                    }
                    Some(v)
                }
                (None, false) => None,
            };
            shadow_decay(g, mu, &spec, run)
        }
        ExperimentSpec::AxisMatch { core, length, n_grid, min_frequency } => {
            let core = at("experiment.core", g.parse(core))?;
            let mut spec = MatchSpec::new(MatchKind::Axis { core, length: *length }, n_grid.clone());
            set(&mut spec.min_frequency, *min_frequency);
            match_census(g, mu, &spec, run)
        }
        ExperimentSpec::NonMatch { pattern, lengths, n_grid, max_frequency } => {
            let pattern = match pattern {
                Some(p) => Some(at("experiment.pattern", g.parse(p))?),
                None => None,
            };
            let kind = MatchKind::NonMatch { pattern, lengths: lengths.clone() };
            let mut spec = MatchSpec::new(kind, n_grid.clone());
            set(&mut spec.max_frequency, *max_frequency);
            match_census(g, mu, &spec, run)
        }
        ExperimentSpec::SelfMatch { fraction, n_grid } => {
            let spec = MatchSpec::new(MatchKind::SelfMatch { fraction: *fraction }, n_grid.clone());
            match_census(g, mu, &spec, run)
        }
        ExperimentSpec::Acylindricity { .. } => stab_acylindricity(g, mu, &acylindricity(exp), run),
        ExperimentSpec::Cancellation { n, a, epsilon, search_radius, min_frequency } => {
            let mut spec = CancellationSpec::new(*n);
            set(&mut spec.a, *a);
            set(&mut spec.epsilon, *epsilon);
            set(&mut spec.search_radius, *search_radius);
            set(&mut spec.min_frequency, *min_frequency);
            small_cancellation_experiment(g, mu, &spec, run)
        }
        _ => return unavailable(exp, "free"),
    };
    at("experiment", r)
}

fn acylindricity(exp: &ExperimentSpec) -> AcylindricitySpec {
    let ExperimentSpec::Acylindricity { k, n_grid, cap, quantile } = exp else {
        unreachable!("called for acylindricity only")
    };
    let mut spec = AcylindricitySpec::new(*k, n_grid.clone());
    set(&mut spec.cap, *cap);
    set(&mut spec.quantile, *quantile);
    spec
}

fn degree_growth(exp: &ExperimentSpec) -> DegreeGrowthSpec {
    let ExperimentSpec::DegreeGrowth {
        n_grid,
        iterate_budget,
        subsample,
        max_gap,
        require_positive,
        expected_rate,
        prime_attempts,
    } = exp
    else {
        unreachable!("called for degree growth only")
    };
    let mut spec = DegreeGrowthSpec::new(n_grid.clone());
    set(&mut spec.iterate_budget, *iterate_budget);
    set(&mut spec.subsample, *subsample);
    set(&mut spec.max_gap, *max_gap);
    spec.require_positive = *require_positive;
    spec.expected_rate = *expected_rate;
    set(&mut spec.prime_attempts, *prime_attempts);
    spec
}

fn semidirect(rank: usize, kernel: &KernelConfig, actions: Option<&[ActionConfig]>) -> Result<SemidirectGroup> {
    let torsion = match kernel {
        KernelConfig::Cyclic { order } => at("model.kernel.order", FiniteGroup::cyclic(*order))?,
        KernelConfig::Dihedral { n } => at("model.kernel.n", FiniteGroup::dihedral(*n))?,
    };
    let Some(actions) = actions else {
        return at("model", SemidirectGroup::direct(rank, torsion));
    };
    let mut autos = Vec::new();
    for (i, a) in actions.iter().enumerate() {
        let field = format!("model.actions[{i}]");
        autos.push(match a {
            ActionConfig::Named(NamedAction::Identity) => Automorphism::identity(torsion.order()),
            ActionConfig::Named(NamedAction::Inversion) => at(field, Automorphism::inversion(&torsion))?,
            ActionConfig::Images(images) => at(field, Automorphism::new(&torsion, images.clone()))?,
        });
    }
    at("model.actions", SemidirectGroup::new(rank, torsion, autos))
}

fn measure_config(config: &ExperimentConfig) -> Result<&MeasureConfig> {
    config
        .measure
        .as_ref()
        .ok_or_else(|| RunError::Config(format!("measure: required for experiment `{}`", config.experiment.name())))
}

/// The explicit support, after checking that each entry only uses the
/// element fields that make sense for the model.
fn support_entries<'a>(config: &'a ExperimentConfig, model: &str, allowed: &[&str]) -> Result<&'a [SupportEntry]> {
    let m = measure_config(config)?;
    if m.uniform {
        return invalid(format!("measure.uniform: not available for the {model} model; list the support"));
    }
    if m.support.is_empty() {
        return invalid("measure.support: empty");
    }
    for (i, e) in m.support.iter().enumerate() {
        let present = [
            ("word", e.word.is_some()),
            ("torsion", e.torsion.is_some()),
            ("letters", e.letters.is_some()),
            ("matrix", e.matrix.is_some()),
        ];
        if let Some((name, _)) = present.iter().find(|(name, p)| *p && !allowed.contains(name)) {
            return invalid(format!("measure.support[{i}].{name}: not used by the {model} model"));
        }
    }
    Ok(&m.support)
}

fn tags(entries: &[SupportEntry], default: impl Fn(usize) -> String) -> Vec<String> {
    entries
        .iter()
        .enumerate()
        .map(|(i, e)| e.tag.clone().unwrap_or_else(|| default(i)))
        .collect()
}

/// Exact weights, or `None` for uniform.
fn weights(m: &MeasureConfig) -> Result<Option<Vec<Ratio<u64>>>> {
    let given = m.support.iter().filter(|e| e.weight.is_some()).count();
    if given == 0 {
        return Ok(None);
    }
    if given != m.support.len() {
        return invalid("measure.support[].weight: give a weight for every entry or for none");
    }
    let mut out = Vec::new();
    for (i, e) in m.support.iter().enumerate() {
        let text = e.weight.as_deref().unwrap_or_default();
        let w: Ratio<u64> = text
            .trim()
            .parse()
            .map_err(|_| RunError::Config(format!("measure.support[{i}].weight: `{text}` is not a rational such as \"1/4\"")))?;
        if w == Ratio::from_integer(0) {
            return invalid(format!("measure.support[{i}].weight: must be positive"));
        }
        out.push(w);
    }
    let total = out.iter().fold(Ratio::<u128>::from_integer(0), |acc, w| {
        acc + Ratio::new(*w.numer() as u128, *w.denom() as u128)
    });
    if total != Ratio::from_integer(1) {
        return invalid(format!("measure.support[].weight: weights sum to {total}, expected exactly 1"));
    }
    Ok(Some(out))
}

fn finish_flags<E>(m: &MeasureConfig, mut mu: FiniteMeasure<E>) -> FiniteMeasure<E> {
    mu.flags.attested_non_elementary = m.attest_non_elementary;
    mu.flags.attested_wpd = m.attest_wpd;
    mu
}

fn build_measure<O: ActionOracle>(
    oracle: &O,
    m: &MeasureConfig,
    elements: Vec<O::Element>,
    tags: Vec<String>,
) -> Result<FiniteMeasure<O::Element>>
where
    O::Element: PartialEq,
{
    let mu = match weights(m)? {
        Some(w) => at("measure.support", FiniteMeasure::new(elements, tags, w))?,
        None => at("measure.support", FiniteMeasure::uniform(elements, tags))?,
    };
    let mu = at("measure.symmetric", mu.with_verified_flags(oracle, m.symmetric))?;
    Ok(finish_flags(m, mu))
}

fn uniform_or<O: ActionOracle>(
    oracle: &O,
    m: &MeasureConfig,
    uniform: impl FnOnce() -> hypwalk::Result<FiniteMeasure<O::Element>>,
) -> Result<Option<FiniteMeasure<O::Element>>>
where
    O::Element: PartialEq,
{
    if !m.uniform {
        return Ok(None);
    }
    if !m.support.is_empty() {
        return invalid("measure.support: conflicts with measure.uniform");
    }
    let mu = at("measure.uniform", uniform())?;
    let mu = at("measure.symmetric", mu.with_verified_flags(oracle, m.symmetric))?;
    Ok(Some(finish_flags(m, mu)))
}

fn free_measure(g: &FreeGroup, config: &ExperimentConfig) -> Result<FiniteMeasure<Word>> {
    let m = measure_config(config)?;
    if let Some(mu) = uniform_or(g, m, || Ok(g.uniform_measure()))? {
        return Ok(mu);
    }
    let entries = support_entries(config, "free", &["word"])?;
    let mut elements = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        let field = format!("measure.support[{i}].word");
        let Some(word) = &e.word else {
            return invalid(format!("{field}: required"));
        };
        elements.push(at(field, g.parse(word))?);
    }
    let tags = tags(entries, |i| elements[i].to_string());
    build_measure(g, m, elements, tags)
}

fn semidirect_measure(g: &SemidirectGroup, config: &ExperimentConfig) -> Result<FiniteMeasure<hypwalk::free::ExtendedElement>> {
    let m = measure_config(config)?;
    if let Some(mu) = uniform_or(g, m, || g.uniform_measure())? {
        return Ok(mu);
    }
    let entries = support_entries(config, "semidirect", &["word", "torsion"])?;
    let mut elements = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        let word = at(format!("measure.support[{i}].word"), Word::parse(e.word.as_deref().unwrap_or("")))?;
        elements.push(at(format!("measure.support[{i}]"), g.element(word, e.torsion.unwrap_or(0)))?);
    }
    let tags = tags(entries, |i| elements[i].to_string());
    build_measure(g, m, elements, tags)
}

fn letter(c: &LetterConfig, field: &str) -> Result<Letter> {
    let (generator, inverse) = match *c {
        LetterConfig::Sigma => (Generator::Sigma, false),
        LetterConfig::Henon { n, inverse } => (Generator::Henon { n }, inverse),
        LetterConfig::Linear { entries: e, inverse } => (
            Generator::Linear {
                matrix: [[e[0], e[1], e[2]], [e[3], e[4], e[5]], [e[6], e[7], e[8]]],
            },
            inverse,
        ),
        LetterConfig::Monomial { entries: e, inverse } => (
            Generator::Monomial {
                matrix: [[e[0], e[1]], [e[2], e[3]]],
            },
            inverse,
        ),
    };
    let l = at(field, Letter::new(generator))?;
    Ok(if inverse { l.inverse() } else { l })
}

fn letters(cs: &[LetterConfig], field: &str) -> Result<Vec<Letter>> {
    if cs.is_empty() {
        return invalid(format!("{field}: empty word"));
    }
    cs.iter().enumerate().map(|(i, c)| letter(c, &format!("{field}[{i}]"))).collect()
}

fn word_tag(word: &[Letter]) -> String {
    word.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("*")
}

/// The measure on generator words; flags are verified on the group elements.
fn cremona_words(group: &CremonaGroup, config: &ExperimentConfig) -> Result<FiniteMeasure<Vec<Letter>>> {
    let m = measure_config(config)?;
    let entries = support_entries(config, "cremona", &["letters"])?;
    let mut support = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        let field = format!("measure.support[{i}].letters");
        let Some(cs) = &e.letters else {
            return invalid(format!("{field}: required"));
        };
        support.push(letters(cs, &field)?);
    }
    let tags = tags(entries, |i| word_tag(&support[i]));
    let words = match weights(m)? {
        Some(w) => at("measure.support", FiniteMeasure::new(support, tags, w))?,
        None => at("measure.support", FiniteMeasure::uniform(support, tags))?,
    };
    let elements = at("measure.support", words.map_support(|w| group.element(w.clone())))?;
    let elements = at("measure.symmetric", elements.with_verified_flags(group, m.symmetric))?;
    let mut words = words;
    words.flags = elements.flags;
    Ok(finish_flags(m, words))
}

/// Exact composition of each case, with the degree cross-checked by line
/// restriction. Cases over the degree cap count as truncated trials.
fn composition(group: &CremonaGroup, cases: &[CompositionCase], seed: u64) -> Result<ExperimentResult> {
    if cases.is_empty() {
        return invalid("experiment.cases: empty");
    }
    let field = group.field();
    let mut records = Vec::new();
    let mut truncated = Vec::new();
    let mut computed = Vec::new();
    for (i, case) in cases.iter().enumerate() {
        let word = letters(&case.letters, &format!("experiment.cases[{i}].letters"))?;
        let trial = i as u64;
        let n = word.len() as u64;
        let map = match RationalMapP2::from_word(field, &word, group.degree_cap()) {
            Ok(map) => map,
            Err(Error::Resource { message, raw_degree, sequence, .. }) => {
                truncated.push(TruncatedTrial { trial, step: n, message, raw_degree, sequence });
                computed.push(None);
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let line = at(format!("experiment.cases[{i}]"), degree_by_restriction(field, &word, group.line_cap()))?;
        let record = |observable: &str, value: f64| Record { trial, n, observable: observable.into(), value };
        records.push(record("degree", map.degree() as f64));
        records.push(record("restriction_degree", line as f64));
        records.push(record("identity", indicator(map.is_identity())));
        computed.push(Some((word, map.degree(), line, map.is_identity())));
    }
    let params = [
        ("cases".to_string(), cases.len().to_string()),
        ("prime".to_string(), field.p().to_string()),
        ("degree_cap".to_string(), group.degree_cap().to_string()),
    ]
    .into_iter()
    .collect();
    let mut result = ExperimentResult::new("composition", params, seed, cases.len() as u64, records);
    result.truncated = truncated;
    for (i, (case, c)) in cases.iter().zip(computed).enumerate() {
        let Some((word, degree, line, identity)) = c else {
            continue;
        };
        let name = word_tag(&word);
        result.check(
            format!("restriction_{i}"),
            format!("deg {name} by composition equals deg by line restriction ({line})"),
            degree as f64,
            degree as u64 == line,
        );
        if let Some(expected) = case.degree {
            result.check(format!("degree_{i}"), format!("deg {name} = {expected}"), degree as f64, degree == expected);
        }
        if let Some(expected) = case.identity {
            result.check(
                format!("identity_{i}"),
                format!("{name} is the identity: {expected}"),
                indicator(identity),
                identity == expected,
            );
        }
    }
    Ok(result.finish())
}

fn indicator(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}
