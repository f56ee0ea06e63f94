//! Experiment configuration files.
//!
//! A config names a model, a measure on it and one experiment. Unknown keys
//! are rejected everywhere; optional experiment parameters fall back to the
//! estimator defaults. The JSON schema in `schema/` is generated from these
//! types (`hypwalk schema`).

use std::path::PathBuf;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    /// Master seed; trial `t` uses a stream derived from `(seed, t)`.
    pub seed: u64,
    /// Number of independent trials. Required by every sampling experiment.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    /// Output directory; `--out` takes precedence. Not part of the config hash.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub model: ModelConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureConfig>,
    pub experiment: ExperimentSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelConfig {
    /// Free group of the given rank on its Cayley tree.
    Free { rank: usize },
    /// `F_rank ⋊ kernel`; generator `i` acts on the kernel by `actions[i]`.
    /// Omitting `actions` gives the direct product.
    Semidirect {
        rank: usize,
        kernel: KernelConfig,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        actions: Option<Vec<ActionConfig>>,
    },
    /// Plane Cremona group over a prime field.
    Cremona {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        prime: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree_cap: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        line_cap: Option<u64>,
    },
    /// Monomial maps, given by 2×2 integer matrices of determinant ±1.
    Monomial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum KernelConfig {
    Cyclic { order: usize },
    /// Dihedral group of order `2n`.
    Dihedral { n: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(untagged)]
pub enum ActionConfig {
    Named(NamedAction),
    /// Images of the kernel elements `0, 1, …` under the automorphism.
    Images(Vec<u32>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case")]
pub enum NamedAction {
    Identity,
    /// `a ↦ a⁻¹`; an automorphism only for abelian kernels.
    Inversion,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct MeasureConfig {
    /// Uniform measure on the standard generators and their inverses
    /// (free and semidirect models). Excludes `support`.
    #[serde(default)]
    pub uniform: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub support: Vec<SupportEntry>,
    /// Claimed symmetry; verified against the support.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<bool>,
    #[serde(default)]
    pub attest_non_elementary: bool,
    #[serde(default)]
    pub attest_wpd: bool,
}

/// One atom of the measure. Which element field applies depends on the
/// model: `word` (free), `word` and `torsion` (semidirect), `letters`
/// (cremona), `matrix` (monomial).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct SupportEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
    /// Exact rational weight such as `"1/4"`. Give all weights or none;
    /// none means uniform.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
    /// Word over `a, b, …` with capitals for inverses.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion: Option<u32>,
    /// `g₁ ∘ g₂ ∘ …` in the Cremona group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub letters: Option<Vec<LetterConfig>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<[[i64; 2]; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LetterConfig {
    Sigma,
    Henon {
        n: u32,
        #[serde(default)]
        inverse: bool,
    },
    /// Row-major 3×3 matrix.
    Linear {
        entries: [i64; 9],
        #[serde(default)]
        inverse: bool,
    },
    /// Row-major 2×2 exponent matrix.
    Monomial {
        entries: [i64; 4],
        #[serde(default)]
        inverse: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct CompositionCase {
    pub letters: Vec<LetterConfig>,
    /// Expected degree of the composed map.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ExperimentSpec {
    /// Exact composition of fixed words (cremona). Needs no measure.
    Composition { cases: Vec<CompositionCase> },
    Drift {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerance: Option<f64>,
    },
    /// Translation length against drift; without `reference` the drift of
    /// the same walks is used.
    Translation {
        n_grid: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        budget: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reference: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerance: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        residual: Option<bool>,
    },
    GromovTail {
        n_grid: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        epsilon: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_frequency: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        median_slack: Option<f64>,
    },
    /// Hitting frequencies of nested shadows (free model).
    Shadow {
        targets: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        slack: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        walk_length: Option<usize>,
        /// Exact frequencies to compare against, one per target.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        exact: Option<Vec<f64>>,
        /// Use the exact harmonic measure of the uniform walk instead.
        #[serde(default)]
        exact_harmonic: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        z: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected_rate: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rate_tolerance: Option<f64>,
    },
    AxisMatch {
        core: String,
        length: usize,
        n_grid: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        min_frequency: Option<f64>,
    },
    /// Without `pattern`, a reduced word of the largest length is drawn
    /// from the seed.
    NonMatch {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pattern: Option<String>,
        lengths: Vec<usize>,
        n_grid: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_frequency: Option<f64>,
    },
    SelfMatch { fraction: f64, n_grid: Vec<usize> },
    Acylindricity {
        k: usize,
        n_grid: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cap: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        quantile: Option<f64>,
    },
    Cancellation {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        epsilon: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        search_radius: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        min_frequency: Option<f64>,
    },
    Characteristic {
        n_grid: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerance: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected_index: Option<usize>,
    },
    DegreeGrowth {
        n_grid: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        iterate_budget: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        subsample: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_gap: Option<f64>,
        #[serde(default)]
        require_positive: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected_rate: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        prime_attempts: Option<u32>,
    },
}

impl ExperimentSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentSpec::Composition { .. } => "composition",
            ExperimentSpec::Drift { .. } => "drift",
            ExperimentSpec::Translation { .. } => "translation",
            ExperimentSpec::GromovTail { .. } => "gromov_tail",
            ExperimentSpec::Shadow { .. } => "shadow",
            ExperimentSpec::AxisMatch { .. } => "axis_match",
            ExperimentSpec::NonMatch { .. } => "non_match",
            ExperimentSpec::SelfMatch { .. } => "self_match",
            ExperimentSpec::Acylindricity { .. } => "acylindricity",
            ExperimentSpec::Cancellation { .. } => "cancellation",
            ExperimentSpec::Characteristic { .. } => "characteristic",
            ExperimentSpec::DegreeGrowth { .. } => "degree_growth",
        }
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    /// The config as embedded in reports and hashed: everything except the
    /// output location.
    pub fn effective(&self) -> ExperimentConfig {
        ExperimentConfig {
            output: None,
            ..self.clone()
        }
    }
}

pub fn schema() -> schemars::Schema {
    schemars::schema_for!(ExperimentConfig)
}
