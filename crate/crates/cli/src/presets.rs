//! Bundled experiment configs, one per reference experiment.

use crate::config::ExperimentConfig;

pub const PRESETS: &[(&str, &str)] = &[
    ("acylindricity-f2", include_str!("../presets/acylindricity-f2.toml")),
    ("axis-match-f2", include_str!("../presets/axis-match-f2.toml")),
    ("char-index-control-z3", include_str!("../presets/char-index-control-z3.toml")),
    ("char-index-z3", include_str!("../presets/char-index-z3.toml")),
    ("cremona-mixed", include_str!("../presets/cremona-mixed.toml")),
    ("drift-f2", include_str!("../presets/drift-f2.toml")),
    ("gromov-tail-f2", include_str!("../presets/gromov-tail-f2.toml")),
    ("henon-point-mass", include_str!("../presets/henon-point-mass.toml")),
    ("non-match-f2", include_str!("../presets/non-match-f2.toml")),
    ("self-match-f2", include_str!("../presets/self-match-f2.toml")),
    ("shadow-f2", include_str!("../presets/shadow-f2.toml")),
    ("sigma-involution", include_str!("../presets/sigma-involution.toml")),
    ("small-cancellation-f2", include_str!("../presets/small-cancellation-f2.toml")),
    ("translation-f2", include_str!("../presets/translation-f2.toml")),
];

pub fn find(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn load(name: &str) -> Option<ExperimentConfig> {
    find(name).map(|text| ExperimentConfig::parse(text).unwrap_or_else(|e| panic!("preset {name}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_parses_and_is_described() {
        for (name, _) in PRESETS {
            let c = load(name).unwrap();
            assert!(c.description.is_some(), "{name}");
        }
    }
}
