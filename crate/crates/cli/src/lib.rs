//! Config-driven runner for hypwalk experiments: TOML in, `report.json` and
//! per-observable CSV files out.

pub mod config;
pub mod presets;
pub mod report;
pub mod runner;
