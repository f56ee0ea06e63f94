//! Seeded random walks over any action oracle.

mod path;
pub mod rng;

pub use path::{
    path_observables, reflected_path, run_walk, sample_path, Observable, Retention, SamplePath,
    Truncation, WalkOutcome,
};
pub use rng::{auxiliary_rng, trial_rng};
