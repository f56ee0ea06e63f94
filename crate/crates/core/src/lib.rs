//! Random walks on groups acting on Gromov-hyperbolic spaces.
//!
//! Models implement [`geometry::ActionOracle`]: free groups on their Cayley
//! trees ([`free`]), finite extensions of free groups, and the plane Cremona
//! group with exact polynomial composition over a prime field ([`cremona`],
//! [`poly`]). [`walk`] samples seeded random products and [`estimators`]
//! turns them into reproducible experiments with self-auditing reports.

pub mod cremona;
pub mod error;
pub mod estimators;
pub mod exec;
pub mod free;
pub mod geometry;
pub mod measure;
pub mod poly;
pub mod stats;
pub mod walk;

pub use error::{Error, Result};

/// Library version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
