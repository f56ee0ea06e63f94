//! The Cremona group of the plane: generators, exact composition with
//! cancellation, degrees, dynamical degrees and monomial maps.

pub mod generator;
pub mod group;
pub mod line;
pub mod map;
pub mod monomial;

pub use generator::{Generator, Letter};
pub use group::{classify_degree_sequence, CremonaElement, CremonaGroup};
pub use line::{power_degrees_by_restriction};
pub use line::{degree_by_restriction, dynamical_degree_by_restriction, DEFAULT_LINE_CAP};
pub use map::{
    cremona_involution, henon, linear, monomial, DynamicalDegree, RationalMapP2,
    DEFAULT_DEGREE_CAP,
};
pub use monomial::{monomial_dynamical_degree, MonomialGroup, MonomialMap};
