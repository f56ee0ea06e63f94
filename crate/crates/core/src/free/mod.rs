//! Free groups and their finite extensions acting on Cayley trees.

pub mod finite;
pub mod matching;
pub mod overlap;
pub mod semidirect;
pub mod tree;
pub mod word;

pub use finite::{Automorphism, FiniteGroup};
pub use matching::{contains_translate, longest_self_match, match_detect, self_match_detect};
pub use overlap::{axis_overlap_delta, OverlapBound};
pub use semidirect::{ExtendedElement, SemidirectGroup};
pub use tree::{exact_shadow_measure, FreeGroup, DEFAULT_CENSUS_CAP};
pub use word::{CyclicWord, Letter, Word};
