//! Per-trial random number generators.
//!
//! Trial `t` of a run with master seed `s` draws from ChaCha8 keyed by
//! `ChaCha8Rng::seed_from_u64(s)` (the 256-bit key is expanded from `s`
//! with PCG32, as `rand_core` specifies) on stream `t`. Streams of one key
//! are independent, so a trial's draws depend only on `(s, t)`, never on
//! how many trials run or in which order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for the increments of trial `trial`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A second generator for the same trial, `purpose · 2⁶⁴` words into the
/// trial's stream, out of reach of any walk. `purpose` must be nonzero.
pub fn auxiliary_rng(seed: u64, trial: u64, purpose: u64) -> ChaCha8Rng {
    assert!(purpose > 0, "purpose 0 is the walk itself");
    let mut rng = trial_rng(seed, trial);
    rng.set_word_pos((purpose as u128) << 64);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let draw = |mut r: ChaCha8Rng| (0..8).map(|_| r.random::<u64>()).collect::<Vec<_>>();
        assert_eq!(draw(trial_rng(7, 3)), draw(trial_rng(7, 3)));
        assert_ne!(draw(trial_rng(7, 3)), draw(trial_rng(7, 4)));
        assert_ne!(draw(trial_rng(7, 3)), draw(trial_rng(8, 3)));
        assert_ne!(draw(trial_rng(7, 3)), draw(auxiliary_rng(7, 3, 1)));
    }
}
