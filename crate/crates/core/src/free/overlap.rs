//! Fellow-travelling constant of a loxodromic tree element.
//!
//! The axis `A` of `w = p·ρᵐ·p⁻¹` (with `ρ` a primitive cyclically reduced
//! root) is the line `p·{v_t}` where `v_t` is the prefix of length `t` of
//! `ρ^∞`. A translate `h·A ≠ A` that shares an edge with `A` runs along it
//! either with the same orientation, in which case the labels satisfy
//! `ρ[t] = ρ[t + δ]` along the overlap for a fixed shift `δ ≢ 0`, or with
//! the opposite orientation, in which case `ρ[t] = ρ[σ − t]⁻¹` for a fixed
//! `σ`. Overlaps are therefore maximal runs in these periodic agreement
//! patterns, and each run comes with explicit conjugators
//! `h = p·v_t·v_s⁻¹·p⁻¹` realizing it.

use super::word::{Letter, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapBound {
    /// Longest overlap `diam(A ∩ h·A)` over `|h| ≤ radius`, `h ∉ E(w)`.
    pub delta: usize,
    /// Whether `delta` is the fellow-travelling constant itself, i.e. no
    /// conjugator of any length produces a longer overlap.
    pub certified: bool,
    /// The unrestricted supremum over all `h ∉ E(w)`.
    pub sup_overlap: usize,
    /// A shortest conjugator realizing `delta`, if `delta > 0`.
    pub witness: Option<Word>,
}

#[derive(Debug, Clone, Copy)]
enum Alignment {
    /// `h·A` reads `ρ[t + shift]` at `A`'s vertex `t`.
    Shift(i64),
    /// `h·A` runs backwards, edge `t` of `A` matching edge `sum − t`.
    Reverse(i64),
}

#[derive(Debug, Clone, Copy)]
struct Run {
    start: i64,
    len: usize,
    alignment: Alignment,
}

fn at(rho: &[Letter], t: i64) -> Letter {
    rho[t.rem_euclid(rho.len() as i64) as usize]
}

/// The vertex `v_t` as a word.
fn vertex(rho: &[Letter], t: i64) -> Word {
    if t >= 0 {
        Word::from_letters((0..t).map(|i| at(rho, i)))
    } else {
        Word::from_letters((1..=-t).map(|i| -at(rho, -i)))
    }
}

/// Maximal cyclic runs of `true` in a pattern that is not all `true`.
fn cyclic_runs(pattern: &[bool]) -> Vec<(usize, usize)> {
    let n = pattern.len();
    let Some(anchor) = pattern.iter().position(|&b| !b) else {
        return Vec::new();
    };
    let mut runs = Vec::new();
    let mut i = 1;
    while i <= n {
        let idx = (anchor + i) % n;
        if pattern[idx] {
            let start = anchor + i;
            let mut len = 0;
            while pattern[(start + len) % n] {
                len += 1;
            }
            runs.push((start % n, len));
            i += len;
        } else {
            i += 1;
        }
    }
    runs
}

fn all_runs(rho: &[Letter]) -> Vec<Run> {
    let n = rho.len() as i64;
    let mut runs = Vec::new();
    for shift in 1..n {
        let pattern: Vec<bool> = (0..n).map(|t| at(rho, t) == at(rho, t + shift)).collect();
        runs.extend(cyclic_runs(&pattern).into_iter().map(|(start, len)| Run {
            start: start as i64,
            len,
            alignment: Alignment::Shift(shift),
        }));
    }
    for sum in 0..n {
        let pattern: Vec<bool> = (0..n).map(|t| at(rho, t) == -at(rho, sum - t)).collect();
        runs.extend(cyclic_runs(&pattern).into_iter().map(|(start, len)| Run {
            start: start as i64,
            len,
            alignment: Alignment::Reverse(sum),
        }));
    }
    runs.sort_by_key(|r| std::cmp::Reverse(r.len));
    runs
}

/// Shortest conjugator of length at most `limit` whose translate of the
/// axis contains some copy `ρᵏ·(run)` of the run.
fn shortest_conjugator(rho: &[Letter], prefix: &Word, run: Run, limit: usize) -> Option<Word> {
    let n = rho.len() as i64;
    let limit = limit.min(i64::MAX as usize / 4) as i64;
    let slack = 2 * prefix.len() as i64;
    let prefix_inv = prefix.inverse();
    let mut best: Option<Word> = None;
    let bound = |best: &Option<Word>| best.as_ref().map_or(limit, |h| (h.len() as i64).min(limit)) + slack;

    // Conjugators for the copy of the run at distance D from v_0 have
    // length at least D - 2|p|; D is V-shaped in k.
    let copy_distance = |k: i64| segment_distance(run.start + k * n, run.len as i64);
    let k0 = nearest(-run.start.div_euclid(n), copy_distance);
    for_each_outward(k0, copy_distance, |k, d| {
        if d > bound(&best) {
            return false;
        }
        let lo = run.start + k * n;
        let t = 0i64.clamp(lo, lo + run.len as i64);
        // v_t is carried onto the translate's vertex v_s; other choices of
        // s differ by powers of ρ, and |v_t·v_s⁻¹| ≥ |t + sign·s|.
        let (s0, sign) = match run.alignment {
            Alignment::Shift(shift) => (t + shift, -1),
            Alignment::Reverse(sum) => (sum + 1 - t, 1),
        };
        let spread = |j: i64| (t + sign * (s0 + j * n)).abs();
        let vt = vertex(rho, t);
        let j0 = nearest(-(t + sign * s0) * sign / n, spread);
        for_each_outward(j0, spread, |j, d| {
            if d > bound(&best) {
                return false;
            }
            let s = s0 + j * n;
            let h = prefix
                .concat(&vt)
                .concat(&vertex(rho, s).inverse())
                .concat(&prefix_inv);
            if h.len() as i64 <= limit && best.as_ref().is_none_or(|b| h.len() < b.len()) {
                best = Some(h);
            }
            true
        });
        true
    });
    best
}

/// The minimizer of a V-shaped function near `guess`.
fn nearest(guess: i64, f: impl Fn(i64) -> i64) -> i64 {
    let mut k = guess;
    while f(k - 1) < f(k) {
        k -= 1;
    }
    while f(k + 1) < f(k) {
        k += 1;
    }
    k
}

/// Calls `visit(k, f(k))` for `k = centre, centre + 1, …` and then
/// `centre − 1, centre − 2, …`, leaving each direction as soon as `visit`
/// returns false. Meant for `f` V-shaped with minimum at `centre`.
fn for_each_outward(centre: i64, f: impl Fn(i64) -> i64, mut visit: impl FnMut(i64, i64) -> bool) {
    let mut k = centre;
    while visit(k, f(k)) {
        k += 1;
    }
    let mut k = centre - 1;
    while visit(k, f(k)) {
        k -= 1;
    }
}

fn segment_distance(lo: i64, len: i64) -> i64 {
    let hi = lo + len;
    if lo > 0 {
        lo
    } else if hi < 0 {
        -hi
    } else {
        0
    }
}

/// Longest overlap between the axis of `w` and its translates `h·axis(w)`
/// with `|h| ≤ search_radius` and `h ∉ E(w)`, in edges.
pub fn axis_overlap_delta(w: &Word, search_radius: usize) -> Result<OverlapBound> {
    let cyclic = w.cyclic_reduce();
    if cyclic.core.is_empty() {
        return Err(Error::input("axis overlap needs a loxodromic element"));
    }
    let root = cyclic.root();
    let rho = root.letters();
    let runs = all_runs(rho);
    let sup_overlap = runs.first().map_or(0, |r| r.len);
    for run in &runs {
        if let Some(h) = shortest_conjugator(rho, &cyclic.prefix, *run, search_radius) {
            return Ok(OverlapBound {
                delta: run.len,
                certified: run.len == sup_overlap,
                sup_overlap,
                witness: Some(h),
            });
        }
    }
    Ok(OverlapBound {
        delta: 0,
        certified: sup_overlap == 0,
        sup_overlap,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(axis_overlap_delta(&w("ab"), 4).unwrap().delta, 0);
        let aab = axis_overlap_delta(&w("aab"), 4).unwrap();
        assert_eq!(aab.delta, 1);
        assert!(aab.certified);
        assert_eq!(axis_overlap_delta(&w("aaaaa"), 4).unwrap().delta, 0);
        let ab10 = axis_overlap_delta(&w("ab").pow(10), 4).unwrap();
        assert_eq!((ab10.delta, ab10.certified), (0, true));
        assert!(axis_overlap_delta(&Word::identity(), 4).is_err());
    }

    #[test]
    fn vertices_walk_the_axis() {
        let rho = w("aab");
        assert_eq!(vertex(rho.letters(), 4), w("aaba"));
        assert_eq!(vertex(rho.letters(), -2), w("BA"));
    }

    #[test]
    fn runs_wrap_around() {
        assert_eq!(cyclic_runs(&[true, false, true, true]), vec![(2, 3)]);
        assert!(cyclic_runs(&[true, true]).is_empty());
    }
}
