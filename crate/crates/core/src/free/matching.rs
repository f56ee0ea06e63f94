//! Matches between geodesic segments on the Cayley tree, decided on labels.
//!
//! With `K = 0` a match between `[x, w·x]` and a translate of another
//! geodesic is a common factor of their labels, read forwards or inverted.
//! All searches run through a suffix automaton.

use super::word::{CyclicWord, Letter, Word, MAX_RANK};
use crate::error::{Error, Result};

const SEPARATOR: usize = 2 * MAX_RANK + 1;
const ALPHABET: usize = SEPARATOR + 1;
const NONE: u32 = u32::MAX;

fn symbol(l: Letter) -> usize {
    (l as isize + MAX_RANK as isize) as usize
}

#[derive(Clone, Copy, Default)]
struct Endpos {
    min: Option<usize>,
    max: Option<usize>,
}

impl Endpos {
    fn add(&mut self, pos: usize) {
        self.min = Some(self.min.map_or(pos, |m| m.min(pos)));
        self.max = Some(self.max.map_or(pos, |m| m.max(pos)));
    }

    fn merge(&mut self, other: Endpos) {
        if let Some(m) = other.min {
            self.add(m);
        }
        if let Some(m) = other.max {
            self.add(m);
        }
    }
}

struct State {
    len: usize,
    link: u32,
    next: [u32; ALPHABET],
}

/// Suffix automaton over `first # second`, recording for every state the
/// extreme end positions of its occurrences inside each part (positions in
/// `second` are relative to its start).
struct SuffixAutomaton {
    states: Vec<State>,
    first: Vec<Endpos>,
    second: Vec<Endpos>,
}

impl SuffixAutomaton {
    fn new(first: &[Letter], second: &[Letter]) -> Self {
        let mut sam = SuffixAutomaton {
            states: vec![State {
                len: 0,
                link: NONE,
                next: [NONE; ALPHABET],
            }],
            first: Vec::new(),
            second: Vec::new(),
        };
        let total = first.len() + 1 + second.len();
        let mut owner = Vec::with_capacity(total);
        let mut last = 0u32;
        let symbols = first
            .iter()
            .map(|&l| symbol(l))
            .chain(std::iter::once(SEPARATOR))
            .chain(second.iter().map(|&l| symbol(l)));
        for c in symbols {
            last = sam.extend(last, c);
            owner.push(last);
        }
        let n = sam.states.len();
        sam.first = vec![Endpos::default(); n];
        sam.second = vec![Endpos::default(); n];
        for (pos, &s) in owner.iter().enumerate() {
            if pos < first.len() {
                sam.first[s as usize].add(pos);
            } else if pos > first.len() {
                sam.second[s as usize].add(pos - first.len() - 1);
            }
        }
        let mut order: Vec<usize> = (1..n).collect();
        order.sort_unstable_by_key(|&s| std::cmp::Reverse(sam.states[s].len));
        for s in order {
            let link = sam.states[s].link as usize;
            let (f, g) = (sam.first[s], sam.second[s]);
            sam.first[link].merge(f);
            sam.second[link].merge(g);
        }
        sam
    }

    fn extend(&mut self, last: u32, c: usize) -> u32 {
        let cur = self.states.len() as u32;
        self.states.push(State {
            len: self.states[last as usize].len + 1,
            link: 0,
            next: [NONE; ALPHABET],
        });
        let mut p = last;
        while p != NONE && self.states[p as usize].next[c] == NONE {
            self.states[p as usize].next[c] = cur;
            p = self.states[p as usize].link;
        }
        if p == NONE {
            return cur;
        }
        let q = self.states[p as usize].next[c];
        if self.states[p as usize].len + 1 == self.states[q as usize].len {
            self.states[cur as usize].link = q;
            return cur;
        }
        let clone = self.states.len() as u32;
        self.states.push(State {
            len: self.states[p as usize].len + 1,
            link: self.states[q as usize].link,
            next: self.states[q as usize].next,
        });
        while p != NONE && self.states[p as usize].next[c] == q {
            self.states[p as usize].next[c] = clone;
            p = self.states[p as usize].link;
        }
        self.states[q as usize].link = clone;
        self.states[cur as usize].link = clone;
        cur
    }

    /// Length of the longest factor of `text` that is also a factor of the
    /// indexed string.
    fn longest_common_factor(&self, text: &[Letter]) -> usize {
        let (mut v, mut l, mut best) = (0usize, 0usize, 0usize);
        for &letter in text {
            let c = symbol(letter);
            while v != 0 && self.states[v].next[c] == NONE {
                v = self.states[v].link as usize;
                l = self.states[v].len;
            }
            if self.states[v].next[c] != NONE {
                v = self.states[v].next[c] as usize;
                l += 1;
            }
            best = best.max(l);
        }
        best
    }
}

/// Whether some length-`l` factor of `path` is a factor of `core^∞` or of
/// `(core⁻¹)^∞`. A trivial core has no axis and never matches.
pub fn match_detect(path: &Word, axis: &CyclicWord, l: usize) -> Result<bool> {
    if l == 0 {
        return Err(Error::input("match length must be >= 1"));
    }
    let core = axis.core.letters();
    if core.is_empty() || path.len() < l {
        return Ok(false);
    }
    // Every length-l factor of core^∞ already occurs in core^reps.
    let reps = l.div_ceil(core.len()) + 1;
    let forward = axis.core.pow(reps as i64);
    let backward = forward.inverse();
    let sam = SuffixAutomaton::new(forward.letters(), backward.letters());
    Ok(sam.longest_common_factor(path.letters()) >= l)
}

/// Whether `pattern` or its inverse occurs as a factor of `path`, i.e. the
/// geodesic `[x, path·x]` contains a translate of the geodesic labelled
/// `pattern` in either orientation.
pub fn contains_translate(path: &Word, pattern: &Word) -> bool {
    if pattern.is_empty() {
        return true;
    }
    let sam = SuffixAutomaton::new(pattern.letters(), pattern.inverse().letters());
    sam.longest_common_factor(path.letters()) >= pattern.len()
}

/// Largest `L` for which the geodesic `[x, w·x]` has two disjoint
/// length-`L` subsegments with equal labels, or with one label the inverse
/// of the other. Zero if there is none.
pub fn longest_self_match(w: &Word) -> usize {
    let n = w.len();
    if n < 2 {
        return 0;
    }
    let inv = w.inverse();
    let sam = SuffixAutomaton::new(w.letters(), inv.letters());
    let mut best = 0;
    for (s, state) in sam.states.iter().enumerate().skip(1) {
        let (Some(min1), Some(max1)) = (sam.first[s].min, sam.first[s].max) else {
            continue;
        };
        // Same orientation: occurrences ending at min1 < max1 are disjoint
        // for lengths up to max1 - min1.
        best = best.max(state.len.min(max1 - min1));
        // Inverse orientation: an occurrence of u in w⁻¹ ending at f is an
        // occurrence of u⁻¹ in w starting at n - 1 - f.
        if let (Some(min2), Some(max2)) = (sam.second[s].min, sam.second[s].max) {
            if min1 + min2 + 2 <= n {
                best = best.max(state.len);
            }
            if max1 + max2 + 2 >= n {
                best = best.max(state.len.min((max1 + max2 + 2 - n) / 2));
            }
        }
    }
    best
}

/// `(L, 0)`-self-match: two disjoint length-`L` subsegments of `[x, w·x]`
/// related by a non-trivial group element, in either orientation.
pub fn self_match_detect(w: &Word, l: usize) -> Result<bool> {
    if l == 0 {
        return Err(Error::input("self-match length must be >= 1"));
    }
    Ok(longest_self_match(w) >= l)
}
