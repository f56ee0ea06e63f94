use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator of a free group or its inverse: `+i` is generator `i`,
/// `-i` its inverse. Generators are numbered from 1.
pub type Letter = i8;

/// Largest rank representable in the ASCII word format (`a..z`).
pub const MAX_RANK: usize = 26;

/// A freely reduced word. Length equals the tree distance `d(x, w·x)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Freely reduces a raw letter sequence over generators `1..=rank`.
    pub fn reduce(letters: &[Letter], rank: usize) -> Result<Self> {
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            check_letter(l, rank)?;
            push_reduced(&mut out, l);
        }
        Ok(Word(out))
    }

    /// Builds a word from letters that are already reduced and in range.
    /// Reduction is still applied, but the rank is not checked.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    /// Parses the ASCII form: `a..z` are generators, `A..Z` their inverses.
    pub fn parse(s: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            let l = match c {
                'a'..='z' => (c as u8 - b'a' + 1) as Letter,
                'A'..='Z' => -((c as u8 - b'A' + 1) as Letter),
                c if c.is_whitespace() => continue,
                _ => return Err(Error::input(format!("invalid letter {c:?} in word {s:?}"))),
            };
            letters.push(l);
        }
        Word::reduce(&letters, MAX_RANK)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used (0 for the empty word).
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut out = self.clone();
        out.append(other);
        out
    }

    /// In-place `self ← self·other` with free reduction.
    pub fn append(&mut self, other: &Word) {
        for &l in &other.0 {
            push_reduced(&mut self.0, l);
        }
    }

    pub fn push(&mut self, l: Letter) {
        push_reduced(&mut self.0, l);
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out.append(&base);
        }
        out
    }

    /// Length of the longest common prefix, which on the tree is the
    /// Gromov product `⟨u·x, v·x⟩_x`.
    pub fn common_prefix_len(&self, other: &Word) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .take_while(|(a, b)| a == b)
            .count()
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// Writes `prefix · core · prefix⁻¹` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> CyclicWord {
        let w = &self.0;
        let mut k = 0;
        while 2 * k + 1 < w.len() && w[k] == -w[w.len() - 1 - k] {
            k += 1;
        }
        CyclicWord {
            prefix: Word(w[..k].to_vec()),
            core: Word(w[k..w.len() - k].to_vec()),
        }
    }

    /// Exact translation length on the Cayley tree.
    pub fn translation_length(&self) -> usize {
        self.cyclic_reduce().core.len()
    }
}

fn check_letter(l: Letter, rank: usize) -> Result<()> {
    let g = l.unsigned_abs() as usize;
    if g == 0 || g > rank {
        return Err(Error::input(format!(
            "generator index {l} out of range for rank {rank}"
        )));
    }
    Ok(())
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

pub fn letter_char(l: Letter) -> char {
    let base = if l > 0 { b'a' } else { b'A' };
    (base + l.unsigned_abs() - 1) as char
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            write!(f, "{}", letter_char(l))?;
        }
        Ok(())
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for Word {
    type Error = Error;
    fn try_from(s: String) -> Result<Word> {
        Word::parse(&s)
    }
}

impl std::str::FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s)
    }
}

/// A word written as `prefix · core · prefix⁻¹` with `core` cyclically
/// reduced. The axis of the word is the bi-infinite line through `prefix·x`
/// labelled by `core^∞`; its translation length is `|core|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicWord {
    pub prefix: Word,
    pub core: Word,
}

impl CyclicWord {
    pub fn translation_length(&self) -> usize {
        self.core.len()
    }

    pub fn original(&self) -> Word {
        self.prefix.concat(&self.core).concat(&self.prefix.inverse())
    }

    /// Shortest `u` with `core = u^m`.
    pub fn root(&self) -> Word {
        let c = self.core.letters();
        let n = c.len();
        for p in 1..=n {
            if n.is_multiple_of(p) && (p..n).all(|i| c[i] == c[i - p]) {
                return Word(c[..p].to_vec());
            }
        }
        Word::identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(Word::reduce(&[1, -1, 2], 2).unwrap(), w("b"));
        assert_eq!(Word::reduce(&[], 2).unwrap(), Word::identity());
        assert_eq!(Word::reduce(&[1, 2, -2, 1], 2).unwrap(), w("aa"));
    }

    #[test]
    fn reduce_rejects_out_of_range() {
        assert!(matches!(Word::reduce(&[3], 2), Err(Error::Input(_))));
        assert!(Word::reduce(&[0], 2).is_err());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let word = w("abAB");
        assert_eq!(word.letters(), &[1, 2, -1, -2]);
        assert_eq!(word.to_string(), "abAB");
        assert!(Word::parse("a1").is_err());
    }

    #[test]
    fn inverse_of_ab() {
        assert_eq!(w("ab").inverse(), w("BA"));
    }

    #[test]
    fn cyclic_reduce_examples() {
        let c = w("baB").cyclic_reduce();
        assert_eq!(c.core, w("a"));
        assert_eq!(c.prefix, w("b"));
        assert_eq!(c.translation_length(), 1);
        assert_eq!(w("ab").cyclic_reduce().core, w("ab"));
        assert_eq!(w("Aba").cyclic_reduce().core, w("b"));
        assert_eq!(w("Aba").cyclic_reduce().original(), w("Aba"));
        assert_eq!(Word::identity().translation_length(), 0);
    }

    #[test]
    fn root_of_periodic_core() {
        let c = w("ab").pow(10).cyclic_reduce();
        assert_eq!(c.root(), w("ab"));
        assert_eq!(w("aab").cyclic_reduce().root(), w("aab"));
    }

    #[test]
    fn common_prefix() {
        assert_eq!(w("aab").common_prefix_len(&w("aaB")), 2);
        assert_eq!(w("").common_prefix_len(&w("a")), 0);
    }
}
