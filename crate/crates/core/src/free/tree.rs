//! Exact tree geometry for `F_k` and `F_k ⋉ A` acting on the Cayley tree of `F_k`.

use num_rational::Ratio;

use super::semidirect::{ExtendedElement, SemidirectGroup};
use super::word::{Letter, Word, MAX_RANK};
use crate::error::{Error, Result};
use crate::geometry::{ActionOracle, IsometryClass};
use crate::measure::FiniteMeasure;

/// Default bound on the census radius `K`.
pub const DEFAULT_CENSUS_CAP: usize = 4;

/// The free group of rank `k` acting on its Cayley tree, basepoint at the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeGroup {
    rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::input(format!("rank must be in 1..={MAX_RANK}, got {rank}")));
        }
        Ok(FreeGroup { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn word(&self, letters: &[Letter]) -> Result<Word> {
        Word::reduce(letters, self.rank)
    }

    pub fn parse(&self, s: &str) -> Result<Word> {
        let w = Word::parse(s)?;
        self.check(&w)?;
        Ok(w)
    }

    fn check(&self, w: &Word) -> Result<()> {
        if w.max_generator() > self.rank {
            return Err(Error::input(format!("word {w} exceeds rank {}", self.rank)));
        }
        Ok(())
    }

    /// The `2k` standard generators and their inverses, `a, A, b, B, …`.
    pub fn generators(&self) -> Vec<Word> {
        (1..=self.rank as Letter)
            .flat_map(|g| [Word::from_letters([g]), Word::from_letters([-g])])
            .collect()
    }

    /// Uniform measure on the standard generators, with verified flags.
    pub fn uniform_measure(&self) -> FiniteMeasure<Word> {
        let gens = self.generators();
        let tags = gens.iter().map(Word::to_string).collect();
        FiniteMeasure::uniform(gens, tags)
            .and_then(|m| m.with_verified_flags(self, Some(true)))
            .expect("standard generators form a symmetric measure")
    }

    /// All reduced words of length at most `radius`.
    pub fn ball(&self, radius: usize) -> Vec<Word> {
        let mut out = vec![Word::identity()];
        let mut frontier = vec![Word::identity()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for w in &frontier {
                for g in 1..=self.rank as Letter {
                    for l in [g, -g] {
                        if w.letters().last() != Some(&-l) {
                            let mut v = w.clone();
                            v.push(l);
                            next.push(v);
                        }
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// `|Stab_K(x, w·x)|`: elements moving both `x` and `w·x` by at most `K`,
    /// counted by enumerating the radius-`K` ball.
    pub fn stab_census(&self, k: usize, w: &Word, cap: usize) -> Result<usize> {
        self.check(w)?;
        if k > cap {
            return Err(Error::resource(format!("census radius {k} above cap {cap}")));
        }
        let wi = w.inverse();
        Ok(self
            .ball(k)
            .iter()
            .filter(|g| wi.concat(g).concat(w).len() <= k)
            .count())
    }
}

/// Exact harmonic measure of the boundary cylinder behind a vertex at
/// distance `m`, for the uniform walk on the standard generators of `F_k`:
/// `1 / (2k (2k−1)^(m−1))`, and `1` for `m = 0`.
pub fn exact_shadow_measure(
    group: &FreeGroup,
    measure: &FiniteMeasure<Word>,
    m: u32,
) -> Result<Ratio<u128>> {
    let mut gens = group.generators();
    let mut support = measure.support().to_vec();
    gens.sort();
    support.sort();
    if !measure.is_uniform() || gens != support {
        return Err(Error::Unsupported(
            "exact shadow measure needs the uniform measure on the standard generators".into(),
        ));
    }
    if m == 0 {
        return Ok(Ratio::from_integer(1));
    }
    let k = group.rank() as u128;
    let denom = (2 * k - 1)
        .checked_pow(m - 1)
        .and_then(|p| p.checked_mul(2 * k))
        .ok_or_else(|| Error::resource(format!("shadow measure at m = {m} overflows")))?;
    Ok(Ratio::new(1, denom))
}

impl ActionOracle for FreeGroup {
    type Element = Word;

    fn identity(&self) -> Word {
        Word::identity()
    }

    fn multiply(&self, g: &Word, h: &Word) -> Result<Word> {
        self.check(g)?;
        self.check(h)?;
        Ok(g.concat(h))
    }

    fn multiply_assign(&self, acc: &mut Word, g: &Word) -> Result<()> {
        self.check(g)?;
        acc.append(g);
        Ok(())
    }

    fn invert(&self, g: &Word) -> Result<Word> {
        Ok(g.inverse())
    }

    fn displacement(&self, g: &Word) -> Result<f64> {
        Ok(g.len() as f64)
    }

    fn distance(&self, g: &Word, h: &Word) -> Result<f64> {
        Ok(g.inverse().concat(h).len() as f64)
    }

    fn translation_length(&self, g: &Word, _budget: usize) -> Result<f64> {
        Ok(g.translation_length() as f64)
    }

    fn classify(&self, g: &Word, _budget: usize) -> Result<IsometryClass> {
        Ok(tree_class(g))
    }
}

fn tree_class(w: &Word) -> IsometryClass {
    if w.is_empty() {
        IsometryClass::Elliptic
    } else {
        IsometryClass::Loxodromic
    }
}

impl SemidirectGroup {
    pub fn stab_census(&self, k: usize, w: &ExtendedElement, cap: usize) -> Result<usize> {
        let free = FreeGroup::new(self.rank())?;
        Ok(free.stab_census(k, &w.word, cap)? * self.torsion_group().order())
    }

    /// Uniform measure on `(g, 0)` for the standard generators `g`.
    pub fn uniform_measure(&self) -> Result<FiniteMeasure<ExtendedElement>> {
        let free = FreeGroup::new(self.rank())?;
        let gens = free
            .generators()
            .into_iter()
            .map(|w| self.element(w, 0))
            .collect::<Result<Vec<_>>>()?;
        let tags = gens.iter().map(|g| g.word.to_string()).collect();
        FiniteMeasure::uniform(gens, tags)?.with_verified_flags(self, Some(true))
    }
}

impl ActionOracle for SemidirectGroup {
    type Element = ExtendedElement;

    fn identity(&self) -> ExtendedElement {
        SemidirectGroup::identity(self)
    }

    fn multiply(&self, g: &ExtendedElement, h: &ExtendedElement) -> Result<ExtendedElement> {
        self.op(g, h)
    }

    fn multiply_assign(&self, acc: &mut ExtendedElement, g: &ExtendedElement) -> Result<()> {
        self.op_assign(acc, g)
    }

    fn invert(&self, g: &ExtendedElement) -> Result<ExtendedElement> {
        SemidirectGroup::invert(self, g)
    }

    fn displacement(&self, g: &ExtendedElement) -> Result<f64> {
        Ok(g.word.len() as f64)
    }

    fn distance(&self, g: &ExtendedElement, h: &ExtendedElement) -> Result<f64> {
        Ok(g.word.inverse().concat(&h.word).len() as f64)
    }

    fn translation_length(&self, g: &ExtendedElement, _budget: usize) -> Result<f64> {
        Ok(g.word.translation_length() as f64)
    }

    fn classify(&self, g: &ExtendedElement, _budget: usize) -> Result<IsometryClass> {
        Ok(tree_class(&g.word))
    }
}
