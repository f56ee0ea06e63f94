//! Finite extensions `F_k ⋉ A` of free groups.
//!
//! An element is written `α·u` with `α ∈ A` and `u ∈ F_k`; generator `i`
//! of `F_k` acts on `A` by the automorphism `ψ_i`, so `u·β·u⁻¹ = ψ_u(β)` and
//!
//! ```text
//! (α·u)(β·v) = (α·ψ_u(β))·(uv)
//! ```
//!
//! The tree action factors through the projection `α·u ↦ u`, so `A` fixes
//! the whole tree.

use std::fmt;

use super::finite::{generated_subgroup, Automorphism, FiniteGroup};
use super::word::{Letter, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectGroup {
    rank: usize,
    torsion: FiniteGroup,
    actions: Vec<Automorphism>,
    inverse_actions: Vec<Automorphism>,
}

/// `α·u` together with the cached twist `ψ_u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedElement {
    pub word: Word,
    pub torsion: u32,
    twist: Automorphism,
}

impl ExtendedElement {
    pub fn twist(&self) -> &Automorphism {
        &self.twist
    }
}

impl fmt::Display for ExtendedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.word, self.torsion)
    }
}

impl SemidirectGroup {
    /// `actions[i]` is the automorphism of `A` induced by generator `i + 1`.
    pub fn new(rank: usize, torsion: FiniteGroup, actions: Vec<Automorphism>) -> Result<Self> {
        if rank == 0 || rank > super::word::MAX_RANK {
            return Err(Error::input(format!("rank {rank} out of range")));
        }
        if actions.len() != rank {
            return Err(Error::input(format!(
                "need one action per generator: got {} for rank {rank}",
                actions.len()
            )));
        }
        let actions = actions
            .into_iter()
            .map(|a| Automorphism::new(&torsion, a.images().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        let inverse_actions = actions.iter().map(Automorphism::inverse).collect();
        Ok(SemidirectGroup {
            rank,
            torsion,
            actions,
            inverse_actions,
        })
    }

    /// `F_k × A`: every generator acts trivially.
    pub fn direct(rank: usize, torsion: FiniteGroup) -> Result<Self> {
        let id = Automorphism::identity(torsion.order());
        SemidirectGroup::new(rank, torsion, vec![id; rank])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion_group(&self) -> &FiniteGroup {
        &self.torsion
    }

    fn letter_action(&self, l: Letter) -> &Automorphism {
        let i = l.unsigned_abs() as usize - 1;
        if l > 0 {
            &self.actions[i]
        } else {
            &self.inverse_actions[i]
        }
    }

    /// `ψ_u` for a word `u`.
    pub fn word_action(&self, word: &Word) -> Automorphism {
        word.letters()
            .iter()
            .fold(Automorphism::identity(self.torsion.order()), |acc, &l| {
                acc.compose(self.letter_action(l))
            })
    }

    pub fn element(&self, word: Word, torsion: u32) -> Result<ExtendedElement> {
        if word.max_generator() > self.rank {
            return Err(Error::input(format!(
                "word {word} uses generators beyond rank {}",
                self.rank
            )));
        }
        if !self.torsion.contains(torsion) {
            return Err(Error::input(format!("torsion element {torsion} out of range")));
        }
        let twist = self.word_action(&word);
        Ok(ExtendedElement {
            word,
            torsion,
            twist,
        })
    }

    pub fn identity(&self) -> ExtendedElement {
        ExtendedElement {
            word: Word::identity(),
            torsion: 0,
            twist: Automorphism::identity(self.torsion.order()),
        }
    }

    fn check(&self, g: &ExtendedElement) -> Result<()> {
        if g.word.max_generator() > self.rank
            || !self.torsion.contains(g.torsion)
            || g.twist.images().len() != self.torsion.order()
        {
            return Err(Error::input(format!(
                "element {g} does not belong to this extension"
            )));
        }
        Ok(())
    }

    pub fn op(&self, g: &ExtendedElement, h: &ExtendedElement) -> Result<ExtendedElement> {
        let mut out = g.clone();
        self.op_assign(&mut out, h)?;
        Ok(out)
    }

    pub fn op_assign(&self, g: &mut ExtendedElement, h: &ExtendedElement) -> Result<()> {
        self.check(g)?;
        self.check(h)?;
        g.torsion = self.torsion.mul(g.torsion, g.twist.apply(h.torsion));
        g.word.append(&h.word);
        g.twist = g.twist.compose(&h.twist);
        Ok(())
    }

    /// `(α·u)⁻¹ = ψ_u⁻¹(α⁻¹)·u⁻¹`.
    pub fn invert(&self, g: &ExtendedElement) -> Result<ExtendedElement> {
        self.check(g)?;
        let twist_inv = g.twist.inverse();
        Ok(ExtendedElement {
            word: g.word.inverse(),
            torsion: twist_inv.apply(self.torsion.inv(g.torsion)),
            twist: twist_inv,
        })
    }

    /// The conjugation action of `g` on the finite kernel `A`:
    /// `φ(α·u) = inn_α ∘ ψ_u`. A homomorphism to `Aut(A)`.
    pub fn phi(&self, g: &ExtendedElement) -> Automorphism {
        self.torsion.inner(g.torsion).compose(&g.twist)
    }

    /// Order of the subgroup of `Aut(A)` generated by `φ(g)` for `g` in `support`.
    pub fn characteristic_index(&self, support: &[ExtendedElement]) -> Result<usize> {
        for g in support {
            self.check(g)?;
        }
        let gens: Vec<_> = support.iter().map(|g| self.phi(g)).collect();
        Ok(generated_subgroup(self.torsion.order(), &gens).len())
    }

    /// Whether every support element commutes with every element of `A`,
    /// checked by direct multiplication in the extension.
    pub fn kernel_is_central(&self, support: &[ExtendedElement]) -> Result<bool> {
        for g in support {
            for alpha in 0..self.torsion.order() as u32 {
                let a = self.element(Word::identity(), alpha)?;
                if self.op(g, &a)? != self.op(&a, g)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
