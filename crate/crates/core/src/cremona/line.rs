//! Degrees by restriction to a line.
//!
//! For a line `ℓ` avoiding the base points of `f`, the reduced
//! parametrization of `f ∘ ℓ` has degree `deg f`. Applying the letters of a
//! word to a triple of binary forms, last letter first, and removing the
//! common factor after each step computes the degree of the word with
//! univariate arithmetic only. This route shares no code with the
//! bivariate normalization and reaches much larger degrees.

use crate::error::{Error, Result};
use crate::poly::{univariate as uni, PrimeField};

use super::generator::Letter;
use super::map::DynamicalDegree;

/// Default degree bound for the restriction route.
pub const DEFAULT_LINE_CAP: u64 = 1 << 14;

/// Fixed line `[s·a₀ + t·b₀ : s·a₁ + t·b₁ : s·a₂ + t·b₂]`.
const LINE: [[i64; 2]; 3] = [[271_828, 314_159], [141_421, 173_205], [223_606, 161_803]];

/// `s^degree · poly(t/s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BinaryForm {
    degree: u64,
    poly: Vec<u64>,
}

/// The image of a fixed line under a map, as a reduced triple of binary forms.
#[derive(Debug, Clone)]
pub struct LineImage {
    field: PrimeField,
    comps: [BinaryForm; 3],
}

impl LineImage {
    pub fn generic(field: PrimeField) -> Self {
        let comps = LINE.map(|[a, b]| {
            let mut poly = vec![field.from_i64(a), field.from_i64(b)];
            uni::trim(&mut poly);
            BinaryForm { degree: 1, poly }
        });
        LineImage { field, comps }
    }

    pub fn degree(&self) -> u64 {
        self.comps[0].degree
    }

    /// Replaces the image `T` by `letter(T)`.
    pub fn apply(&mut self, letter: Letter, cap: u64) -> Result<()> {
        let f = self.field;
        let raw = letter.degree() as u64 * self.degree();
        if raw > cap {
            return Err(Error::degree_cap(
                format!("restricted degree {raw} exceeds cap {cap}"),
                raw,
            ));
        }
        let outer = letter.as_homogeneous(f)?;
        let mut top = [0u32; 3];
        for h in &outer {
            for (e, _) in h.terms() {
                for k in 0..3 {
                    top[k] = top[k].max(e[k]);
                }
            }
        }
        let powers: Vec<Vec<Vec<u64>>> = (0..3)
            .map(|k| {
                let mut out = vec![vec![1u64]];
                for i in 1..=top[k] as usize {
                    let next = uni::mul(f, &out[i - 1], &self.comps[k].poly);
                    out.push(next);
                }
                out
            })
            .collect();
        let next = outer.map(|h| {
            let mut acc = Vec::new();
            for (e, c) in h.terms() {
                let term = uni::mul(
                    f,
                    &uni::mul(f, &powers[0][e[0] as usize], &powers[1][e[1] as usize]),
                    &powers[2][e[2] as usize],
                );
                acc = uni::add(f, &acc, &uni::scale(f, &term, c));
            }
            BinaryForm { degree: raw, poly: acc }
        });
        self.comps = next;
        self.reduce()
    }

    fn reduce(&mut self) -> Result<()> {
        let f = self.field;
        let nonzero: Vec<&BinaryForm> = self.comps.iter().filter(|c| !c.poly.is_empty()).collect();
        if nonzero.is_empty() {
            return Err(Error::BadPrime { prime: f.p() });
        }
        let g = nonzero.iter().fold(Vec::new(), |g, c| uni::gcd(f, &g, &c.poly));
        let s_power = nonzero
            .iter()
            .map(|c| c.degree - (c.poly.len() as u64 - 1))
            .min()
            .unwrap();
        let removed = (g.len() as u64 - 1) + s_power;
        if removed == 0 {
            return Ok(());
        }
        for c in self.comps.iter_mut() {
            if !c.poly.is_empty() {
                c.poly = uni::exact_div(f, &c.poly, &g).expect("gcd divides each component");
            }
            c.degree -= removed;
        }
        Ok(())
    }
}

/// `deg(g₁ ∘ … ∘ gₘ)` by restriction to a fixed line.
pub fn degree_by_restriction(field: PrimeField, word: &[Letter], cap: u64) -> Result<u64> {
    let mut image = LineImage::generic(field);
    for &letter in word.iter().rev() {
        image.apply(letter, cap)?;
    }
    Ok(image.degree())
}

/// `deg(wᵏ)` for `k = 1..=budget`, by restriction to a fixed line. A cap
/// hit returns a resource error carrying the degrees computed so far.
pub fn power_degrees_by_restriction(
    field: PrimeField,
    word: &[Letter],
    budget: usize,
    cap: u64,
) -> Result<Vec<u64>> {
    let mut image = LineImage::generic(field);
    let mut degrees = Vec::with_capacity(budget);
    for _ in 0..budget {
        for &letter in word.iter().rev() {
            if let Err(e) = image.apply(letter, cap) {
                let partial = (!degrees.is_empty())
                    .then(|| DynamicalDegree::from_degrees(degrees.clone()).estimate);
                let e = match partial {
                    Some(p) => e.with_partial(p),
                    None => e,
                };
                return Err(e.with_sequence(degrees));
            }
        }
        degrees.push(image.degree());
    }
    Ok(degrees)
}

/// `min_{k ≤ budget} deg(wᵏ)^{1/k}` by restriction to a line.
pub fn dynamical_degree_by_restriction(
    field: PrimeField,
    word: &[Letter],
    budget: usize,
    cap: u64,
) -> Result<DynamicalDegree> {
    if budget == 0 {
        return Err(Error::input("dynamical degree budget must be >= 1"));
    }
    power_degrees_by_restriction(field, word, budget, cap).map(DynamicalDegree::from_degrees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cremona::generator::Generator;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn generator_degrees() {
        let s = Generator::Sigma.letter();
        let h = Generator::Henon { n: 2 }.letter();
        assert_eq!(degree_by_restriction(f(), &[s], 64).unwrap(), 2);
        assert_eq!(degree_by_restriction(f(), &[s, s], 64).unwrap(), 1);
        assert_eq!(degree_by_restriction(f(), &[h, h.inverse()], 64).unwrap(), 1);
        assert_eq!(degree_by_restriction(f(), &[], 64).unwrap(), 1);
    }

    #[test]
    fn henon_powers_double() {
        let h = Generator::Henon { n: 2 }.letter();
        let degrees = power_degrees_by_restriction(f(), &[h], 10, 1 << 14).unwrap();
        assert_eq!(degrees, (1..=10).map(|k| 1u64 << k).collect::<Vec<_>>());
    }

    #[test]
    fn cap_keeps_partial_sequence() {
        let h = Generator::Henon { n: 2 }.letter();
        match power_degrees_by_restriction(f(), &[h], 10, 16).unwrap_err() {
            Error::Resource { sequence, raw_degree, .. } => {
                assert_eq!(sequence, vec![2, 4, 8, 16]);
                assert_eq!(raw_degree, Some(32));
            }
            other => panic!("{other:?}"),
        }
    }
}
