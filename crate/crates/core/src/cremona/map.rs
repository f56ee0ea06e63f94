//! Birational self-maps of `P²` as normalized polynomial triples.

use crate::error::{Error, Result};
use crate::poly::hompoly::normalize_forms;
use crate::poly::{Form, HomPoly3, PrimeField};

use super::generator::{Generator, Letter};
use super::monomial::MonomialMap;

/// Default bound on the degree of any composition before cancellation.
pub const DEFAULT_DEGREE_CAP: u32 = 512;

/// A triple `[P : Q : R]` of homogeneous polynomials of a common degree
/// without common factor, scaled so that the first nonzero coefficient
/// (graded-lex, `P` before `Q` before `R`) is one.
///
/// `compose(f, g)` is `f ∘ g`: apply `g` first, then `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMapP2 {
    field: PrimeField,
    components: [Form; 3],
    origin: Option<Letter>,
    inverse_word: Option<Vec<Letter>>,
}

/// Degree sequence of iterates and the resulting upper estimate of the
/// dynamical degree.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicalDegree {
    /// `min_{k ≤ budget} deg(fᵏ)^{1/k}`.
    pub estimate: f64,
    /// `deg(fᵏ)` for `k = 1..=budget`.
    pub degrees: Vec<u64>,
}

impl DynamicalDegree {
    pub fn from_degrees(degrees: Vec<u64>) -> Self {
        let estimate = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| (d as f64).powf(1.0 / (i + 1) as f64))
            .fold(f64::INFINITY, f64::min);
        DynamicalDegree { estimate, degrees }
    }
}

impl RationalMapP2 {
    pub fn identity(field: PrimeField) -> Self {
        let comps = [0, 1, 2].map(|k| Form::from(&HomPoly3::var(field, k)));
        RationalMapP2 {
            field,
            components: comps,
            origin: None,
            inverse_word: Some(Vec::new()),
        }
    }

    /// Normalizes a triple. Degree-one triples must have an invertible
    /// coefficient matrix.
    pub fn from_components(p: &HomPoly3, q: &HomPoly3, r: &HomPoly3) -> Result<Self> {
        let field = p.field();
        let normalized = crate::poly::normalize_triple(p, q, r)?;
        let components = normalized.map(|h| Form::from(&h));
        let map = RationalMapP2 {
            field,
            components,
            origin: None,
            inverse_word: None,
        };
        if map.degree() == 1 && !map.linear_part_invertible() {
            return Err(Error::input("degree-one triple with singular coefficient matrix"));
        }
        Ok(map)
    }

    pub(crate) fn from_forms(field: PrimeField, forms: [&Form; 3]) -> Result<Self> {
        if forms.iter().all(|f| f.is_zero()) {
            return Err(Error::BadPrime { prime: field.p() });
        }
        let components = normalize_forms(field, forms)?;
        let map = RationalMapP2 {
            field,
            components,
            origin: None,
            inverse_word: None,
        };
        if map.degree() == 1 && !map.linear_part_invertible() {
            return Err(Error::BadPrime { prime: field.p() });
        }
        Ok(map)
    }

    pub fn from_letter(field: PrimeField, letter: Letter) -> Result<Self> {
        letter.generator.validate()?;
        let comps = letter.components(field)?;
        let mut map = RationalMapP2::from_forms(field, [&comps[0], &comps[1], &comps[2]])?;
        map.origin = Some(letter);
        map.inverse_word = Some(vec![letter.inverse()]);
        Ok(map)
    }

    /// `g₁ ∘ g₂ ∘ … ∘ gₘ` for `word = [g₁, …, gₘ]`.
    pub fn from_word(field: PrimeField, word: &[Letter], cap: u32) -> Result<Self> {
        let mut map = RationalMapP2::identity(field);
        for &letter in word.iter().rev() {
            map = map.left_compose_letter(letter, cap)?;
        }
        map.inverse_word = Some(word.iter().rev().map(|l| l.inverse()).collect());
        if let [single] = word {
            map.origin = Some(*single);
        }
        Ok(map)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn degree(&self) -> u32 {
        self.components[0].degree
    }

    pub fn forms(&self) -> &[Form; 3] {
        &self.components
    }

    pub fn components(&self) -> [HomPoly3; 3] {
        [0, 1, 2].map(|k| self.components[k].to_hom(self.field))
    }

    /// The generator this map was built from, if any.
    pub fn tag(&self) -> Option<String> {
        self.origin.map(|l| l.to_string())
    }

    pub fn origin(&self) -> Option<Letter> {
        self.origin
    }

    /// The inverse as a word in generators, when built from generators.
    pub fn inverse_word(&self) -> Option<&[Letter]> {
        self.inverse_word.as_deref()
    }

    pub fn is_identity(&self) -> bool {
        *self == RationalMapP2 {
            origin: self.origin,
            inverse_word: self.inverse_word.clone(),
            ..RationalMapP2::identity(self.field)
        }
    }

    fn linear_part_invertible(&self) -> bool {
        let f = self.field;
        let m: Vec<[u64; 3]> = self
            .components()
            .iter()
            .map(|h| [h.coeff([1, 0, 0]), h.coeff([0, 1, 0]), h.coeff([0, 0, 1])])
            .collect();
        let minor = |a: usize, b: usize| f.sub(f.mul(m[1][a], m[2][b]), f.mul(m[1][b], m[2][a]));
        let det = f.add(
            f.sub(f.mul(m[0][0], minor(1, 2)), f.mul(m[0][1], minor(0, 2))),
            f.mul(m[0][2], minor(0, 1)),
        );
        det != 0
    }

    fn check_cap(raw: u64, cap: u32) -> Result<()> {
        if raw > cap as u64 {
            return Err(Error::degree_cap(
                format!("composition degree {raw} exceeds cap {cap}"),
                raw,
            ));
        }
        Ok(())
    }

    /// `self ∘ g`, reduced by the common factor of the substituted triple.
    pub fn compose(&self, g: &RationalMapP2, cap: u32) -> Result<RationalMapP2> {
        if self.field != g.field {
            return Err(Error::input("maps defined over different primes"));
        }
        Self::check_cap(self.degree() as u64 * g.degree() as u64, cap)?;
        let f = self.field;
        let inner = [&g.components[0], &g.components[1], &g.components[2]];
        let subs = self
            .components
            .iter()
            .map(|c| c.substitute(f, inner))
            .collect::<Result<Vec<_>>>()?;
        let mut out = RationalMapP2::from_forms(f, [&subs[0], &subs[1], &subs[2]])?;
        if let (Some(a), Some(b)) = (&self.inverse_word, &g.inverse_word) {
            out.inverse_word = Some(b.iter().chain(a).copied().collect());
        }
        Ok(out)
    }

    /// `letter ∘ self`.
    pub fn left_compose_letter(&self, letter: Letter, cap: u32) -> Result<RationalMapP2> {
        Self::check_cap(letter.degree() as u64 * self.degree() as u64, cap)?;
        let f = self.field;
        let outer = letter.components(f)?;
        let inner = [&self.components[0], &self.components[1], &self.components[2]];
        let subs = outer
            .iter()
            .map(|c| c.substitute(f, inner))
            .collect::<Result<Vec<_>>>()?;
        let mut out = RationalMapP2::from_forms(f, [&subs[0], &subs[1], &subs[2]])?;
        if let Some(w) = &self.inverse_word {
            out.inverse_word = Some(w.iter().copied().chain([letter.inverse()]).collect());
        }
        Ok(out)
    }

    /// The inverse, rebuilt from the recorded inverse word.
    pub fn inverse(&self, cap: u32) -> Result<RationalMapP2> {
        let word = self
            .inverse_word
            .as_ref()
            .ok_or_else(|| Error::Unsupported("inverse of a map not built from generators".into()))?;
        RationalMapP2::from_word(self.field, word, cap)
    }

    /// `d(x, f·x) = arccosh(deg f)` at the basepoint given by the class of a line.
    pub fn orbit_distance(&self) -> f64 {
        (self.degree() as f64).acosh()
    }

    /// `[P(v) : Q(v) : R(v)]` at a point of `F_p³`.
    pub fn eval(&self, v: [u64; 3]) -> [u64; 3] {
        let f = self.field;
        self.components().map(|h| {
            h.terms().fold(0, |acc, (e, c)| {
                let m = (0..3).fold(c, |m, k| f.mul(m, f.pow(v[k], e[k] as u64)));
                f.add(acc, m)
            })
        })
    }

    /// `min_{k ≤ budget} deg(fᵏ)^{1/k}`, an upper bound for the dynamical
    /// degree. Monomial generators use exact matrix arithmetic; other maps
    /// iterate `fᵏ = f ∘ fᵏ⁻¹` under the degree cap.
    pub fn dynamical_degree_estimate(&self, budget: usize, cap: u32) -> Result<DynamicalDegree> {
        if budget < 2 {
            return Err(Error::input("dynamical degree budget must be >= 2"));
        }
        if let Some(Letter {
            generator: Generator::Monomial { matrix },
            inverted,
        }) = self.origin
        {
            let mut m = MonomialMap::new(matrix)?;
            if inverted {
                m = m.inverse();
            }
            let degrees = m.power_degrees(budget)?;
            return Ok(DynamicalDegree {
                estimate: m.dynamical_degree(),
                degrees,
            });
        }
        let mut degrees = vec![self.degree() as u64];
        let mut power = self.clone();
        while degrees.len() < budget {
            match self.compose(&power, cap) {
                Ok(next) => {
                    degrees.push(next.degree() as u64);
                    power = next;
                }
                Err(e) => {
                    let partial = DynamicalDegree::from_degrees(degrees.clone()).estimate;
                    return Err(e.with_partial(partial).with_sequence(degrees));
                }
            }
        }
        Ok(DynamicalDegree::from_degrees(degrees))
    }
}

pub fn cremona_involution(field: PrimeField) -> RationalMapP2 {
    RationalMapP2::from_letter(field, Generator::Sigma.letter()).expect("sigma is well defined")
}

pub fn henon(field: PrimeField, n: u32) -> Result<RationalMapP2> {
    RationalMapP2::from_letter(field, Letter::new(Generator::Henon { n })?)
}

pub fn linear(field: PrimeField, matrix: [[i64; 3]; 3]) -> Result<RationalMapP2> {
    RationalMapP2::from_letter(field, Letter::new(Generator::Linear { matrix })?)
}

pub fn monomial(field: PrimeField, matrix: [[i64; 2]; 2]) -> Result<RationalMapP2> {
    RationalMapP2::from_letter(field, Letter::new(Generator::Monomial { matrix })?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    const CAP: u32 = DEFAULT_DEGREE_CAP;

    #[test]
    fn generator_degrees() {
        assert_eq!(cremona_involution(f()).degree(), 2);
        let h = henon(f(), 2).unwrap();
        assert_eq!(h.degree(), 2);
        let expected = [
            HomPoly3::from_terms(f(), 2, [([0, 1, 1], 1)]).unwrap(),
            HomPoly3::from_terms(f(), 2, [([0, 2, 0], 1), ([1, 0, 1], -1)]).unwrap(),
            HomPoly3::from_terms(f(), 2, [([0, 0, 2], 1)]).unwrap(),
        ];
        assert_eq!(h.components(), expected);
        let id = linear(f(), [[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert!(id.is_identity());
        assert!(linear(f(), [[1, 1, 0], [1, 1, 0], [0, 0, 1]]).is_err());
    }

    #[test]
    fn sigma_is_an_involution() {
        let s = cremona_involution(f());
        let ss = s.compose(&s, CAP).unwrap();
        assert!(ss.is_identity());
        assert_eq!(ss.degree(), 1);
    }

    #[test]
    fn henon_and_inverse_cancel() {
        let h = henon(f(), 3).unwrap();
        let hi = h.inverse(CAP).unwrap();
        assert_eq!(hi.degree(), 3);
        assert!(h.compose(&hi, CAP).unwrap().is_identity());
        assert!(hi.compose(&h, CAP).unwrap().is_identity());
    }

    #[test]
    fn composition_examples() {
        let s = cremona_involution(f());
        let l = linear(f(), [[1, 2, 3], [0, 1, 5], [7, 0, 1]]).unwrap();
        assert_eq!(s.compose(&l, CAP).unwrap().degree(), 2);
        assert_eq!(s.compose(&l, CAP).unwrap().compose(&s, CAP).unwrap().degree(), 4);
        let h = henon(f(), 2).unwrap();
        assert_eq!(h.compose(&h, CAP).unwrap().degree(), 4);
    }

    #[test]
    fn degree_cap_reports_raw_degree() {
        let h = henon(f(), 2).unwrap();
        let h4 = h.compose(&h, CAP).unwrap();
        match h4.compose(&h4, 8) {
            Err(Error::Resource { raw_degree, .. }) => assert_eq!(raw_degree, Some(16)),
            other => panic!("expected a resource error, got {other:?}"),
        }
    }

    #[test]
    fn orbit_distances() {
        assert_eq!(RationalMapP2::identity(f()).orbit_distance(), 0.0);
        assert!((cremona_involution(f()).orbit_distance() - 1.316957896924816).abs() < 1e-12);
        assert!(((5.0f64).acosh() - 2.2924316695611777).abs() < 1e-12);
    }

    #[test]
    fn dynamical_degree_examples() {
        let s = cremona_involution(f()).dynamical_degree_estimate(6, CAP).unwrap();
        assert_eq!(s.degrees, vec![2, 1, 2, 1, 2, 1]);
        assert_eq!(s.estimate, 1.0);
        let h = henon(f(), 2).unwrap().dynamical_degree_estimate(6, CAP).unwrap();
        assert_eq!(h.degrees, vec![2, 4, 8, 16, 32, 64]);
        assert_eq!(h.estimate, 2.0);
        let m = monomial(f(), [[2, 1], [1, 1]]).unwrap().dynamical_degree_estimate(4, CAP).unwrap();
        assert!((m.estimate - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        let err = henon(f(), 2).unwrap().dynamical_degree_estimate(12, 64).unwrap_err();
        match err {
            Error::Resource { sequence, partial, .. } => {
                assert_eq!(sequence, vec![2, 4, 8, 16, 32, 64]);
                assert_eq!(partial, Some(2.0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn evaluation_matches_formula() {
        let h = henon(f(), 2).unwrap();
        // (x, y) = (3, 5) ↦ (5, 22)
        assert_eq!(h.eval([3, 5, 1]), [5, 22, 1]);
    }
}
