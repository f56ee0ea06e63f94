//! The Cremona group as an action on the hyperboloid, with
//! `d(x, f·x) = arccosh(deg f)`.
//!
//! Elements are words in generators together with the normalized map of
//! the inverse. Right multiplication `w·g` only needs `g⁻¹ ∘ w⁻¹`, a left
//! composition by small generators, and `deg w = deg w⁻¹` in the plane.

use crate::error::{Error, Result};
use crate::geometry::{ActionOracle, IsometryClass, LOXODROMIC_THRESHOLD};
use crate::poly::PrimeField;

use super::generator::Letter;
use super::line::{self, DEFAULT_LINE_CAP};
use super::map::{DynamicalDegree, RationalMapP2, DEFAULT_DEGREE_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CremonaGroup {
    field: PrimeField,
    degree_cap: u32,
    line_cap: u64,
}

/// `g₁ ∘ … ∘ gₘ` with its inverse map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CremonaElement {
    word: Vec<Letter>,
    inverse: RationalMapP2,
}

impl CremonaElement {
    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn degree(&self) -> u32 {
        self.inverse.degree()
    }

    pub fn inverse_map(&self) -> &RationalMapP2 {
        &self.inverse
    }
}

impl Default for CremonaGroup {
    fn default() -> Self {
        CremonaGroup::new(PrimeField::default(), DEFAULT_DEGREE_CAP)
    }
}

impl CremonaGroup {
    pub fn new(field: PrimeField, degree_cap: u32) -> Self {
        CremonaGroup {
            field,
            degree_cap,
            line_cap: DEFAULT_LINE_CAP,
        }
    }

    pub fn with_line_cap(self, line_cap: u64) -> Self {
        CremonaGroup { line_cap, ..self }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn line_cap(&self) -> u64 {
        self.line_cap
    }

    /// The same group over another prime.
    pub fn at_prime(&self, field: PrimeField) -> Self {
        CremonaGroup { field, ..*self }
    }

    pub fn element(&self, word: Vec<Letter>) -> Result<CremonaElement> {
        for l in &word {
            l.generator.validate()?;
        }
        let mut el = ActionOracle::identity(self);
        self.append(&mut el, &word)?;
        Ok(el)
    }

    fn append(&self, acc: &mut CremonaElement, letters: &[Letter]) -> Result<()> {
        let mut inverse = acc.inverse.clone();
        for &l in letters {
            inverse = inverse.left_compose_letter(l.inverse(), self.degree_cap)?;
        }
        acc.inverse = inverse;
        acc.word.extend_from_slice(letters);
        Ok(())
    }

    /// The map `g₁ ∘ … ∘ gₘ` itself, composed independently of the stored inverse.
    pub fn forward_map(&self, g: &CremonaElement) -> Result<RationalMapP2> {
        RationalMapP2::from_word(self.field, &g.word, self.degree_cap)
    }

    /// `deg g` by restriction to a line.
    pub fn degree_by_restriction(&self, g: &CremonaElement) -> Result<u64> {
        line::degree_by_restriction(self.field, &g.word, self.line_cap)
    }

    /// Upper estimate of the dynamical degree from `deg(gᵏ)`, `k ≤ budget`.
    pub fn dynamical_degree(&self, g: &CremonaElement, budget: usize) -> Result<DynamicalDegree> {
        line::dynamical_degree_by_restriction(self.field, &g.word, budget, self.line_cap)
    }
}

/// Maps the λ estimate attached to a resource error to `log λ`.
fn log_partial(e: Error) -> Error {
    match e {
        Error::Resource {
            message,
            raw_degree,
            partial,
            sequence,
        } => Error::Resource {
            message,
            raw_degree,
            partial: partial.map(f64::ln),
            sequence,
        },
        other => other,
    }
}

/// Classification from a degree sequence `deg(gᵏ)`, `k = 1..`.
///
/// A power of degree one is linear, so `g` is elliptic. Degree growth of
/// a non-elliptic element is either polynomial of order at most two
/// (parabolic) or exponential (loxodromic); polynomial growth shows up as
/// vanishing third differences.
pub fn classify_degree_sequence(degrees: &[u64]) -> IsometryClass {
    if degrees.contains(&1) {
        return IsometryClass::Elliptic;
    }
    if degrees.len() < 5 {
        return IsometryClass::Undetermined;
    }
    let d: Vec<i128> = degrees.iter().map(|&x| x as i128).collect();
    let diff = |v: &[i128]| v.windows(2).map(|w| w[1] - w[0]).collect::<Vec<_>>();
    let (d1, d2, d3) = {
        let d1 = diff(&d);
        let d2 = diff(&d1);
        let d3 = diff(&d2);
        (d1, d2, d3)
    };
    let tail = |v: &[i128]| v[v.len() / 2..].iter().all(|&x| x == 0);
    if tail(&d1) {
        return IsometryClass::Elliptic;
    }
    if tail(&d3) && d2.last().is_some_and(|&x| x >= 0) {
        return IsometryClass::Parabolic;
    }
    let tau = DynamicalDegree::from_degrees(degrees.to_vec()).estimate.ln();
    if tau >= LOXODROMIC_THRESHOLD {
        IsometryClass::Loxodromic
    } else {
        IsometryClass::Undetermined
    }
}

impl ActionOracle for CremonaGroup {
    type Element = CremonaElement;

    fn identity(&self) -> CremonaElement {
        CremonaElement {
            word: Vec::new(),
            inverse: RationalMapP2::identity(self.field),
        }
    }

    fn multiply(&self, g: &CremonaElement, h: &CremonaElement) -> Result<CremonaElement> {
        let mut out = g.clone();
        self.append(&mut out, &h.word)?;
        Ok(out)
    }

    fn multiply_assign(&self, acc: &mut CremonaElement, g: &CremonaElement) -> Result<()> {
        self.append(acc, &g.word)
    }

    fn invert(&self, g: &CremonaElement) -> Result<CremonaElement> {
        Ok(CremonaElement {
            word: g.word.iter().rev().map(|l| l.inverse()).collect(),
            inverse: self.forward_map(g)?,
        })
    }

    fn displacement(&self, g: &CremonaElement) -> Result<f64> {
        Ok((g.degree() as f64).acosh())
    }

    /// `log` of the dynamical degree estimate.
    fn translation_length(&self, g: &CremonaElement, budget: usize) -> Result<f64> {
        if g.word.is_empty() {
            return Ok(0.0);
        }
        self.dynamical_degree(g, budget)
            .map(|d| d.estimate.ln())
            .map_err(log_partial)
    }

    fn classify(&self, g: &CremonaElement, budget: usize) -> Result<IsometryClass> {
        let degrees = match line::power_degrees_by_restriction(self.field, &g.word, budget, self.line_cap) {
            Ok(d) => d,
            Err(Error::Resource { sequence, .. }) => sequence,
            Err(e) => return Err(e),
        };
        Ok(classify_degree_sequence(&degrees))
    }

    fn log_degree(&self, g: &CremonaElement) -> Result<Option<f64>> {
        Ok(Some((g.degree() as f64).ln()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cremona::generator::Generator;
    use crate::geometry::{classify_isometry, translation_length_estimate};

    fn group() -> CremonaGroup {
        CremonaGroup::default()
    }

    fn sigma() -> Letter {
        Generator::Sigma.letter()
    }

    fn h2() -> Letter {
        Generator::Henon { n: 2 }.letter()
    }

    #[test]
    fn products_track_degrees() {
        let g = group();
        let s = g.element(vec![sigma()]).unwrap();
        let ss = g.multiply(&s, &s).unwrap();
        assert_eq!(ss.degree(), 1);
        let h = g.element(vec![h2()]).unwrap();
        let mut acc = g.identity();
        for n in 1..=6 {
            g.multiply_assign(&mut acc, &h).unwrap();
            assert_eq!(acc.degree(), 1 << n);
        }
    }

    #[test]
    fn inversion_preserves_degree() {
        let g = group();
        let l = Letter::new(Generator::Linear { matrix: [[1, 2, 0], [0, 1, 3], [4, 0, 1]] }).unwrap();
        let el = g.element(vec![sigma(), l, h2(), sigma(), h2().inverse()]).unwrap();
        let inv = g.invert(&el).unwrap();
        assert_eq!(inv.degree(), el.degree());
        assert_eq!(g.multiply(&el, &inv).unwrap().degree(), 1);
        assert_eq!(g.degree_by_restriction(&el).unwrap(), el.degree() as u64);
    }

    #[test]
    fn translation_and_classification() {
        let g = group();
        let s = g.element(vec![sigma()]).unwrap();
        assert_eq!(translation_length_estimate(&g, &s, 6).unwrap(), 0.0);
        assert_eq!(classify_isometry(&g, &s, 6).unwrap(), IsometryClass::Elliptic);
        let h = g.element(vec![h2()]).unwrap();
        let tau = translation_length_estimate(&g, &h, 6).unwrap();
        assert!((tau - 2f64.ln()).abs() < 0.02);
        assert_eq!(classify_isometry(&g, &h, 6).unwrap(), IsometryClass::Loxodromic);
        let unipotent = Letter::new(Generator::Monomial { matrix: [[1, 1], [0, 1]] }).unwrap();
        let u = g.element(vec![unipotent]).unwrap();
        assert_eq!(classify_isometry(&g, &u, 8).unwrap(), IsometryClass::Parabolic);
    }

    #[test]
    fn degree_cap_aborts_products() {
        let g = CremonaGroup::new(PrimeField::default(), 8);
        let h = g.element(vec![h2()]).unwrap();
        let mut acc = g.identity();
        for _ in 0..3 {
            g.multiply_assign(&mut acc, &h).unwrap();
        }
        let err = g.multiply_assign(&mut acc, &h).unwrap_err();
        assert!(matches!(err, Error::Resource { raw_degree: Some(16), .. }));
        assert_eq!(acc.degree(), 8);
    }
}
