//! Dense bivariate polynomials over `F_p`, stored as polynomials in `x`
//! whose coefficients are polynomials in `y`: `rows[i][j]` is the
//! coefficient of `xⁱ yʲ`. These are the dehomogenizations (`Z = 1`) of
//! [`HomPoly3`](super::HomPoly3) values and carry all heavy arithmetic.

use super::field::PrimeField;
use super::univariate as uni;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bivar {
    pub rows: Vec<Vec<u64>>,
}

impl Bivar {
    pub fn zero() -> Self {
        Bivar { rows: Vec::new() }
    }

    pub fn constant(c: u64) -> Self {
        Bivar::from_rows(vec![vec![c]])
    }

    pub fn from_rows(mut rows: Vec<Vec<u64>>) -> Self {
        for r in &mut rows {
            uni::trim(r);
        }
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        Bivar { rows }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn deg_y(&self) -> usize {
        self.rows.iter().map(|r| r.len().saturating_sub(1)).max().unwrap_or(0)
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_empty())
            .map(|(i, r)| i + r.len() - 1)
            .max()
    }

    pub fn term_count(&self) -> usize {
        self.rows.iter().map(|r| r.iter().filter(|&&c| c != 0).count()).sum()
    }

    pub fn add(&self, f: PrimeField, other: &Bivar) -> Bivar {
        let n = self.rows.len().max(other.rows.len());
        let empty = Vec::new();
        Bivar::from_rows(
            (0..n)
                .map(|i| {
                    uni::add(
                        f,
                        self.rows.get(i).unwrap_or(&empty),
                        other.rows.get(i).unwrap_or(&empty),
                    )
                })
                .collect(),
        )
    }

    pub fn scale(&self, f: PrimeField, c: u64) -> Bivar {
        Bivar::from_rows(self.rows.iter().map(|r| uni::scale(f, r, c)).collect())
    }

    /// Kronecker substitution `xⁱyʲ ↦ t^(i·stride + j)`.
    fn pack(&self, stride: usize) -> Vec<u64> {
        let mut out = vec![0; self.rows.len() * stride];
        for (i, r) in self.rows.iter().enumerate() {
            out[i * stride..i * stride + r.len()].copy_from_slice(r);
        }
        uni::trim(&mut out);
        out
    }

    fn unpack(packed: &[u64], stride: usize) -> Bivar {
        Bivar::from_rows(packed.chunks(stride).map(<[u64]>::to_vec).collect())
    }

    pub fn mul(&self, f: PrimeField, other: &Bivar) -> Bivar {
        if self.is_zero() || other.is_zero() {
            return Bivar::zero();
        }
        if self.rows.len() == 1 && other.rows.len() == 1 {
            return Bivar::from_rows(vec![uni::mul(f, &self.rows[0], &other.rows[0])]);
        }
        let stride = self.deg_y() + other.deg_y() + 1;
        let prod = uni::mul(f, &self.pack(stride), &other.pack(stride));
        Bivar::unpack(&prod, stride)
    }

    pub fn pow(&self, f: PrimeField, e: u32) -> Bivar {
        let mut out = Bivar::constant(1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base);
            }
        }
        out
    }

    /// `self / g` if the division is exact.
    pub fn exact_div(&self, f: PrimeField, g: &Bivar) -> Option<Bivar> {
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Bivar::zero());
        }
        // Any exact quotient has y-degree ≤ deg_y(self) - deg_y(g), so the
        // packed product does not wrap at this stride.
        let stride = self.deg_y() + 1;
        if g.deg_y() >= stride {
            return None;
        }
        let q = uni::exact_div(f, &self.pack(stride), &g.pack(stride))?;
        let q = Bivar::unpack(&q, stride);
        (q.deg_y() + g.deg_y() < stride).then_some(q)
    }

    /// Coefficient polynomial in `x` at `y = y0`.
    pub fn eval_y(&self, f: PrimeField, y0: u64) -> Vec<u64> {
        let mut out: Vec<u64> = self.rows.iter().map(|r| uni::eval(f, r, y0)).collect();
        uni::trim(&mut out);
        out
    }

    /// Monic gcd of the coefficients in `y`.
    fn content(&self, f: PrimeField) -> Vec<u64> {
        let mut g: Vec<u64> = Vec::new();
        for r in &self.rows {
            g = uni::gcd(f, &g, r);
            if g.len() == 1 {
                break;
            }
        }
        g
    }

    fn divide_rows(&self, f: PrimeField, c: &[u64]) -> Bivar {
        if c.len() <= 1 {
            return self.scale(f, f.inv(c[0]));
        }
        Bivar::from_rows(
            self.rows
                .iter()
                .map(|r| uni::exact_div(f, r, c).expect("content divides every coefficient"))
                .collect(),
        )
    }

    fn times_univariate_y(&self, f: PrimeField, c: &[u64]) -> Bivar {
        Bivar::from_rows(self.rows.iter().map(|r| uni::mul(f, r, c)).collect())
    }
}

/// Greatest common divisor in `F_p[x, y]`, up to a scalar.
///
/// Brown's dense modular algorithm: contents are split off in `F_p[y]`;
/// the primitive gcd is interpolated in `y` from univariate gcds at
/// evaluation points, scaled by the gcd of leading coefficients, and
/// accepted only after exact trial division of both inputs.
pub fn gcd(f: PrimeField, a: &Bivar, b: &Bivar) -> Result<Bivar> {
    if a.is_zero() {
        return Ok(b.clone());
    }
    if b.is_zero() {
        return Ok(a.clone());
    }
    let (ca, cb) = (a.content(f), b.content(f));
    let c = uni::gcd(f, &ca, &cb);
    let c_bivar = Bivar::from_rows(vec![c.clone()]);
    let (a, b) = (a.divide_rows(f, &ca), b.divide_rows(f, &cb));
    if a.deg_x() == Some(0) || b.deg_x() == Some(0) {
        return Ok(c_bivar);
    }
    let (lca, lcb) = (a.rows.last().unwrap(), b.rows.last().unwrap());
    let gamma = uni::gcd(f, lca, lcb);
    let bound = uni::degree(&gamma).unwrap_or(0) + a.deg_y().min(b.deg_y());

    let mut interp: Option<Interpolant> = None;
    let mut y0 = 0u64;
    let max_points = 8 * (bound + 1) + 64;
    for _ in 0..max_points {
        y0 = loop {
            y0 += 1;
            if y0 >= f.p() {
                return Err(Error::BadPrime { prime: f.p() });
            }
            if uni::eval(f, lca, y0) != 0 && uni::eval(f, lcb, y0) != 0 {
                break y0;
            }
        };
        let image = uni::gcd(f, &a.eval_y(f, y0), &b.eval_y(f, y0));
        let deg = image.len() - 1;
        if deg == 0 {
            return Ok(c_bivar);
        }
        let image = uni::scale(f, &image, uni::eval(f, &gamma, y0));
        match &mut interp {
            Some(h) if deg > h.deg_x => continue,
            Some(h) if deg == h.deg_x => h.add_point(f, y0, &image),
            _ => interp = Some(Interpolant::new(f, y0, &image)),
        }
        let h = interp.as_ref().unwrap();
        if h.points > bound {
            let candidate = Bivar::from_rows(h.rows.clone());
            let candidate = candidate.divide_rows(f, &candidate.content(f));
            if a.exact_div(f, &candidate).is_some() && b.exact_div(f, &candidate).is_some() {
                return Ok(candidate.times_univariate_y(f, &c));
            }
            interp = None;
        }
    }
    Err(Error::BadPrime { prime: f.p() })
}

/// Newton interpolation in `y` of a polynomial in `x`, coefficientwise.
struct Interpolant {
    deg_x: usize,
    rows: Vec<Vec<u64>>,
    modulus: Vec<u64>,
    points: usize,
}

impl Interpolant {
    fn new(f: PrimeField, y0: u64, image: &[u64]) -> Self {
        Interpolant {
            deg_x: image.len() - 1,
            rows: image.iter().map(|&c| if c == 0 { vec![] } else { vec![c] }).collect(),
            modulus: vec![f.neg(y0), 1],
            points: 1,
        }
    }

    fn add_point(&mut self, f: PrimeField, y0: u64, image: &[u64]) {
        let inv_m = f.inv(uni::eval(f, &self.modulus, y0));
        for (row, &v) in self.rows.iter_mut().zip(image) {
            let c = f.mul(f.sub(v, uni::eval(f, row, y0)), inv_m);
            if c != 0 {
                *row = uni::add(f, row, &uni::scale(f, &self.modulus, c));
            }
        }
        self.modulus = uni::mul(f, &self.modulus, &[f.neg(y0), 1]);
        self.points += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    /// Small deterministic pseudo-random bivariate polynomial of total degree ≤ d.
    fn sample(d: usize, seed: u64) -> Bivar {
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % 1_000_003
        };
        Bivar::from_rows((0..=d).map(|i| (0..=d - i).map(|_| next()).collect()).collect())
    }

    #[test]
    fn multiplication_and_exact_division_round_trip() {
        let (a, b) = (sample(9, 1), sample(6, 2));
        let prod = a.mul(f(), &b);
        assert_eq!(prod.total_degree(), Some(15));
        assert_eq!(prod.exact_div(f(), &b), Some(a.clone()));
        let bumped = prod.add(f(), &Bivar::constant(1));
        assert_eq!(bumped.exact_div(f(), &b), None);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let g = sample(4, 3);
        let a = sample(5, 4).mul(f(), &g);
        let b = sample(3, 5).mul(f(), &g);
        let h = gcd(f(), &a, &b).unwrap();
        assert_eq!(h.total_degree(), Some(4));
        assert!(h.exact_div(f(), &g).is_some());
        assert!(g.exact_div(f(), &h).is_some());
    }

    #[test]
    fn gcd_handles_content_in_y() {
        // (y + 1)(x + y) and (y + 1)(x - y)
        let yp1 = Bivar::from_rows(vec![vec![1, 1]]);
        let a = yp1.mul(f(), &Bivar::from_rows(vec![vec![0, 1], vec![1]]));
        let b = yp1.mul(f(), &Bivar::from_rows(vec![vec![0, f().neg(1)], vec![1]]));
        let h = gcd(f(), &a, &b).unwrap();
        assert_eq!(h.total_degree(), Some(1));
        assert!(h.exact_div(f(), &yp1).is_some());
    }

    #[test]
    fn coprime_gcd_is_constant() {
        let h = gcd(f(), &sample(6, 7), &sample(5, 8)).unwrap();
        assert_eq!(h.total_degree(), Some(0));
    }
}
