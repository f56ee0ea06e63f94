//! Homogeneous polynomials in `X, Y, Z` over a prime field.

use std::collections::BTreeMap;
use std::fmt;

use super::bivariate::{self, Bivar};
use super::field::PrimeField;
use super::univariate;
use crate::error::{Error, Result};

/// Exponents `(i, j, l)` of `X^i Y^j Z^l`. Within one polynomial all
/// exponents have the same sum, so the derived lexicographic order is the
/// graded-lex order.
pub type Exponent = [u32; 3];

/// A homogeneous polynomial with an explicit degree, stored sparsely.
/// Zero coefficients are never stored; the zero polynomial keeps its
/// degree tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomPoly3 {
    field: PrimeField,
    degree: u32,
    terms: BTreeMap<Exponent, u64>,
}

impl HomPoly3 {
    pub fn zero(field: PrimeField, degree: u32) -> Self {
        HomPoly3 {
            field,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from integer coefficients, combining repeated
    /// exponents. All exponents must sum to `degree`.
    pub fn from_terms(
        field: PrimeField,
        degree: u32,
        terms: impl IntoIterator<Item = (Exponent, i64)>,
    ) -> Result<Self> {
        let mut out = HomPoly3::zero(field, degree);
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(Error::input(format!(
                    "monomial {e:?} does not have degree {degree}"
                )));
            }
            let slot = out.terms.entry(e).or_insert(0);
            *slot = field.add(*slot, field.from_i64(c));
        }
        out.terms.retain(|_, c| *c != 0);
        Ok(out)
    }

    /// The coordinate `X`, `Y` or `Z` (index 0, 1, 2).
    pub fn var(field: PrimeField, index: usize) -> Self {
        let mut e = [0; 3];
        e[index] = 1;
        HomPoly3::from_terms(field, 1, [(e, 1)]).expect("coordinate has degree one")
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exponent) -> u64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, u64)> + '_ {
        self.terms.iter().rev().map(|(e, c)| (*e, *c))
    }

    fn check_field(&self, other: &HomPoly3) -> Result<()> {
        if self.field != other.field {
            return Err(Error::input(format!(
                "polynomials over different fields: p = {} and p = {}",
                self.field.p(),
                other.field.p()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &HomPoly3) -> Result<HomPoly3> {
        self.check_field(other)?;
        if self.degree != other.degree {
            return Err(Error::input(format!(
                "cannot add polynomials of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let slot = out.terms.entry(*e).or_insert(0);
            *slot = self.field.add(*slot, *c);
        }
        out.terms.retain(|_, c| *c != 0);
        Ok(out)
    }

    pub fn neg(&self) -> HomPoly3 {
        self.scale(self.field.neg(1))
    }

    pub fn sub(&self, other: &HomPoly3) -> Result<HomPoly3> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> HomPoly3 {
        let mut out = HomPoly3::zero(self.field, self.degree);
        if !c.is_multiple_of(self.field.p()) {
            out.terms = self.terms.iter().map(|(e, x)| (*e, self.field.mul(*x, c))).collect();
        }
        out
    }

    /// Product; panics if the fields differ.
    pub fn mul(&self, other: &HomPoly3) -> HomPoly3 {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        Form::from(self).mul(self.field, &Form::from(other)).to_hom(self.field)
    }

    pub fn pow(&self, n: u32) -> HomPoly3 {
        let f = self.field;
        let form = Form::from(self);
        Form {
            degree: self.degree * n,
            poly: form.poly.pow(f, n),
        }
        .to_hom(f)
    }

    /// `self(T₀, T₁, T₂)` for a triple of polynomials of common degree.
    pub fn substitute(&self, triple: [&HomPoly3; 3]) -> Result<HomPoly3> {
        for t in triple {
            self.check_field(t)?;
        }
        let forms = triple.map(Form::from);
        Ok(Form::from(self)
            .substitute(self.field, [&forms[0], &forms[1], &forms[2]])?
            .to_hom(self.field))
    }
}

impl fmt::Display for HomPoly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let c = self.field.to_i64(c);
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mut parts = Vec::new();
            if c.abs() != 1 || e == [0, 0, 0] {
                parts.push(c.abs().to_string());
            }
            for (name, p) in ["X", "Y", "Z"].iter().zip(e) {
                match p {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{p}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Dense form of a homogeneous polynomial: `Z^degree · poly(X/Z, Y/Z)`,
/// with `poly` of total degree at most `degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    pub degree: u32,
    pub poly: Bivar,
}

impl From<&HomPoly3> for Form {
    fn from(h: &HomPoly3) -> Form {
        let d = h.degree as usize;
        let mut rows = vec![Vec::new(); d + 1];
        for (e, c) in &h.terms {
            let row = &mut rows[e[0] as usize];
            if row.is_empty() {
                row.resize(d - e[0] as usize + 1, 0);
            }
            row[e[1] as usize] = *c;
        }
        Form {
            degree: h.degree,
            poly: Bivar::from_rows(rows),
        }
    }
}

impl Form {
    pub fn zero(degree: u32) -> Form {
        Form {
            degree,
            poly: Bivar::zero(),
        }
    }

    pub fn to_hom(&self, field: PrimeField) -> HomPoly3 {
        let mut out = HomPoly3::zero(field, self.degree);
        for (i, row) in self.poly.rows.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    let l = self.degree - (i + j) as u32;
                    out.terms.insert([i as u32, j as u32, l], c);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Multiplicity of `Z` as a factor; `None` for zero.
    pub fn z_valuation(&self) -> Option<u32> {
        self.poly.total_degree().map(|t| self.degree - t as u32)
    }

    pub fn mul(&self, f: PrimeField, other: &Form) -> Form {
        Form {
            degree: self.degree + other.degree,
            poly: self.poly.mul(f, &other.poly),
        }
    }

    /// Leading coefficient in the lexicographic order `X > Y > Z`.
    pub fn leading_coeff(&self) -> Option<u64> {
        self.poly.rows.last().and_then(|r| r.last().copied())
    }

    pub fn scale(&self, f: PrimeField, c: u64) -> Form {
        Form {
            degree: self.degree,
            poly: self.poly.scale(f, c),
        }
    }

    /// `self / g` if `g` divides `self` exactly.
    pub fn exact_div(&self, f: PrimeField, g: &Form) -> Option<Form> {
        let degree = self.degree.checked_sub(g.degree)?;
        let poly = self.poly.exact_div(f, &g.poly)?;
        if poly.total_degree().unwrap_or(0) as u32 > degree {
            return None;
        }
        Some(Form { degree, poly })
    }

    pub fn substitute(&self, f: PrimeField, triple: [&Form; 3]) -> Result<Form> {
        let e = triple[0].degree;
        if triple.iter().any(|t| t.degree != e) {
            return Err(Error::input(format!(
                "substituted polynomials must share a degree, got {:?}",
                triple.map(|t| t.degree)
            )));
        }
        let d = self.degree as usize;
        let mut top = [0usize; 3];
        for (i, row) in self.poly.rows.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    top = [top[0].max(i), top[1].max(j), top[2].max(d - i - j)];
                }
            }
        }
        let powers = |t: &Form, n: usize| {
            let mut out = vec![Bivar::constant(1)];
            for k in 1..=n {
                let next = out[k - 1].mul(f, &t.poly);
                out.push(next);
            }
            out
        };
        let p0 = powers(triple[0], top[0]);
        let p1 = powers(triple[1], top[1]);
        let p2 = powers(triple[2], top[2]);
        let mut total = Bivar::zero();
        for (i, row) in self.poly.rows.iter().enumerate() {
            let mut inner = Bivar::zero();
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    let l = d - i - j;
                    inner = inner.add(f, &p1[j].mul(f, &p2[l]).scale(f, c));
                }
            }
            if !inner.is_zero() {
                total = total.add(f, &p0[i].mul(f, &inner));
            }
        }
        Ok(Form {
            degree: self.degree * e,
            poly: total,
        })
    }
}

/// Greatest common divisor of up to three forms, scaled to have leading
/// coefficient one. Fails only if every input is zero.
pub fn gcd_forms(f: PrimeField, forms: &[&Form]) -> Result<Form> {
    let nonzero: Vec<&Form> = forms.iter().copied().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::input("gcd of all-zero polynomials"));
    }
    let z = nonzero.iter().filter_map(|g| g.z_valuation()).min().unwrap();
    let polys: Vec<&Bivar> = nonzero.iter().map(|g| &g.poly).collect();
    if coprime_by_specialization(f, &polys) {
        return Ok(Form {
            degree: z,
            poly: Bivar::constant(1),
        });
    }
    let g = match polys.as_slice() {
        [a] => (*a).clone(),
        [a, b] => bivariate::gcd(f, a, b)?,
        [a, b, c, ..] => {
            // gcd(a, b + r·c) contains gcd(a, b, c) and equals it as soon
            // as it also divides c.
            let combined = b.add(f, &c.scale(f, 7919));
            let g = bivariate::gcd(f, a, &combined)?;
            if !combined.is_zero() && c.exact_div(f, &g).is_some() {
                g
            } else {
                bivariate::gcd(f, &bivariate::gcd(f, a, b)?, c)?
            }
        }
        [] => unreachable!(),
    };
    let degree = z + g.total_degree().expect("gcd of nonzero polynomials") as u32;
    let g = Form { degree, poly: g };
    let lc = g.leading_coeff().unwrap();
    Ok(g.scale(f, f.inv(lc)))
}

/// A sufficient test for the polynomials having no common factor of
/// positive degree. A common factor `g` survives specialization at `x = x₀`
/// whenever `g` involves only `y`, and at `y = y₀` whenever `g` involves `x`
/// and `y₀` is not a root of `lc_x(polys[0])`, which `lc_x(g)` divides.
fn coprime_by_specialization(f: PrimeField, polys: &[&Bivar]) -> bool {
    if polys.iter().any(|p| p.total_degree() == Some(0)) {
        return true;
    }
    let lead = polys[0].rows.last().expect("nonzero polynomial");
    let Some(y0) = (1..64u64).find(|&y| univariate::eval(f, lead, y) != 0) else {
        return false;
    };
    let images_y = polys.iter().map(|p| p.eval_y(f, y0));
    if degree_of_gcd(f, images_y) != Some(0) {
        return false;
    }
    let images_x = polys.iter().map(|p| eval_x(f, p, 3));
    degree_of_gcd(f, images_x) == Some(0)
}

fn degree_of_gcd(f: PrimeField, polys: impl Iterator<Item = Vec<u64>>) -> Option<usize> {
    let mut g: Vec<u64> = Vec::new();
    for p in polys {
        g = univariate::gcd(f, &g, &p);
        if univariate::degree(&g) == Some(0) {
            return Some(0);
        }
    }
    univariate::degree(&g)
}

/// `p(x₀, y)` as a polynomial in `y`.
fn eval_x(f: PrimeField, p: &Bivar, x0: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for row in p.rows.iter().rev() {
        out = univariate::scale(f, &out, x0);
        out = univariate::add(f, &out, row);
    }
    univariate::trim(&mut out);
    out
}

/// Divides three forms by their gcd (checked by exact division) and scales
/// so that the first nonzero coefficient in `X > Y > Z` lex order, reading
/// the forms in order, is one.
pub fn normalize_forms(f: PrimeField, forms: [&Form; 3]) -> Result<[Form; 3]> {
    let g = gcd_forms(f, &forms)?;
    let mut out = Vec::with_capacity(3);
    for h in forms {
        if h.is_zero() {
            out.push(Form::zero(h.degree - g.degree));
        } else {
            let q = h.exact_div(f, &g).ok_or_else(|| {
                Error::input("internal error: gcd does not divide its input")
            })?;
            out.push(q);
        }
    }
    let lc = out.iter().find_map(Form::leading_coeff).unwrap();
    let inv = f.inv(lc);
    Ok([0, 1, 2].map(|k| out[k].scale(f, inv)))
}

fn check_triple(p: &HomPoly3, q: &HomPoly3, r: &HomPoly3) -> Result<()> {
    p.check_field(q)?;
    p.check_field(r)?;
    if p.degree != q.degree || p.degree != r.degree {
        return Err(Error::input("triple components must share a degree"));
    }
    if p.is_zero() && q.is_zero() && r.is_zero() {
        return Err(Error::input("all-zero polynomial triple"));
    }
    Ok(())
}

/// Greatest common divisor of three polynomials, with leading coefficient
/// one in graded-lex order.
pub fn gcd3(p: &HomPoly3, q: &HomPoly3, r: &HomPoly3) -> Result<HomPoly3> {
    p.check_field(q)?;
    p.check_field(r)?;
    let forms = [Form::from(p), Form::from(q), Form::from(r)];
    Ok(gcd_forms(p.field, &[&forms[0], &forms[1], &forms[2]])?.to_hom(p.field))
}

pub fn normalize_triple(p: &HomPoly3, q: &HomPoly3, r: &HomPoly3) -> Result<[HomPoly3; 3]> {
    check_triple(p, q, r)?;
    let forms = [Form::from(p), Form::from(q), Form::from(r)];
    let out = normalize_forms(p.field, [&forms[0], &forms[1], &forms[2]])?;
    Ok(out.map(|g| g.to_hom(p.field)))
}
