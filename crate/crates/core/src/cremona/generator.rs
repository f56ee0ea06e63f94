//! Named generators of the Cremona group and their inverses.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Form, HomPoly3, PrimeField};

/// A generator description independent of the prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Generator {
    /// `[X:Y:Z] ↦ [YZ : XZ : XY]`.
    Sigma,
    /// The Hénon map `(x, y) ↦ (y, yⁿ − x)`.
    Henon { n: u32 },
    /// `[X:Y:Z] ↦ M·(X, Y, Z)` with integer entries reduced modulo the prime.
    Linear { matrix: [[i64; 3]; 3] },
    /// `(x, y) ↦ (x^a y^b, x^c y^d)` for `M = [[a, b], [c, d]]`, `|det M| = 1`.
    Monomial { matrix: [[i64; 2]; 2] },
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: Generator,
    #[serde(default)]
    pub inverted: bool,
}

impl Generator {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Generator::Henon { n } if n < 2 => {
                Err(Error::input(format!("Hénon degree must be >= 2, got {n}")))
            }
            Generator::Monomial { matrix } => {
                let det = det2(matrix);
                if det.abs() != 1 {
                    return Err(Error::input(format!(
                        "monomial matrix {matrix:?} has determinant {det}, not ±1"
                    )));
                }
                Ok(())
            }
            Generator::Linear { matrix } if det3(matrix) == 0 => Err(Error::input(format!(
                "linear matrix {matrix:?} is singular"
            ))),
            _ => Ok(()),
        }
    }

    pub fn letter(self) -> Letter {
        Letter {
            generator: self,
            inverted: false,
        }
    }
}

impl Letter {
    pub fn new(generator: Generator) -> Result<Letter> {
        generator.validate()?;
        Ok(generator.letter())
    }

    pub fn inverse(self) -> Letter {
        let inverted = match self.generator {
            Generator::Sigma => false,
            _ => !self.inverted,
        };
        Letter { inverted, ..self }
    }

    pub fn degree(&self) -> u32 {
        match self.generator {
            Generator::Sigma => 2,
            Generator::Henon { n } => n,
            Generator::Linear { .. } => 1,
            Generator::Monomial { matrix } => {
                let m = if self.inverted { inverse2(matrix) } else { matrix };
                monomial_degree(m) as u32
            }
        }
    }

    /// The defining triple over `field`, normalized.
    pub fn components(&self, field: PrimeField) -> Result<[Form; 3]> {
        let hom = |d: u32, terms: &[([u32; 3], i64)]| {
            HomPoly3::from_terms(field, d, terms.iter().copied()).map(|h| Form::from(&h))
        };
        match (self.generator, self.inverted) {
            (Generator::Sigma, _) => Ok([
                hom(2, &[([0, 1, 1], 1)])?,
                hom(2, &[([1, 0, 1], 1)])?,
                hom(2, &[([1, 1, 0], 1)])?,
            ]),
            (Generator::Henon { n }, false) => Ok([
                hom(n, &[([0, 1, n - 1], 1)])?,
                hom(n, &[([0, n, 0], 1), ([1, 0, n - 1], -1)])?,
                hom(n, &[([0, 0, n], 1)])?,
            ]),
            (Generator::Henon { n }, true) => Ok([
                hom(n, &[([n, 0, 0], 1), ([0, 1, n - 1], -1)])?,
                hom(n, &[([1, 0, n - 1], 1)])?,
                hom(n, &[([0, 0, n], 1)])?,
            ]),
            (Generator::Linear { matrix }, inverted) => {
                let mut m = [[0u64; 3]; 3];
                for (i, row) in matrix.iter().enumerate() {
                    for (j, &x) in row.iter().enumerate() {
                        m[i][j] = field.from_i64(x);
                    }
                }
                if inverted {
                    m = invert3(field, m)?;
                } else if det3_mod(field, m) == 0 {
                    return Err(singular_mod(field, det3(matrix)));
                }
                let rows = m.map(|row| {
                    let terms = [
                        ([1, 0, 0], field.to_i64(row[0])),
                        ([0, 1, 0], field.to_i64(row[1])),
                        ([0, 0, 1], field.to_i64(row[2])),
                    ];
                    hom(1, &terms)
                });
                let [a, b, c] = rows;
                Ok([a?, b?, c?])
            }
            (Generator::Monomial { matrix }, inverted) => {
                let m = if inverted { inverse2(matrix) } else { matrix };
                let exps = monomial_exponents(m);
                let d = monomial_degree(m) as u32;
                Ok([
                    hom(d, &[(exps[0], 1)])?,
                    hom(d, &[(exps[1], 1)])?,
                    hom(d, &[(exps[2], 1)])?,
                ])
            }
        }
    }

    pub fn as_homogeneous(&self, field: PrimeField) -> Result<[HomPoly3; 3]> {
        Ok(self.components(field)?.map(|c| c.to_hom(field)))
    }
}

fn singular_mod(field: PrimeField, det: i128) -> Error {
    if det == 0 {
        Error::input("linear matrix is singular")
    } else {
        Error::BadPrime { prime: field.p() }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.generator {
            Generator::Sigma => write!(f, "sigma")?,
            Generator::Henon { n } => write!(f, "henon({n})")?,
            Generator::Linear { matrix } => write!(f, "linear{matrix:?}")?,
            Generator::Monomial { matrix } => write!(f, "monomial{matrix:?}")?,
        }
        if self.inverted {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

pub(crate) fn det2(m: [[i64; 2]; 2]) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub(crate) fn inverse2(m: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let d = det2(m);
    [[d * m[1][1], -d * m[0][1]], [-d * m[1][0], d * m[0][0]]]
}

fn det3(m: [[i64; 3]; 3]) -> i128 {
    let m = m.map(|r| r.map(i128::from));
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn det3_mod(f: PrimeField, m: [[u64; 3]; 3]) -> u64 {
    let minor = |a: usize, b: usize, c: usize, d: usize| {
        f.sub(f.mul(m[1][a], m[2][b]), f.mul(m[1][c], m[2][d]))
    };
    let t0 = f.mul(m[0][0], minor(1, 2, 2, 1));
    let t1 = f.mul(m[0][1], minor(0, 2, 2, 0));
    let t2 = f.mul(m[0][2], minor(0, 1, 1, 0));
    f.add(f.sub(t0, t1), t2)
}

/// Inverse by the adjugate.
fn invert3(f: PrimeField, m: [[u64; 3]; 3]) -> Result<[[u64; 3]; 3]> {
    let det = det3_mod(f, m);
    if det == 0 {
        return Err(Error::input(format!("linear matrix is singular modulo {}", f.p())));
    }
    let inv_det = f.inv(det);
    let mut out = [[0u64; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            // cofactor of entry (j, i)
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            let cof = f.sub(f.mul(m[r0][c0], m[r1][c1]), f.mul(m[r0][c1], m[r1][c0]));
            *slot = f.mul(cof, inv_det);
        }
    }
    Ok(out)
}

/// Exponents of the three monomials `[x^a y^b : x^c y^d : 1]` after
/// homogenizing and clearing negative powers.
pub(crate) fn monomial_exponents(m: [[i64; 2]; 2]) -> [[u32; 3]; 3] {
    let rows = [
        [m[0][0], m[0][1], -m[0][0] - m[0][1]],
        [m[1][0], m[1][1], -m[1][0] - m[1][1]],
        [0, 0, 0],
    ];
    let shift: [i64; 3] = std::array::from_fn(|k| -rows.iter().map(|r| r[k]).min().unwrap());
    rows.map(|r| std::array::from_fn(|k| (r[k] + shift[k]) as u32))
}

/// Degree of the monomial map of `m`, from the exponent matrix alone.
pub(crate) fn monomial_degree(m: [[i64; 2]; 2]) -> u64 {
    let m = m.map(|r| r.map(i128::from));
    let deg = 0.max(-m[0][0]).max(-m[1][0])
        + 0.max(-m[0][1]).max(-m[1][1])
        + 0.max(m[0][0] + m[0][1]).max(m[1][0] + m[1][1]);
    deg as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_degrees() {
        assert_eq!(monomial_degree([[1, 0], [0, 1]]), 1);
        assert_eq!(monomial_degree([[1, 1], [0, 1]]), 2);
        assert_eq!(monomial_degree([[2, 1], [1, 1]]), 3);
        assert_eq!(monomial_degree([[-1, 0], [0, -1]]), 2);
        assert_eq!(monomial_exponents([[-1, 0], [0, -1]]), [[0, 1, 1], [1, 0, 1], [1, 1, 0]]);
    }

    #[test]
    fn linear_inverse() {
        let f = PrimeField::default();
        let m = [[2, 1, 0], [0, 1, 3], [1, 0, 1]].map(|r: [i64; 3]| r.map(|x| f.from_i64(x)));
        let inv = invert3(f, m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s = (0..3).fold(0, |acc, k| f.add(acc, f.mul(m[i][k], inv[k][j])));
                assert_eq!(s, u64::from(i == j));
            }
        }
    }

    #[test]
    fn validation() {
        assert!(Letter::new(Generator::Henon { n: 1 }).is_err());
        assert!(Letter::new(Generator::Monomial { matrix: [[2, 0], [0, 1]] }).is_err());
        assert!(Letter::new(Generator::Linear { matrix: [[1, 2, 3], [2, 4, 6], [0, 0, 1]] }).is_err());
        assert_eq!(Letter::new(Generator::Sigma).unwrap().inverse(), Generator::Sigma.letter());
    }
}
