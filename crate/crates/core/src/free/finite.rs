//! Small finite groups given by Cayley tables, and their automorphisms.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};

/// A finite group on `0..order` with identity `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
}

impl FiniteGroup {
    /// Validates a Cayley table (row-major, `table[a * n + b] = a·b`).
    pub fn from_table(order: usize, table: Vec<u32>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::input("Cayley table must be order × order"));
        }
        if table.iter().any(|&x| x as usize >= order) {
            return Err(Error::input("Cayley table entry out of range"));
        }
        for a in 0..order {
            if table[a] as usize != a || table[a * order] as usize != a {
                return Err(Error::input("element 0 must be the identity"));
            }
        }
        let mut inverses = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverses[a] = b as u32;
                }
            }
            if inverses[a] == u32::MAX {
                return Err(Error::input(format!("element {a} has no inverse")));
            }
        }
        let g = FiniteGroup {
            order,
            table,
            inverses,
        };
        for a in 0..order as u32 {
            for b in 0..order as u32 {
                for c in 0..order as u32 {
                    if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                        return Err(Error::input("Cayley table is not associative"));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("cyclic group order must be positive"));
        }
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        Ok(FiniteGroup {
            order: n,
            table,
            inverses: (0..n).map(|a| ((n - a) % n) as u32).collect(),
        })
    }

    /// Dihedral group of order `2n`: element `r^i` is `i`, `s·r^i` is `n + i`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::input("dihedral group needs n >= 2"));
        }
        let encode = |flip: bool, rot: usize| if flip { n + rot % n } else { rot % n };
        let decode = |x: usize| (x >= n, x % n);
        let mut table = Vec::with_capacity(4 * n * n);
        for a in 0..2 * n {
            for b in 0..2 * n {
                let (fa, ra) = decode(a);
                let (fb, rb) = decode(b);
                // (s^fa r^ra)(s^fb r^rb) = s^(fa+fb) r^(±ra + rb)
                let rot = if fb { n - ra + rb } else { ra + rb };
                table.push(encode(fa ^ fb, rot) as u32);
            }
        }
        FiniteGroup::from_table(2 * n, table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn contains(&self, a: u32) -> bool {
        (a as usize) < self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32).all(|a| (0..self.order as u32).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugation `b ↦ a·b·a⁻¹`.
    pub fn inner(&self, a: u32) -> Automorphism {
        let ai = self.inv(a);
        Automorphism((0..self.order as u32).map(|b| self.mul(self.mul(a, b), ai)).collect())
    }
}

/// An automorphism of a [`FiniteGroup`], stored as the image of each element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism(Vec<u32>);

impl Automorphism {
    pub fn identity(order: usize) -> Self {
        Automorphism((0..order as u32).collect())
    }

    /// Validates that `images` defines an automorphism of `group`.
    pub fn new(group: &FiniteGroup, images: Vec<u32>) -> Result<Self> {
        let n = group.order();
        if images.len() != n {
            return Err(Error::input("automorphism must list an image for every element"));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::input("automorphism is not a bijection"));
            }
        }
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                if images[group.mul(a, b) as usize] != group.mul(images[a as usize], images[b as usize]) {
                    return Err(Error::input("map is not a homomorphism"));
                }
            }
        }
        Ok(Automorphism(images))
    }

    /// Group inversion `a ↦ a⁻¹`, an automorphism exactly when the group is abelian.
    pub fn inversion(group: &FiniteGroup) -> Result<Self> {
        Automorphism::new(group, (0..group.order() as u32).map(|a| group.inv(a)).collect())
    }

    pub fn apply(&self, a: u32) -> u32 {
        self.0[a as usize]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Automorphism {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Automorphism(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }
}

/// The subgroup of `Aut(A)` generated by `generators`, enumerated by BFS.
pub fn generated_subgroup(order: usize, generators: &[Automorphism]) -> Vec<Automorphism> {
    let id = Automorphism::identity(order);
    let mut seen: HashSet<Automorphism> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(a) = queue.pop_front() {
        for g in generators {
            let b = g.compose(&a);
            if seen.insert(b.clone()) {
                queue.push_back(b);
            }
        }
        out.push(a);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_arithmetic() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(z3.mul(2, 2), 1);
        assert_eq!(z3.inv(1), 2);
        assert!(z3.is_abelian());
    }

    #[test]
    fn dihedral_is_a_nonabelian_group() {
        let d3 = FiniteGroup::dihedral(3).unwrap();
        assert_eq!(d3.order(), 6);
        assert!(!d3.is_abelian());
        assert!(Automorphism::inversion(&d3).is_err());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1, 1]).is_err());
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn automorphism_validation() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert!(Automorphism::new(&z3, vec![0, 2, 1]).is_ok());
        assert!(Automorphism::new(&z3, vec![1, 2, 0]).is_err());
        assert!(Automorphism::new(&z3, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn aut_z3_generated_by_inversion_has_order_two() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let inv = Automorphism::inversion(&z3).unwrap();
        assert_eq!(generated_subgroup(3, &[inv.clone(), Automorphism::identity(3)]).len(), 2);
        assert!(inv.compose(&inv).is_identity());
    }

    #[test]
    fn inner_automorphisms_of_s3_form_s3() {
        let d3 = FiniteGroup::dihedral(3).unwrap();
        let inners: Vec<_> = (0..6).map(|a| d3.inner(a)).collect();
        assert_eq!(generated_subgroup(6, &inners).len(), 6);
    }
}
