//! Finite-support probability measures on group elements.

use num_rational::Ratio;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ActionOracle;

/// Largest common denominator accepted for the weights. Keeps alias-table
/// arithmetic exact in `u64`.
const MAX_DENOMINATOR: u128 = 1 << 40;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MeasureFlags {
    /// Support closed under inverses with matching weights (verified).
    pub symmetric: bool,
    /// Support closed under inverses, so the generated semigroup is a group.
    pub reversible: bool,
    /// `max d(x, g·x)` over the support.
    pub displacement_bound: Option<f64>,
    /// User attestations; not checked.
    pub attested_non_elementary: bool,
    pub attested_wpd: bool,
}

#[derive(Debug, Clone)]
pub struct FiniteMeasure<E> {
    support: Vec<E>,
    tags: Vec<String>,
    weights: Vec<Ratio<u64>>,
    alias: AliasTable,
    pub flags: MeasureFlags,
}

impl<E: Clone> FiniteMeasure<E> {
    /// Weights must be positive and sum to exactly one.
    pub fn new(support: Vec<E>, tags: Vec<String>, weights: Vec<Ratio<u64>>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::input("measure support is empty"));
        }
        if support.len() != weights.len() || support.len() != tags.len() {
            return Err(Error::input("support, tags and weights must have equal length"));
        }
        if let Some(i) = weights.iter().position(|w| *w.numer() == 0) {
            return Err(Error::input(format!("weight of {} is not positive", tags[i])));
        }
        let denom = weights
            .iter()
            .try_fold(1u128, |acc, w| {
                let l = lcm(acc, *w.denom() as u128);
                (l <= MAX_DENOMINATOR).then_some(l)
            })
            .ok_or_else(|| Error::input("weight denominators too large"))?;
        let scaled: Vec<u64> = weights
            .iter()
            .map(|w| (*w.numer() as u128 * (denom / *w.denom() as u128)) as u64)
            .collect();
        let total: u128 = scaled.iter().map(|&s| s as u128).sum();
        if total != denom {
            let sum = Ratio::new(total as u64, denom as u64);
            return Err(Error::input(format!("weights sum to {sum}, not 1")));
        }
        let alias = AliasTable::new(&scaled);
        Ok(FiniteMeasure {
            support,
            tags,
            weights,
            alias,
            flags: MeasureFlags::default(),
        })
    }

    pub fn uniform(support: Vec<E>, tags: Vec<String>) -> Result<Self> {
        let n = support.len() as u64;
        if n == 0 {
            return Err(Error::input("measure support is empty"));
        }
        let weights = vec![Ratio::new(1, n); support.len()];
        FiniteMeasure::new(support, tags, weights)
    }

    pub fn point_mass(element: E, tag: impl Into<String>) -> Self {
        FiniteMeasure::new(vec![element], vec![tag.into()], vec![Ratio::from_integer(1)])
            .expect("point mass is a valid measure")
    }

    pub fn support(&self) -> &[E] {
        &self.support
    }

    pub fn tags(&self) -> &[String] {
        &self.tags
    }

    pub fn weights(&self) -> &[Ratio<u64>] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Draws a support index.
    pub fn sample_index<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.alias.sample(rng)
    }

    pub fn is_uniform(&self) -> bool {
        self.weights.iter().all(|w| *w == self.weights[0])
    }

    /// The same weights on a different (e.g. re-instantiated) support.
    pub fn map_support<F, T>(&self, f: F) -> Result<FiniteMeasure<T>>
    where
        F: FnMut(&E) -> Result<T>,
        T: Clone,
    {
        let support = self.support.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(FiniteMeasure {
            support,
            tags: self.tags.clone(),
            weights: self.weights.clone(),
            alias: self.alias.clone(),
            flags: self.flags.clone(),
        })
    }
}

impl<E: Clone + PartialEq> FiniteMeasure<E> {
    fn position(&self, g: &E) -> Option<usize> {
        self.support.iter().position(|h| h == g)
    }

    pub fn is_reversible<O: ActionOracle<Element = E> + ?Sized>(&self, oracle: &O) -> Result<bool> {
        for g in &self.support {
            if self.position(&oracle.invert(g)?).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `μ(g) = μ(g⁻¹)` for every support element.
    pub fn is_symmetric<O: ActionOracle<Element = E> + ?Sized>(&self, oracle: &O) -> Result<bool> {
        for (g, w) in self.support.iter().zip(&self.weights) {
            match self.position(&oracle.invert(g)?) {
                Some(j) if self.weights[j] == *w => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Computes the verifiable flags. `claimed_symmetric` must agree with
    /// the support, otherwise the measure is rejected.
    pub fn with_verified_flags<O: ActionOracle<Element = E> + ?Sized>(
        mut self,
        oracle: &O,
        claimed_symmetric: Option<bool>,
    ) -> Result<Self> {
        let symmetric = self.is_symmetric(oracle)?;
        if claimed_symmetric == Some(true) && !symmetric {
            return Err(Error::input("measure flagged symmetric but μ(g) ≠ μ(g⁻¹)"));
        }
        self.flags.symmetric = symmetric;
        self.flags.reversible = self.is_reversible(oracle)?;
        let mut bound = 0.0f64;
        for g in &self.support {
            bound = bound.max(oracle.displacement(g)?);
        }
        self.flags.displacement_bound = Some(bound);
        Ok(self)
    }
}

impl<E: Clone> FiniteMeasure<E> {
    /// The reflected measure `μ̌(g) = μ(g⁻¹)`, with support indices preserved.
    pub fn reflected<O: ActionOracle<Element = E> + ?Sized>(&self, oracle: &O) -> Result<Self> {
        let mut out = self.map_support(|g| oracle.invert(g))?;
        out.tags = self.tags.iter().map(|t| format!("inv({t})")).collect();
        Ok(out)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

/// Vose alias table over exact integer weights: column `i` keeps itself
/// with probability `threshold[i] / total` and otherwise yields `alias[i]`.
#[derive(Debug, Clone)]
pub struct AliasTable {
    threshold: Vec<u64>,
    alias: Vec<usize>,
    total: u64,
}

impl AliasTable {
    pub fn new(weights: &[u64]) -> Self {
        let n = weights.len();
        let total: u64 = weights.iter().sum();
        // scaled[i] = n·w_i in units where a full column holds `total`.
        let mut scaled: Vec<u128> = weights.iter().map(|&w| w as u128 * n as u128).collect();
        let full = total as u128;
        let mut threshold = vec![total; n];
        let mut alias: Vec<usize> = (0..n).collect();
        let (mut small, mut large): (Vec<usize>, Vec<usize>) =
            (0..n).partition(|&i| scaled[i] < full);
        while !small.is_empty() && !large.is_empty() {
            let s = small.pop().unwrap();
            let l = *large.last().unwrap();
            threshold[s] = scaled[s] as u64;
            alias[s] = l;
            scaled[l] -= full - scaled[s];
            if scaled[l] < full {
                large.pop();
                small.push(l);
            }
        }
        AliasTable {
            threshold,
            alias,
            total,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let col = rng.random_range(0..self.threshold.len());
        let u = rng.random_range(0..self.total);
        if u < self.threshold[col] {
            col
        } else {
            self.alias[col]
        }
    }

    /// Exact probability of each outcome as `(numerator, denominator)`.
    pub fn probabilities(&self) -> (Vec<u128>, u128) {
        let n = self.threshold.len();
        let mut num = vec![0u128; n];
        for col in 0..n {
            num[col] += self.threshold[col] as u128;
            num[self.alias[col]] += (self.total - self.threshold[col]) as u128;
        }
        (num, n as u128 * self.total as u128)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: u64, d: u64) -> Ratio<u64> {
        Ratio::new(n, d)
    }

    fn tags(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn weights_must_sum_to_one() {
        let err = FiniteMeasure::new(vec![1, 2], tags(2), vec![r(1, 2), r(2, 5)]).unwrap_err();
        assert!(err.to_string().contains("9/10"), "{err}");
        assert!(FiniteMeasure::new(vec![1, 2], tags(2), vec![r(1, 2), r(1, 2)]).is_ok());
        assert!(FiniteMeasure::new(vec![1, 2], tags(2), vec![r(1, 1), r(0, 1)]).is_err());
        assert!(FiniteMeasure::<u8>::new(vec![], vec![], vec![]).is_err());
    }

    proptest! {
        #[test]
        fn alias_table_reproduces_weights_exactly(ws in proptest::collection::vec(1u64..50, 1..12)) {
            let table = AliasTable::new(&ws);
            let (num, den) = table.probabilities();
            let total: u64 = ws.iter().sum();
            for (i, &w) in ws.iter().enumerate() {
                // num[i] / den == w / total
                prop_assert_eq!(num[i] * total as u128, w as u128 * den);
            }
        }
    }
}
