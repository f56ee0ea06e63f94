use rand::Rng;

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u64 = 1_000_003;
pub const SECOND_PRIME: u64 = 1_000_033;

/// Primes are kept below 2³¹ so that sums of a few products fit in `u64`
/// and any product fits in `u128`.
pub const MAX_PRIME: u64 = 1 << 31;

/// The prime field `F_p`, elements represented canonically in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::input(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    /// A uniformly chosen prime in `[2³⁰, 2³¹)`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let p = rng.random_range(MAX_PRIME / 2..MAX_PRIME) | 1;
            if is_prime(p) {
                return PrimeField { p };
            }
        }
    }

    #[inline]
    pub fn p(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut out = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                out = self.mul(out, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        out
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    /// The symmetric representative in `(-p/2, p/2]`.
    pub fn to_i64(self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut out = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            out = mul_mod(out, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    out
}

/// Deterministic Miller–Rabin, exact for all `n < 3.4·10¹⁴`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn default_primes_are_prime() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(is_prime(SECOND_PRIME));
        assert!(!is_prime(1_000_001));
        assert!(!is_prime(561));
        assert!(PrimeField::new(1_000_000).is_err());
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000u64 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "{n}");
        }
    }

    #[test]
    fn arithmetic() {
        let f = PrimeField::default();
        assert_eq!(f.mul(f.inv(12345), 12345), 1);
        assert_eq!(f.from_i64(-1), DEFAULT_PRIME - 1);
        assert_eq!(f.to_i64(DEFAULT_PRIME - 2), -2);
        assert_eq!(f.sub(3, 5), DEFAULT_PRIME - 2);
    }

    #[test]
    fn random_primes_are_31_bit() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let f = PrimeField::random(&mut rng);
            assert!(f.p() >= 1 << 30 && f.p() < 1 << 31 && is_prime(f.p()));
        }
    }
}
