//! Dense univariate polynomials over `F_p` as little-endian coefficient
//! vectors. All results are trimmed (no trailing zeros); the zero
//! polynomial is the empty vector.

use super::field::PrimeField;

const KARATSUBA_THRESHOLD: usize = 40;
const NAIVE_DIVISION_WORK: usize = 1 << 14;

pub fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = f.add(*o, s);
    }
    trim(&mut out);
    out
}

pub fn sub(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = a.to_vec();
    if b.len() > out.len() {
        out.resize(b.len(), 0);
    }
    for (o, &s) in out.iter_mut().zip(b) {
        *o = f.sub(*o, s);
    }
    trim(&mut out);
    out
}

pub fn scale(f: PrimeField, a: &[u64], c: u64) -> Vec<u64> {
    if c == 0 {
        return Vec::new();
    }
    a.iter().map(|&x| f.mul(x, c)).collect()
}

pub fn eval(f: PrimeField, a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

pub fn monic(f: PrimeField, a: &[u64]) -> Vec<u64> {
    match a.last() {
        Some(&lc) => scale(f, a, f.inv(lc)),
        None => Vec::new(),
    }
}

pub fn mul(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    mul_into(f, a, b, &mut out);
    trim(&mut out);
    out
}

/// Adds `a·b` into `out`, which must have length `≥ |a| + |b| − 1`.
fn mul_into(f: PrimeField, a: &[u64], b: &[u64], out: &mut [u64]) {
    let (a, b) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if a.is_empty() {
        return;
    }
    if a.len() <= KARATSUBA_THRESHOLD {
        schoolbook_into(f, a, b, out);
    } else if b.len() >= 2 * a.len() {
        for (k, chunk) in b.chunks(a.len()).enumerate() {
            mul_into(f, a, chunk, &mut out[k * a.len()..]);
        }
    } else {
        karatsuba_into(f, a, b, out);
    }
}

fn schoolbook_into(f: PrimeField, a: &[u64], b: &[u64], out: &mut [u64]) {
    let p = f.p() as u128;
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as u128;
        for (slot, &y) in acc[i..].iter_mut().zip(b) {
            *slot += x * y as u128;
        }
    }
    for (o, s) in out.iter_mut().zip(acc) {
        *o = ((*o as u128 + s) % p) as u64;
    }
}

/// Requires `|b|/2 < |a| ≤ |b|`.
fn karatsuba_into(f: PrimeField, a: &[u64], b: &[u64], out: &mut [u64]) {
    let m = b.len() / 2;
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m);
    let z0 = mul(f, a0, b0);
    let z2 = mul(f, a1, b1);
    let mut z1 = mul(f, &add(f, a0, a1), &add(f, b0, b1));
    z1 = sub(f, &sub(f, &z1, &z0), &z2);
    for (o, &c) in out.iter_mut().zip(&z0) {
        *o = f.add(*o, c);
    }
    for (o, &c) in out[m..].iter_mut().zip(&z1) {
        *o = f.add(*o, c);
    }
    for (o, &c) in out[2 * m..].iter_mut().zip(&z2) {
        *o = f.add(*o, c);
    }
}

/// Long division; `b` must be nonzero.
pub fn divrem(f: PrimeField, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let inv_lc = f.inv(*b.last().unwrap());
    let mut r = a.to_vec();
    let mut q = vec![0; a.len() - b.len() + 1];
    let db = b.len() - 1;
    for k in (0..q.len()).rev() {
        let c = f.mul(r[k + db], inv_lc);
        q[k] = c;
        if c != 0 {
            for (slot, &y) in r[k..k + db].iter_mut().zip(b) {
                *slot = f.sub(*slot, f.mul(c, y));
            }
        }
        r[k + db] = 0;
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

/// Monic greatest common divisor; zero only if both inputs are zero.
pub fn gcd(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = divrem(f, &a, &b).1;
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// `g⁻¹ mod tⁿ` for `g(0) ≠ 0`, by Newton iteration.
fn series_inverse(f: PrimeField, g: &[u64], n: usize) -> Vec<u64> {
    let mut h = vec![f.inv(g[0])];
    let mut k = 1;
    while k < n {
        k = (2 * k).min(n);
        let gt = &g[..g.len().min(k)];
        let mut e = mul(f, gt, &h);
        e.truncate(k);
        // h ← h·(2 − g·h)
        let mut two_minus: Vec<u64> = e.iter().map(|&x| f.neg(x)).collect();
        if two_minus.is_empty() {
            two_minus.push(0);
        }
        two_minus[0] = f.add(two_minus[0], 2);
        h = mul(f, &h, &two_minus);
        h.truncate(k);
    }
    h
}

/// `a / g` when `g` divides `a` exactly, otherwise `None`.
pub fn exact_div(f: PrimeField, a: &[u64], g: &[u64]) -> Option<Vec<u64>> {
    if g.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < g.len() {
        return None;
    }
    let qlen = a.len() - g.len() + 1;
    if qlen.saturating_mul(g.len()) <= NAIVE_DIVISION_WORK {
        let (q, r) = divrem(f, a, g);
        return r.is_empty().then_some(q);
    }
    let v = g.iter().position(|&c| c != 0).unwrap();
    if a[..v].iter().any(|&c| c != 0) {
        return None;
    }
    let (a, g) = (&a[v..], &g[v..]);
    let mut q = mul(f, &a[..qlen.min(a.len())], &series_inverse(f, g, qlen));
    q.truncate(qlen);
    trim(&mut q);
    (mul(f, g, &q) == a).then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    fn naive(a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = f();
        let mut out = vec![0; (a.len() + b.len()).saturating_sub(1)];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        trim(&mut out);
        out
    }

    fn poly(max: usize) -> impl Strategy<Value = Vec<u64>> {
        proptest::collection::vec(0u64..1_000_003, 0..max).prop_map(|mut v| {
            trim(&mut v);
            v
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn karatsuba_matches_naive(a in poly(300), b in poly(300)) {
            prop_assert_eq!(mul(f(), &a, &b), naive(&a, &b));
        }

        #[test]
        fn exact_division_recovers_factor(a in poly(400), b in poly(200)) {
            prop_assume!(!b.is_empty());
            let prod = mul(f(), &a, &b);
            prop_assert_eq!(exact_div(f(), &prod, &b), Some(a));
        }

        #[test]
        fn inexact_division_is_rejected(a in poly(300), b in poly(150)) {
            prop_assume!(b.len() >= 2);
            let mut prod = mul(f(), &a, &b);
            if prod.is_empty() { prod.push(0); }
            prod[0] = f().add(prod[0], 1);
            trim(&mut prod);
            prop_assert_eq!(exact_div(f(), &prod, &b), None);
        }

        #[test]
        fn gcd_divides_both(a in poly(30), b in poly(30), c in poly(10)) {
            let (x, y) = (mul(f(), &a, &c), mul(f(), &b, &c));
            let g = gcd(f(), &x, &y);
            prop_assume!(!g.is_empty());
            prop_assert!(divrem(f(), &x, &g).1.is_empty());
            prop_assert!(divrem(f(), &y, &g).1.is_empty());
            if !c.is_empty() {
                prop_assert!(divrem(f(), &g, &monic(f(), &c)).1.is_empty());
            }
        }
    }
}
