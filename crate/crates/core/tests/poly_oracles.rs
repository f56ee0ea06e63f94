use std::collections::BTreeMap;

use hypwalk::poly::{gcd3, normalize_triple, Exponent, HomPoly3, PrimeField, DEFAULT_PRIME};
use proptest::prelude::*;

const P: u128 = DEFAULT_PRIME as u128;

fn field() -> PrimeField {
    PrimeField::default()
}

fn exponents(degree: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for i in 0..=degree {
        for j in 0..=degree - i {
            out.push([i, j, degree - i - j]);
        }
    }
    out
}

fn poly_strategy(max_degree: u32) -> impl Strategy<Value = HomPoly3> {
    (0..=max_degree).prop_flat_map(|d| {
        let n = exponents(d).len();
        proptest::collection::vec(-20i64..20, n).prop_map(move |cs| {
            HomPoly3::from_terms(field(), d, exponents(d).into_iter().zip(cs)).unwrap()
        })
    })
}

fn nonzero(max_degree: u32) -> impl Strategy<Value = HomPoly3> {
    poly_strategy(max_degree).prop_filter("nonzero", |p| !p.is_zero())
}

fn schoolbook(a: &HomPoly3, b: &HomPoly3) -> BTreeMap<Exponent, u64> {
    let mut out: BTreeMap<Exponent, u128> = BTreeMap::new();
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
            let slot = out.entry(e).or_insert(0);
            *slot = (*slot + ca as u128 * cb as u128) % P;
        }
    }
    out.into_iter().filter(|(_, c)| *c != 0).map(|(e, c)| (e, c as u64)).collect()
}

fn eval(a: &HomPoly3, v: [u64; 3]) -> u128 {
    let mut acc = 0u128;
    for (e, c) in a.terms() {
        let mut t = c as u128;
        for k in 0..3 {
            for _ in 0..e[k] {
                t = t * v[k] as u128 % P;
            }
        }
        acc = (acc + t) % P;
    }
    acc
}

/// Scales so that the largest exponent in graded-lex order has coefficient one.
fn monic(a: &HomPoly3) -> BTreeMap<Exponent, u64> {
    let lead = a.terms().max().unwrap().1;
    let inv = field().inv(lead);
    a.terms().map(|(e, c)| (e, (c as u128 * inv as u128 % P) as u64)).collect()
}

fn terms(a: &HomPoly3) -> BTreeMap<Exponent, u64> {
    a.terms().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_schoolbook(a in poly_strategy(4), b in poly_strategy(4)) {
        let prod = a.mul(&b);
        prop_assert_eq!(prod.degree(), a.degree() + b.degree());
        prop_assert_eq!(terms(&prod), schoolbook(&a, &b));
    }

    #[test]
    fn evaluation_is_multiplicative(a in poly_strategy(5), b in poly_strategy(5), v in proptest::array::uniform3(0u64..DEFAULT_PRIME)) {
        prop_assert_eq!(eval(&a.mul(&b), v), eval(&a, v) * eval(&b, v) % P);
    }

    #[test]
    fn power_matches_repeated_product(a in poly_strategy(3), n in 0u32..5) {
        let mut expected = HomPoly3::from_terms(field(), 0, [([0, 0, 0], 1)]).unwrap();
        for _ in 0..n {
            expected = expected.mul(&a);
        }
        prop_assert_eq!(a.pow(n), expected);
    }

    #[test]
    fn gcd_recovers_a_planted_factor(g in nonzero(3), i in 1u32..4, j in 1u32..4, c in nonzero(2)) {
        // gcd(Xⁱ, Yʲ, c) = 1, so the gcd of the products is g up to scale.
        let x = HomPoly3::var(field(), 0).pow(i);
        let y = HomPoly3::var(field(), 1).pow(j);
        let gcd = gcd3(&g.mul(&x), &g.mul(&y), &g.mul(&c)).unwrap();
        prop_assert_eq!(gcd.degree(), g.degree());
        prop_assert_eq!(terms(&gcd), monic(&g));
    }

    #[test]
    fn normalization_strips_the_common_factor(g in nonzero(2), c in nonzero(2)) {
        let d = c.degree() + 1;
        let p = HomPoly3::var(field(), 0).pow(d);
        let q = HomPoly3::var(field(), 1).pow(d);
        let r = c.mul(&HomPoly3::var(field(), 2));
        let [np, nq, nr] = normalize_triple(&g.mul(&p), &g.mul(&q), &g.mul(&r)).unwrap();
        prop_assert_eq!(np.degree(), d);
        // The result is the original triple up to one common scalar.
        let s = np.terms().next().unwrap().1;
        let scale = |h: &HomPoly3| -> BTreeMap<Exponent, u64> {
            h.terms().map(|(e, c)| (e, (c as u128 * s as u128 % P) as u64)).collect()
        };
        prop_assert_eq!(terms(&np), scale(&p));
        prop_assert_eq!(terms(&nq), scale(&q));
        prop_assert_eq!(terms(&nr), scale(&r));
    }
}

#[test]
fn gcd_of_coprime_forms_is_one() {
    let f = field();
    let x = HomPoly3::var(f, 0);
    let y = HomPoly3::var(f, 1);
    let z = HomPoly3::var(f, 2);
    let g = gcd3(&x.mul(&y), &y.mul(&z), &z.mul(&x)).unwrap();
    assert_eq!(g.degree(), 0);
    assert_eq!(terms(&g), BTreeMap::from([([0, 0, 0], 1)]));
}

#[test]
fn mixed_fields_are_rejected() {
    let other = PrimeField::new(101).unwrap();
    let x = HomPoly3::var(field(), 0);
    assert!(x.add(&HomPoly3::var(other, 0)).is_err());
    assert!(gcd3(&x, &x, &HomPoly3::var(other, 0)).is_err());
}
