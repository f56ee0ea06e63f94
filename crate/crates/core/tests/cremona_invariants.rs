use hypwalk::cremona::{degree_by_restriction, Generator, Letter, RationalMapP2};
use hypwalk::poly::{PrimeField, SECOND_PRIME};
use hypwalk::Error;
use proptest::prelude::*;

const CAP: u32 = 512;
const LINE_CAP: u64 = 1 << 14;

fn field() -> PrimeField {
    PrimeField::default()
}

fn letter_strategy() -> impl Strategy<Value = Letter> {
    let matrix = proptest::array::uniform3(proptest::array::uniform3(-5i64..6));
    prop_oneof![
        Just(Generator::Sigma),
        (2u32..4).prop_map(|n| Generator::Henon { n }),
        matrix.prop_map(|matrix| Generator::Linear { matrix }),
    ]
    .prop_filter_map("invertible", |g| Letter::new(g).ok())
    .prop_flat_map(|l| prop_oneof![Just(l), Just(l.inverse())])
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    proptest::collection::vec(letter_strategy(), 1..=max_len)
}

fn inverse_word(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|l| l.inverse()).collect()
}

/// Composes, skipping inputs whose reduction degenerates at this prime.
fn compose(field: PrimeField, word: &[Letter]) -> Option<RationalMapP2> {
    match RationalMapP2::from_word(field, word, CAP) {
        Ok(m) => Some(m),
        Err(Error::BadPrime { .. }) => None,
        Err(e) => panic!("{e}"),
    }
}

fn projectively_equal(a: [u64; 3], b: [u64; 3], f: PrimeField) -> bool {
    (0..3).all(|i| {
        let j = (i + 1) % 3;
        f.mul(a[i], b[j]) == f.mul(a[j], b[i])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composed_degree_matches_line_restriction(word in word_strategy(4)) {
        let Some(map) = compose(field(), &word) else { return Ok(()) };
        prop_assert_eq!(map.degree() as u64, degree_by_restriction(field(), &word, LINE_CAP).unwrap());
    }

    #[test]
    fn degree_is_submultiplicative(u in word_strategy(3), v in word_strategy(3)) {
        let (Some(f), Some(g)) = (compose(field(), &u), compose(field(), &v)) else { return Ok(()) };
        let uv: Vec<Letter> = u.iter().chain(&v).copied().collect();
        let Some(fg) = compose(field(), &uv) else { return Ok(()) };
        prop_assert!(fg.degree() <= f.degree() * g.degree());
        prop_assert_eq!(f.compose(&g, CAP).unwrap(), fg);
    }

    #[test]
    fn inverse_has_the_same_degree_and_cancels(word in word_strategy(4)) {
        let inv = inverse_word(&word);
        let (Some(f), Some(g)) = (compose(field(), &word), compose(field(), &inv)) else { return Ok(()) };
        prop_assert_eq!(f.degree(), g.degree());
        let both: Vec<Letter> = word.iter().chain(&inv).copied().collect();
        let Some(id) = compose(field(), &both) else { return Ok(()) };
        prop_assert!(id.is_identity());
    }

    #[test]
    fn degrees_agree_at_two_primes(word in word_strategy(4)) {
        let second = PrimeField::new(SECOND_PRIME).unwrap();
        let (Some(a), Some(b)) = (compose(field(), &word), compose(second, &word)) else { return Ok(()) };
        prop_assert_eq!(a.degree(), b.degree());
    }

    #[test]
    fn composition_agrees_with_stepwise_evaluation(word in word_strategy(3), v in proptest::array::uniform3(1u64..1_000_000)) {
        let f = field();
        let Some(map) = compose(f, &word) else { return Ok(()) };
        let mut point = v;
        for &l in word.iter().rev() {
            point = RationalMapP2::from_letter(f, l).unwrap().eval(point);
        }
        let direct = map.eval(v);
        // Skip indeterminacy points of either route.
        prop_assume!(point != [0, 0, 0] && direct != [0, 0, 0]);
        prop_assert!(projectively_equal(point, direct, f), "{point:?} vs {direct:?}");
    }
}

#[test]
fn sigma_is_an_involution_and_henon_powers_double() {
    let s = Generator::Sigma.letter();
    let ss = compose(field(), &[s, s]).unwrap();
    assert!(ss.is_identity());
    assert_eq!(ss.degree(), 1);
    let h = Generator::Henon { n: 2 }.letter();
    let degrees: Vec<u32> = (1..=6).map(|n| compose(field(), &vec![h; n]).unwrap().degree()).collect();
    assert_eq!(degrees, [2, 4, 8, 16, 32, 64]);
}
