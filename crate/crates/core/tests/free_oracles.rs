//! Independent brute-force checks of the tree model.

use std::collections::HashSet;

use hypwalk::free::{
    axis_overlap_delta, longest_self_match, match_detect, self_match_detect, FreeGroup, Word,
};
use hypwalk::geometry::{orbit_gromov_product, ActionOracle};
use proptest::prelude::*;

fn word_strategy(rank: i8, max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec((1..=rank, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, inv)| if inv { -g } else { g })))
}

/// Every reduced word of length at most `r` over `rank` generators.
fn ball(rank: i8, r: usize) -> Vec<Vec<i8>> {
    let mut out = vec![vec![]];
    let mut i = 0;
    while i < out.len() {
        let w = out[i].clone();
        i += 1;
        if w.len() == r {
            continue;
        }
        for g in (1..=rank).flat_map(|g| [g, -g]) {
            if w.last() != Some(&-g) {
                let mut v = w.clone();
                v.push(g);
                out.push(v);
            }
        }
    }
    out
}

/// Overlap of the axis of `w` with `h·axis` by intersecting long windows of
/// both lines vertex by vertex.
fn brute_overlap(w: &Word, radius: usize) -> usize {
    let c = w.cyclic_reduce();
    let core = c.core.letters().to_vec();
    let window = radius + 2 * c.prefix.len() + 3 * core.len() + 6;
    let reps = window / core.len() + 2;
    let forward = c.core.pow(reps as i64);
    let backward = c.core.inverse().pow(reps as i64);
    let mut axis = Vec::new();
    for t in 0..=reps * core.len() {
        axis.push(c.prefix.concat(&forward.prefix(t)));
        axis.push(c.prefix.concat(&backward.prefix(t)));
    }
    let axis_set: HashSet<Word> = axis.iter().cloned().collect();
    let mut best = 0;
    for h in ball(2, radius) {
        let h = Word::from_letters(h);
        if h.concat(w).concat(&h.inverse()) == *w {
            continue;
        }
        let common = axis_set
            .iter()
            .filter(|v| axis_set.contains(&h.concat(v)))
            .count();
        if common > 0 {
            best = best.max(common - 1);
        }
    }
    best
}

#[test]
fn overlap_matches_brute_force_on_small_words() {
    let cases = [
        "ab", "aab", "aaaa", "abab", "aabb", "aabAB", "abaB", "aaba", "baab", "bbaab", "aabaab",
        "ababb", "BaabAb", "abbAbb", "aabbaabbb",
    ];
    for s in cases {
        let w = Word::parse(s).unwrap();
        for radius in 0..=4 {
            let fast = axis_overlap_delta(&w, radius).unwrap();
            assert_eq!(fast.delta, brute_overlap(&w, radius), "{s} radius {radius}");
            if let Some(h) = &fast.witness {
                assert!(h.len() <= radius);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn overlap_agrees_with_brute_force(w in word_strategy(2, 7), radius in 0usize..4) {
        prop_assume!(w.translation_length() > 0);
        let fast = axis_overlap_delta(&w, radius).unwrap();
        prop_assert_eq!(fast.delta, brute_overlap(&w, radius));
        prop_assert!(fast.delta <= fast.sup_overlap);
        if fast.certified {
            prop_assert_eq!(fast.delta, fast.sup_overlap);
        }
    }

    #[test]
    fn unbounded_radius_is_certified(w in word_strategy(3, 40)) {
        prop_assume!(w.translation_length() > 0);
        let fast = axis_overlap_delta(&w, usize::MAX).unwrap();
        prop_assert!(fast.certified);
        prop_assert_eq!(fast.delta, fast.sup_overlap);
        if let Some(h) = fast.witness {
            // the witness really is outside E(w) and really overlaps that much
            prop_assert_ne!(h.concat(&w).concat(&h.inverse()), w.clone());
        }
    }
}

fn brute_self_match(w: &Word, l: usize) -> bool {
    let x = w.letters();
    let n = x.len();
    if l == 0 || 2 * l > n {
        return false;
    }
    for i in 0..=n - l {
        for j in i + l..=n - l {
            let u = &x[i..i + l];
            let v = &x[j..j + l];
            let v_inv: Vec<i8> = v.iter().rev().map(|c| -c).collect();
            if u == v || u == v_inv.as_slice() {
                return true;
            }
        }
    }
    false
}

fn brute_match(path: &Word, core: &Word, l: usize) -> bool {
    let p = path.letters();
    if core.is_empty() || p.len() < l {
        return false;
    }
    let reps = l / core.len() + 2;
    let fw = core.pow(reps as i64);
    let bw = core.inverse().pow(reps as i64);
    let mut factors = HashSet::new();
    for src in [fw.letters(), bw.letters()] {
        for i in 0..=src.len() - l {
            factors.insert(src[i..i + l].to_vec());
        }
    }
    (0..=p.len() - l).any(|i| factors.contains(&p[i..i + l]))
}

proptest! {
    #[test]
    fn self_match_agrees_with_pair_enumeration(w in word_strategy(2, 24), l in 1usize..8) {
        prop_assert_eq!(self_match_detect(&w, l).unwrap(), brute_self_match(&w, l));
    }

    #[test]
    fn longest_self_match_is_exact(w in word_strategy(2, 20)) {
        let best = longest_self_match(&w);
        prop_assert!(best == 0 || brute_self_match(&w, best));
        prop_assert!(!brute_self_match(&w, best + 1));
    }

    #[test]
    fn match_agrees_with_factor_set(
        path in word_strategy(2, 30),
        core in word_strategy(2, 5),
        l in 1usize..9,
    ) {
        let axis = core.cyclic_reduce();
        prop_assert_eq!(
            match_detect(&path, &axis, l).unwrap(),
            brute_match(&path, &axis.core, l)
        );
    }

    #[test]
    fn gromov_product_is_common_prefix(g in word_strategy(2, 30), h in word_strategy(2, 30)) {
        let f2 = FreeGroup::new(2).unwrap();
        let gp = orbit_gromov_product(&f2, &g, &h).unwrap();
        prop_assert_eq!(gp, g.common_prefix_len(&h) as f64);
    }

    #[test]
    fn translation_length_is_conjugacy_invariant(w in word_strategy(3, 20), h in word_strategy(3, 10)) {
        let conj = h.concat(&w).concat(&h.inverse());
        prop_assert_eq!(conj.translation_length(), w.translation_length());
    }

    #[test]
    fn exact_translation_length_bounds_power_sampling(w in word_strategy(2, 12), budget in 1usize..12) {
        let f2 = FreeGroup::new(2).unwrap();
        let sampled = hypwalk::geometry::power_sampled_translation(&f2, &w, budget).unwrap();
        let exact = f2.translation_length(&w, budget).unwrap();
        prop_assert!(exact <= sampled + 1e-9);
        prop_assert!(sampled - exact <= w.len() as f64 / budget as f64 + 1e-9);
    }

    #[test]
    fn displacement_is_symmetric_and_triangle_holds(
        g in word_strategy(2, 15),
        h in word_strategy(2, 15),
        k in word_strategy(2, 15),
    ) {
        let f2 = FreeGroup::new(2).unwrap();
        prop_assert_eq!(f2.displacement(&g).unwrap(), f2.displacement(&g.inverse()).unwrap());
        let (a, b, c) = (f2.distance(&g, &h).unwrap(), f2.distance(&h, &k).unwrap(), f2.distance(&g, &k).unwrap());
        prop_assert!(c <= a + b);
    }
}
