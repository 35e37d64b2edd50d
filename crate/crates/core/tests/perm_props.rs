use hecke_lab::perm::catalan;
use hecke_lab::{HessenbergFunction, Permutation};
use proptest::prelude::*;

fn inversions(w: &Permutation) -> usize {
    let v = w.to_vec();
    (0..v.len()).flat_map(|i| (i + 1..v.len()).map(move |j| (i, j))).filter(|&(i, j)| v[i] > v[j]).count()
}

// Tableau criterion: z <= w iff every rank count of z is at most that of w.
fn bruhat_by_ranks(z: &Permutation, w: &Permutation) -> bool {
    let (a, b) = (z.to_vec(), w.to_vec());
    let n = a.len();
    (1..=n).all(|i| {
        (1..=n).all(|k| a[..i].iter().filter(|&&x| x >= k).count() <= b[..i].iter().filter(|&&x| x >= k).count())
    })
}

// Pattern containment by trying every subsequence of positions.
fn contains_by_subsets(w: &Permutation, pattern: &[usize]) -> bool {
    let v = w.to_vec();
    let k = pattern.len();
    (0u32..1 << v.len()).filter(|m| m.count_ones() as usize == k).any(|mask| {
        let sub: Vec<usize> = (0..v.len()).filter(|i| mask >> i & 1 == 1).map(|i| v[i]).collect();
        (0..k).all(|i| (0..k).all(|j| (sub[i] < sub[j]) == (pattern[i] < pattern[j])))
    })
}

fn perm(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle()).prop_map(|v| Permutation::new(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn length_is_inversion_count(w in perm(9)) {
        prop_assert_eq!(w.length(), inversions(&w));
        prop_assert_eq!(w.inverse().length(), w.length());
        prop_assert_eq!(w.reduced_word().len(), w.length());
        prop_assert_eq!(Permutation::from_simple_word(w.n(), &w.reduced_word()).unwrap(), w);
        prop_assert_eq!(Permutation::from_simple_word(w.n(), &w.reduced_word_alt()).unwrap(), w);
    }

    #[test]
    fn simple_multiplication_changes_length_by_one(w in perm(8), i in 1usize..8) {
        prop_assume!(i < w.n());
        let ws = w.mul_simple_right(i);
        let expect = if w.has_right_descent(i) { w.length() - 1 } else { w.length() + 1 };
        prop_assert_eq!(ws.length(), expect);
        prop_assert_eq!(w.mul_simple_left(i), w.inverse().mul_simple_right(i).inverse());
    }

    #[test]
    fn text_forms_round_trip(w in perm(9)) {
        let digits: Permutation = w.to_string().parse().unwrap();
        let commas: Permutation = w.to_vec().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",").parse().unwrap();
        prop_assert_eq!(digits, w);
        prop_assert_eq!(commas, w);
    }
}

#[test]
fn bruhat_order_matches_rank_criterion() {
    for n in 1..=5 {
        let all = Permutation::all(n);
        for z in &all {
            for w in &all {
                assert_eq!(z.bruhat_le(w).unwrap(), bruhat_by_ranks(z, w), "{z} <= {w}");
            }
        }
    }
}

#[test]
fn lower_covers_drop_length_by_one() {
    for w in Permutation::all(5) {
        let below = w.lower_interval();
        for z in w.lower_covers() {
            assert_eq!(z.length() + 1, w.length());
            assert!(bruhat_by_ranks(&z, &w));
        }
        let expect = Permutation::all(5).into_iter().filter(|z| bruhat_by_ranks(z, &w)).count();
        assert_eq!(below.len(), expect, "{w}");
    }
}

#[test]
fn pattern_tests_match_subsets() {
    for n in 1..=6 {
        for w in Permutation::all(n) {
            let smooth = !contains_by_subsets(&w, &[3, 4, 1, 2]) && !contains_by_subsets(&w, &[4, 2, 3, 1]);
            assert_eq!(w.is_smooth(), smooth, "{w}");
            assert_eq!(w.is_codominant(), !contains_by_subsets(&w, &[3, 1, 2]), "{w}");
        }
    }
}

#[test]
fn smooth_and_codominant_counts() {
    let smooth = [1, 2, 6, 22, 88, 366, 1552];
    for n in 1..=7 {
        let all = Permutation::all(n);
        assert_eq!(all.iter().filter(|w| w.is_smooth()).count(), smooth[n - 1], "n = {n}");
        assert_eq!(all.iter().filter(|w| w.is_codominant()).count() as u64, catalan(n), "n = {n}");
        assert_eq!(HessenbergFunction::enumerate(n).len() as u64, catalan(n));
    }
}

#[test]
fn smooth_transpositions_are_read_off_the_hessenberg_function() {
    for n in 1..=6 {
        for w in Permutation::all(n) {
            let t = w.transpositions_below();
            assert_eq!(t.len() == w.length(), w.is_smooth(), "{w}");
            if let Ok(m) = w.hessenberg_of_smooth() {
                let expect: Vec<(usize, usize)> =
                    (1..=n).flat_map(|i| (i + 1..=m.get(i)).map(move |j| (i, j))).collect();
                assert_eq!(t.into_iter().collect::<Vec<_>>(), expect, "{w}");
            }
        }
    }
}

#[test]
fn codominant_round_trip() {
    for n in 1..=8 {
        for m in HessenbergFunction::enumerate(n) {
            let w = m.codominant_permutation();
            assert!(w.is_codominant(), "{m}");
            assert_eq!(w.length(), m.edge_count(), "{m}");
            assert_eq!(w.hessenberg_of_smooth().unwrap(), m);
        }
    }
}
