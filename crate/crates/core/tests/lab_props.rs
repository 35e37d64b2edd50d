use hecke_lab::character::frobenius_ch;
use hecke_lab::csf::{modular_partners, CsfBatch};
use hecke_lab::kl::cprime;
use hecke_lab::lab::{
    counterexample_search, decompose_codominant, modular_relation, smooth_reduce, Decomposition, DecompositionMethod,
    MomentGraph, RelationCase, Solution, DECOMPOSE_BUDGET, VERIFY_MAX_N,
};
use hecke_lab::{HessenbergFunction, KlTable, LaurentQ, Permutation};

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn hf(s: &str) -> HessenbergFunction {
    s.parse().unwrap()
}

#[test]
fn smooth_reduction_preserves_character_via_hecke_elements() {
    for n in 1..=5 {
        for w in Permutation::all(n).into_iter().filter(Permutation::is_smooth) {
            let r = smooth_reduce(&w).unwrap();
            assert!(r.is_codominant());
            let a = frobenius_ch(&cprime(&w).unwrap()).unwrap();
            let b = frobenius_ch(&cprime(&r).unwrap()).unwrap();
            assert!(a.same_function(&b), "{w} -> {r}");
        }
    }
}

#[test]
fn codominant_permutations_are_fixed() {
    for m in HessenbergFunction::enumerate(7) {
        let w = m.codominant_permutation();
        assert_eq!(smooth_reduce(&w).unwrap(), w);
    }
}

#[test]
fn moment_graphs_agree_with_reduction_and_bruhat() {
    for n in 1..=6 {
        for w in Permutation::all(n).into_iter().filter(Permutation::is_smooth) {
            let g = MomentGraph::of(&w);
            assert_eq!(g, MomentGraph::of_bruhat(&w), "{w}");
            assert_eq!(g, MomentGraph::of(&smooth_reduce(&w).unwrap()), "{w}");
        }
    }
}

#[test]
fn moment_graph_edges() {
    let g = MomentGraph::of(&p("231"));
    assert!(g.has_edge(&p("123"), &p("213")));
    assert!(!g.has_edge(&p("123"), &p("321")));
    assert_eq!(g.edge_count(), 6);
}

#[test]
fn dichotomy_through_rank_seven() {
    for n in 2..=7 {
        let mut kl = KlTable::new(n);
        let mut seen = [0usize; 2];
        for w in Permutation::all(n).into_iter().filter(Permutation::is_smooth) {
            for i in 1..n {
                if !w.has_left_descent(i) || w.has_right_descent(i) {
                    continue;
                }
                let rel = modular_relation(&mut kl, &w, i, 0).unwrap();
                match rel.case {
                    RelationCase::SmoothCase => {
                        seen[0] += 1;
                        let z = rel.z.unwrap();
                        assert!(rel.ws.is_smooth() && z.is_smooth() && z.has_right_descent(i));
                        assert!(w.lower_covers().contains(&z));
                    }
                    RelationCase::SingularCase => {
                        seen[1] += 1;
                        assert!(!rel.ws.is_smooth() && rel.z.is_none());
                    }
                }
            }
        }
        if n >= 4 {
            assert!(seen[0] > 0 && seen[1] > 0, "n = {n}: {seen:?}");
        }
    }
}

#[test]
fn relation_matches_hecke_product_and_characters() {
    for n in 2..=5 {
        let mut kl = KlTable::new(n);
        for w in Permutation::all(n).into_iter().filter(Permutation::is_smooth) {
            for i in 1..n {
                if !w.has_left_descent(i) || w.has_right_descent(i) {
                    continue;
                }
                let rel = modular_relation(&mut kl, &w, i, VERIFY_MAX_N).unwrap();
                assert_eq!(rel.verified, Some(true), "{rel}");
                let mut expect = vec![(rel.ws, LaurentQ::one())];
                expect.extend(rel.z.map(|z| (z, LaurentQ::one())));
                expect.sort_by_key(|a| a.0);
                assert_eq!(kl.cprime_times_cs(&w, i).unwrap(), expect, "{rel}");
                let product = kl.cprime_normalized(&w).unwrap().multiply(&kl.cprime_normalized(&Permutation::simple(n, i).unwrap()).unwrap()).unwrap();
                let sum = expect.iter().fold(hecke_lab::HeckeElement::zero(n), |acc, (x, _)| {
                    acc.add(&kl.cprime_normalized(x).unwrap()).unwrap()
                });
                assert_eq!(product, sum, "{rel}");
            }
        }
    }
}

#[test]
fn modular_relation_examples() {
    let mut kl = KlTable::new(3);
    let r = modular_relation(&mut kl, &p("231"), 1, VERIFY_MAX_N).unwrap();
    assert_eq!((r.case, r.z), (RelationCase::SmoothCase, Some(p("213"))));
    let r = modular_relation(&mut kl, &p("312"), 2, VERIFY_MAX_N).unwrap();
    assert_eq!((r.case, r.z), (RelationCase::SmoothCase, Some(p("132"))));
    let mut kl = KlTable::new(4);
    assert!(modular_relation(&mut kl, &p("4231"), 1, 0).is_err());
}

#[test]
fn search_recovers_every_modular_triple() {
    for n in 3..=6 {
        let batch = CsfBatch::compute(n);
        for m1 in HessenbergFunction::enumerate(n) {
            let Some(partners) = modular_partners(&m1) else { continue };
            let report = counterexample_search(&batch, &m1, false).unwrap();
            for (m0, m2) in partners {
                let s = Solution { m0, m2, shift: 1 };
                assert!(report.solutions.contains(&s), "{m1}: {s:?} missing from {report}");
            }
            let general = counterexample_search(&batch, &m1, true).unwrap();
            assert!(report.solutions.iter().all(|s| general.solutions.contains(s)), "{m1}");
        }
    }
}

#[test]
fn search_examples() {
    let batch = CsfBatch::compute(3);
    let r = counterexample_search(&batch, &hf("2,3,3"), false).unwrap();
    assert!(r.solutions.contains(&Solution { m0: hf("1,3,3"), m2: hf("3,3,3"), shift: 1 }));
    for n in 1..=5 {
        let batch = CsfBatch::compute(n);
        let id = HessenbergFunction::new((1..=n).collect()).unwrap();
        assert!(!counterexample_search(&batch, &id, false).unwrap().found(), "n = {n}");
    }
}

#[test]
fn general_search_skips_only_the_trivial_solution() {
    let batch = CsfBatch::compute(4);
    let m1 = hf("2,3,4,4");
    let r = counterexample_search(&batch, &m1, true).unwrap();
    assert!(!r.solutions.iter().any(|s| s.shift == 1 && s.m0 == m1 && s.m2 == m1));
}

#[test]
fn decomposition_examples() {
    let mut kl = KlTable::new(8);
    let d = decompose_codominant(&mut kl, &p("62754381"), VERIFY_MAX_N, DECOMPOSE_BUDGET).unwrap();
    let Decomposition::Found { terms, method, verified } = d else { panic!("{d}") };
    assert_eq!(terms, vec![(p("26754381"), LaurentQ::from_q_coeffs([1.into(), 1.into()]))]);
    assert_eq!(method, DecompositionMethod::SingularReduction { s: 1, left: false });
    assert_eq!(verified, None);

    let mut kl = KlTable::new(4);
    let d = decompose_codominant(&mut kl, &p("3142"), VERIFY_MAX_N, DECOMPOSE_BUDGET).unwrap();
    assert_eq!(
        d,
        Decomposition::Found {
            terms: vec![(p("2341"), LaurentQ::one())],
            method: DecompositionMethod::SmoothReduction,
            verified: Some(true)
        }
    );
}

#[test]
fn every_permutation_of_rank_five_decomposes() {
    let mut kl = KlTable::new(5);
    for w in Permutation::all(5) {
        match decompose_codominant(&mut kl, &w, VERIFY_MAX_N, DECOMPOSE_BUDGET).unwrap() {
            Decomposition::Found { terms, verified, .. } => {
                assert_eq!(verified, Some(true), "{w}");
                for (c, coeff) in terms {
                    assert!(c.is_codominant());
                    assert!(coeff.props().nonnegative && coeff.has_integer_powers(), "{w}: {coeff}");
                }
            }
            Decomposition::Unknown { reason } => panic!("{w}: {reason}"),
        }
    }
}
