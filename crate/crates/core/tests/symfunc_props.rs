use std::collections::BTreeMap;

use hecke_lab::{Basis, Partition, RatLaurent, SymmetricFunction};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

// Polynomials in `k` commuting variables with integer coefficients, keyed by exponent vector.
type Poly = BTreeMap<Vec<usize>, i64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn one(k: usize) -> Poly {
    [(vec![0; k], 1)].into()
}

// Every monomial of degree `d` in `k` variables, optionally squarefree.
fn monomials(k: usize, d: usize, squarefree: bool) -> Vec<Vec<usize>> {
    fn rec(i: usize, k: usize, left: usize, sf: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == k {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max = if sf { left.min(1) } else { left };
        for a in 0..=max {
            cur.push(a);
            rec(i + 1, k, left - a, sf, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, d, squarefree, &mut Vec::new(), &mut out);
    out
}

fn generator(b: Basis, k: usize, d: usize) -> Poly {
    match b {
        Basis::Elementary => monomials(k, d, true).into_iter().map(|e| (e, 1)).collect(),
        Basis::Homogeneous => monomials(k, d, false).into_iter().map(|e| (e, 1)).collect(),
        Basis::PowerSum => (0..k)
            .map(|i| {
                let mut e = vec![0; k];
                e[i] = d;
                (e, 1)
            })
            .collect(),
        _ => unreachable!(),
    }
}

fn multiplicative(b: Basis, lam: &Partition, k: usize) -> Poly {
    lam.parts().iter().fold(one(k), |acc, &d| poly_mul(&acc, &generator(b, k, d)))
}

// Schur polynomial by enumerating every filling of the diagram with 1..=k.
fn schur_by_fillings(lam: &Partition, k: usize) -> Poly {
    let cells: Vec<(usize, usize)> =
        lam.parts().iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut out = Poly::new();
    let mut fill = vec![0usize; cells.len()];
    loop {
        let at = |r: usize, c: usize| fill[cells.iter().position(|&x| x == (r, c)).unwrap()];
        let ok = cells.iter().all(|&(r, c)| {
            (c == 0 || at(r, c - 1) <= at(r, c)) && (r == 0 || at(r - 1, c) < at(r, c))
        });
        if ok {
            let mut e = vec![0; k];
            for &v in &fill {
                e[v] += 1;
            }
            *out.entry(e).or_insert(0) += 1;
        }
        let mut i = 0;
        loop {
            if i == fill.len() {
                return out;
            }
            fill[i] += 1;
            if fill[i] < k {
                break;
            }
            fill[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn monomial_expansions_match_brute_force() {
    for n in 1..=5 {
        let k = n;
        for b in [Basis::Elementary, Basis::Homogeneous, Basis::PowerSum, Basis::Schur] {
            for lam in Partition::all(n) {
                let brute =
                    if b == Basis::Schur { schur_by_fillings(&lam, k) } else { multiplicative(b, &lam, k) };
                let in_m = SymmetricFunction::basis_element(b, lam.clone()).to_basis(Basis::Monomial);
                for mu in Partition::all(n) {
                    let mut e = mu.parts().to_vec();
                    e.resize(k, 0);
                    let expect = brute.get(&e).copied().unwrap_or(0);
                    let got = in_m.coeff(&mu);
                    assert_eq!(got, RatLaurent::constant(BigRational::from_integer(expect.into())), "{b} {lam:?} at m{mu:?}");
                }
            }
        }
    }
}

#[test]
fn standard_tableaux_weights_give_h1_power() {
    for n in 1..=6 {
        let mut f = SymmetricFunction::zero(Basis::Schur, n);
        for lam in Partition::all(n) {
            let c = RatLaurent::constant(BigRational::from_integer(lam.num_standard_tableaux()));
            f.add_term(lam.clone(), &c);
        }
        let ones = Partition::new(vec![1; n]).unwrap();
        assert_eq!(f.to_basis(Basis::Homogeneous), SymmetricFunction::basis_element(Basis::Homogeneous, ones));
    }
}

#[test]
fn omega_on_schur_is_conjugation() {
    for n in 1..=7 {
        for lam in Partition::all(n) {
            let s = SymmetricFunction::basis_element(Basis::Schur, lam.clone());
            assert_eq!(s.omega(), SymmetricFunction::basis_element(Basis::Schur, lam.conjugate()));
        }
    }
}

fn coeff_strategy() -> impl Strategy<Value = RatLaurent> {
    prop::collection::vec((-3i64..4, -4i64..5, 1i64..3), 0..3).prop_map(|ts| {
        RatLaurent::from_terms(ts.into_iter().map(|(e, a, b)| (e, BigRational::new(a.into(), b.into()))))
    })
}

fn function_strategy(max_n: usize) -> impl Strategy<Value = SymmetricFunction> {
    (1..=max_n, 0..5usize).prop_flat_map(|(n, b)| {
        let parts = Partition::all(n);
        let len = parts.len();
        prop::collection::vec((0..len, coeff_strategy()), 0..4).prop_map(move |ts| {
            SymmetricFunction::from_terms(Basis::ALL[b], n, ts.into_iter().map(|(k, c)| (parts[k].clone(), c))).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conversions_round_trip(f in function_strategy(8)) {
        for b in Basis::ALL {
            let g = f.to_basis(b);
            prop_assert_eq!(g.to_basis(f.basis()), f.clone());
            prop_assert!(g.same_function(&f));
        }
    }

    #[test]
    fn omega_is_an_involution(f in function_strategy(8)) {
        for b in Basis::ALL {
            let g = f.to_basis(b);
            prop_assert_eq!(g.omega().omega(), g);
        }
    }

    #[test]
    fn specialization_commutes_with_conversion(f in function_strategy(7)) {
        for b in Basis::ALL {
            prop_assert_eq!(f.to_basis(b).at_q_one(), f.at_q_one().to_basis(b));
        }
    }

    #[test]
    fn json_round_trip(f in function_strategy(6)) {
        let text = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<SymmetricFunction>(&text).unwrap(), f);
    }
}

#[test]
fn hook_formula_matches_tableau_enumeration() {
    for n in 0..=8 {
        let mut total = BigInt::zero();
        for lam in Partition::all(n) {
            let f = lam.num_standard_tableaux();
            assert_eq!(BigInt::from(lam.standard_tableaux().len()), f);
            total += &f * &f;
        }
        assert_eq!(total, (1..=n).fold(BigInt::one(), |a, k| a * k));
    }
}
