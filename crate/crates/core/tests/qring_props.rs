use hecke_lab::{IntPoly, LaurentQ, RatLaurent};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = LaurentQ> {
    prop::collection::vec((-6i64..7, -5i64..6), 0..5)
        .prop_map(|ts| LaurentQ::from_terms(ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn rational() -> impl Strategy<Value = RatLaurent> {
    prop::collection::vec((-6i64..7, -5i64..6, 1i64..4), 0..4).prop_map(|ts| {
        RatLaurent::from_terms(ts.into_iter().map(|(e, a, b)| (e, BigRational::new(a.into(), b.into()))))
    })
}

fn poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-20i64..21, 0..6).prop_map(IntPoly::from_coeffs)
}

// Evaluate at q^{1/2} = t for a rational t, as an independent check of multiplication.
fn eval(p: &LaurentQ, t: &BigRational) -> BigRational {
    p.terms().fold(BigRational::from_integer(0.into()), |acc, (e, c)| {
        let base = if e >= 0 { t.clone() } else { t.recip() };
        let mut pow = BigRational::from_integer(1.into());
        for _ in 0..e.unsigned_abs() {
            pow *= &base;
        }
        acc + BigRational::from_integer(c.clone()) * pow
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, LaurentQ::zero());
        prop_assert_eq!(&a * &LaurentQ::one(), a.clone());
    }

    #[test]
    fn multiplication_agrees_with_evaluation(a in laurent(), b in laurent(), num in 1i64..5, den in 1i64..5) {
        let t = BigRational::new(num.into(), den.into());
        prop_assert_eq!(eval(&(&a * &b), &t), eval(&a, &t) * eval(&b, &t));
    }

    #[test]
    fn bar_is_a_ring_involution(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
    }

    #[test]
    fn text_and_json_round_trip(a in laurent(), r in rational()) {
        prop_assert_eq!(LaurentQ::parse_canonical(&a.to_canonical_text()).unwrap(), a.clone());
        prop_assert_eq!(LaurentQ::from_json_value(&a.to_json_value()).unwrap(), a.clone());
        prop_assert_eq!(RatLaurent::parse_canonical(&r.to_canonical_text()).unwrap(), r.clone());
        let text = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<RatLaurent>(&text).unwrap(), r);
    }

    #[test]
    fn dense_polynomials_match_sparse(a in poly(), b in poly(), shift in 0usize..4, k in -3i64..4) {
        prop_assert_eq!(a.mul(&b).to_laurent(), &a.to_laurent() * &b.to_laurent());
        let mut c = a.clone();
        c.add_scaled(&b, k, shift);
        let expect = &a.to_laurent() + &(&b.to_laurent().shift_half(2 * shift as i64) * &LaurentQ::from_i64(k));
        prop_assert_eq!(c.to_laurent(), expect.clone());
        prop_assert_eq!(IntPoly::from_laurent(&expect), Some(c));
    }

    #[test]
    fn palindromic_iff_bar_matches_centre(a in laurent()) {
        let props = a.props();
        if let (Some(lo), Some(hi)) = (props.min_half_exp, props.max_half_exp) {
            let centred = a.shift_half(-(lo + hi) / 2);
            if (lo + hi) % 2 == 0 {
                prop_assert_eq!(props.palindromic, centred.bar() == centred);
            }
        }
    }
}

#[test]
fn display_examples() {
    assert_eq!(LaurentQ::from_q_coeffs([1.into(), 1.into()]).to_string(), "1 + q");
    assert_eq!(LaurentQ::quantum_two().to_string(), "q^(-1/2) + q^(1/2)");
    assert_eq!(LaurentQ::zero().to_string(), "0");
}

#[test]
fn unimodality_examples() {
    let lq = |c: &[i64]| LaurentQ::from_q_coeffs(c.iter().map(|&x| BigInt::from(x)));
    assert!(lq(&[1, 3, 4, 3, 1]).props().unimodal);
    assert!(!lq(&[1, 0, 1]).props().unimodal);
    assert!(!lq(&[2, 1, 2]).props().unimodal);
    assert!(lq(&[1, 2, 1]).props().palindromic);
    assert!(!lq(&[1, -2, 1]).props().nonnegative);
}
