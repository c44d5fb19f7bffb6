use num_traits::{One, Zero};
use proptest::prelude::*;

use wallcross::exactcore::{
    factor_multiplicity, int, rat, MPoly, Multiplicity, QSeries, Rat, RatFunc, UPoly,
};

const VARS: [&str; 3] = ["x", "y", "z"];

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, 3), small_rat()), 0..6).prop_map(
        |terms| MPoly::from_terms(VARS.iter().map(|s| s.to_string()).collect(), terms).unwrap(),
    )
}

fn upoly(max_len: usize) -> impl Strategy<Value = UPoly> {
    prop::collection::vec(small_rat(), 0..max_len).prop_map(UPoly::new)
}

fn linear_form() -> impl Strategy<Value = MPoly> {
    (small_rat(), small_rat(), small_rat())
        .prop_filter("nonconstant", |(a, b, _)| !a.is_zero() || !b.is_zero())
        .prop_map(|(a, b, c)| {
            &(&MPoly::var("x").scale(&a) + &MPoly::var("y").scale(&b)) + &MPoly::constant(c)
        })
}

proptest! {
    #[test]
    fn ring_axioms(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn no_zero_coefficients_and_full_exponent_vectors(f in poly(), g in poly()) {
        let p = &f * &g;
        for (e, c) in p.terms() {
            prop_assert!(!c.is_zero());
            prop_assert_eq!(e.len(), p.vars().len());
        }
    }

    #[test]
    fn multiplicity_adds_powers(f in poly(), h in linear_form(), k in 0u32..=3) {
        let base = factor_multiplicity(&f, &h).unwrap();
        let bumped = factor_multiplicity(&(&f * &h.pow(k)), &h).unwrap();
        match base {
            Multiplicity::Finite(m) => prop_assert_eq!(bumped, Multiplicity::Finite(m + k)),
            Multiplicity::Infinite => prop_assert_eq!(bumped, Multiplicity::Infinite),
        }
    }

    #[test]
    fn expansion_inverts_the_denominator(num in upoly(6), den in upoly(5), n in 1usize..25) {
        let mut den = den;
        if den.coeff(0).is_zero() {
            den = &den + &UPoly::one();
        }
        let r = RatFunc::new(num.clone(), den.clone()).unwrap();
        let s = r.expand(n).unwrap();
        prop_assert_eq!(s.trunc(), n);
        prop_assert_eq!(&s * &QSeries::from_poly(&den, n), QSeries::from_poly(&num, n));
    }

    #[test]
    fn json_round_trip_is_exact(f in poly()) {
        let text = serde_json::to_string(&f).unwrap();
        let back: MPoly = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn rationals_stay_in_lowest_terms(n in -1000i64..1000, d in 1i64..1000) {
        let r = rat(n, d);
        prop_assert!(r.denom() > &num_bigint::BigInt::zero());
        prop_assert!(num_integer::Integer::gcd(r.numer(), r.denom()).is_one());
        prop_assert_eq!(wallcross::exactcore::parse_rat(&wallcross::exactcore::rat_string(&r)).unwrap(), r);
    }
}

#[test]
fn zero_polynomial_vanishes_to_every_order() {
    let h = MPoly::parse("x + y - 1").unwrap();
    assert_eq!(
        factor_multiplicity(&MPoly::zero(), &h).unwrap(),
        Multiplicity::Infinite
    );
    assert_eq!(
        factor_multiplicity(&MPoly::constant(int(3)), &h).unwrap(),
        Multiplicity::Finite(0)
    );
}

#[test]
fn series_never_reports_past_its_truncation() {
    let s = RatFunc::new(UPoly::one(), UPoly::one_minus_t_pow(1))
        .unwrap()
        .expand(5)
        .unwrap();
    assert_eq!(s.coeffs().len(), 5);
    assert!(s.coeff(5).is_none());
    let short = QSeries::from_poly(&UPoly::from_ints(&[1, 1, 1, 1, 1, 1, 1]), 3);
    assert_eq!(short.coeffs(), &[int(1), int(1), int(1)]);
}
