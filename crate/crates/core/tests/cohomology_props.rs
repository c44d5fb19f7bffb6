use num_traits::One;
use proptest::prelude::*;

use wallcross::cohomology::{
    basis, ch_line_bundle, ch_tautological, geometric_from_ch, ring_mul, CohClass, CohLabel,
    TautLabel,
};
use wallcross::exactcore::{int, rat, Rat};

fn class(l: usize) -> impl Strategy<Value = CohClass> {
    let b = basis(l);
    prop::collection::vec((-5i64..=5, 1i64..=3), b.len()).prop_map(move |cs| {
        let terms: Vec<(CohLabel, Rat)> = b
            .iter()
            .copied()
            .zip(cs.into_iter().map(|(n, d)| rat(n, d)))
            .collect();
        CohClass::from_terms(l, &terms).unwrap()
    })
}

fn l_and_pair() -> impl Strategy<Value = (usize, CohClass, CohClass)> {
    (2usize..=5).prop_flat_map(|l| (Just(l), class(l), class(l)))
}

fn l_and_exponents() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>)> {
    (2usize..=5).prop_flat_map(|l| {
        (
            Just(l),
            prop::collection::vec(-4i64..=4, l),
            prop::collection::vec(-4i64..=4, l),
        )
    })
}

proptest! {
    #[test]
    fn product_is_commutative_and_graded((l, x, y) in l_and_pair()) {
        prop_assert_eq!(ring_mul(&x, &y).unwrap(), ring_mul(&y, &x).unwrap());
        for dx in [0u32, 2, 4] {
            for dy in [0u32, 2, 4] {
                let p = ring_mul(&x.homogeneous(dx), &y.homogeneous(dy)).unwrap();
                if dx + dy > 4 {
                    prop_assert!(p.is_zero());
                } else {
                    prop_assert_eq!(p.homogeneous(dx + dy), p.clone());
                }
            }
        }
        let _ = l;
    }

    #[test]
    fn line_bundle_is_exponential((l, n, _m) in l_and_exponents()) {
        // oracle: 1 + D + D*D/2 built here from the ring product
        let terms: Vec<(CohLabel, Rat)> = n.iter().enumerate().map(|(k, &x)| (CohLabel::D(k), int(x))).collect();
        let d = CohClass::from_terms(l, &terms).unwrap();
        let want = CohClass::one(l).add(&d).unwrap().add(&ring_mul(&d, &d).unwrap().scale(&rat(1, 2))).unwrap();
        prop_assert_eq!(ch_line_bundle(l, &n).unwrap(), want);
    }

    #[test]
    fn line_bundles_multiply((l, n, m) in l_and_exponents()) {
        let sum: Vec<i64> = n.iter().zip(&m).map(|(a, b)| a + b).collect();
        let prod = ring_mul(&ch_line_bundle(l, &n).unwrap(), &ch_line_bundle(l, &m).unwrap()).unwrap();
        prop_assert_eq!(prod, ch_line_bundle(l, &sum).unwrap());
    }
}

#[test]
fn basis_and_label_counts() {
    for l in 2..=6 {
        assert_eq!(basis(l).len(), l * (l + 3) / 2, "l = {l}");
        assert_eq!(TautLabel::all(l).len(), 2 * l + l * (l - 1) / 2, "l = {l}");
    }
}

#[test]
fn inversion_undoes_chern_characters() {
    for l in 2..=5 {
        for (b, combo) in geometric_from_ch(l).unwrap() {
            let mut acc = CohClass::zero(l);
            for (a, c) in combo {
                acc = acc.add(&ch_tautological(l, a).unwrap().scale(&c)).unwrap();
            }
            assert_eq!(acc, CohClass::basis_elt(l, b), "l = {l}, {b}");
        }
    }
}

#[test]
fn chern_characters_have_rank_in_degree_zero() {
    for l in 2..=5 {
        for a in TautLabel::all(l) {
            let ch = ch_tautological(l, a).unwrap();
            assert_eq!(ch.coeff(CohLabel::One), int(a.rank() as i64), "{a}");
        }
    }
}

#[test]
fn b2_divisor_naming() {
    // (d0 + d1)^2 = 4p + 4s, so the usable translation check is d1^2 = d0^2 = p1
    let d0 = CohClass::parse(2, "d0").unwrap();
    let d1 = CohClass::parse(2, "d1").unwrap();
    let p1 = CohClass::parse(2, "p1").unwrap();
    assert_eq!(ring_mul(&d1, &d1).unwrap(), p1);
    assert_eq!(ring_mul(&d0, &d0).unwrap(), p1);
    let d01 = CohClass::parse(2, "d0 + d1").unwrap();
    assert_eq!(
        ring_mul(&d01, &d01).unwrap(),
        CohClass::parse(2, "4*p1 + 4*s1").unwrap()
    );
    assert!(ring_mul(&CohClass::parse(2, "p1").unwrap(), &d1)
        .unwrap()
        .is_zero());
    assert!(CohClass::one(2).coeff(CohLabel::One).is_one());
}
