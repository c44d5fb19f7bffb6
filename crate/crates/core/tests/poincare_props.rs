use num_traits::ToPrimitive;
use proptest::prelude::*;

use wallcross::exactcore::Partition;
use wallcross::poincare::{
    alternating_sum_tau_i, closed_form_tau_i, fake_degree, hook_data, integer_coefficients,
    kc_identity_check, koszul_trivial_closed_form, koszul_trivial_sum, value_at_one,
    CherednikParams,
};

/// Fills boxes with 1..n one at a time, each at an addable corner.
fn count_tableaux(shape: &[u32]) -> u64 {
    fn go(filled: &mut Vec<u32>, shape: &[u32]) -> u64 {
        if filled.iter().zip(shape).all(|(f, s)| f == s) {
            return 1;
        }
        let mut total = 0;
        for r in 0..shape.len() {
            let fits = filled[r] < shape[r] && (r == 0 || filled[r - 1] > filled[r]);
            if fits {
                filled[r] += 1;
                total += go(filled, shape);
                filled[r] -= 1;
            }
        }
        total
    }
    go(&mut vec![0; shape.len()], shape)
}

fn nonnegative_integral(s: &wallcross::QSeries) -> bool {
    matches!(integer_coefficients(s), Some(v) if v.iter().all(|&x| x >= 0))
}

proptest! {
    #[test]
    fn trivial_family_is_a_graded_dimension(n in 1u32..=4, m in 0i64..=3, p in prop::sample::select(vec![5u32, 7, 11, 13])) {
        let sum = koszul_trivial_sum(n, m, p, 60).unwrap();
        prop_assert_eq!(&sum, &koszul_trivial_closed_form(n, m, p).unwrap().expand(60).unwrap());
        prop_assert!(nonnegative_integral(&sum));
    }

    // The product form has integer coefficients throughout, and they are all
    // nonnegative exactly when l divides c = m0 n + p + 1 + l m_{i+1}.
    #[test]
    fn wreath_family_positivity(
        n in 1u32..=3,
        l in 1u32..=4,
        p in prop::sample::select(vec![5u32, 7]),
        i_seed in 0u32..4,
        m0 in -2i64..=2,
        mi in -2i64..=2,
    ) {
        let i = i_seed % l;
        let mut m = vec![0; l as usize + 1];
        m[0] = m0;
        m[i as usize + 1] = mi;
        let prm = CherednikParams { n, l, m, p };
        let c = m0 * n as i64 + p as i64 + 1 + l as i64 * mi;
        match (alternating_sum_tau_i(&prm, i, 60), closed_form_tau_i(&prm, i)) {
            (Ok(sum), Ok(closed)) => {
                prop_assert_eq!(&sum, &closed.expand(60).unwrap());
                prop_assert!(integer_coefficients(&sum).is_some());
                prop_assert_eq!(nonnegative_integral(&sum), c % l as i64 == 0);
            }
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "only one side rejected: {:?} / {:?}", a.err(), b.err()),
        }
    }
}

#[test]
fn fake_degrees_count_tableaux() {
    for size in 1..=6 {
        for tau in Partition::all(size) {
            let at_one = value_at_one(&fake_degree(&tau)).and_then(|v| v.to_u64());
            assert_eq!(
                at_one,
                Some(count_tableaux(tau.parts())),
                "{:?}",
                tau.parts()
            );
        }
    }
}

#[test]
fn hooks_cover_the_diagram() {
    for size in 1..=6 {
        for tau in Partition::all(size) {
            let h = hook_data(&tau);
            assert_eq!(h.boxes.len() as u32, tau.size());
            assert!(h.boxes.iter().all(|&(_, _, hook, _)| hook > 0));
        }
    }
}

#[test]
fn q_binomial_identity_small_n() {
    assert!((0..=10).all(kc_identity_check));
}

#[test]
fn parameters_are_validated() {
    let bad = CherednikParams {
        n: 0,
        l: 2,
        m: vec![0, 0, 0],
        p: 5,
    };
    assert!(bad.validate().is_err());
    let short = CherednikParams {
        n: 2,
        l: 3,
        m: vec![0, 0],
        p: 5,
    };
    assert!(closed_form_tau_i(&short, 2).is_err());
}
