use num_traits::{One, Zero};

use wallcross::charge::{central_charges, duality_system, solve_functionals, Group};
use wallcross::exactcore::{int, Rat};

fn groups() -> Vec<Group> {
    let mut g = vec![Group::B2];
    g.extend((2..=5).map(Group::Cyclic));
    g
}

/// Point at which `ℓ` is evaluated for the line bundle with exponents `n`.
fn point(g: Group, n: &[i64]) -> Vec<(&'static str, Rat)> {
    const NAMES: [&str; 5] = ["n0", "n1", "n2", "n3", "n4"];
    match g {
        Group::B2 => vec![("a", int(n[1])), ("b", int(n[0]))],
        Group::Cyclic(_) => n
            .iter()
            .enumerate()
            .map(|(k, &x)| (NAMES[k], int(x)))
            .collect(),
    }
}

#[test]
fn duality_systems_are_nonsingular() {
    for g in groups() {
        let sys = duality_system(g).unwrap();
        let m = &sys.matrix;
        assert_eq!(m.nrows(), m.ncols(), "{g:?}");
        assert_eq!(m.nrows(), g.l() * (g.l() + 3) / 2, "{g:?}");
        assert!(!m.determinant().unwrap().is_zero(), "{g:?}");
    }
}

#[test]
fn functionals_are_dual_to_the_bundles() {
    // every constraint, re-evaluated from the solved polynomials, gives δ
    for g in groups() {
        let ell = solve_functionals(g).unwrap();
        let sys = duality_system(g).unwrap();
        for (a, p) in &ell.entries {
            for (b, expansion) in &sys.constraints {
                let mut total = Rat::zero();
                for (c, n) in expansion {
                    total += c * p.eval_named(&point(g, n)).unwrap();
                }
                let want = if a == b { Rat::one() } else { Rat::zero() };
                assert_eq!(total, want, "{g:?}: ℓ_{a} on V_{b}");
            }
        }
    }
}

#[test]
fn functionals_and_charges_are_quadratic() {
    for g in groups() {
        let ell = solve_functionals(g).unwrap();
        let z = central_charges(&ell).unwrap();
        for (a, p) in &ell.entries {
            assert!(p.total_degree().unwrap_or(0) <= 2, "{g:?} ℓ_{a}");
        }
        for (a, p) in &z.entries {
            assert_eq!(p.total_degree(), Some(2), "{g:?} Z_{a}");
        }
    }
}

#[test]
fn b2_l4_functional_spot_check() {
    let ell = solve_functionals(Group::B2).unwrap();
    let sys = duality_system(Group::B2).unwrap();
    let l4 = wallcross::cohomology::TautLabel::b2(4).unwrap();
    let (_, expansion) = sys.constraints.iter().find(|(b, _)| *b == l4).unwrap();
    let p = ell.get(l4).unwrap();
    let total: Rat = expansion
        .iter()
        .map(|(c, n)| c * p.eval_named(&point(Group::B2, n)).unwrap())
        .sum();
    assert!(total.is_one());
}

#[test]
fn cyclic_l2_is_b2_reflected() {
    // B2 pairs with dual bundles, so ℓ^cyclic(n0, n1) = ℓ^B2(a = -n1, b = -n0)
    let b2 = solve_functionals(Group::B2).unwrap();
    let cyc = solve_functionals(Group::Cyclic(2)).unwrap();
    for n0 in -2..=2 {
        for n1 in -2..=2 {
            for (a, p) in &cyc.entries {
                let q = b2.get(*a).unwrap();
                let lhs = p.eval_named(&[("n0", int(n0)), ("n1", int(n1))]).unwrap();
                let rhs = q.eval_named(&[("a", int(-n1)), ("b", int(-n0))]).unwrap();
                assert_eq!(lhs, rhs, "{a} at ({n0}, {n1})");
            }
        }
    }
}

/// `-(k/2)(n0-1)^2` plus the bilinear part, where `k` counts how many of the
/// endpoint conditions the label meets. The endpoint weight is `k/2`, not `l/2`.
#[test]
fn cyclic_mixed_charges_in_closed_form() {
    use wallcross::cohomology::TautLabel;
    use wallcross::exactcore::MPoly;
    for l in 2..=5usize {
        let z = central_charges(&solve_functionals(Group::Cyclic(l)).unwrap()).unwrap();
        let s = (1..l)
            .map(|k| format!("n{k}"))
            .collect::<Vec<_>>()
            .join("+");
        let vars = Group::Cyclic(l).vars();
        let check = |label: String, want: String| {
            let a = TautLabel::parse(&label, l).unwrap();
            let want = MPoly::parse(&want).unwrap().with_vars(&vars).unwrap();
            assert_eq!(z.get(a).unwrap(), &want, "l = {l}, {label}");
        };
        for i in 1..l {
            let k = usize::from(i == 1) + usize::from(i == l - 1);
            check(
                format!("V_0,{i}"),
                format!("-{k}/2*(n0-1)^2-(n{i}-1/{l})*(({s})-(2-1/{l}))"),
            );
            for j in 1..i {
                let k = usize::from(i - j == 1);
                check(
                    format!("V_{i},{j}"),
                    format!("-{k}/2*(n0-1)^2+(n{i}-1/{l})*(n{j}-1/{l})"),
                );
            }
        }
    }
}
