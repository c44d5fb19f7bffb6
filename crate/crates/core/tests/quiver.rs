use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use wallcross::exactcore::{int, Rat, RatMatrix};
use wallcross::ktheory::{double_tilt_classes, dual_basis, single_tilt_classes, ExtTable};
use wallcross::quiver::{ext_simples, run_mutation, Algebra, MutationState, QuiverSpec, Section};

fn spec(file: &str) -> QuiverSpec {
    let path = format!("{}/fixtures/{file}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn algebra(file: &str, trunc: usize) -> Algebra {
    Algebra::from_spec(&spec(file), trunc).unwrap()
}

/// Every path of degree `d` from `s`, in traversal order, with its end.
fn paths(alg: &Algebra, s: usize, d: usize) -> Vec<(Vec<usize>, usize)> {
    if d == 0 {
        return vec![(Vec::new(), s)];
    }
    let mut out = Vec::new();
    for k in 1..=d {
        for (a, ar) in alg.quiver.arrows.iter().enumerate() {
            if ar.src == s && ar.deg == k {
                for (mut rest, e) in paths(alg, ar.dst, d - k) {
                    rest.insert(0, a);
                    out.push((rest, e));
                }
            }
        }
    }
    out
}

/// `dim e_s A_d e_e` as the span of paths modulo the two-sided ideal, by brute force.
fn oracle_dim(
    alg: &Algebra,
    relations: &[Vec<(Rat, Vec<usize>)>],
    s: usize,
    e: usize,
    d: usize,
) -> usize {
    let all: Vec<Vec<usize>> = paths(alg, s, d)
        .into_iter()
        .filter(|(_, end)| *end == e)
        .map(|(p, _)| p)
        .collect();
    let index: HashMap<&Vec<usize>, usize> = all.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let deg = |w: &[usize]| w.iter().map(|&a| alg.quiver.arrows[a].deg).sum::<usize>();
    let mut rows = Vec::new();
    for rel in relations {
        let w0 = &rel[0].1;
        let (rs, re, rd) = (
            alg.quiver.arrows[w0[0]].src,
            alg.quiver.arrows[*w0.last().unwrap()].dst,
            deg(w0),
        );
        if rd > d {
            continue;
        }
        for du in 0..=d - rd {
            for (u, ue) in paths(alg, s, du) {
                if ue != rs {
                    continue;
                }
                for (w, we) in paths(alg, re, d - rd - du) {
                    if we != e {
                        continue;
                    }
                    let mut row = vec![Rat::zero(); all.len()];
                    for (c, r) in rel {
                        let full: Vec<usize> = u.iter().chain(r).chain(&w).copied().collect();
                        row[index[&full]] += c;
                    }
                    rows.push(row);
                }
            }
        }
    }
    let rank = if rows.is_empty() {
        0
    } else {
        RatMatrix::from_rows(rows).unwrap().rank()
    };
    all.len() - rank
}

fn relations(alg: &Algebra, spec: &QuiverSpec) -> Vec<Vec<(Rat, Vec<usize>)>> {
    spec.relations
        .iter()
        .map(|r| {
            r.iter()
                .map(|t| {
                    (
                        t.coeff.clone(),
                        t.path
                            .iter()
                            .rev()
                            .map(|n| alg.quiver.arrow(n).unwrap())
                            .collect(),
                    )
                })
                .collect()
        })
        .collect()
}

fn check_against_oracle(file: &str, trunc: usize) {
    let alg = algebra(file, trunc);
    let rels = relations(&alg, &spec(file));
    for s in 0..alg.nv() {
        for e in 0..alg.nv() {
            for d in 0..=trunc {
                assert_eq!(
                    alg.dim(s, e, d),
                    oracle_dim(&alg, &rels, s, e, d),
                    "{file} ({s}, {e}) degree {d}"
                );
            }
        }
    }
}

#[test]
fn perv_dimensions_match_brute_force() {
    check_against_oracle("perv_p2.json", 5);
}

#[test]
fn tstar_dimensions_match_brute_force() {
    check_against_oracle("tstar_p2.json", 3);
}

#[test]
fn perv_basics() {
    let alg = algebra("perv_p2.json", 6);
    assert_eq!(alg.total_dim(), 9);
    assert_eq!(algebra("perv_p2.json", 7).total_dim(), 9);
    for v in 0..alg.nv() {
        assert_eq!(alg.dim(v, v, 0), 1);
    }
    // adjacent strata have a one-dimensional Ext^1 in both directions
    let v = |n: &str| alg.quiver.vertex(n).unwrap();
    for (a, b) in [("pt", "A1"), ("A1", "A2")] {
        assert_eq!(ext_simples(&alg, v(a), v(b), 1).unwrap(), 1);
        assert_eq!(ext_simples(&alg, v(b), v(a), 1).unwrap(), 1);
    }
    assert_eq!(ext_simples(&alg, v("pt"), v("A2"), 1).unwrap(), 0);
}

#[test]
fn composition_is_associative() {
    for (file, trunc) in [("perv_p2.json", 6), ("tstar_p2.json", 3)] {
        let alg = algebra(file, trunc);
        let nv = alg.nv();
        let one = |i: usize| vec![(i, int(1))];
        for (s, m, e, f) in itertools::iproduct!(0..nv, 0..nv, 0..nv, 0..nv) {
            for dx in 0..=trunc {
                for dy in 0..=trunc - dx {
                    for dz in 0..=trunc - dx - dy {
                        for i in 0..alg.dim(s, m, dx) {
                            for j in 0..alg.dim(m, e, dy) {
                                let xy = alg.mul(s, m, dx, &one(i), e, dy, &one(j));
                                for k in 0..alg.dim(e, f, dz) {
                                    let left = alg.mul(s, e, dx + dy, &xy, f, dz, &one(k));
                                    let yz = alg.mul(m, e, dy, &one(j), f, dz, &one(k));
                                    let right = alg.mul(s, m, dx, &one(i), f, dy + dz, &yz);
                                    assert_eq!(left, right, "{file}");
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Cone classes of the mutated projective against the tilt prediction from
/// the Ext data of the same algebra.
fn check_k0_classes(file: &str, theta: &str) {
    let alg = algebra(file, 6);
    let nv = alg.nv();
    let ext = (0..nv)
        .map(|a| {
            (0..nv)
                .map(|b| {
                    (0..5)
                        .map(|k| ext_simples(&alg, a, b, k).unwrap() as u32)
                        .collect()
                })
                .collect()
        })
        .collect();
    let table = ExtTable {
        labels: alg.quiver.vertices.clone(),
        ext,
    };
    let theta = alg.quiver.vertex(theta).unwrap();
    let predicted = [
        dual_basis(&single_tilt_classes(&table, theta).unwrap()).unwrap(),
        dual_basis(&double_tilt_classes(&table, theta).unwrap()).unwrap(),
    ];
    let mut st = MutationState::new(&alg, theta, Section::Full).unwrap();
    for want in &predicted {
        let record = st.step().unwrap().clone();
        assert!(record.injective, "{file} step {}", record.step);
        let c = st.mutated_complex();
        let mut class = vec![int(0); nv];
        for n in c.lo..=c.hi() {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            for (v, m) in c.multiplicities(nv, n).into_iter().enumerate() {
                class[v] += int(sign * m as i64);
            }
        }
        assert_eq!(
            class.as_slice(),
            want.row(theta),
            "{file} step {}",
            record.step
        );
    }
}

#[test]
fn perv_classes_follow_the_tilts() {
    check_k0_classes("perv_p2.json", "A2");
}

#[test]
fn tstar_classes_follow_the_tilts() {
    check_k0_classes("tstar_p2.json", "2");
}

#[test]
fn zero_section_is_not_a_mutation() {
    let alg = algebra("perv_p2.json", 6);
    let theta = alg.quiver.vertex("A2").unwrap();
    let run = run_mutation(&alg, theta, 1, Section::Zero, &BTreeMap::new()).unwrap();
    assert!(!run.all_injective());
}

#[test]
fn perv_second_step_needs_degree_two_at_a1() {
    let alg = algebra("perv_p2.json", 6);
    let theta = alg.quiver.vertex("A2").unwrap();
    let default = run_mutation(&alg, theta, 2, Section::Full, &BTreeMap::new()).unwrap();
    assert_eq!(default.steps[1].dual_pairing, Some(false));
    let degrees = BTreeMap::from([(2, vec![1, 2, 1])]);
    let tuned = run_mutation(&alg, theta, 2, Section::Full, &degrees).unwrap();
    assert!(tuned.all_injective());
    assert!(tuned.all_dual());
    assert_eq!(tuned.steps[1].record.dim_vector, vec![2, 2, 1]);
}

#[test]
fn perv_results_are_stable_in_truncation() {
    let run = |d| {
        let alg = algebra("perv_p2.json", d);
        let theta = alg.quiver.vertex("A2").unwrap();
        run_mutation(&alg, theta, 2, Section::Full, &BTreeMap::new()).unwrap()
    };
    let (a, b) = (run(5), run(6));
    for (x, y) in a.steps.iter().zip(&b.steps) {
        assert_eq!(x.record.dim_vector, y.record.dim_vector);
        assert_eq!(x.record.injective, y.record.injective);
        assert_eq!(x.dual_pairing, y.dual_pairing);
    }
}
