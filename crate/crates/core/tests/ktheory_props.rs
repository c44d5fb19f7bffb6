use proptest::prelude::*;

use wallcross::exactcore::{int, RatMatrix};
use wallcross::fixtures::{B2Walls, Fixtures};
use wallcross::ktheory::{
    double_tilt_classes, dual_basis, euler_form, gram_transform, pairing, single_tilt_classes,
    ExtTable,
};

fn b2() -> (ExtTable, B2Walls) {
    let fx = Fixtures::open(wallcross::fixtures::default_dir()).unwrap();
    (
        fx.load("b2_ext.json").unwrap(),
        fx.load("b2_walls.json").unwrap(),
    )
}

fn int_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), n)
        .prop_map(|rows| RatMatrix::from_i64(&rows).unwrap())
}

proptest! {
    #[test]
    fn gram_transform_composes(e in int_matrix(4), s1 in int_matrix(4), s2 in int_matrix(4)) {
        let once = gram_transform(&e, &s1.mul(&s2).unwrap()).unwrap();
        let twice = gram_transform(&gram_transform(&e, &s1).unwrap(), &s2).unwrap();
        prop_assert_eq!(once, twice);
    }
}

#[test]
fn euler_form_is_the_alternating_ext_sum() {
    let (ext, _) = b2();
    let e = euler_form(&ext).unwrap();
    for i in 0..ext.len() {
        assert_eq!(ext.dim(i, i, 0), 1);
        for j in 0..ext.len() {
            let want: i64 = (0..5)
                .map(|k| (-1i64).pow(k as u32) * ext.dim(i, j, k) as i64)
                .sum();
            assert_eq!(*e.get(i, j), int(want));
            if i != j {
                assert_eq!(ext.dim(i, j, 0), 0);
            }
        }
    }
}

#[test]
fn new_gram_matrix_pairs_new_simples() {
    let (ext, walls) = b2();
    let e = euler_form(&ext).unwrap();
    for w in &walls.walls {
        let s = double_tilt_classes(&ext, ext.index(&w.theta).unwrap()).unwrap();
        let g = gram_transform(&e, &s).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let (si, sj) = (s.col(i), s.col(j));
                let mut direct = int(0);
                for (a, x) in si.iter().enumerate() {
                    for (b, y) in sj.iter().enumerate() {
                        direct += x * e.get(a, b) * y;
                    }
                }
                assert_eq!(*g.get(i, j), direct, "{} ({i}, {j})", w.name);
            }
        }
    }
}

#[test]
fn projectives_are_dual_on_every_wall() {
    let (ext, walls) = b2();
    for w in &walls.walls {
        let theta = ext.index(&w.theta).unwrap();
        for s in [
            double_tilt_classes(&ext, theta).unwrap(),
            single_tilt_classes(&ext, theta).unwrap(),
        ] {
            let q = dual_basis(&s).unwrap();
            assert!(q.is_integral());
            assert_eq!(
                pairing(&q, &s).unwrap(),
                RatMatrix::identity(5),
                "{}",
                w.name
            );
        }
    }
}

#[test]
fn simple_and_projective_bases_have_equal_size() {
    let (_, walls) = b2();
    assert_eq!(walls.simple_labels.len(), walls.projective_labels.len());
    for w in &walls.walls {
        assert_eq!(w.simples.len(), w.projectives.len(), "{}", w.name);
    }
}
