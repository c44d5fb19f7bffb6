use proptest::prelude::*;

use wallcross::alcoves::{
    vanishing_labels, vanishing_order_on_wall, walls_from_charges, Hyperplane,
};
use wallcross::charge::{central_charges, solve_functionals, ChargeTable, Group};
use wallcross::exactcore::{factor_multiplicity, rat, Multiplicity};

fn charges(g: Group) -> ChargeTable {
    central_charges(&solve_functionals(g).unwrap()).unwrap()
}

proptest! {
    #[test]
    fn orders_ignore_rescaling(n in -9i64..=9, d in 1i64..=7) {
        prop_assume!(n != 0);
        let c = rat(n, d);
        let z = charges(Group::B2);
        for h in walls_from_charges(&z).unwrap().walls {
            let scaled = h.form().scale(&c);
            for (_, p) in &z.entries {
                let k = vanishing_order_on_wall(p, &h).unwrap();
                prop_assert_eq!(k, vanishing_order_on_wall(p, &Hyperplane::new(&scaled).unwrap()).unwrap());
                prop_assert_eq!(k, factor_multiplicity(p, &scaled).unwrap());
            }
        }
    }
}

#[test]
fn every_wall_carries_a_vanishing_charge() {
    for g in std::iter::once(Group::B2).chain((2..=5).map(Group::Cyclic)) {
        let z = charges(g);
        let walls = walls_from_charges(&z).unwrap();
        assert!(!walls.walls.is_empty(), "{g:?}");
        for h in &walls.walls {
            assert!(h.form().total_degree() == Some(1));
            assert!(!vanishing_labels(&z, h).unwrap().is_empty(), "{g:?} {h}");
        }
    }
}

#[test]
fn b2_walls_have_one_double_root_each() {
    let z = charges(Group::B2);
    let walls = walls_from_charges(&z).unwrap();
    assert_eq!(walls.walls.len(), 4);
    assert!(walls.nonlinear.iter().all(|(name, _)| name == "L4"));
    for h in &walls.walls {
        let v = vanishing_labels(&z, h).unwrap();
        assert_eq!(v.len(), 1, "{h}");
        assert_eq!(v[0].1, Multiplicity::Finite(2), "{h}");
    }
}

#[test]
fn orders_cover_exactly_the_table_labels() {
    let z = charges(Group::Cyclic(3));
    let h = Hyperplane::parse("n0 - 1/3", &Group::Cyclic(3).vars()).unwrap();
    let orders: Vec<_> = z
        .entries
        .iter()
        .map(|(_, p)| vanishing_order_on_wall(p, &h).unwrap())
        .collect();
    assert_eq!(orders.len(), z.entries.len());
}
