//! Classes of simples and projectives on the far side of each B2 wall, with
//! the Euler form in the new basis and the transformed central charges.

use wallcross::charge::{central_charges, crossed_charges, solve_functionals, Group};
use wallcross::fixtures::{B2Walls, Fixtures};
use wallcross::ktheory::{
    double_tilt_classes, dual_basis, euler_form, format_columns, format_rows, gram_transform,
    permutation_equivalent, ExtTable,
};

fn main() -> wallcross::Result<()> {
    let fx = Fixtures::from_env()?;
    let ext: ExtTable = fx.load("b2_ext.json")?;
    let walls: B2Walls = fx.load("b2_walls.json")?;
    let e = euler_form(&ext)?;
    let z = central_charges(&solve_functionals(Group::B2)?)?;
    println!("Euler form\n{e}");

    for w in &walls.walls {
        let s = double_tilt_classes(&ext, ext.index(&w.theta)?)?;
        let q = dual_basis(&s)?;
        let gram = gram_transform(&e, &s)?;
        println!("across {} ({} = 0)", w.name, w.form);
        let simples = format_columns(&s, &walls.simple_labels);
        let projectives = format_rows(&q, &walls.projective_labels);
        for (a, b) in simples.iter().zip(&projectives) {
            println!("  {a:<16} {b}");
        }
        println!(
            "  same category up to relabelling: {}",
            permutation_equivalent(&e, &gram)?
        );
        for (a, p) in &crossed_charges(&z, &s)?.entries {
            println!("  Z'({}) = {p}", Group::B2.simple_name(*a));
        }
    }
    Ok(())
}
