//! Walls cut out by the B2 central charges, vanishing orders along each wall
//! and a positivity sweep over the alcove containing the origin.

use wallcross::alcoves::{positivity_on_alcove, vanishing_labels, walls_from_charges};
use wallcross::charge::{central_charges, solve_functionals, Group};
use wallcross::fixtures::{B2Walls, Fixtures};

fn main() -> wallcross::Result<()> {
    let z = central_charges(&solve_functionals(Group::B2)?)?;
    let walls = walls_from_charges(&z)?;
    for h in &walls.walls {
        let orders: Vec<String> = vanishing_labels(&z, h)?
            .into_iter()
            .map(|(a, k)| format!("{}:{k}", Group::B2.simple_name(a)))
            .collect();
        println!("{h}  vanishing {}", orders.join(" "));
    }

    let fx = Fixtures::from_env()?;
    let spec: B2Walls = fx.load("b2_walls.json")?;
    let report = positivity_on_alcove(&z, &spec.alcove.build()?, 40)?;
    println!(
        "checked {} points, passed: {}",
        report.points_checked,
        report.passed()
    );
    for m in &report.minima {
        println!(
            "  min {} = {} at ({})",
            m.label,
            m.value,
            m.point.join(", ")
        );
    }
    Ok(())
}
