//! Central charges for the cyclic groups `Z/l`, given on the command line
//! (default 4).

use wallcross::charge::{central_charges, solve_functionals, Group};

fn main() -> wallcross::Result<()> {
    let l = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let g = Group::Cyclic(l).validate()?;
    let z = central_charges(&solve_functionals(g)?)?;
    for (a, p) in &z.entries {
        println!("{:<8} {p}", g.simple_name(*a));
    }
    Ok(())
}
