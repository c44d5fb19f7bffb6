//! Functionals, dimension polynomials and central charges for the binary
//! dihedral group of order 8.

use wallcross::charge::{central_charges, dimension_polynomial, solve_functionals, Group};

fn main() -> wallcross::Result<()> {
    let ell = solve_functionals(Group::B2)?;
    let z = central_charges(&ell)?;
    for a in ell.labels() {
        let name = Group::B2.simple_name(a);
        println!("{name}: ell = {}", ell.get(a).expect("label from table"));
        println!("{name}: dim = {}", dimension_polynomial(&ell, a)?);
        println!("{name}: Z   = {}", z.get(a).expect("label from table"));
    }
    Ok(())
}
