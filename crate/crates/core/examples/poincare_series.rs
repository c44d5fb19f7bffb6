//! Koszul-type alternating sums for Cherednik modules against their product
//! formulas, for the trivial representation and one wreath character.

use wallcross::poincare::{
    alternating_sum_tau_i, closed_form_tau_i, integer_coefficients, koszul_trivial_closed_form,
    koszul_trivial_sum, CherednikParams,
};

fn main() -> wallcross::Result<()> {
    let trunc = 30;
    for n in 1..=4 {
        let sum = koszul_trivial_sum(n, 1, 7, trunc)?;
        let closed = koszul_trivial_closed_form(n, 1, 7)?;
        println!(
            "S_{n}, m=1, p=7: {}  agrees: {}",
            closed,
            sum == closed.expand(trunc)?
        );
    }

    let params = CherednikParams {
        n: 2,
        l: 3,
        m: vec![0, 0, 1, 0],
        p: 5,
    };
    let sum = alternating_sum_tau_i(&params, 1, trunc)?;
    let closed = closed_form_tau_i(&params, 1)?;
    println!("tau(1), n=2, l=3: {closed}");
    println!("  agrees: {}", sum == closed.expand(trunc)?);
    println!("  coefficients: {:?}", integer_coefficients(&sum));
    Ok(())
}
