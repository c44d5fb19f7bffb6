//! Chern characters of the tautological bundles on the Hilbert scheme of two
//! points on the `Z/3` resolution, and the ring product that underlies them.

use wallcross::cohomology::{
    ch_line_bundle, ch_tautological, geometric_from_ch, ring_mul, CohClass, TautLabel,
};

fn main() -> wallcross::Result<()> {
    let l = 3;
    for a in TautLabel::all(l) {
        println!("ch({a}) = {}", ch_tautological(l, a)?);
    }

    let d0 = CohClass::parse(l, "d0")?;
    println!("d0 * d0 = {}", ring_mul(&d0, &d0)?);
    println!("ch(O(1,0,-1)) = {}", ch_line_bundle(l, &[1, 0, -1])?);

    // every basis class as a combination of Chern characters
    for (b, combo) in geometric_from_ch(l)? {
        let terms: Vec<String> = combo.iter().map(|(a, c)| format!("{c}*ch({a})")).collect();
        println!("{b} = {}", terms.join(" + "));
    }
    Ok(())
}
