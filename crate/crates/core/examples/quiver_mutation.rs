//! Truncated mutation of the projective at one vertex of a graded quiver
//! algebra, read from a JSON description (default: perverse sheaves on P2).

use std::collections::BTreeMap;

use wallcross::quiver::{run_mutation, Algebra, QuiverSpec, Section};

fn main() -> wallcross::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/perv_p2.json").into());
    let theta = args.next().unwrap_or_else(|| "A2".into());

    let text = std::fs::read_to_string(&path).map_err(|source| wallcross::Error::Io {
        path: path.clone(),
        source,
    })?;
    let spec: QuiverSpec = serde_json::from_str(&text)?;
    let alg = Algebra::from_spec(&spec, 6)?;
    println!(
        "{path}: {} vertices, total dimension {}",
        alg.nv(),
        alg.total_dim()
    );

    let theta = alg.quiver.vertex(&theta)?;
    let run = run_mutation(&alg, theta, 2, Section::Full, &BTreeMap::new())?;
    for s in &run.steps {
        println!(
            "step {}: dim vector {:?}, injective {}, dual pairing {:?}",
            s.record.step, s.record.dim_vector, s.record.injective, s.dual_pairing
        );
    }
    Ok(())
}
