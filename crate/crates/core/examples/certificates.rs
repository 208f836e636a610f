//! Aut(V_D) = W certificates for the bielliptic and small discriminants.

use shimura_atlas::classifier::{aut_certificate, AutConclusion};
use shimura_atlas::invariants::{genus, ShimuraDiscriminant};

fn main() -> shimura_atlas::Result<()> {
    let mut unknown = Vec::new();
    for d in ShimuraDiscriminant::all_up_to(300) {
        if genus(&d)? < 2 {
            continue;
        }
        let c = aut_certificate(&d)?;
        match c.conclusion {
            AutConclusion::Unknown => unknown.push(d.value()),
            other => println!("{d:>4}: {other:?} {:?}", c.fired),
        }
    }
    println!("open: {unknown:?}");
    Ok(())
}
