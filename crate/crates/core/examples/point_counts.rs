//! Hecke traces and point counts of the reduction of V_D.

use shimura_atlas::invariants::{genus, ShimuraDiscriminant};
use shimura_atlas::trace::{parity_witness, point_count, trace_hecke, trace_hecke_new};

fn main() -> shimura_atlas::Result<()> {
    println!("tr T_m on S_2(11): {:?}", (1..=7).map(|m| trace_hecke(11, m)).collect::<Result<Vec<_>, _>>()?);
    println!("dim S_2^new(210) = {}", trace_hecke_new(210, 1)?);

    for (d, ell) in [(267, 67), (411, 103), (26, 3)] {
        let disc = ShimuraDiscriminant::new(d)?;
        for k in [1, 2] {
            let c = point_count(&disc, ell, k)?;
            println!("#M_{d}(F_{ell}^{k}) = {} (trace {})", c.count, c.frobenius_trace);
        }
    }

    // D = 3p with p = 2 mod 3
    for d in ShimuraDiscriminant::all_up_to(546) {
        let p = *d.primes().last().unwrap();
        if d.primes()[0] != 3 || p % 3 != 2 || genus(&d)? < 2 {
            continue;
        }
        let (ell, r) = parity_witness(&d)?;
        println!("D = {d}: #M_D(F_{ell}) = {r} mod 4");
    }
    Ok(())
}
