//! Genus, elliptic points and Atkin-Lehner fixed points of V_D.
//!
//! cargo run --example invariants -- 210 546

use shimura_atlas::invariants::{quotient_genus, AtkinLehnerElement, CurveInvariants, ShimuraDiscriminant};

fn main() -> shimura_atlas::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ds = if args.is_empty() { vec![26, 145, 210] } else { args };
    for d in ds {
        let disc = ShimuraDiscriminant::new(d)?;
        let inv = CurveInvariants::compute(&disc)?;
        println!("V_{d}: g = {}, e2 = {}, e3 = {}", inv.genus, inv.e2, inv.e3);
        for (&m, &n) in &inv.fixed_counts {
            let g = quotient_genus(&disc, AtkinLehnerElement::new(&disc, m)?)?;
            println!("  w_{m:<4} n = {n:<3} quotient genus {g}");
        }
    }
    Ok(())
}
