//! Every bielliptic V_D, with hyperelliptic involutions and the finiteness
//! bound beyond the scan.

use shimura_atlas::classifier::{lemma5_audit, prop6_excludes, scan_bielliptic, Prop6Outcome};
use shimura_atlas::invariants::ShimuraDiscriminant;

fn main() -> shimura_atlas::Result<()> {
    let rows = scan_bielliptic(5000)?;
    println!("{:>5} {:>3}  bielliptic          hyperelliptic", "D", "g");
    for r in &rows {
        let audit = lemma5_audit(&ShimuraDiscriminant::new(r.d)?)?;
        println!(
            "{:>5} {:>3}  {:<20} {:<8} {}",
            r.d,
            r.genus,
            format!("{:?}", r.bielliptic_m),
            format!("{:?}", r.hyperelliptic_m),
            if audit.passed() { "" } else { "pattern violated" }
        );
    }
    println!("{} bielliptic discriminants", rows.len());

    for d in [551, 546, 2310 * 13] {
        match prop6_excludes(&ShimuraDiscriminant::new(d)?) {
            Prop6Outcome::Excluded(e) => println!("D = {d} excluded: {e:?}"),
            Prop6Outcome::NotExcluded => println!("D = {d} not excluded"),
        }
    }
    Ok(())
}
