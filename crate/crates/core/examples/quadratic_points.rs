//! Which V_D have infinitely many quadratic points, and why the others
//! do not.

use shimura_atlas::cremona::CurveDatabase;
use shimura_atlas::fixtures::DataSet;
use shimura_atlas::invariants::ShimuraDiscriminant;
use shimura_atlas::quad_points::{all_verdicts, elliptic_quotient_class, emit_table3, heegner_rational_point};

fn main() -> shimura_atlas::Result<()> {
    let db = CurveDatabase::bundled();
    let data = DataSet::bundled();

    let d210 = ShimuraDiscriminant::new(210)?;
    println!("{:?}", heegner_rational_point(&d210, 210)?);
    let q = elliptic_quotient_class(&d210, 210, &db)?;
    println!("V_210/<w_210> = {} ({:?}), rank {}", q.label(), q.selection, q.rank);

    for e in emit_table3(&db, &data)? {
        println!("{:>4} w_{:<4} {}", e.d, e.m, e.quotient);
    }
    for v in all_verdicts(&db, &data)?.iter().filter(|v| !v.is_infinite()) {
        println!("finite {}: {}", v.d, v.justification.join("; "));
    }
    Ok(())
}
