//! Runs every structural check and the three table reproductions.

use shimura_atlas::cremona::CurveDatabase;
use shimura_atlas::fixtures::DataSet;
use shimura_atlas::report::{audit, audit_report, golden_table1, golden_table2, golden_table3, Format};

fn main() -> shimura_atlas::Result<()> {
    let db = CurveDatabase::bundled();
    let data = DataSet::bundled();
    print!("{}", audit_report(&audit(&db, &data)?).render(Format::Md));
    for (name, g) in [
        ("table 1", golden_table1(5000, &data)?),
        ("table 2", golden_table2(&data)?),
        ("table 3", golden_table3(&db, &data)?),
    ] {
        println!("{name}: {} rows, {}", g.report.rows.len(), if g.matches() { "match" } else { "MISMATCH" });
        for n in g.notes {
            println!("  {n}");
        }
    }
    Ok(())
}
