//! Reading an allcurves table: local data of the conductor-210 curves.
//!
//! cargo run --example cremona -- path/to/allcurves.txt

use shimura_atlas::cremona::CurveDatabase;

fn main() -> shimura_atlas::Result<()> {
    let db = match std::env::args().nth(1) {
        Some(path) => CurveDatabase::load(path.as_ref())?,
        None => CurveDatabase::bundled(),
    };
    println!("{} curves", db.len());
    for (class, curves) in db.classes(210) {
        let c = curves[0];
        let signs: Vec<i64> = [2, 3, 5, 7].iter().map(|&p| c.al_sign(p)).collect::<Result<_, _>>()?;
        let aps: Vec<i64> = [11, 13, 17, 19].iter().map(|&p| c.ap(p)).collect::<Result<_, _>>()?;
        println!("{class}: rank {}, AL signs {signs:?}, a_11..a_19 {aps:?}", c.rank);
        for c in curves {
            println!("  {} {:?} I_{} at 3", c.label(), c.a_invariants, c.multiplicative_type(3)?.n);
        }
    }
    Ok(())
}
