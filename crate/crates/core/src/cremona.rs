//! Reader for elliptic-curve tables in the whitespace "allcurves" layout
//!
//! ```text
//! 210 d 2 [1,1,0,-23,33] 1 4
//! ```
//!
//! (conductor, isogeny class, curve number, a-invariants, rank, torsion),
//! plus naive local data: `a_p`, Atkin-Lehner signs and `I_n` types.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::arith::{is_prime, kronecker};
use crate::cd_graph::KodairaSymbol;
use crate::error::{Error, Result};

/// The bundled table: every curve whose conductor is a quaternion
/// discriminant `D <= 546`.
pub const BUNDLED: &str = include_str!("../data/allcurves.fixture");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllipticCurveRecord {
    pub conductor: u64,
    pub class_letter: String,
    pub number: u32,
    pub a_invariants: [i64; 5],
    pub rank: u32,
    pub torsion: u32,
}

impl EllipticCurveRecord {
    /// `210d2`-style label with the class letter as stored.
    pub fn label(&self) -> String {
        format!("{}{}{}", self.conductor, self.class_letter, self.number)
    }

    /// Isogeny class label, lowercase, e.g. `210d`.
    pub fn class_label(&self) -> String {
        format!("{}{}", self.conductor, self.class_letter.to_ascii_lowercase())
    }

    /// `(b2, b4, b6, b8)`.
    pub fn b_invariants(&self) -> [i128; 4] {
        let [a1, a2, a3, a4, a6] = self.a_invariants.map(i128::from);
        [
            a1 * a1 + 4 * a2,
            2 * a4 + a1 * a3,
            a3 * a3 + 4 * a6,
            a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4,
        ]
    }

    pub fn discriminant(&self) -> i128 {
        let [b2, b4, b6, b8] = self.b_invariants();
        -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    }

    /// Re-serialized row in the input layout.
    pub fn to_row(&self) -> String {
        let a = self.a_invariants;
        format!(
            "{} {} {} [{},{},{},{},{}] {} {}",
            self.conductor, self.class_letter, self.number, a[0], a[1], a[2], a[3], a[4], self.rank, self.torsion
        )
    }

    /// Affine points plus the point at infinity over `F_p`, singular points
    /// included.
    pub fn count_points(&self, p: u64) -> u64 {
        let pm = p as i128;
        let [a1, a2, a3, a4, a6] = self.a_invariants.map(|a| (a as i128).rem_euclid(pm));
        let mut affine = 0u64;
        for x in 0..pm {
            let rhs = (((x + a2) * x + a4) * x + a6).rem_euclid(pm);
            let lin = (a1 * x + a3).rem_euclid(pm);
            if p == 2 {
                affine += (0..2).filter(|y| (y * y + lin * y - rhs).rem_euclid(2) == 0).count() as u64;
            } else {
                let disc = (lin * lin + 4 * rhs).rem_euclid(pm);
                affine += (1 + kronecker(disc as i64, p as i64) as i64) as u64;
            }
        }
        affine + 1
    }

    /// `p + 1 - #E(F_p)` for a prime of good reduction.
    pub fn ap(&self, p: u64) -> Result<i64> {
        if !is_prime(p) {
            return Err(Error::BadInput(format!("{p} is not prime")));
        }
        if self.discriminant() % p as i128 == 0 {
            return Err(Error::BadReduction { label: self.label(), p });
        }
        Ok(p as i64 + 1 - self.count_points(p) as i64)
    }

    fn require_multiplicative(&self, p: u64) -> Result<()> {
        let exact = is_prime(p) && self.conductor % p == 0 && self.conductor % (p * p) != 0;
        if !exact || self.discriminant() % p as i128 != 0 {
            return Err(Error::NotMultiplicative { label: self.label(), p });
        }
        Ok(())
    }

    /// `a_p = +1` (split) or `-1` (non-split) at a multiplicative prime.
    pub fn multiplicative_ap(&self, p: u64) -> Result<i64> {
        self.require_multiplicative(p)?;
        let ap = p as i64 + 1 - self.count_points(p) as i64;
        if ap.abs() != 1 {
            return Err(Error::NotMultiplicative { label: self.label(), p });
        }
        Ok(ap)
    }

    /// Atkin-Lehner eigenvalue `lambda_p = -a_p` of the attached newform.
    pub fn al_sign(&self, p: u64) -> Result<i64> {
        Ok(-self.multiplicative_ap(p)?)
    }

    /// `I_n` with `n = v_p(discriminant)`; the model is taken to be minimal.
    pub fn multiplicative_type(&self, p: u64) -> Result<KodairaSymbol> {
        self.require_multiplicative(p)?;
        let mut delta = self.discriminant();
        let mut n = 0;
        while delta % p as i128 == 0 {
            delta /= p as i128;
            n += 1;
        }
        Ok(KodairaSymbol { n })
    }
}

impl fmt::Display for EllipticCurveRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn parse_row(line: &str, lineno: usize) -> Result<EllipticCurveRecord> {
    let err = |msg: &str| Error::Parse {
        line: lineno,
        msg: msg.to_string(),
    };
    let open = line.find('[').ok_or_else(|| err("missing '['"))?;
    let close = line.find(']').ok_or_else(|| err("missing ']'"))?;
    if close < open {
        return Err(err("']' before '['"));
    }
    let head: Vec<&str> = line[..open].split_whitespace().collect();
    let tail: Vec<&str> = line[close + 1..].split_whitespace().collect();
    if head.len() != 3 {
        return Err(err("expected conductor, class and number before the a-invariants"));
    }
    if tail.len() != 2 {
        return Err(err("expected rank and torsion after the a-invariants"));
    }
    let coeffs: Vec<i64> = line[open + 1..close]
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| err("bad a-invariant"))?;
    let a_invariants: [i64; 5] = coeffs
        .try_into()
        .map_err(|v: Vec<i64>| err(&format!("expected 5 a-invariants, found {}", v.len())))?;
    let conductor: u64 = head[0].parse().map_err(|_| err("bad conductor"))?;
    let class_letter = head[1].to_string();
    if conductor == 0 || !class_letter.chars().all(|c| c.is_ascii_alphabetic()) {
        return Err(err("bad conductor or class letter"));
    }
    let number: u32 = head[2].parse().map_err(|_| err("bad curve number"))?;
    let rank: u32 = tail[0].parse().map_err(|_| err("bad rank"))?;
    let torsion: u32 = tail[1].parse().map_err(|_| err("bad torsion"))?;
    if number == 0 || torsion == 0 {
        return Err(err("curve number and torsion must be positive"));
    }
    let record = EllipticCurveRecord {
        conductor,
        class_letter,
        number,
        a_invariants,
        rank,
        torsion,
    };
    if record.discriminant() == 0 {
        return Err(err("singular Weierstrass equation"));
    }
    Ok(record)
}

/// Parses a table; blank lines and `#` comments are skipped.
pub fn parse_database(text: &str) -> Result<Vec<EllipticCurveRecord>> {
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let rec = parse_row(line, i + 1)?;
        if seen.insert(rec.label().to_ascii_lowercase(), ()).is_some() {
            return Err(Error::DuplicateLabel(rec.label()));
        }
        out.push(rec);
    }
    Ok(out)
}

/// An immutable, indexed set of curves.
#[derive(Clone, Debug, Default)]
pub struct CurveDatabase {
    records: Vec<EllipticCurveRecord>,
    by_label: HashMap<String, usize>,
}

impl CurveDatabase {
    pub fn from_records(records: Vec<EllipticCurveRecord>) -> Result<Self> {
        let mut by_label = HashMap::new();
        for (i, r) in records.iter().enumerate() {
            if by_label.insert(r.label().to_ascii_lowercase(), i).is_some() {
                return Err(Error::DuplicateLabel(r.label()));
            }
        }
        Ok(Self { records, by_label })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_records(parse_database(text)?)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled curve table parses")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        Self::parse(&text)
    }

    pub fn records(&self) -> &[EllipticCurveRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Lookup by label, ignoring the case of the class letter.
    pub fn get(&self, label: &str) -> Option<&EllipticCurveRecord> {
        self.by_label.get(&label.to_ascii_lowercase()).map(|&i| &self.records[i])
    }

    pub fn by_conductor(&self, conductor: u64) -> Vec<&EllipticCurveRecord> {
        self.records.iter().filter(|r| r.conductor == conductor).collect()
    }

    /// Isogeny classes of the given conductor in table order, each with its
    /// curves.
    pub fn classes(&self, conductor: u64) -> Vec<(String, Vec<&EllipticCurveRecord>)> {
        let mut out: Vec<(String, Vec<&EllipticCurveRecord>)> = Vec::new();
        for r in self.by_conductor(conductor) {
            match out.iter_mut().find(|(c, _)| *c == r.class_label()) {
                Some((_, v)) => v.push(r),
                None => out.push((r.class_label(), vec![r])),
            }
        }
        out
    }

    /// Every row, re-serialized.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            s.push_str(&r.to_row());
            s.push('\n');
        }
        s
    }

    /// Curves whose discriminant disagrees with the conductor: a prime
    /// exactly dividing `N` must divide the discriminant, and a prime not
    /// dividing `N` must not.
    pub fn discriminant_mismatches(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in &self.records {
            let delta = r.discriminant();
            for p in (2..=r.conductor).filter(|&p| is_prime(p) && r.conductor % p == 0) {
                if delta % p as i128 != 0 {
                    out.push(format!("{}: {p} divides the conductor but not the discriminant", r.label()));
                }
            }
            let mut rest = delta.unsigned_abs();
            let mut p = 2u128;
            while p * p <= rest && p < 1000 {
                while rest % p == 0 {
                    rest /= p;
                    if r.conductor % p as u64 != 0 {
                        out.push(format!("{}: {p} divides the discriminant but not the conductor", r.label()));
                    }
                }
                p += 1;
            }
        }
        out.dedup();
        out
    }
}
