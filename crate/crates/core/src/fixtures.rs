//! Curated tables shipped under `data/`: tab-separated, `#` comments, a
//! header line, and a mandatory non-empty `provenance` column.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

pub const TABLE1: &str = include_str!("../data/table1.tsv");
pub const TABLE2: &str = include_str!("../data/table2.tsv");
pub const TABLE3: &str = include_str!("../data/table3.tsv");
pub const HYPERELLIPTIC_Q: &str = include_str!("../data/hyperelliptic_q.tsv");

/// Rows of a TSV file keyed by column name.
#[derive(Clone, Debug)]
pub struct TsvTable {
    pub columns: Vec<String>,
    /// `(line number, cells)`.
    pub rows: Vec<(usize, Vec<String>)>,
}

impl TsvTable {
    pub fn parse(text: &str, required: &[&str]) -> Result<Self> {
        let mut columns: Option<Vec<String>> = None;
        let mut rows = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            if raw.trim().is_empty() || raw.starts_with('#') {
                continue;
            }
            let cells: Vec<String> = raw.split('\t').map(|c| c.trim().to_string()).collect();
            match &columns {
                None => columns = Some(cells),
                Some(cols) => {
                    if cells.len() > cols.len() {
                        return Err(Error::Parse {
                            line,
                            msg: format!("{} cells, header has {}", cells.len(), cols.len()),
                        });
                    }
                    let mut cells = cells;
                    cells.resize(cols.len(), String::new());
                    rows.push((line, cells));
                }
            }
        }
        let columns = columns.ok_or_else(|| Error::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        for name in required.iter().chain(&["provenance"]) {
            if !columns.iter().any(|c| c == name) {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("missing column {name}"),
                });
            }
        }
        let table = Self { columns, rows };
        for (line, _) in &table.rows {
            if table.cell(*line, "provenance")?.is_empty() {
                return Err(Error::Parse {
                    line: *line,
                    msg: "empty provenance".into(),
                });
            }
        }
        Ok(table)
    }

    fn cell(&self, line: usize, column: &str) -> Result<&str> {
        let idx = self.columns.iter().position(|c| c == column).ok_or_else(|| Error::Parse {
            line,
            msg: format!("missing column {column}"),
        })?;
        let row = self.rows.iter().find(|(l, _)| *l == line).ok_or_else(|| Error::Parse {
            line,
            msg: "no such row".into(),
        })?;
        Ok(row.1[idx].as_str())
    }

    fn parsed<T: FromStr>(&self, line: usize, column: &str) -> Result<T> {
        let s = self.cell(line, column)?;
        s.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("bad {column} value {s:?}"),
        })
    }

    fn lines(&self) -> Vec<usize> {
        self.rows.iter().map(|(l, _)| *l).collect()
    }
}

fn parse_list(s: &str, line: usize) -> Result<BTreeSet<u64>> {
    s.split(',')
        .map(|t| {
            t.trim().parse().map_err(|_| Error::Parse {
                line,
                msg: format!("bad list entry {t:?}"),
            })
        })
        .collect()
}

/// `erratum: key=value ...` notes carry a corrected value.
fn erratum_value(note: &str, key: &str) -> Option<u64> {
    let rest = note.strip_prefix("erratum:")?.trim();
    let rest = rest.strip_prefix(key)?.strip_prefix('=')?;
    rest.split(|c: char| !c.is_ascii_digit()).next()?.parse().ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub d: u64,
    pub genus: u64,
    pub involutions: BTreeSet<u64>,
    pub provenance: String,
    /// Corrected genus when the printed one is flagged.
    pub genus_erratum: Option<u64>,
}

/// A completion of Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Place {
    Real,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("R"),
            Place::Prime(p) => write!(f, "Q{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "R" {
            return Ok(Place::Real);
        }
        s.strip_prefix('Q')
            .unwrap_or(s)
            .parse()
            .map(Place::Prime)
            .map_err(|_| Error::BadInput(format!("bad place {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeficiencyRow {
    pub d: u64,
    pub m: u64,
    pub places: BTreeSet<Place>,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperellipticRow {
    pub d: u64,
    pub m: u64,
    /// The quotient is `P^1` over Q.
    pub rational: bool,
    pub provenance: String,
}

/// What a Table-3 row names as the quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum QuotientLabel {
    ProjectiveLine,
    Curve(String),
}

impl fmt::Display for QuotientLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientLabel::ProjectiveLine => f.write_str("P1"),
            QuotientLabel::Curve(l) => f.write_str(l),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table3Row {
    pub d: u64,
    /// Involution as printed.
    pub m: u64,
    pub quotient: QuotientLabel,
    pub provenance: String,
    /// Corrected involution when the printed one is flagged.
    pub m_erratum: Option<u64>,
    pub note: String,
}

impl Table3Row {
    pub fn effective_m(&self) -> u64 {
        self.m_erratum.unwrap_or(self.m)
    }
}

/// All four tables.
#[derive(Clone, Debug)]
pub struct DataSet {
    pub table1: Vec<Table1Row>,
    pub table2: Vec<DeficiencyRow>,
    pub table3: Vec<Table3Row>,
    pub hyperelliptic: Vec<HyperellipticRow>,
}

impl DataSet {
    pub fn parse(table1: &str, table2: &str, table3: &str, hyperelliptic: &str) -> Result<Self> {
        let t1 = TsvTable::parse(table1, &["D", "genus", "involutions"])?;
        let table1 = t1
            .lines()
            .into_iter()
            .map(|l| {
                let note = t1.cell(l, "note").unwrap_or("");
                Ok(Table1Row {
                    d: t1.parsed(l, "D")?,
                    genus: t1.parsed(l, "genus")?,
                    involutions: parse_list(t1.cell(l, "involutions")?, l)?,
                    provenance: t1.cell(l, "provenance")?.to_string(),
                    genus_erratum: erratum_value(note, "genus"),
                })
            })
            .collect::<Result<_>>()?;

        let t2 = TsvTable::parse(table2, &["D", "m", "places"])?;
        let mut seen = BTreeSet::new();
        let mut rows2 = Vec::new();
        for l in t2.lines() {
            let row = DeficiencyRow {
                d: t2.parsed(l, "D")?,
                m: t2.parsed(l, "m")?,
                places: t2
                    .cell(l, "places")?
                    .split(',')
                    .map(str::parse)
                    .collect::<Result<_>>()
                    .map_err(|e| Error::Parse { line: l, msg: e.to_string() })?,
                provenance: t2.cell(l, "provenance")?.to_string(),
            };
            if row.places.is_empty() || !seen.insert((row.d, row.m)) {
                return Err(Error::Parse {
                    line: l,
                    msg: "empty or repeated deficiency row".into(),
                });
            }
            rows2.push(row);
        }

        let t3 = TsvTable::parse(table3, &["D", "m", "quotient"])?;
        let table3 = t3
            .lines()
            .into_iter()
            .map(|l| {
                let q = t3.cell(l, "quotient")?;
                let note = t3.cell(l, "note").unwrap_or("").to_string();
                Ok(Table3Row {
                    d: t3.parsed(l, "D")?,
                    m: t3.parsed(l, "m")?,
                    quotient: if q == "P1" {
                        QuotientLabel::ProjectiveLine
                    } else {
                        QuotientLabel::Curve(q.to_string())
                    },
                    provenance: t3.cell(l, "provenance")?.to_string(),
                    m_erratum: erratum_value(&note, "m"),
                    note,
                })
            })
            .collect::<Result<_>>()?;

        let th = TsvTable::parse(hyperelliptic, &["D", "m", "rational"])?;
        let hyperelliptic = th
            .lines()
            .into_iter()
            .map(|l| {
                let rational = match th.cell(l, "rational")? {
                    "yes" => true,
                    "no" => false,
                    other => {
                        return Err(Error::Parse {
                            line: l,
                            msg: format!("rational must be yes or no, got {other:?}"),
                        })
                    }
                };
                Ok(HyperellipticRow {
                    d: th.parsed(l, "D")?,
                    m: th.parsed(l, "m")?,
                    rational,
                    provenance: th.cell(l, "provenance")?.to_string(),
                })
            })
            .collect::<Result<_>>()?;

        Ok(Self {
            table1,
            table2: rows2,
            table3,
            hyperelliptic,
        })
    }

    pub fn bundled() -> Self {
        Self::parse(TABLE1, TABLE2, TABLE3, HYPERELLIPTIC_Q).expect("bundled tables parse")
    }

    /// Reads `table1.tsv`, `table2.tsv`, `table3.tsv` and
    /// `hyperelliptic_q.tsv` from a directory.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str| {
            let path = dir.join(name);
            std::fs::read_to_string(&path).map_err(|e| Error::Io {
                path: path.display().to_string(),
                msg: e.to_string(),
            })
        };
        Self::parse(
            &read("table1.tsv")?,
            &read("table2.tsv")?,
            &read("table3.tsv")?,
            &read("hyperelliptic_q.tsv")?,
        )
    }

    /// Deficient places of `V_D/<w_m>`; empty when the pair is not listed.
    pub fn deficiency(&self, d: u64, m: u64) -> BTreeSet<Place> {
        self.table2
            .iter()
            .find(|r| r.d == d && r.m == m)
            .map(|r| r.places.clone())
            .unwrap_or_default()
    }

    /// The hyperelliptic involution when `V_D / <w_m>` is `P^1` over Q.
    pub fn rational_hyperelliptic(&self, d: u64) -> Option<u64> {
        self.hyperelliptic.iter().find(|r| r.d == d && r.rational).map(|r| r.m)
    }

    pub fn table1_map(&self) -> BTreeMap<u64, &Table1Row> {
        self.table1.iter().map(|r| (r.d, r)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_sizes() {
        let data = DataSet::bundled();
        assert_eq!(data.table1.len(), 32);
        assert_eq!(data.table2.len(), 20);
        assert_eq!(data.table3.len(), 39);
        assert_eq!(data.hyperelliptic.iter().filter(|r| r.rational).count(), 21);
        let errata: Vec<_> = data.table1.iter().filter_map(|r| r.genus_erratum.map(|g| (r.d, g))).collect();
        assert_eq!(errata, vec![(115, 7), (143, 11)]);
        assert_eq!(data.table3[0].effective_m(), 26);
    }

    #[test]
    fn deficiency_lookup() {
        let data = DataSet::bundled();
        let places: Vec<String> = data.deficiency(39, 13).iter().map(|p| p.to_string()).collect();
        assert_eq!(places, vec!["R", "Q3"]);
        assert_eq!(data.deficiency(115, 23), BTreeSet::from([Place::Prime(5)]));
        assert!(data.deficiency(26, 2).is_empty());
    }

    #[test]
    fn rejects_missing_provenance() {
        let bad = "D\tm\tplaces\tprovenance\n35\t7\tQ5\t\n";
        assert!(matches!(TsvTable::parse(bad, &["D"]), Err(Error::Parse { line: 2, .. })));
        assert!(TsvTable::parse("D\tm\n1\t2\n", &["D"]).is_err());
    }
}
