//! Quadratic points on `V_D`: rational points on genus-one Atkin-Lehner
//! quotients, identification of those quotients among curves of conductor
//! `D`, and the resulting list of curves with infinitely many quadratic
//! points.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{class_number, class_number_one_fundamentals, kronecker, QuadDiscriminant};
use crate::cd_graph::{
    al_quotient, dual_graph, kodaira_symbol, single_class_quotient_kodaira, DualGraphOutcome, GraphConstraints,
    KodairaSymbol, VertexLabel,
};
use crate::classifier::bielliptic_involutions;
use crate::cremona::{CurveDatabase, EllipticCurveRecord};
use crate::error::{Error, Result};
use crate::fixtures::{DataSet, Place, QuotientLabel, Table3Row};
use crate::invariants::{genus, quotient_genus, AtkinLehnerElement, ShimuraDiscriminant};

/// Search bound on `|d|` for imaginary quadratic fields of class number 1.
pub const CM_SEARCH_BOUND: u64 = 10_000;

fn cm_discriminants() -> &'static [QuadDiscriminant] {
    static LIST: OnceLock<Vec<QuadDiscriminant>> = OnceLock::new();
    LIST.get_or_init(|| class_number_one_fundamentals(CM_SEARCH_BOUND))
}

/// A CM point on `V_D` by the maximal order of `Q(sqrt d)`, class number 1,
/// whose image on `V_D/<w_m>` is rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeegnerWitness {
    pub d: u64,
    pub m: u64,
    pub cm_discriminant: i64,
    pub inert_primes: Vec<u64>,
}

impl HeegnerWitness {
    /// Recomputes the class number and splitting data.
    pub fn audit(&self) -> bool {
        let Ok(disc) = QuadDiscriminant::new(self.cm_discriminant) else {
            return false;
        };
        let Ok(d) = ShimuraDiscriminant::new(self.d) else {
            return false;
        };
        let symbols: Vec<i8> = d.primes().iter().map(|&p| kronecker(self.cm_discriminant, p as i64)).collect();
        let inert: Vec<u64> = d
            .primes()
            .iter()
            .zip(&symbols)
            .filter(|(_, s)| **s == -1)
            .map(|(p, _)| *p)
            .collect();
        disc.is_fundamental()
            && class_number(disc) == 1
            && symbols.iter().all(|&s| s != 1)
            && inert == self.inert_primes
            && inert.iter().product::<u64>() == self.m
    }
}

fn genus_one_pair(d: &ShimuraDiscriminant, m: u64) -> Result<AtkinLehnerElement> {
    let w = AtkinLehnerElement::new(d, m)?;
    let g = quotient_genus(d, w)?;
    if g != 1 {
        return Err(Error::BadInput(format!("V_{d}/<w_{m}> has genus {g}, not 1")));
    }
    Ok(w)
}

/// Least `|d|` with `h(d) = 1`, every `p | D` non-split in `Q(sqrt d)` and
/// the inert primes multiplying to `m`.
pub fn heegner_rational_point(d: &ShimuraDiscriminant, m: u64) -> Result<Option<HeegnerWitness>> {
    genus_one_pair(d, m)?;
    for &disc in cm_discriminants() {
        let symbols: Vec<i8> = d.primes().iter().map(|&p| kronecker(disc.get(), p as i64)).collect();
        if symbols.contains(&1) {
            continue;
        }
        let inert: Vec<u64> = d
            .primes()
            .iter()
            .zip(&symbols)
            .filter(|(_, s)| **s == -1)
            .map(|(p, _)| *p)
            .collect();
        if inert.iter().product::<u64>() == m {
            return Ok(Some(HeegnerWitness {
                d: d.value(),
                m,
                cm_discriminant: disc.get(),
                inert_primes: inert,
            }));
        }
    }
    Ok(None)
}

/// Whether a rational point on `V_D/<w_m>` follows from `g(V_D) = 2` when
/// no Heegner witness exists.
pub fn kuhn_fallback(d: &ShimuraDiscriminant, m: u64) -> Result<bool> {
    if heegner_rational_point(d, m)?.is_some() {
        return Ok(false);
    }
    Ok(genus(d)? == 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RationalPointWitness {
    Heegner(HeegnerWitness),
    Kuhn,
}

pub fn rational_point_witness(d: &ShimuraDiscriminant, m: u64) -> Result<Option<RationalPointWitness>> {
    if let Some(w) = heegner_rational_point(d, m)? {
        return Ok(Some(RationalPointWitness::Heegner(w)));
    }
    Ok(kuhn_fallback(d, m)?.then_some(RationalPointWitness::Kuhn))
}

/// Adjacency data for fibres where the graph is not determined by counts
/// alone: `(D, p, m, crossing edges, pairs with no edge)`. The stored
/// `w_p`-style action `v_i <-> v_i'` is the action of `w_m` on that fibre.
pub const KNOWN_FIBRES: &[(u64, u64, u64, u64, &[(&str, &str)])] =
    &[(210, 3, 210, 4, &[("v1", "v2"), ("v1'", "v2'")])];

/// Kodaira symbol of `V_D/<w_m>` at `p`, when it can be computed.
pub fn quotient_kodaira(d: &ShimuraDiscriminant, m: u64, p: u64) -> Result<Option<KodairaSymbol>> {
    for &(kd, kp, km, crossing, forbidden) in KNOWN_FIBRES {
        if (kd, kp, km) != (d.value(), p, m) {
            continue;
        }
        let forbidden_pairs = forbidden
            .iter()
            .map(|(a, b)| Ok((a.parse::<VertexLabel>()?, b.parse::<VertexLabel>()?)))
            .collect::<Result<_>>()?;
        let constraints = GraphConstraints {
            crossing_total: Some(crossing),
            forbidden_pairs,
        };
        if let DualGraphOutcome::Unique(g) = dual_graph(d, p, &constraints)? {
            let q = al_quotient(&g.graph, &g.al_action)?;
            return Ok(Some(kodaira_symbol(&q)?));
        }
    }
    single_class_quotient_kodaira(d, m, p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CurveSelection {
    /// The isogeny class has a single curve.
    OnlyCurve,
    /// The only curve with reduction type `I_n` at `p`.
    Kodaira { p: u64, symbol: KodairaSymbol },
    /// Several curves remain.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientIdentification {
    pub d: u64,
    pub m: u64,
    pub class_label: String,
    pub curve: Option<EllipticCurveRecord>,
    pub selection: CurveSelection,
    pub rank: u32,
}

impl QuotientIdentification {
    /// `210d2`, or `330e?` when the curve is not pinned down.
    pub fn label(&self) -> String {
        match &self.curve {
            Some(c) => c.label().to_ascii_lowercase(),
            None => format!("{}?", self.class_label),
        }
    }

    /// Case-insensitive agreement with a label such as `210D2`; only the
    /// class is compared when the curve is undetermined.
    pub fn matches(&self, label: &str) -> bool {
        let label = label.to_ascii_lowercase();
        match &self.curve {
            Some(c) => c.label().to_ascii_lowercase() == label,
            None => label.trim_end_matches(|c: char| c.is_ascii_digit()) == self.class_label,
        }
    }
}

/// Isogeny class of conductor `D` on which `w_m` acts on the quaternion side
/// by `+1`, i.e. `prod_{p | m} a_p = +1`, and the curve in it when the
/// reduction type pins it down.
pub fn elliptic_quotient_class(
    d: &ShimuraDiscriminant,
    m: u64,
    db: &CurveDatabase,
) -> Result<QuotientIdentification> {
    let w = genus_one_pair(d, m)?;
    let classes = db.classes(d.value());
    if classes.is_empty() {
        return Err(Error::MissingConductor(d.value()));
    }
    let m_primes: Vec<u64> = d.primes().iter().copied().filter(|p| w.index() % p == 0).collect();
    let mut candidates = Vec::new();
    for (label, curves) in &classes {
        let mut sign = 1;
        for &p in &m_primes {
            sign *= -curves[0].al_sign(p)?;
        }
        if sign == 1 {
            candidates.push((label.clone(), curves.clone()));
        }
    }
    if candidates.len() != 1 {
        return Err(Error::AmbiguousClass {
            conductor: d.value(),
            found: candidates.len(),
        });
    }
    let (class_label, curves) = candidates.pop().expect("one candidate");
    let rank = curves[0].rank;
    let (curve, selection) = if curves.len() == 1 {
        (Some(curves[0].clone()), CurveSelection::OnlyCurve)
    } else {
        let mut chosen = (None, CurveSelection::Undetermined);
        for &p in d.primes() {
            let Some(symbol) = quotient_kodaira(d, m, p)? else {
                continue;
            };
            let mut hits = Vec::new();
            for c in &curves {
                if c.multiplicative_type(p)? == symbol {
                    hits.push(*c);
                }
            }
            if let [only] = hits[..] {
                chosen = (Some(only.clone()), CurveSelection::Kodaira { p, symbol });
                break;
            }
        }
        chosen
    };
    Ok(QuotientIdentification {
        d: d.value(),
        m,
        class_label,
        curve,
        selection,
        rank,
    })
}

/// Outcome for one bielliptic involution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiellipticRoute {
    pub m: u64,
    pub deficient_at: BTreeSet<Place>,
    pub witness: Option<RationalPointWitness>,
    pub quotient: Option<QuotientIdentification>,
}

impl BiellipticRoute {
    pub fn is_infinite(&self) -> bool {
        self.deficient_at.is_empty()
            && self.witness.is_some()
            && self.quotient.as_ref().is_some_and(|q| q.rank >= 1)
    }

    fn reason(&self) -> String {
        if !self.deficient_at.is_empty() {
            let places: Vec<String> = self.deficient_at.iter().map(|p| p.to_string()).collect();
            format!("w_{}: quotient has no points over {}", self.m, places.join(", "))
        } else if self.witness.is_none() {
            format!("w_{}: no rational point witness on the quotient", self.m)
        } else {
            match &self.quotient {
                Some(q) if q.rank == 0 => format!("w_{}: quotient {} has rank 0", self.m, q.label()),
                Some(q) => format!("w_{}: quotient {} has rank {}", self.m, q.label(), q.rank),
                None => format!("w_{}: quotient not identified", self.m),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum QuadraticStatus {
    InfiniteHyperelliptic { m: u64 },
    InfiniteBielliptic { m: u64, label: String, rank: u32 },
    Finite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticPointsVerdict {
    pub d: u64,
    pub genus: u64,
    pub status: QuadraticStatus,
    pub bielliptic: Vec<BiellipticRoute>,
    pub justification: Vec<String>,
}

impl QuadraticPointsVerdict {
    pub fn is_infinite(&self) -> bool {
        self.status != QuadraticStatus::Finite
    }
}

pub fn quadratic_points_verdict(
    d: &ShimuraDiscriminant,
    db: &CurveDatabase,
    data: &DataSet,
) -> Result<QuadraticPointsVerdict> {
    let g = genus(d)?;
    if g <= 1 {
        return Err(Error::GenusTooSmall { d: d.value(), genus: g });
    }
    let mut routes = Vec::new();
    for m in bielliptic_involutions(d)? {
        let deficient_at = data.deficiency(d.value(), m);
        let mut route = BiellipticRoute {
            m,
            deficient_at,
            witness: None,
            quotient: None,
        };
        if route.deficient_at.is_empty() {
            route.witness = rational_point_witness(d, m)?;
            if route.witness.is_some() {
                route.quotient = Some(elliptic_quotient_class(d, m, db)?);
            }
        }
        routes.push(route);
    }
    let mut justification: Vec<String> = routes.iter().map(BiellipticRoute::reason).collect();
    let status = if let Some(m) = data.rational_hyperelliptic(d.value()) {
        justification.insert(0, format!("w_{m}: quotient is P1 over Q"));
        QuadraticStatus::InfiniteHyperelliptic { m }
    } else if let Some(r) = routes.iter().find(|r| r.is_infinite()) {
        let q = r.quotient.as_ref().expect("infinite route has a quotient");
        QuadraticStatus::InfiniteBielliptic {
            m: r.m,
            label: q.label(),
            rank: q.rank,
        }
    } else {
        if routes.is_empty() {
            justification.push("neither hyperelliptic over Q nor bielliptic".to_string());
        }
        QuadraticStatus::Finite
    };
    Ok(QuadraticPointsVerdict {
        d: d.value(),
        genus: g,
        status,
        bielliptic: routes,
        justification,
    })
}

/// Discriminants that can have infinitely many quadratic points: bielliptic
/// ones (all below 547) and those listed as hyperelliptic over Q.
pub fn table3_candidates(data: &DataSet) -> Vec<ShimuraDiscriminant> {
    let mut ds: BTreeSet<u64> = data.hyperelliptic.iter().filter(|r| r.rational).map(|r| r.d).collect();
    for d in ShimuraDiscriminant::all_up_to(546) {
        if genus(&d).is_ok_and(|g| g >= 2) && bielliptic_involutions(&d).is_ok_and(|s| !s.is_empty()) {
            ds.insert(d.value());
        }
    }
    ds.into_iter().filter_map(|d| ShimuraDiscriminant::new(d).ok()).collect()
}

pub fn all_verdicts(db: &CurveDatabase, data: &DataSet) -> Result<Vec<QuadraticPointsVerdict>> {
    table3_candidates(data)
        .par_iter()
        .map(|d| quadratic_points_verdict(d, db, data))
        .collect()
}

/// One row of the reproduced table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table3Entry {
    pub d: u64,
    pub m: u64,
    /// `P1`, or the curve label (`330e?` when only the class is known).
    pub quotient: String,
    pub identification: Option<QuotientIdentification>,
}

/// Every infinite route: the rational hyperelliptic quotient if any, then
/// each positive-rank bielliptic quotient.
pub fn emit_table3(db: &CurveDatabase, data: &DataSet) -> Result<Vec<Table3Entry>> {
    let mut out = Vec::new();
    for v in all_verdicts(db, data)? {
        if let QuadraticStatus::InfiniteHyperelliptic { m } = v.status {
            out.push(Table3Entry {
                d: v.d,
                m,
                quotient: "P1".into(),
                identification: None,
            });
        }
        for r in v.bielliptic.iter().filter(|r| r.is_infinite()) {
            let q = r.quotient.clone().expect("infinite route has a quotient");
            out.push(Table3Entry {
                d: v.d,
                m: r.m,
                quotient: q.label(),
                identification: Some(q),
            });
        }
    }
    Ok(out)
}

/// Whether an emitted row reproduces a fixture row (involution corrected by
/// its erratum, label compared as in [`QuotientIdentification::matches`]).
pub fn entry_matches(entry: &Table3Entry, row: &Table3Row) -> bool {
    if entry.d != row.d || entry.m != row.effective_m() {
        return false;
    }
    match (&row.quotient, &entry.identification) {
        (QuotientLabel::ProjectiveLine, None) => entry.quotient == "P1",
        (QuotientLabel::Curve(label), Some(q)) => q.matches(label),
        _ => false,
    }
}
