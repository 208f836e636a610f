//! Invariants of the Shimura curve `V_D`: elliptic points, genus, the
//! Atkin-Lehner group, fixed-point counts of Atkin-Lehner involutions and
//! genera of their quotients.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{class_number, kronecker, FactoredSquarefree, QuadDiscriminant, Rational};
use crate::error::{Error, Result};

/// Discriminant of an indefinite division quaternion algebra over Q:
/// squarefree with an even, positive number of prime factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShimuraDiscriminant(FactoredSquarefree);

impl ShimuraDiscriminant {
    pub fn new(d: u64) -> Result<Self> {
        let f = FactoredSquarefree::new(d).map_err(|_| Error::InvalidShimuraDiscriminant(d))?;
        Self::from_factored(f)
    }

    pub fn from_factored(f: FactoredSquarefree) -> Result<Self> {
        if f.omega() == 0 || f.omega() % 2 == 1 {
            return Err(Error::InvalidShimuraDiscriminant(f.value()));
        }
        Ok(Self(f))
    }

    pub fn value(&self) -> u64 {
        self.0.value()
    }

    pub fn primes(&self) -> &[u64] {
        self.0.primes()
    }

    pub fn factored(&self) -> &FactoredSquarefree {
        &self.0
    }

    /// `2r`, the number of ramified primes.
    pub fn rank(&self) -> usize {
        self.0.omega()
    }

    /// Every valid discriminant up to `bound`, ascending.
    pub fn all_up_to(bound: u64) -> Vec<Self> {
        (2..=bound).filter_map(|d| Self::new(d).ok()).collect()
    }
}

impl fmt::Display for ShimuraDiscriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// The Atkin-Lehner involution `w_m` for a divisor `m` of `D`; `m = 1` is
/// the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AtkinLehnerElement(u64);

impl AtkinLehnerElement {
    pub fn new(d: &ShimuraDiscriminant, m: u64) -> Result<Self> {
        if m == 0 || d.value() % m != 0 {
            return Err(Error::InvalidAtkinLehner { d: d.value(), m });
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(1)
    }

    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_identity(self) -> bool {
        self.0 == 1
    }

    /// Group law `w_m w_m' = w_{m m' / gcd(m, m')^2}`.
    pub fn compose(self, other: Self) -> Self {
        let g = self.0.gcd(&other.0);
        Self((self.0 / g) * (other.0 / g))
    }
}

impl fmt::Display for AtkinLehnerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w_{}", self.0)
    }
}

/// All `2^(2r)` Atkin-Lehner elements, ordered by index.
pub fn atkin_lehner_group(d: &ShimuraDiscriminant) -> Vec<AtkinLehnerElement> {
    d.factored()
        .divisors()
        .into_iter()
        .map(AtkinLehnerElement)
        .collect()
}

fn local_product(primes: &[u64], disc: i64, sign: i64) -> i64 {
    primes
        .iter()
        .map(|&p| 1 + sign * kronecker(disc, p as i64) as i64)
        .product()
}

/// `(e2, e3)`: numbers of elliptic points of order 2 and 3.
pub fn elliptic_point_counts(d: &ShimuraDiscriminant) -> (u64, u64) {
    let e2 = local_product(d.primes(), -4, -1);
    let e3 = local_product(d.primes(), -3, -1);
    (e2 as u64, e3 as u64)
}

/// Genus of `V_D` from Eichler's formula.
pub fn genus(d: &ShimuraDiscriminant) -> Result<u64> {
    let (e2, e3) = elliptic_point_counts(d);
    let g = Rational::from_integer(1) + Rational::new(d.factored().totient() as i64, 12)
        - Rational::new(e2 as i64, 4)
        - Rational::new(e3 as i64, 3);
    if !g.is_integer() || *g.numer() < 0 {
        return Err(Error::InternalInconsistency(format!(
            "genus formula gives {g} for D = {d}"
        )));
    }
    Ok(g.to_integer() as u64)
}

/// Eichler symbol `(O/p)` of the quadratic order of discriminant `disc`:
/// 1 when `p` divides the conductor, else the Kronecker symbol.
pub fn eichler_symbol(disc: QuadDiscriminant, p: u64) -> i8 {
    let (f, d0) = disc.conductor_split();
    if f % p == 0 {
        1
    } else {
        kronecker(d0, p as i64)
    }
}

fn embedding_term(disc: i64, cofactor: &[u64]) -> u64 {
    let disc = QuadDiscriminant::new(disc).expect("negative discriminant");
    let local: i64 = cofactor
        .iter()
        .map(|&p| 1 - eichler_symbol(disc, p) as i64)
        .product();
    class_number(disc) * local as u64
}

/// Number of fixed points `n(w_m)` of the Atkin-Lehner involution `w_m`,
/// `m > 1`, counted through CM orders containing a square root of `-m`.
pub fn fixed_points(d: &ShimuraDiscriminant, m: AtkinLehnerElement) -> Result<u64> {
    let m = m.index();
    if m <= 1 || d.value() % m != 0 {
        return Err(Error::InvalidAtkinLehner { d: d.value(), m });
    }
    let cofactor = d.factored().quotient(m)?;
    let rest = cofactor.primes();
    let mi = m as i64;
    let n = if m == 2 {
        embedding_term(-4, rest) + embedding_term(-8, rest)
    } else if m % 4 == 3 {
        embedding_term(-mi, rest) + embedding_term(-4 * mi, rest)
    } else {
        embedding_term(-4 * mi, rest)
    };
    Ok(n)
}

/// Genus of `V_D / <w_m>` by Riemann-Hurwitz.
pub fn quotient_genus(d: &ShimuraDiscriminant, m: AtkinLehnerElement) -> Result<u64> {
    let g = genus(d)? as i64;
    let n = fixed_points(d, m)? as i64;
    // 2g - 2 = 2(2g' - 2) + n
    let twice = 2 * g - 2 - n + 4;
    if twice < 0 || twice % 4 != 0 {
        return Err(Error::InternalInconsistency(format!(
            "Riemann-Hurwitz fails for D = {d}, m = {}: g = {g}, n = {n}",
            m.index()
        )));
    }
    Ok((twice / 4) as u64)
}

/// Genus, elliptic points and every fixed-point count of one `V_D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveInvariants {
    pub d: u64,
    pub primes: Vec<u64>,
    pub e2: u64,
    pub e3: u64,
    pub genus: u64,
    /// `m -> n(w_m)` for every divisor `m > 1` of `D`.
    pub fixed_counts: BTreeMap<u64, u64>,
}

impl CurveInvariants {
    pub fn compute(d: &ShimuraDiscriminant) -> Result<Self> {
        let (e2, e3) = elliptic_point_counts(d);
        let genus = genus(d)?;
        let mut fixed_counts = BTreeMap::new();
        for w in atkin_lehner_group(d).into_iter().filter(|w| !w.is_identity()) {
            fixed_counts.insert(w.index(), fixed_points(d, w)?);
        }
        Ok(Self {
            d: d.value(),
            primes: d.primes().to_vec(),
            e2,
            e3,
            genus,
            fixed_counts,
        })
    }

    pub fn fixed(&self, m: u64) -> Option<u64> {
        self.fixed_counts.get(&m).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(d: u64) -> ShimuraDiscriminant {
        ShimuraDiscriminant::new(d).unwrap()
    }

    fn w(d: u64, m: u64) -> AtkinLehnerElement {
        AtkinLehnerElement::new(&disc(d), m).unwrap()
    }

    #[test]
    fn rejects_invalid_discriminants() {
        assert!(ShimuraDiscriminant::new(1).is_err());
        assert!(ShimuraDiscriminant::new(30).is_err());
        assert!(ShimuraDiscriminant::new(12).is_err());
        assert!(ShimuraDiscriminant::new(13).is_err());
        assert!(ShimuraDiscriminant::new(6).is_ok());
    }

    #[test]
    fn elliptic_points() {
        assert_eq!(elliptic_point_counts(&disc(26)), (0, 0));
        assert_eq!(elliptic_point_counts(&disc(6)), (2, 2));
        assert_eq!(elliptic_point_counts(&disc(210)), (0, 0));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(&disc(26)).unwrap(), 2);
        assert_eq!(genus(&disc(210)).unwrap(), 5);
        assert_eq!(genus(&disc(6)).unwrap(), 0);
        assert_eq!(genus(&disc(145)).unwrap(), 9);
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(fixed_points(&disc(145), w(145, 5)).unwrap(), 0);
        assert_eq!(fixed_points(&disc(145), w(145, 29)).unwrap(), 0);
        assert_eq!(fixed_points(&disc(145), w(145, 145)).unwrap(), 8);
        assert_eq!(fixed_points(&disc(26), w(26, 26)).unwrap(), 6);
        assert_eq!(fixed_points(&disc(26), w(26, 2)).unwrap(), 2);
        assert_eq!(fixed_points(&disc(210), w(210, 210)).unwrap(), 8);
        // -60 has conductor 2, so 2 | D/m kills its term
        assert_eq!(fixed_points(&disc(210), w(210, 15)).unwrap(), 0);
        assert_eq!(fixed_points(&disc(210), w(210, 7)).unwrap(), 0);
    }

    #[test]
    fn fixed_points_rejects_identity_and_non_divisors() {
        let d = disc(26);
        assert!(fixed_points(&d, AtkinLehnerElement::identity()).is_err());
        assert!(AtkinLehnerElement::new(&d, 3).is_err());
    }

    #[test]
    fn quotient_genus_examples() {
        assert_eq!(quotient_genus(&disc(26), w(26, 26)).unwrap(), 0);
        assert_eq!(quotient_genus(&disc(26), w(26, 2)).unwrap(), 1);
        assert_eq!(quotient_genus(&disc(210), w(210, 210)).unwrap(), 1);
    }

    #[test]
    fn group_structure() {
        let idx: Vec<u64> = atkin_lehner_group(&disc(26)).iter().map(|w| w.index()).collect();
        assert_eq!(idx, vec![1, 2, 13, 26]);
        assert_eq!(atkin_lehner_group(&disc(210)).len(), 16);
        assert_eq!(w(210, 6).compose(w(210, 10)).index(), 15);
        let group = atkin_lehner_group(&disc(210));
        for &a in &group {
            assert!(a.compose(a).is_identity());
            for &b in &group {
                assert!(group.contains(&a.compose(b)));
                assert_eq!(a.compose(b), b.compose(a));
            }
        }
    }

    #[test]
    fn invariants_record() {
        let inv = CurveInvariants::compute(&disc(210)).unwrap();
        assert_eq!(inv.genus, 5);
        assert_eq!(inv.fixed_counts.len(), 15);
        assert_eq!(inv.fixed(210), Some(8));
        assert!(inv.fixed_counts.values().all(|n| n % 2 == 0));
    }
}
