//! Exact elementary number theory: Kronecker symbols, squarefree
//! factorizations, class numbers of imaginary quadratic orders and
//! Hurwitz class numbers.
//!
//! Everything here is integer or exact-rational arithmetic. Class numbers
//! are obtained by enumerating reduced binary quadratic forms, and are
//! memoized in a process-wide cache that is safe to share between threads.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

/// Exact rational number used throughout the crate.
pub type Rational = Ratio<i64>;

/// Kronecker symbol `(a/n)`, defined for every integer `n`.
///
/// `(a/0)` is 1 when `a = ±1` and 0 otherwise; `(a/-1)` is the sign of `a`.
pub fn kronecker(a: i64, n: i64) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result: i8 = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= twos;
    }
    // n is now odd and positive: Jacobi symbol by quadratic reciprocity.
    let mut a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Trial-division primality test; inputs in this crate are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut p = 3;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 2;
    }
    true
}

/// Primes up to and including `bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&p| is_prime(p)).collect()
}

/// A squarefree positive integer together with its prime factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactoredSquarefree {
    value: u64,
    primes: Vec<u64>,
}

impl FactoredSquarefree {
    /// Factor `n`, rejecting anything divisible by a square.
    pub fn new(n: u64) -> Result<Self> {
        factor_squarefree(n)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Prime factors, strictly ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.primes.len()
    }

    pub fn is_divisible_by(&self, p: u64) -> bool {
        self.primes.contains(&p)
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &p in &self.primes {
            let extra: Vec<u64> = divs.iter().map(|d| d * p).collect();
            divs.extend(extra);
        }
        divs.sort_unstable();
        divs
    }

    /// The cofactor `value / d` for a divisor `d`, factored.
    pub fn quotient(&self, d: u64) -> Result<Self> {
        if d == 0 || self.value % d != 0 {
            return Err(Error::BadInput(format!("{d} does not divide {}", self.value)));
        }
        let primes = self.primes.iter().copied().filter(|p| d % p != 0).collect();
        Ok(Self {
            value: self.value / d,
            primes,
        })
    }

    /// Euler's totient, `prod (p - 1)`.
    pub fn totient(&self) -> u64 {
        self.primes.iter().map(|p| p - 1).product()
    }
}

impl fmt::Display for FactoredSquarefree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Ascending prime factorization of a squarefree `n >= 1`.
pub fn factor_squarefree(n: u64) -> Result<FactoredSquarefree> {
    if n == 0 {
        return Err(Error::BadInput("0 has no factorization".into()));
    }
    let mut primes = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            rest /= p;
            if rest % p == 0 {
                return Err(Error::NotSquarefree(n));
            }
            primes.push(p);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        primes.push(rest);
    }
    Ok(FactoredSquarefree { value: n, primes })
}

/// Discriminant of an imaginary quadratic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadDiscriminant(i64);

impl QuadDiscriminant {
    pub fn new(d: i64) -> Result<Self> {
        if d < 0 && matches!(d.rem_euclid(4), 0 | 1) {
            Ok(Self(d))
        } else {
            Err(Error::InvalidQuadDiscriminant(d))
        }
    }

    pub fn get(self) -> i64 {
        self.0
    }

    /// Conductor `f` and fundamental discriminant `d0` with `d = f^2 d0`.
    pub fn conductor_split(self) -> (u64, i64) {
        let mut d0 = self.0;
        let mut f = 1u64;
        let mut q = 2i64;
        while q * q <= d0.abs() {
            while d0 % (q * q) == 0 && matches!((d0 / (q * q)).rem_euclid(4), 0 | 1) {
                d0 /= q * q;
                f *= q as u64;
            }
            q += 1;
        }
        (f, d0)
    }

    pub fn is_fundamental(self) -> bool {
        self.conductor_split().0 == 1
    }

    /// Number of roots of unity in the order: 6, 4 or 2.
    pub fn units(self) -> u64 {
        match self.0 {
            -3 => 6,
            -4 => 4,
            _ => 2,
        }
    }
}

impl fmt::Display for QuadDiscriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A class number together with the discriminant it belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassNumberValue {
    pub d: QuadDiscriminant,
    pub h: u64,
}

fn class_cache() -> &'static RwLock<HashMap<i64, u64>> {
    static CACHE: OnceLock<RwLock<HashMap<i64, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Count reduced primitive forms `(a, b, c)` with `b^2 - 4ac = d`.
fn count_reduced_forms(d: i64) -> u64 {
    let abs_d = -d;
    let mut count = 0u64;
    let mut a = 1i64;
    while 3 * a * a <= abs_d {
        for b in (-a + 1)..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            count += 1;
        }
        a += 1;
    }
    count
}

/// Class number `h(d)` of the imaginary quadratic order of discriminant `d`.
pub fn class_number(d: QuadDiscriminant) -> u64 {
    let key = d.get();
    if let Some(&h) = class_cache().read().expect("class cache poisoned").get(&key) {
        return h;
    }
    let h = count_reduced_forms(key);
    class_cache()
        .write()
        .expect("class cache poisoned")
        .insert(key, h);
    h
}

/// `class_number` for a raw integer, validating it first.
pub fn class_number_of(d: i64) -> Result<u64> {
    Ok(class_number(QuadDiscriminant::new(d)?))
}

/// `h(d) / (w(d)/2)`: class number weighted by the extra units.
pub fn weighted_class_number(d: QuadDiscriminant) -> Rational {
    Rational::new(class_number(d) as i64 * 2, d.units() as i64)
}

/// Hurwitz class number `H(n)`.
///
/// Computed as the sum of weighted class numbers over every order of
/// discriminant `-n / f^2`. Zero for `n = 1, 2 (mod 4)`; `H(0) = -1/12`.
pub fn hurwitz_class_number(n: u64) -> Rational {
    if n == 0 {
        return Rational::new(-1, 12);
    }
    if matches!(n % 4, 1 | 2) {
        return Rational::from_integer(0);
    }
    let n = n as i64;
    let mut total = Rational::from_integer(0);
    let mut f = 1i64;
    while f * f <= n {
        if n % (f * f) == 0 {
            let d = -n / (f * f);
            if let Ok(disc) = QuadDiscriminant::new(d) {
                total += weighted_class_number(disc);
            }
        }
        f += 1;
    }
    total
}

/// Hurwitz class numbers `H(0..=bound)` by direct enumeration of all
/// reduced forms, primitive or not.
///
/// The enumeration is independent of [`class_number`], which is what makes
/// it useful as a cross-check of [`hurwitz_class_number`].
#[derive(Clone, Debug)]
pub struct HurwitzTable {
    values: Vec<Rational>,
}

impl HurwitzTable {
    /// Default bound: enough for every Hecke trace at index up to 200.
    pub const DEFAULT_BOUND: u64 = 4 * 200;

    pub fn build(bound: u64) -> Self {
        let bound = bound as i64;
        let mut values = vec![Rational::from_integer(0); bound as usize + 1];
        values[0] = Rational::new(-1, 12);
        let half = Rational::new(1, 2);
        let third = Rational::new(1, 3);
        let one = Rational::from_integer(1);
        let mut a = 1i64;
        // Reduced forms satisfy 3a^2 <= 4ac - b^2.
        while 3 * a * a <= bound {
            for b in 0..=a {
                let mut c = a;
                loop {
                    let n = 4 * a * c - b * b;
                    if n > bound {
                        break;
                    }
                    if n > 0 {
                        let w = if b == 0 && c == a {
                            half
                        } else if b == a && c == a {
                            third
                        } else {
                            one
                        };
                        // (a, -b, c) is a distinct reduced form unless b = 0,
                        // b = a or a = c.
                        let mult = if b > 0 && b < a && c > a { 2 } else { 1 };
                        values[n as usize] += w * Rational::from_integer(mult);
                    }
                    c += 1;
                }
            }
            a += 1;
        }
        Self { values }
    }

    pub fn bound(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    pub fn get(&self, n: u64) -> Option<Rational> {
        self.values.get(n as usize).copied()
    }
}

impl Default for HurwitzTable {
    fn default() -> Self {
        Self::build(Self::DEFAULT_BOUND)
    }
}

/// Negative fundamental discriminants of class number one with `|d| <= bound`,
/// ordered by increasing `|d|`.
pub fn class_number_one_fundamentals(bound: u64) -> Vec<QuadDiscriminant> {
    (3..=bound as i64)
        .filter_map(|n| QuadDiscriminant::new(-n).ok())
        .filter(|d| d.is_fundamental() && class_number(*d) == 1)
        .collect()
}
