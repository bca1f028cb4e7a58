//! Exact angles on the circle R/Z under the doubling map.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AngleError {
    #[error("malformed angle {0:?}: expected \"num/den\"")]
    Malformed(String),
    #[error("zero denominator in angle {0:?}")]
    ZeroDenominator(String),
}

/// A point `e^{2 pi i theta}` stored as a reduced rational in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(BigRational);

/// Preperiod and period of an angle under doubling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitType {
    pub preperiod: usize,
    pub period: usize,
}

/// Reduce a rational mod 1 into `[0, 1)`.
pub fn reduce_mod_one(r: &BigRational) -> BigRational {
    r - r.floor()
}

/// Format a rational as "num/den", always with an explicit denominator.
pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Result<BigRational, AngleError> {
    let t = s.trim();
    let (n, d) = t
        .split_once('/')
        .ok_or_else(|| AngleError::Malformed(s.to_string()))?;
    let n: BigInt = n
        .trim()
        .parse()
        .map_err(|_| AngleError::Malformed(s.to_string()))?;
    let d: BigInt = d
        .trim()
        .parse()
        .map_err(|_| AngleError::Malformed(s.to_string()))?;
    if d.is_zero() {
        return Err(AngleError::ZeroDenominator(s.to_string()));
    }
    Ok(BigRational::new(n, d))
}

impl Angle {
    pub fn zero() -> Self {
        Angle(BigRational::zero())
    }

    pub fn half() -> Self {
        Angle::frac(1, 2)
    }

    /// Any rational, normalized mod 1.
    pub fn from_ratio(r: BigRational) -> Self {
        Angle(reduce_mod_one(&r))
    }

    /// Small-integer constructor. Panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Angle::from_ratio(BigRational::new(num.into(), den.into()))
    }

    pub fn new(num: BigInt, den: BigInt) -> Result<Self, AngleError> {
        if den.is_zero() {
            return Err(AngleError::ZeroDenominator(format!("{num}/0")));
        }
        Ok(Angle::from_ratio(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `2 theta mod 1`.
    pub fn double(&self) -> Angle {
        Angle::from_ratio(&self.0 * BigInt::from(2))
    }

    /// `1 - theta mod 1`.
    pub fn conjugate(&self) -> Angle {
        Angle::from_ratio(BigRational::one() - &self.0)
    }

    /// The two preimages under doubling, `theta/2` then `theta/2 + 1/2`.
    pub fn halves(&self) -> [Angle; 2] {
        let h = &self.0 / BigInt::from(2);
        let h2 = &h + BigRational::new(1.into(), 2.into());
        [Angle(h), Angle(h2)]
    }

    /// `theta + r mod 1` for a signed rational offset.
    pub fn shift(&self, r: &BigRational) -> Angle {
        Angle::from_ratio(&self.0 + r)
    }

    /// Iterate doubling `n` times.
    pub fn double_n(&self, n: usize) -> Angle {
        let two_n = BigInt::one() << n;
        Angle::from_ratio(&self.0 * two_n)
    }

    /// Minimal preperiod and period under doubling.
    ///
    /// With `theta = p / (2^e q)` reduced and `q` odd, the preperiod is `e` and
    /// the period is the multiplicative order of 2 modulo `q`.
    pub fn orbit_type(&self) -> OrbitType {
        let den: BigUint = self
            .denom()
            .to_biguint()
            .expect("denominator is positive");
        let e = den.trailing_zeros().unwrap_or(0) as usize;
        let odd = &den >> e;
        OrbitType {
            preperiod: e,
            period: multiplicative_order_of_two(&odd),
        }
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.0)
    }
}

/// Order of 2 in the unit group mod an odd `q` (1 when `q = 1`).
fn multiplicative_order_of_two(q: &BigUint) -> usize {
    if q.is_one() {
        return 1;
    }
    debug_assert!(q.is_odd());
    let two = BigUint::from(2u32);
    let mut x = &two % q;
    let mut k = 1usize;
    while !x.is_one() {
        x = (&x * &two) % q;
        k += 1;
    }
    k
}

/// Float conversion that stays accurate for huge numerators and denominators.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(f) = r.to_f64() {
        if f.is_finite() {
            return f;
        }
    }
    let n = r.numer();
    let d = r.denom();
    let shift = d.bits().saturating_sub(60) as usize;
    let n2: BigInt = n.abs() >> shift;
    let d2: BigInt = d >> shift;
    let v = n2.to_f64().unwrap_or(f64::NAN) / d2.to_f64().unwrap_or(f64::NAN);
    if n.is_negative() {
        -v
    } else {
        v
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Angle({self})")
    }
}

impl FromStr for Angle {
    type Err = AngleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ratio(s).map(Angle::from_ratio)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for bare rationals as "num/den" strings.
pub mod ratio_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&ratio_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_ratio(&s).map_err(serde::de::Error::custom)
    }
}
