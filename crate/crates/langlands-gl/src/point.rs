//! Exact rational points of the line.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::Rational;

/// A rational number viewed as a point; two points are integral-equivalent
/// when their difference is an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Rational);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PointParseError {
    #[error("cannot parse `{0}` as a rational number")]
    Syntax(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl Point {
    pub fn int(v: i64) -> Self {
        Point(Rational::from_integer(v))
    }

    pub fn new(num: i64, den: i64) -> Self {
        Point(Rational::new(num, den))
    }

    pub fn half() -> Self {
        Point::new(1, 2)
    }

    pub fn value(self) -> Rational {
        self.0
    }

    /// Representative of the ℤ-coset of `self` in `[0, 1)`.
    pub fn coset(self) -> Rational {
        self.0 - self.0.floor()
    }

    pub fn same_coset(self, other: Point) -> bool {
        (self.0 - other.0).is_integer()
    }

    /// `other - self` when it is an integer.
    pub fn int_gap(self, other: Point) -> Option<i64> {
        let d = other.0 - self.0;
        d.is_integer().then(|| d.to_integer())
    }

    pub fn is_integer(self) -> bool {
        self.0.is_integer()
    }

    pub fn shift(self, k: i64) -> Point {
        Point(self.0 + Rational::from_integer(k))
    }

    pub fn succ(self) -> Point {
        self.shift(1)
    }

    pub fn pred(self) -> Point {
        self.shift(-1)
    }

    pub fn to_pair(self) -> [i64; 2] {
        [*self.0.numer(), *self.0.denom()]
    }

    pub fn from_pair(pair: [i64; 2]) -> Result<Point, PointParseError> {
        if pair[1].is_zero() {
            return Err(PointParseError::ZeroDenominator(format!("{pair:?}")));
        }
        Ok(Point(Rational::new(pair[0], pair[1])))
    }

    /// True for points of the form k + 1/2.
    pub fn is_half_integer(self) -> bool {
        (self.0 * Rational::from_integer(2)).is_integer() && !self.0.is_integer()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point(self.0 + rhs.0)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point(self.0 - rhs.0)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point(-self.0)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Point {
    type Err = PointParseError;

    /// Accepts `7`, `-3/2` or `2.5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || PointParseError::Syntax(s.to_string());
        if let Some((n, d)) = t.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(PointParseError::ZeroDenominator(s.to_string()));
            }
            return Ok(Point::new(n, d));
        }
        if let Some((ip, fp)) = t.split_once('.') {
            if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) || fp.len() > 12 {
                return Err(bad());
            }
            let neg = ip.trim_start().starts_with('-');
            let ipv: i64 = if ip.is_empty() || ip == "-" {
                0
            } else {
                ip.parse().map_err(|_| bad())?
            };
            let den = 10i64.pow(fp.len() as u32);
            let frac: i64 = fp.parse().map_err(|_| bad())?;
            let num = ipv.abs() * den + frac;
            return Ok(Point::new(if neg { -num } else { num }, den));
        }
        t.parse::<i64>().map(Point::int).map_err(|_| bad())
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_pair().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pair = <[i64; 2]>::deserialize(d)?;
        Point::from_pair(pair).map_err(D::Error::custom)
    }
}
