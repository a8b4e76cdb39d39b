//! Segments, multisegments and weight functions.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::point::Point;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultisegError {
    #[error("segment [{a},{b}]: right endpoint must exceed the left one by a nonnegative integer")]
    BadSegment { a: Point, b: Point },
    #[error("incomparable weights")]
    IncomparableWeights,
    #[error("total mass {mass} exceeds the configured bound {bound}")]
    MassBound { mass: u64, bound: u64 },
    #[error("weight function has a zero or negative entry at {0}")]
    BadWeight(Point),
}

/// The segment `{a, a+1, …, b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSegment")]
pub struct Segment {
    a: Point,
    b: Point,
}

#[derive(Deserialize)]
struct RawSegment {
    a: Point,
    b: Point,
}

impl TryFrom<RawSegment> for Segment {
    type Error = MultisegError;
    fn try_from(r: RawSegment) -> Result<Self, Self::Error> {
        Segment::new(r.a, r.b)
    }
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self, MultisegError> {
        match a.int_gap(b) {
            Some(d) if d >= 0 => Ok(Segment { a, b }),
            _ => Err(MultisegError::BadSegment { a, b }),
        }
    }

    /// Integer endpoints, panicking on invalid input; meant for literals.
    pub fn ints(a: i64, b: i64) -> Self {
        Segment::new(Point::int(a), Point::int(b)).expect("invalid segment literal")
    }

    pub fn a(&self) -> Point {
        self.a
    }

    pub fn b(&self) -> Point {
        self.b
    }

    /// Number of steps `b - a`; a singleton has length 0.
    pub fn length(&self) -> i64 {
        self.a.int_gap(self.b).unwrap_or(0)
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..=self.length()).map(move |k| self.a.shift(k))
    }

    pub fn contains_point(&self, p: Point) -> bool {
        p.same_coset(self.a) && self.a <= p && p <= self.b
    }

    pub fn contains(&self, other: &Segment) -> bool {
        self.a.same_coset(other.a) && self.a <= other.a && other.b <= self.b
    }

    pub fn coset(&self) -> num_rational::Ratio<i64> {
        self.a.coset()
    }
}

/// Canonical order: descending `a + b`, then descending `b`.
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        (other.a + other.b).cmp(&(self.a + self.b)).then(other.b.cmp(&self.b))
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == self.b {
            write!(f, "[{}]", self.a)
        } else {
            write!(f, "[{},{}]", self.a, self.b)
        }
    }
}

/// `s` and `t` are linked: neither contains the other and their union is a segment.
pub fn is_linked(s: &Segment, t: &Segment) -> bool {
    if !s.a.same_coset(t.a) {
        return false;
    }
    let (lo, hi) = if s.a <= t.a { (s, t) } else { (t, s) };
    lo.a < hi.a && lo.b < hi.b && hi.a <= lo.b.succ()
}

/// A finite multiset of segments kept in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "RawMultisegment")]
pub struct Multisegment {
    segments: Vec<Segment>,
}

#[derive(Deserialize)]
struct RawMultisegment {
    segments: Vec<Segment>,
}

impl From<RawMultisegment> for Multisegment {
    fn from(r: RawMultisegment) -> Self {
        Multisegment::new(r.segments)
    }
}

impl Multisegment {
    pub fn new(mut segments: Vec<Segment>) -> Self {
        segments.sort();
        Multisegment { segments }
    }

    pub fn empty() -> Self {
        Multisegment::default()
    }

    /// Build from integer pairs, e.g. `&[(0, 1), (1, 1)]` for `[0,1]+[1]`.
    pub fn ints(pairs: &[(i64, i64)]) -> Self {
        Multisegment::new(pairs.iter().map(|&(a, b)| Segment::ints(a, b)).collect())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Multiset union.
    pub fn sum(&self, other: &Multisegment) -> Multisegment {
        let mut v = self.segments.clone();
        v.extend_from_slice(&other.segments);
        Multisegment::new(v)
    }

    /// Segments with their multiplicities, in canonical order.
    pub fn grouped(&self) -> Vec<(Segment, usize)> {
        let mut out: Vec<(Segment, usize)> = Vec::new();
        for s in &self.segments {
            match out.last_mut() {
                Some((t, c)) if t == s => *c += 1,
                _ => out.push((*s, 1)),
            }
        }
        out
    }

    pub fn mass(&self) -> u64 {
        self.segments.iter().map(|s| s.length() as u64 + 1).sum()
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segments.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .grouped()
            .into_iter()
            .map(|(s, c)| if c == 1 { s.to_string() } else { format!("{c}{s}") })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// A finite-support map from points to positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightFunction {
    values: BTreeMap<Point, u32>,
}

#[derive(Serialize, Deserialize)]
struct RawWeight {
    values: Vec<(Point, u32)>,
}

impl Serialize for WeightFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawWeight {
            values: self.values.iter().map(|(p, c)| (*p, *c)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawWeight::deserialize(d)?;
        let mut w = WeightFunction::default();
        for (p, c) in raw.values {
            w.add(p, c);
        }
        Ok(w)
    }
}

impl WeightFunction {
    pub fn new() -> Self {
        WeightFunction::default()
    }

    /// From `(point, count)` pairs; repeated points accumulate.
    pub fn from_pairs<I: IntoIterator<Item = (Point, u32)>>(pairs: I) -> Self {
        let mut w = WeightFunction::new();
        for (p, c) in pairs {
            w.add(p, c);
        }
        w
    }

    /// Integer support, e.g. `&[(0, 1), (1, 2)]`.
    pub fn ints(pairs: &[(i64, u32)]) -> Self {
        WeightFunction::from_pairs(pairs.iter().map(|&(p, c)| (Point::int(p), c)))
    }

    /// Consecutive values starting at the integer `start`.
    pub fn from_run(start: i64, values: &[u32]) -> Self {
        WeightFunction::from_pairs(
            values
                .iter()
                .enumerate()
                .map(|(i, &c)| (Point::int(start + i as i64), c)),
        )
    }

    pub fn add(&mut self, p: Point, c: u32) {
        if c > 0 {
            *self.values.entry(p).or_insert(0) += c;
        }
    }

    /// Subtract `c` at `p`; `None` if that would go negative.
    pub fn checked_sub(&self, p: Point, c: u32) -> Option<WeightFunction> {
        let cur = self.get(p);
        if cur < c {
            return None;
        }
        let mut w = self.clone();
        if cur == c {
            w.values.remove(&p);
        } else {
            w.values.insert(p, cur - c);
        }
        Some(w)
    }

    pub fn get(&self, p: Point) -> u32 {
        self.values.get(&p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Point, u32)> + '_ {
        self.values.iter().map(|(p, c)| (*p, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = Point> + '_ {
        self.values.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mass(&self) -> u64 {
        self.values.values().map(|&c| c as u64).sum()
    }

    /// `Σ_i φ(i)φ(i+1)`, the dimension of the Vogan variety.
    pub fn dim_e(&self) -> u64 {
        self.iter().map(|(p, c)| c as u64 * self.get(p.succ()) as u64).sum()
    }

    /// `Σ_i φ(i)²`, the dimension of the group acting on it.
    pub fn dim_g(&self) -> u64 {
        self.values.values().map(|&c| (c as u64) * (c as u64)).sum()
    }

    /// Restrictions to the distinct ℤ-cosets of the support, ordered by coset.
    pub fn integral_pieces(&self) -> Vec<WeightFunction> {
        let mut by: BTreeMap<num_rational::Ratio<i64>, WeightFunction> = BTreeMap::new();
        for (p, c) in self.iter() {
            by.entry(p.coset()).or_default().add(p, c);
        }
        by.into_values().collect()
    }

    pub fn is_integral(&self) -> bool {
        self.integral_pieces().len() <= 1
    }

    pub fn plus(&self, other: &WeightFunction) -> WeightFunction {
        let mut w = self.clone();
        for (p, c) in other.iter() {
            w.add(p, c);
        }
        w
    }

    pub fn shift(&self, k: i64) -> WeightFunction {
        WeightFunction::from_pairs(self.iter().map(|(p, c)| (p.shift(k), c)))
    }
}

impl fmt::Display for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(p, c)| format!("{p}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Number of segments of `m` containing each point.
pub fn weight_of(m: &Multisegment) -> WeightFunction {
    let mut w = WeightFunction::new();
    for s in m.segments() {
        for p in s.points() {
            w.add(p, 1);
        }
    }
    w
}

/// Point reflection `i ↦ -i`.
pub trait Dualize {
    fn dualize(&self) -> Self;
}

impl Dualize for Segment {
    fn dualize(&self) -> Self {
        Segment { a: -self.b, b: -self.a }
    }
}

impl Dualize for Multisegment {
    fn dualize(&self) -> Self {
        Multisegment::new(self.segments.iter().map(Dualize::dualize).collect())
    }
}

impl Dualize for WeightFunction {
    fn dualize(&self) -> Self {
        WeightFunction::from_pairs(self.iter().map(|(p, c)| (-p, c)))
    }
}

impl Dualize for Point {
    fn dualize(&self) -> Self {
        -*self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_of_worked_figure() {
        let m = Multisegment::ints(&[(-1, 3), (-1, -1), (1, 2), (0, 1), (0, 1)]);
        assert_eq!(
            weight_of(&m),
            WeightFunction::ints(&[(-1, 2), (0, 3), (1, 4), (2, 2), (3, 1)])
        );
        assert!(weight_of(&Multisegment::empty()).is_empty());
        assert_eq!(
            weight_of(&Multisegment::ints(&[(0, 2), (1, 1)])),
            WeightFunction::ints(&[(0, 1), (1, 2), (2, 1)])
        );
    }

    #[test]
    fn linked_pairs() {
        assert!(is_linked(&Segment::ints(0, 1), &Segment::ints(1, 2)));
        assert!(!is_linked(&Segment::ints(0, 2), &Segment::ints(1, 1)));
        assert!(!is_linked(&Segment::ints(0, 1), &Segment::ints(5, 6)));
        assert!(is_linked(&Segment::ints(0, 0), &Segment::ints(1, 1)));
        let half = Segment::new(Point::new(1, 2), Point::new(3, 2)).unwrap();
        assert!(!is_linked(&half, &Segment::ints(1, 2)));
    }

    #[test]
    fn canonical_order_and_display() {
        let m = Multisegment::ints(&[(0, 1), (-1, 3), (0, 1), (1, 2), (-1, -1)]);
        assert_eq!(m.to_string(), "[1,2]+[-1,3]+2[0,1]+[-1]");
        assert_eq!(m, Multisegment::ints(&[(-1, -1), (1, 2), (0, 1), (-1, 3), (0, 1)]));
    }

    #[test]
    fn segment_validation() {
        assert!(Segment::new(Point::int(2), Point::int(1)).is_err());
        assert!(Segment::new(Point::int(0), Point::new(1, 2)).is_err());
        assert!(serde_json::from_str::<Segment>(r#"{"a":[3,1],"b":[1,1]}"#).is_err());
    }

    #[test]
    fn dualize_examples() {
        assert_eq!(Segment::ints(0, 2).dualize(), Segment::ints(-2, 0));
        assert_eq!(
            WeightFunction::ints(&[(0, 1), (1, 2)]).dualize(),
            WeightFunction::ints(&[(-1, 2), (0, 1)])
        );
    }

    #[test]
    fn json_round_trip() {
        let m = Multisegment::ints(&[(0, 1), (1, 1)]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<Multisegment>(&s).unwrap(), m);
        let w = WeightFunction::ints(&[(0, 1), (1, 2)]);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"values":[[[0,1],1],[[1,1],2]]}"#);
        assert_eq!(serde_json::from_str::<WeightFunction>(&s).unwrap(), w);
    }

    #[test]
    fn pieces_split_by_coset() {
        let w = WeightFunction::from_pairs([(Point::int(0), 1), (Point::new(1, 2), 2), (Point::int(1), 1)]);
        let pieces = w.integral_pieces();
        assert_eq!(pieces.len(), 2);
        assert_eq!(pieces[0], WeightFunction::ints(&[(0, 1), (1, 1)]));
    }
}
