//! Points of the Vogan variety `E_φ`, their Jordan types and orbit dimensions.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assumption::{assumption_r, restrict};
use crate::linalg::Matrix;
use crate::multiseg::{weight_of, Multisegment, Segment, WeightFunction};
use crate::point::Point;
use crate::scalar::Field;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VoganError {
    #[error("block at degree {degree} has shape {got:?}, expected {want:?}")]
    Shape {
        degree: Point,
        got: (usize, usize),
        want: (usize, usize),
    },
    #[error("weight function {0} does not satisfy the unimodality assumption")]
    Assumption(String),
    #[error("multisegment weight {got} differs from {want}")]
    WeightMismatch { got: String, want: String },
}

/// A degree-one endomorphism of `V_φ = ⊕ V_i`; `blocks[i]: V_i → V_{i+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedOperator<F = Rational> {
    dims: WeightFunction,
    blocks: BTreeMap<Point, Matrix<F>>,
}

impl<F: Field> GradedOperator<F> {
    /// The zero operator on `V_φ`.
    pub fn zero(dims: WeightFunction) -> Self {
        GradedOperator {
            dims,
            blocks: BTreeMap::new(),
        }
    }

    /// Check shapes and drop blocks between empty degrees.
    pub fn new(dims: WeightFunction, blocks: BTreeMap<Point, Matrix<F>>) -> Result<Self, VoganError> {
        let mut kept = BTreeMap::new();
        for (i, b) in blocks {
            let want = (dims.get(i.succ()) as usize, dims.get(i) as usize);
            if (b.rows(), b.cols()) != want {
                return Err(VoganError::Shape {
                    degree: i,
                    got: (b.rows(), b.cols()),
                    want,
                });
            }
            if want.0 > 0 && want.1 > 0 {
                kept.insert(i, b);
            }
        }
        Ok(GradedOperator { dims, blocks: kept })
    }

    pub fn dims(&self) -> &WeightFunction {
        &self.dims
    }

    /// `T_i`, or the zero map when absent.
    pub fn block(&self, i: Point) -> Matrix<F> {
        self.blocks
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dims.get(i.succ()) as usize, self.dims.get(i) as usize))
    }

    pub fn blocks(&self) -> impl Iterator<Item = (Point, &Matrix<F>)> + '_ {
        self.blocks.iter().map(|(p, m)| (*p, m))
    }

    /// `rank(T_{j−1} ∘ ⋯ ∘ T_i)`, with `r(i, i) = φ(i)`.
    pub fn rank_between(&self, i: Point, j: Point) -> u32 {
        let Some(len) = i.int_gap(j) else { return 0 };
        if len < 0 || (0..=len).any(|k| self.dims.get(i.shift(k)) == 0) {
            return 0;
        }
        let mut acc = Matrix::<F>::identity(self.dims.get(i) as usize);
        for k in 0..len {
            acc = self.block(i.shift(k)).mul(&acc).expect("consistent block shapes");
        }
        acc.rank() as u32
    }
}

#[derive(Serialize, Deserialize)]
struct RawOperator {
    dims: WeightFunction,
    blocks: Vec<(Point, Vec<Vec<Point>>)>,
}

impl Serialize for GradedOperator<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawOperator {
            dims: self.dims.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|(p, m)| {
                    let rows = m
                        .to_rows()
                        .into_iter()
                        .map(|r| r.into_iter().map(Point).collect())
                        .collect();
                    (*p, rows)
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedOperator<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawOperator::deserialize(d)?;
        let mut blocks = BTreeMap::new();
        for (p, rows) in raw.blocks {
            let want = (raw.dims.get(p.succ()) as usize, raw.dims.get(p) as usize);
            let m = if rows.is_empty() {
                Matrix::zeros(0, want.1)
            } else {
                Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect())
                    .ok_or_else(|| D::Error::custom("ragged matrix"))?
            };
            blocks.insert(p, m);
        }
        GradedOperator::new(raw.dims, blocks).map_err(D::Error::custom)
    }
}

/// A representative of `O_m`.
///
/// Segments sorted by left endpoint, longer first on ties, take the next
/// free coordinate in each degree they cover, so each `T_i` is a partial
/// permutation matrix.
pub fn jordan_rep(m: &Multisegment) -> GradedOperator {
    let phi = weight_of(m);
    let mut next: BTreeMap<Point, usize> = BTreeMap::new();
    let mut coords: Vec<Vec<(Point, usize)>> = Vec::new();
    let mut order: Vec<Segment> = m.segments().to_vec();
    order.sort_by(|x, y| x.a().cmp(&y.a()).then(y.b().cmp(&x.b())));
    for s in &order {
        let c = s
            .points()
            .map(|p| {
                let slot = next.entry(p).or_insert(0);
                *slot += 1;
                (p, *slot - 1)
            })
            .collect();
        coords.push(c);
    }
    let mut blocks: BTreeMap<Point, Matrix<Rational>> = BTreeMap::new();
    for c in &coords {
        for w in c.windows(2) {
            let ((p, col), (_, row)) = (w[0], w[1]);
            let b = blocks
                .entry(p)
                .or_insert_with(|| Matrix::zeros(phi.get(p.succ()) as usize, phi.get(p) as usize));
            b.set(row, col, Rational::from_integer(1));
        }
    }
    GradedOperator::new(phi, blocks).expect("shapes follow the weight")
}

/// The multisegment labelling the orbit of `t`.
pub fn jordan_type<F: Field>(t: &GradedOperator<F>) -> Multisegment {
    let phi = t.dims();
    let r = |i: Point, j: Point| -> i64 {
        if phi.get(i) == 0 || phi.get(j) == 0 {
            0
        } else {
            t.rank_between(i, j) as i64
        }
    };
    let mut segs = Vec::new();
    for i in phi.support() {
        let mut j = i;
        while phi.get(j) > 0 {
            let c = r(i, j) - r(i.pred(), j) - r(i, j.succ()) + r(i.pred(), j.succ());
            for _ in 0..c {
                segs.push(Segment::new(i, j).expect("interval"));
            }
            j = j.succ();
        }
    }
    Multisegment::new(segs)
}

/// Dimension of the stabilizer of `t` in `G_φ`: the kernel of
/// `g ↦ (g_{i+1} T_i − T_i g_i)_i` on degree-zero endomorphisms.
pub fn stabilizer_dimension<F: Field>(t: &GradedOperator<F>) -> u64 {
    let phi = t.dims();
    let mut offset: BTreeMap<Point, usize> = BTreeMap::new();
    let mut unknowns = 0usize;
    for (p, d) in phi.iter() {
        offset.insert(p, unknowns);
        unknowns += (d * d) as usize;
    }
    let var = |p: Point, a: usize, b: usize| offset[&p] + a * phi.get(p) as usize + b;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for (i, ti) in t.blocks() {
        let (di, dj) = (phi.get(i) as usize, phi.get(i.succ()) as usize);
        let j = i.succ();
        for a in 0..dj {
            for b in 0..di {
                let mut row = vec![F::zero(); unknowns];
                for c in 0..dj {
                    let v = ti.get(c, b);
                    if !v.negligible() {
                        let k = var(j, a, c);
                        row[k] = row[k].clone() + v.clone();
                    }
                }
                for c in 0..di {
                    let v = ti.get(a, c);
                    if !v.negligible() {
                        let k = var(i, c, b);
                        row[k] = row[k].clone() - v.clone();
                    }
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return unknowns as u64;
    }
    let m = Matrix::from_rows(rows).expect("equal row lengths");
    m.nullity() as u64
}

fn dim_cache() -> &'static DashMap<Multisegment, u64> {
    static CACHE: OnceLock<DashMap<Multisegment, u64>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

/// `dim O_m = dim G_φ − dim Stab(jordan_rep(m))`, memoized.
pub fn orbit_dimension(m: &Multisegment) -> u64 {
    if let Some(d) = dim_cache().get(m) {
        return *d;
    }
    let t = jordan_rep(m);
    let d = t.dims().dim_g() - stabilizer_dimension(&t);
    dim_cache().insert(m.clone(), d);
    d
}

/// `m` has exactly `n = φ(⌊r⌋)` segments on every integral piece.
pub fn is_full_rank(m: &Multisegment, phi: &WeightFunction) -> Result<bool, VoganError> {
    let got = weight_of(m);
    if &got != phi {
        return Err(VoganError::WeightMismatch {
            got: got.to_string(),
            want: phi.to_string(),
        });
    }
    let pieces = assumption_r(phi).ok_or_else(|| VoganError::Assumption(phi.to_string()))?;
    Ok(pieces.iter().all(|p| restrict(m, p).len() == p.n as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{enumerate_multisegments, minimal_orbit};

    fn q(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    #[test]
    fn reps_of_small_orbits() {
        let t = jordan_rep(&Multisegment::ints(&[(0, 1)]));
        assert_eq!(t.block(Point::int(0)).to_rows(), vec![vec![q(1)]]);
        let t = jordan_rep(&Multisegment::ints(&[(0, 0), (1, 1)]));
        assert_eq!(t.block(Point::int(0)).to_rows(), vec![vec![q(0)]]);
        let t = jordan_rep(&Multisegment::ints(&[(0, 1), (1, 1)]));
        assert_eq!(t.block(Point::int(0)).to_rows(), vec![vec![q(1)], vec![q(0)]]);
    }

    #[test]
    fn types_from_operators() {
        let phi = WeightFunction::ints(&[(0, 2), (1, 1)]);
        assert_eq!(
            jordan_type(&GradedOperator::<Rational>::zero(phi.clone())),
            Multisegment::ints(&[(0, 0), (0, 0), (1, 1)])
        );
        let b = Matrix::from_rows(vec![vec![q(1), q(0)]]).unwrap();
        let t = GradedOperator::new(phi, BTreeMap::from([(Point::int(0), b)])).unwrap();
        assert_eq!(jordan_type(&t), Multisegment::ints(&[(0, 1), (0, 0)]));
    }

    #[test]
    fn generic_operator_has_open_type() {
        let phi = WeightFunction::ints(&[(0, 1), (1, 2), (2, 1)]);
        let b0 = Matrix::from_rows(vec![vec![q(2)], vec![q(3)]]).unwrap();
        let b1 = Matrix::from_rows(vec![vec![q(5), q(-1)]]).unwrap();
        let t = GradedOperator::new(phi, BTreeMap::from([(Point::int(0), b0), (Point::int(1), b1)])).unwrap();
        assert_eq!(jordan_type(&t), Multisegment::ints(&[(0, 2), (1, 1)]));
        let f: GradedOperator<f64> = GradedOperator::new(
            t.dims().clone(),
            t.blocks()
                .map(|(p, m)| {
                    let rows = m
                        .to_rows()
                        .into_iter()
                        .map(|r| r.into_iter().map(|x| *x.numer() as f64 / *x.denom() as f64).collect())
                        .collect();
                    (p, Matrix::from_rows(rows).unwrap())
                })
                .collect(),
        )
        .unwrap();
        assert_eq!(jordan_type(&f), jordan_type(&t));
    }

    #[test]
    fn orbit_dimensions() {
        assert_eq!(orbit_dimension(&Multisegment::ints(&[(0, 1)])), 1);
        assert_eq!(orbit_dimension(&Multisegment::ints(&[(0, 0), (1, 1)])), 0);
        assert_eq!(orbit_dimension(&Multisegment::ints(&[(0, 1), (1, 1)])), 2);
    }

    #[test]
    fn full_rank_flags() {
        let m = Multisegment::ints(&[(-1, 4), (-1, 3), (0, 2), (1, 2)]);
        let phi = weight_of(&m);
        assert!(is_full_rank(&m, &phi).unwrap());
        assert!(!is_full_rank(&minimal_orbit(&phi), &phi).unwrap());
        let phi = WeightFunction::ints(&[(0, 1), (1, 1)]);
        assert!(is_full_rank(&Multisegment::ints(&[(0, 1)]), &phi).unwrap());
        assert!(!is_full_rank(&Multisegment::ints(&[(0, 0), (1, 1)]), &phi).unwrap());
        assert!(is_full_rank(&Multisegment::ints(&[(0, 0)]), &WeightFunction::ints(&[(0, 1)])).is_err());
    }

    #[test]
    fn round_trip_and_extremes() {
        let phi = WeightFunction::from_run(0, &[1, 2, 2, 1]);
        let all = enumerate_multisegments(&phi, 16).unwrap();
        for m in &all {
            assert_eq!(&jordan_type(&jordan_rep(m)), m);
        }
        let dims: Vec<u64> = all.iter().map(orbit_dimension).collect();
        assert_eq!(*dims.iter().max().unwrap(), phi.dim_e());
        assert_eq!(orbit_dimension(&minimal_orbit(&phi)), 0);
    }

    #[test]
    fn operator_json() {
        let t = jordan_rep(&Multisegment::ints(&[(0, 1), (1, 1)]));
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<GradedOperator>(&s).unwrap(), t);
        let bad = r#"{"dims":{"values":[[[0,1],1],[[1,1],1]]},"blocks":[[[0,1],[[[1,1],[1,1]]]]]}"#;
        assert!(serde_json::from_str::<GradedOperator>(bad).is_err());
    }
}
