//! The unimodality condition on weight functions and the full-rank part.

use serde::Serialize;

use crate::multiseg::{Multisegment, WeightFunction};
use crate::point::Point;

/// One integral piece of a weight function satisfying the condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RPiece {
    pub weight: WeightFunction,
    /// Half-integer point between the two maxima.
    pub r: Point,
    /// `⌊r⌋`
    pub lo: Point,
    /// `⌈r⌉`
    pub hi: Point,
    /// `φ(⌊r⌋) = φ(⌈r⌉)`, the rank of the comparison group.
    pub n: u32,
}

/// Smallest admissible `r` for each integral piece, or `None` if some piece
/// has no admissible `r`.
///
/// `r = f + ½` is admissible when `φ` is weakly increasing on `(−∞, f+1]`
/// and weakly decreasing on `[f, ∞)`.
pub fn assumption_r(phi: &WeightFunction) -> Option<Vec<RPiece>> {
    phi.integral_pieces().into_iter().map(piece_r).collect()
}

fn piece_r(piece: WeightFunction) -> Option<RPiece> {
    let pts: Vec<Point> = piece.support().collect();
    let lo = *pts.first()?;
    let hi = *pts.last()?;
    let len = lo.int_gap(hi)?;
    // dense values with a zero on either side
    let vals: Vec<u32> = (-1..=len + 1).map(|k| piece.get(lo.shift(k))).collect();
    for f in 1..vals.len() - 2 {
        let inc = vals[..=f + 1].windows(2).all(|w| w[0] <= w[1]);
        let dec = vals[f..].windows(2).all(|w| w[0] >= w[1]);
        if inc && dec {
            let floor = lo.shift(f as i64 - 1);
            return Some(RPiece {
                n: piece.get(floor),
                r: floor + Point::half(),
                lo: floor,
                hi: floor.succ(),
                weight: piece,
            });
        }
    }
    None
}

/// Restriction of `m` to the coset of `piece`.
pub fn restrict(m: &Multisegment, piece: &RPiece) -> Multisegment {
    Multisegment::new(
        m.segments()
            .iter()
            .filter(|s| s.a().same_coset(piece.lo))
            .copied()
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiseg::weight_of;

    #[test]
    fn example_three_halves() {
        let m = Multisegment::ints(&[(-1, 4), (-1, 3), (0, 2), (1, 2)]);
        let p = assumption_r(&weight_of(&m)).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].r, Point::new(3, 2));
        assert_eq!(p[0].n, 4);
    }

    #[test]
    fn failures_and_plateaus() {
        assert!(assumption_r(&WeightFunction::ints(&[(0, 1)])).is_none());
        let p = assumption_r(&WeightFunction::ints(&[(0, 2), (1, 2)])).unwrap();
        assert_eq!(p[0].r, Point::new(1, 2));
        assert!(assumption_r(&WeightFunction::ints(&[(0, 1), (1, 2), (2, 1)])).is_none());
        assert!(assumption_r(&WeightFunction::ints(&[(0, 1), (1, 1), (3, 1), (4, 1)])).is_none());
    }

    #[test]
    fn smallest_r_on_long_plateau() {
        let p = assumption_r(&WeightFunction::from_run(0, &[1, 2, 2, 2, 1])).unwrap();
        assert_eq!(p[0].r, Point::new(3, 2));
    }
}
