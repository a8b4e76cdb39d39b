//! Elementary operations, the closure order, and enumeration of orbits.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::multiseg::{is_linked, weight_of, MultisegError, Multisegment, Segment, WeightFunction};
use crate::point::Point;

/// Default cap on the total mass accepted by [`enumerate_multisegments`].
pub const DEFAULT_MASS_BOUND: u64 = 16;

/// All multisegments reachable from `m` by one elementary operation.
///
/// Replacing a linked pair by union and intersection moves *up* the
/// closure order: `O_m` lies in the closure of `O_n` for every result `n`.
pub fn elementary_moves(m: &Multisegment) -> BTreeSet<Multisegment> {
    let groups = m.grouped();
    let mut out = BTreeSet::new();
    for (i, &(s, _)) in groups.iter().enumerate() {
        for &(t, _) in &groups[i + 1..] {
            if !is_linked(&s, &t) {
                continue;
            }
            let (lo, hi) = if s.a() < t.a() { (s, t) } else { (t, s) };
            let mut v: Vec<Segment> = m.segments().to_vec();
            remove_one(&mut v, &s);
            remove_one(&mut v, &t);
            v.push(Segment::new(lo.a(), hi.b()).expect("union of linked segments"));
            if hi.a() <= lo.b() {
                v.push(Segment::new(hi.a(), lo.b()).expect("intersection of linked segments"));
            }
            out.insert(Multisegment::new(v));
        }
    }
    out
}

fn remove_one(v: &mut Vec<Segment>, s: &Segment) {
    if let Some(pos) = v.iter().position(|x| x == s) {
        v.remove(pos);
    }
}

/// `r(i, j)` = number of segments containing `[i, j]`, for all intervals
/// inside contiguous runs of the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile(BTreeMap<(Point, Point), u32>);

impl RankProfile {
    pub fn get(&self, i: Point, j: Point) -> u32 {
        self.0.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((Point, Point), u32)> + '_ {
        self.0.iter().map(|(k, v)| (*k, *v))
    }

    /// Pointwise `self ≤ other`.
    pub fn dominated_by(&self, other: &RankProfile) -> bool {
        self.0
            .keys()
            .chain(other.0.keys())
            .all(|&(i, j)| self.get(i, j) <= other.get(i, j))
    }
}

fn intervals(phi: &WeightFunction) -> Vec<(Point, Point)> {
    let mut out = Vec::new();
    for i in phi.support() {
        let mut j = i;
        while phi.get(j) > 0 {
            out.push((i, j));
            j = j.succ();
        }
    }
    out
}

pub fn rank_profile(m: &Multisegment) -> RankProfile {
    let phi = weight_of(m);
    let map = intervals(&phi)
        .into_iter()
        .map(|(i, j)| {
            let iv = Segment::new(i, j).expect("interval");
            let c = m.segments().iter().filter(|s| s.contains(&iv)).count() as u32;
            ((i, j), c)
        })
        .collect();
    RankProfile(map)
}

fn check_weights(m: &Multisegment, n: &Multisegment) -> Result<(), MultisegError> {
    if weight_of(m) != weight_of(n) {
        return Err(MultisegError::IncomparableWeights);
    }
    Ok(())
}

/// `O_m ⊆ closure(O_n)`.
///
/// Rank dominance rules out most pairs at once; otherwise a breadth-first
/// search over elementary moves runs from `m`, pruned to states still
/// dominated by `n`.
pub fn closure_leq(m: &Multisegment, n: &Multisegment) -> Result<bool, MultisegError> {
    check_weights(m, n)?;
    if m == n {
        return Ok(true);
    }
    let target = rank_profile(n);
    if !rank_profile(m).dominated_by(&target) {
        return Ok(false);
    }
    Ok(bfs(m, n, |x| rank_profile(x).dominated_by(&target)))
}

/// Unpruned breadth-first search; an oracle for [`closure_leq`].
pub fn closure_leq_bfs(m: &Multisegment, n: &Multisegment) -> Result<bool, MultisegError> {
    check_weights(m, n)?;
    Ok(bfs(m, n, |_| true))
}

fn bfs(m: &Multisegment, n: &Multisegment, keep: impl Fn(&Multisegment) -> bool) -> bool {
    let mut seen = BTreeSet::from([m.clone()]);
    let mut queue = VecDeque::from([m.clone()]);
    while let Some(x) = queue.pop_front() {
        if &x == n {
            return true;
        }
        for y in elementary_moves(&x) {
            if !seen.contains(&y) && keep(&y) {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    false
}

/// Every multisegment `n` with `O_m ⊆ closure(O_n)`, including `m`.
pub fn up_set(m: &Multisegment) -> BTreeSet<Multisegment> {
    let mut seen = BTreeSet::from([m.clone()]);
    let mut queue = VecDeque::from([m.clone()]);
    while let Some(x) = queue.pop_front() {
        for y in elementary_moves(&x) {
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// All multisegments of weight `phi`, in canonical order.
pub fn enumerate_multisegments(phi: &WeightFunction, mass_bound: u64) -> Result<Vec<Multisegment>, MultisegError> {
    if phi.mass() > mass_bound {
        return Err(MultisegError::MassBound {
            mass: phi.mass(),
            bound: mass_bound,
        });
    }
    let mut acc = vec![Multisegment::empty()];
    for piece in phi.integral_pieces() {
        let local = enumerate_piece(&piece);
        acc = acc.iter().flat_map(|a| local.iter().map(move |b| a.sum(b))).collect();
    }
    acc.sort();
    Ok(acc)
}

// Column sweep over one ℤ-coset: the state lists open segments by start
// point, and at each column we decide how many of each continue.
fn enumerate_piece(phi: &WeightFunction) -> Vec<Multisegment> {
    let pts: Vec<Point> = phi.support().collect();
    let (Some(&lo), Some(&hi)) = (pts.first(), pts.last()) else {
        return vec![Multisegment::empty()];
    };
    let len = lo.int_gap(hi).expect("integral piece");
    let columns: Vec<Point> = (0..=len).map(|k| lo.shift(k)).collect();
    let mut out = Vec::new();
    sweep(phi, &columns, 0, Vec::new(), Vec::new(), &mut out);
    out
}

fn sweep(
    phi: &WeightFunction,
    cols: &[Point],
    idx: usize,
    open: Vec<(Point, u32)>,
    closed: Vec<Segment>,
    out: &mut Vec<Multisegment>,
) {
    if idx == cols.len() {
        let mut segs = closed;
        let end = cols[cols.len() - 1];
        for (s, c) in open {
            for _ in 0..c {
                segs.push(Segment::new(s, end).expect("open segment"));
            }
        }
        out.push(Multisegment::new(segs));
        return;
    }
    let p = cols[idx];
    let cap = phi.get(p);
    let mut choice = vec![0u32; open.len()];
    loop {
        let used: u32 = choice.iter().sum();
        if used <= cap {
            let mut next_open = Vec::new();
            let mut next_closed = closed.clone();
            for ((s, c), &k) in open.iter().zip(&choice) {
                if k > 0 {
                    next_open.push((*s, k));
                }
                for _ in k..*c {
                    next_closed.push(Segment::new(*s, p.pred()).expect("closed segment"));
                }
            }
            if cap > used {
                next_open.push((p, cap - used));
            }
            sweep(phi, cols, idx + 1, next_open, next_closed, out);
        }
        // odometer over choice[g] ∈ 0..=open[g].1
        let mut g = 0;
        loop {
            if g == choice.len() {
                return;
            }
            if choice[g] < open[g].1 {
                choice[g] += 1;
                break;
            }
            choice[g] = 0;
            g += 1;
        }
    }
}

/// The open orbit: `r(i, j) = min φ` on `[i, j]`.
pub fn open_orbit(phi: &WeightFunction) -> Multisegment {
    let rank = |i: Point, j: Point| -> i64 {
        let Some(len) = i.int_gap(j) else { return 0 };
        (0..=len).map(|k| phi.get(i.shift(k)) as i64).min().unwrap_or(0)
    };
    let mut segs = Vec::new();
    for (i, j) in intervals(phi) {
        let c = rank(i, j) - rank(i.pred(), j) - rank(i, j.succ()) + rank(i.pred(), j.succ());
        for _ in 0..c {
            segs.push(Segment::new(i, j).expect("interval"));
        }
    }
    Multisegment::new(segs)
}

/// The closed orbit: all singletons.
pub fn minimal_orbit(phi: &WeightFunction) -> Multisegment {
    Multisegment::new(
        phi.iter()
            .flat_map(|(p, c)| (0..c).map(move |_| Segment::new(p, p).expect("singleton")))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elem_op_pair() -> (Multisegment, Multisegment) {
        (
            Multisegment::ints(&[(-1, 3), (-1, -1), (1, 2), (0, 1), (0, 1)]),
            Multisegment::ints(&[(-1, 3), (-1, -1), (0, 2), (0, 1), (1, 1)]),
        )
    }

    #[test]
    fn moves_from_example() {
        let (m, n) = elem_op_pair();
        assert!(elementary_moves(&m).contains(&n));
        assert!(elementary_moves(&Multisegment::ints(&[(0, 3), (1, 2)])).is_empty());
        let singles = Multisegment::ints(&[(0, 0), (1, 1)]);
        assert_eq!(
            elementary_moves(&singles),
            BTreeSet::from([Multisegment::ints(&[(0, 1)])])
        );
        for x in elementary_moves(&m) {
            assert_eq!(weight_of(&x), weight_of(&m));
        }
    }

    #[test]
    fn closure_orientation() {
        let (m, n) = elem_op_pair();
        assert!(closure_leq(&m, &n).unwrap());
        assert!(closure_leq(&m, &m).unwrap());
        let a = Multisegment::ints(&[(0, 1), (1, 2)]);
        let b = Multisegment::ints(&[(0, 2), (1, 1)]);
        assert!(closure_leq(&a, &b).unwrap());
        assert!(!closure_leq(&b, &a).unwrap());
        assert_eq!(
            closure_leq(&a, &Multisegment::ints(&[(0, 1)])),
            Err(MultisegError::IncomparableWeights)
        );
    }

    #[test]
    fn rank_profiles() {
        let r = rank_profile(&Multisegment::ints(&[(0, 2)]));
        assert_eq!(r.get(Point::int(0), Point::int(2)), 1);
        assert_eq!(r.get(Point::int(1), Point::int(1)), 1);
        let r = rank_profile(&Multisegment::ints(&[(0, 1), (1, 2)]));
        assert_eq!(r.get(Point::int(0), Point::int(2)), 0);
        assert_eq!(r.get(Point::int(1), Point::int(1)), 2);
        let r = rank_profile(&Multisegment::ints(&[(0, 2), (1, 1)]));
        assert_eq!(r.get(Point::int(0), Point::int(2)), 1);
        assert_eq!(r.get(Point::int(1), Point::int(1)), 2);
    }

    #[test]
    fn enumeration_counts() {
        let two = enumerate_multisegments(&WeightFunction::ints(&[(0, 1), (1, 1)]), 16).unwrap();
        assert_eq!(
            two,
            vec![Multisegment::ints(&[(0, 1)]), Multisegment::ints(&[(0, 0), (1, 1)])]
                .into_iter()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect::<Vec<_>>()
        );
        let phi = WeightFunction::ints(&[(0, 1), (1, 2), (2, 1)]);
        assert_eq!(enumerate_multisegments(&phi, 16).unwrap().len(), 5);
        let (m, n) = elem_op_pair();
        let all = enumerate_multisegments(&weight_of(&m), 16).unwrap();
        assert!(all.contains(&m) && all.contains(&n));
        let big = WeightFunction::ints(&[(0, 9), (1, 9)]);
        assert!(enumerate_multisegments(&big, 16).is_err());
    }

    #[test]
    fn enumeration_matches_up_set_of_minimum() {
        let phi = WeightFunction::ints(&[(0, 1), (1, 2), (2, 2), (3, 1)]);
        let all: BTreeSet<_> = enumerate_multisegments(&phi, 16).unwrap().into_iter().collect();
        assert_eq!(up_set(&minimal_orbit(&phi)), all);
    }

    #[test]
    fn gaps_and_cosets() {
        let phi = WeightFunction::from_pairs([
            (Point::int(0), 1),
            (Point::int(2), 1),
            (Point::new(1, 2), 1),
            (Point::new(3, 2), 1),
        ]);
        assert_eq!(enumerate_multisegments(&phi, 16).unwrap().len(), 2);
    }

    #[test]
    fn open_orbit_is_top() {
        let phi = WeightFunction::ints(&[(0, 1), (1, 2), (2, 1)]);
        let top = open_orbit(&phi);
        assert_eq!(top, Multisegment::ints(&[(0, 2), (1, 1)]));
        for m in enumerate_multisegments(&phi, 16).unwrap() {
            assert!(closure_leq(&m, &top).unwrap());
        }
    }
}
