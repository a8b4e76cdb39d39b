//! The comparison between a `GL_n(ℂ)` block and the full-rank part of a
//! Vogan variety: parabolic data, infinitesimal characters, the orbit
//! bijection and the pullback of sheaves.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::assumption::{assumption_r, RPiece};
use crate::kgroups::{
    expect_basis, rep_std_in_simple, sheaf_simple_in_std, Basis, BasisChange, KElement, KError, PadicElement,
    RealBlock, RealElement,
};
use crate::multiseg::{weight_of, MultisegError, Multisegment, Segment, WeightFunction};
use crate::order::open_orbit;
use crate::point::Point;
use crate::vogan::orbit_dimension;
use crate::weyl::kl::sign;
use crate::weyl::{parabolic_from, DoubleCoset, ParabolicSet, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComparisonError {
    #[error("weight function {0} does not satisfy the unimodality assumption")]
    Assumption(String),
    #[error("weight function {0} spans several ℤ-cosets; compare one integral piece at a time")]
    NotIntegral(String),
    #[error("e_L − e_R = {0} is not an integer")]
    Shift(Point),
    #[error("min λ_L = {min_l} is not above max λ_R + 1 = {bound}: apply a determinant twist first")]
    NotApart { min_l: Point, bound: Point },
    #[error("entry {i}: λ_L = {l} is below (wλ_R) = {r}")]
    Hypothesis { i: usize, l: Point, r: Point },
    #[error(transparent)]
    K(#[from] KError),
    #[error(transparent)]
    Multiseg(#[from] MultisegError),
}

fn single_piece(phi: &WeightFunction) -> Result<RPiece, ComparisonError> {
    if !phi.is_integral() {
        return Err(ComparisonError::NotIntegral(phi.to_string()));
    }
    let mut pieces = assumption_r(phi).ok_or_else(|| ComparisonError::Assumption(phi.to_string()))?;
    pieces.pop().ok_or_else(|| ComparisonError::Assumption(phi.to_string()))
}

/// `τ(λ) = −w₀λ`: negate and reverse.
pub fn tau(lambda: &[Point]) -> Vec<Point> {
    lambda.iter().rev().map(|&p| -p).collect()
}

/// Block sizes of the runs of equal entries of a dominant sequence.
pub fn levi_composition(lambda: &[Point]) -> Result<Vec<usize>, ComparisonError> {
    Ok(parabolic_from(lambda).map_err(KError::from)?.composition())
}

/// Left composition from the increments of `φ` below `r` (ascending),
/// right composition from its decrements above `r` (descending points).
pub fn parabolics_from_weight(phi: &WeightFunction) -> Result<(Vec<usize>, Vec<usize>), ComparisonError> {
    let piece = single_piece(phi)?;
    let lo_support = phi.support().next().expect("nonempty");
    let hi_support = phi.support().last().expect("nonempty");
    let mut left = Vec::new();
    let mut p = lo_support;
    while p <= piece.lo {
        let inc = phi.get(p) as i64 - phi.get(p.pred()) as i64;
        if inc > 0 {
            left.push(inc as usize);
        }
        p = p.succ();
    }
    let mut right = Vec::new();
    let mut p = hi_support;
    while p >= piece.hi {
        let dec = phi.get(p) as i64 - phi.get(p.succ()) as i64;
        if dec > 0 {
            right.push(dec as usize);
        }
        p = p.pred();
    }
    Ok((left, right))
}

/// Open-orbit segments ordered by right endpoint descending, then left
/// endpoint ascending.
fn open_segments(phi: &WeightFunction) -> Vec<Segment> {
    let mut segs = open_orbit(phi).segments().to_vec();
    segs.sort_by(|s, t| t.b().cmp(&s.b()).then(s.a().cmp(&t.a())));
    segs
}

/// `λ_L = (b_i + e_L)`, `λ_R = (a_n + e_R, …, a_1 + e_R)` from the open orbit
/// `Σ [a_i, b_i]` ordered with larger right endpoints first.
pub fn infchar_from_weight(phi: &WeightFunction, e_l: Point, e_r: Point) -> Result<RealBlock, ComparisonError> {
    let diff = e_l - e_r;
    if !diff.is_integer() {
        return Err(ComparisonError::Shift(diff));
    }
    if phi.is_empty() {
        return Ok(RealBlock::new(Vec::new(), Vec::new())?);
    }
    let piece = single_piece(phi)?;
    let segs = open_segments(phi);
    debug_assert_eq!(segs.len(), piece.n as usize);
    let lambda_l: Vec<Point> = segs.iter().map(|s| s.b() + e_l).collect();
    let lambda_r: Vec<Point> = segs.iter().rev().map(|s| s.a() + e_r).collect();
    Ok(RealBlock::new(lambda_l, lambda_r)?)
}

/// Mass, minimal multisegment and weight of the block under `Γ`.
pub fn block_data_from_infchar(block: &RealBlock) -> Result<(u64, Multisegment, WeightFunction), ComparisonError> {
    if block.n() == 0 {
        return Ok((0, Multisegment::empty(), WeightFunction::new()));
    }
    let min_l = *block.lambda_l().iter().min().expect("nonempty");
    let max_r = *block.lambda_r().iter().max().expect("nonempty");
    if min_l <= max_r.succ() {
        return Err(ComparisonError::NotApart {
            min_l,
            bound: max_r.succ(),
        });
    }
    let m: i64 = block
        .lambda_l()
        .iter()
        .zip(block.lambda_r())
        .map(|(l, r)| (*l - *r).value().to_integer())
        .sum();
    let bm = gamma_perm(block, &Permutation::identity(block.n()))?;
    let phi = weight_of(&bm);
    Ok((m as u64, bm, phi))
}

/// `Σ_i [(wλ_R)_i + ½, λ_{L,i} − ½]` for one permutation `w`.
pub fn gamma_perm(block: &RealBlock, w: &Permutation) -> Result<Multisegment, ComparisonError> {
    let wr = w.act(block.lambda_r());
    let half = Point::half();
    let mut segs = Vec::new();
    for (i, (&l, &r)) in block.lambda_l().iter().zip(&wr).enumerate() {
        if l <= r {
            return Err(ComparisonError::Hypothesis { i, l, r });
        }
        let (a, b) = (r + half, l - half);
        if a == b.succ() {
            continue;
        }
        segs.push(Segment::new(a, b)?);
    }
    Ok(Multisegment::new(segs))
}

/// `Γ(X(λ_L, wλ_R)) = X_{bm(w)}`; both extreme representatives of the
/// double coset must agree.
pub fn gamma_std(block: &RealBlock, w: &DoubleCoset) -> Result<Multisegment, ComparisonError> {
    let lo = gamma_perm(block, &w.w_min)?;
    let hi = gamma_perm(block, &w.w_max)?;
    assert_eq!(lo, hi, "Γ depends on the representative of {w}");
    Ok(lo)
}

/// `Γ` extended linearly to standard classes.
pub fn gamma_element(block: &RealBlock, x: &RealElement) -> Result<PadicElement, ComparisonError> {
    expect_basis(x, Basis::RealStd)?;
    let mut out = KElement::zero(Basis::PadicStd);
    for (w, c) in x.terms() {
        out.add_term(gamma_std(block, w)?, c);
    }
    Ok(out)
}

/// A `GL_n(ℂ)` block matched with the full-rank part of `E_φ` for an
/// integral weight function `φ`.
#[derive(Clone, Debug)]
pub struct ComparisonBlock {
    pub phi: WeightFunction,
    pub r: Point,
    pub n: usize,
    pub p_l: ParabolicSet,
    pub p_r: ParabolicSet,
    pub real: RealBlock,
    pub m: u64,
    pub bm: Multisegment,
    // left endpoints in λ_R order and right endpoints in λ_L order
    lefts: Vec<Point>,
    rights: Vec<Point>,
    forward: BTreeMap<DoubleCoset, Multisegment>,
    backward: BTreeMap<Multisegment, DoubleCoset>,
}

impl ComparisonBlock {
    /// The block with `e_L = ½`, `e_R = −½`, where `Γ` lands exactly in `E_φ`.
    pub fn new(phi: &WeightFunction) -> Result<Self, ComparisonError> {
        ComparisonBlock::with_shifts(phi, Point::half(), -Point::half())
    }

    pub fn with_shifts(phi: &WeightFunction, e_l: Point, e_r: Point) -> Result<Self, ComparisonError> {
        let piece = single_piece(phi)?;
        let real = infchar_from_weight(phi, e_l, e_r)?;
        let (left, right) = parabolics_from_weight(phi)?;
        let p_l = ParabolicSet::from_composition(&left);
        let p_r = ParabolicSet::from_composition(&right);
        debug_assert_eq!(left, levi_composition(&tau(real.lambda_r()))?);
        debug_assert_eq!(right, levi_composition(real.lambda_l())?);
        let segs = open_segments(phi);
        let rights: Vec<Point> = segs.iter().map(Segment::b).collect();
        let lefts: Vec<Point> = segs.iter().rev().map(Segment::a).collect();
        let mut block = ComparisonBlock {
            phi: phi.clone(),
            r: piece.r,
            n: piece.n as usize,
            p_l,
            p_r,
            real,
            m: phi.mass(),
            bm: Multisegment::empty(),
            lefts,
            rights,
            forward: BTreeMap::new(),
            backward: BTreeMap::new(),
        };
        for c in block.real.cosets().to_vec() {
            let m = block.matching(&c.w_min);
            debug_assert_eq!(m, block.matching(&c.w_max));
            block.backward.insert(m.clone(), c.clone());
            block.forward.insert(c, m);
        }
        block.bm = block.matching(&Permutation::identity(block.n));
        Ok(block)
    }

    // Σ_i [a_{w⁻¹(i)}, b_i]
    fn matching(&self, w: &Permutation) -> Multisegment {
        let a = w.act(&self.lefts);
        Multisegment::new(
            a.iter()
                .zip(&self.rights)
                .map(|(&a, &b)| Segment::new(a, b).expect("full-rank segment"))
                .collect(),
        )
    }

    pub fn cosets(&self) -> &[DoubleCoset] {
        self.real.cosets()
    }

    /// `w ↦ bm(w)`.
    pub fn zeta_orbit(&self, w: &DoubleCoset) -> Result<Multisegment, ComparisonError> {
        self.forward
            .get(w)
            .cloned()
            .ok_or_else(|| KError::Block(w.label()).into())
    }

    /// The double coset of a full-rank multisegment; `None` otherwise.
    pub fn zeta_orbit_inv(&self, m: &Multisegment) -> Option<DoubleCoset> {
        self.backward.get(m).cloned()
    }

    /// Full-rank multisegments, in the order of [`Self::cosets`].
    pub fn full_rank_orbits(&self) -> Vec<Multisegment> {
        self.cosets().iter().map(|c| self.forward[c].clone()).collect()
    }

    /// `(−1)^{dim O_{bm(w)} + dim Z_w}`.
    pub fn transport_sign(&self, w: &DoubleCoset) -> i64 {
        sign((orbit_dimension(&self.forward[w]) + self.real.dim(w)) as usize)
    }

    fn check_weight(&self, m: &Multisegment) -> Result<(), ComparisonError> {
        if weight_of(m) != self.phi {
            return Err(KError::Block(m.to_string()).into());
        }
        Ok(())
    }

    /// `ι*`: full-rank standard (or simple) sheaves go to the matching
    /// double-coset sheaves with sign `(−1)^{dim O + dim Z}`; the rest to 0.
    pub fn zeta_pullback(&self, f: &PadicElement) -> Result<RealElement, ComparisonError> {
        let basis = match f.basis() {
            Basis::SheafStdPadic => Basis::SheafStdReal,
            Basis::SheafSimplePadic => Basis::SheafSimpleReal,
            got => {
                return Err(KError::Basis {
                    want: Basis::SheafStdPadic,
                    got,
                }
                .into())
            }
        };
        let mut out = KElement::zero(basis);
        for (m, c) in f.terms() {
            self.check_weight(m)?;
            if let Some(w) = self.zeta_orbit_inv(m) {
                let s = self.transport_sign(&w);
                out.add_term(w, s * c);
            }
        }
        Ok(out)
    }

    /// `Γ` on standard classes of this block.
    pub fn gamma(&self, x: &RealElement) -> Result<PadicElement, ComparisonError> {
        expect_basis(x, Basis::RealStd)?;
        x.map_linear(Basis::PadicStd, |w| {
            Ok(KElement::single(
                Basis::PadicStd,
                self.forward.get(w).cloned().ok_or_else(|| KError::Block(w.label()))?,
            ))
        })
        .map_err(Into::into)
    }

    fn transport(
        &self,
        change: &BasisChange<DoubleCoset>,
        from: Basis,
        to: Basis,
        signed: bool,
    ) -> BasisChange<Multisegment> {
        let labels: Vec<Multisegment> = change.labels.iter().map(|c| self.forward[c].clone()).collect();
        let eps: Vec<i64> = change
            .labels
            .iter()
            .map(|c| if signed { self.transport_sign(c) } else { 1 })
            .collect();
        let rows = change
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, &x)| eps[i] * eps[j] * x).collect())
            .collect();
        BasisChange { from, to, labels, rows }
    }

    /// Simple perverse sheaves on full-rank orbits in standard sheaves,
    /// transported through the orbit bijection.
    pub fn padic_sheaf_simple_in_std(&self) -> BasisChange<Multisegment> {
        self.transport(
            &sheaf_simple_in_std(&self.real),
            Basis::SheafSimplePadic,
            Basis::SheafStdPadic,
            true,
        )
    }

    /// Full-rank standard representations in simples, through `Γ`.
    pub fn padic_rep_std_in_simple(&self) -> BasisChange<Multisegment> {
        self.transport(
            &rep_std_in_simple(&self.real),
            Basis::PadicStd,
            Basis::PadicSimple,
            false,
        )
    }

    /// Serializable description of the whole block.
    pub fn dump(&self) -> BlockDump {
        let entries = self
            .cosets()
            .iter()
            .map(|c| {
                let m = self.forward[c].clone();
                let dim_orbit = orbit_dimension(&m);
                let dim_z = self.real.dim(c);
                BlockEntry {
                    coset: c.label(),
                    w_min: c.w_min.to_string(),
                    w_max: c.w_max.to_string(),
                    multisegment: m.to_string(),
                    dim_orbit,
                    dim_z,
                    sign: sign((dim_orbit + dim_z) as usize),
                }
            })
            .collect();
        BlockDump {
            phi: self.phi.clone(),
            r: self.r,
            n: self.n,
            p_l: self.p_l.composition(),
            p_r: self.p_r.composition(),
            lambda_l: self.real.lambda_l().to_vec(),
            lambda_r: self.real.lambda_r().to_vec(),
            m: self.m,
            bm: self.bm.to_string(),
            entries,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockEntry {
    pub coset: String,
    pub w_min: String,
    pub w_max: String,
    pub multisegment: String,
    pub dim_orbit: u64,
    pub dim_z: u64,
    pub sign: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockDump {
    pub phi: WeightFunction,
    pub r: Point,
    pub n: usize,
    pub p_l: Vec<usize>,
    pub p_r: Vec<usize>,
    pub lambda_l: Vec<Point>,
    pub lambda_r: Vec<Point>,
    pub m: u64,
    pub bm: String,
    pub entries: Vec<BlockEntry>,
}

/// One comparison block per integral piece of `φ`.
pub fn comparison_blocks(phi: &WeightFunction) -> Result<Vec<ComparisonBlock>, ComparisonError> {
    phi.integral_pieces().iter().map(ComparisonBlock::new).collect()
}
