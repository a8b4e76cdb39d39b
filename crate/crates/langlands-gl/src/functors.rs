//! Translation functors through coherent families, Weyl group actions on
//! both sides of the pairing, push-pull functors, and the verifier for the
//! square relating partial BZ derivatives and translation.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::comparison::{ComparisonBlock, ComparisonError};
use crate::kgroups::{
    bz_derivative, expect_basis, pairing_real, project_weight, Basis, KElement, KError, PadicElement, RealBlock,
    RealElement, Side,
};
use crate::multiseg::{Dualize, Multisegment, WeightFunction};
use crate::point::Point;
use crate::weyl::kl::sign;
use crate::weyl::{dim_z, double_cosets, DoubleCoset, HeckeElement, ParabolicSet, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctorError {
    #[error("invalid translation datum: {0}")]
    Datum(String),
    #[error("the Weyl group action is only defined on regular blocks")]
    Singular,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    K(#[from] KError),
    #[error(transparent)]
    Comparison(#[from] ComparisonError),
}

/// How the target block of a datum arises from the source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DatumKind {
    /// `λ_L′ = λ_L − (e_j + ⋯ + e_{j+c−1})` (left) or
    /// `λ_R′ = λ_R + (e_j + ⋯ + e_{j+c−1})` (right), 1-based `j`.
    Step { side: Side, j: usize, c: usize },
    /// Any pair of dominant blocks with integral difference.
    General,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslationDatum {
    pub source: RealBlock,
    pub target: RealBlock,
    pub kind: DatumKind,
}

fn points_diff(a: &[Point], b: &[Point]) -> Result<Vec<i64>, FunctorError> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = *x - *y;
            if d.is_integer() {
                Ok(d.value().to_integer())
            } else {
                Err(FunctorError::Datum(format!("{x} − {y} is not an integer")))
            }
        })
        .collect()
}

impl TranslationDatum {
    /// Decrement positions `j..j+c−1` of `λ_L`, which must end a maximal
    /// run of equal entries.
    pub fn decrement_left(source: &RealBlock, j: usize, c: usize) -> Result<Self, FunctorError> {
        let l = source.lambda_l();
        let n = l.len();
        if j == 0 || c == 0 || j + c - 1 > n {
            return Err(FunctorError::Datum(format!(
                "positions {j}..{} out of range",
                j + c - 1
            )));
        }
        let run = &l[j - 1..j + c - 1];
        if run.iter().any(|&x| x != run[0]) {
            return Err(FunctorError::Datum("decremented entries are not equal".into()));
        }
        if j + c - 1 < n && l[j + c - 1] >= run[0] {
            return Err(FunctorError::Datum("decremented entries do not end their run".into()));
        }
        let mut new_l = l.to_vec();
        for x in &mut new_l[j - 1..j + c - 1] {
            *x = x.pred();
        }
        Ok(TranslationDatum {
            source: source.clone(),
            target: RealBlock::new(new_l, source.lambda_r().to_vec())?,
            kind: DatumKind::Step { side: Side::Left, j, c },
        })
    }

    /// Increment positions `j..j+c−1` of `λ_R`, which must start a maximal
    /// run of equal entries.
    pub fn increment_right(source: &RealBlock, j: usize, c: usize) -> Result<Self, FunctorError> {
        let r = source.lambda_r();
        let n = r.len();
        if j == 0 || c == 0 || j + c - 1 > n {
            return Err(FunctorError::Datum(format!(
                "positions {j}..{} out of range",
                j + c - 1
            )));
        }
        let run = &r[j - 1..j + c - 1];
        if run.iter().any(|&x| x != run[0]) {
            return Err(FunctorError::Datum("incremented entries are not equal".into()));
        }
        if j > 1 && r[j - 2] <= run[0] {
            return Err(FunctorError::Datum("incremented entries do not start their run".into()));
        }
        let mut new_r = r.to_vec();
        for x in &mut new_r[j - 1..j + c - 1] {
            *x = x.succ();
        }
        Ok(TranslationDatum {
            source: source.clone(),
            target: RealBlock::new(source.lambda_l().to_vec(), new_r)?,
            kind: DatumKind::Step {
                side: Side::Right,
                j,
                c,
            },
        })
    }

    pub fn between(source: &RealBlock, target: &RealBlock) -> Result<Self, FunctorError> {
        if source.n() != target.n() {
            return Err(FunctorError::Datum("blocks of different rank".into()));
        }
        points_diff(target.lambda_l(), source.lambda_l())?;
        points_diff(target.lambda_r(), source.lambda_r())?;
        Ok(TranslationDatum {
            source: source.clone(),
            target: target.clone(),
            kind: DatumKind::General,
        })
    }

    pub fn reversed(&self) -> TranslationDatum {
        TranslationDatum {
            source: self.target.clone(),
            target: self.source.clone(),
            kind: DatumKind::General,
        }
    }
}

/// Double-coset label of `[X(a, b)] = [X(ua, ub)]` in `block`, for `a`, `b`
/// rearrangements of the block's `λ_L`, `λ_R`.
pub fn renormalize(block: &RealBlock, a: &[Point], b: &[Point]) -> Result<DoubleCoset, FunctorError> {
    let n = block.n();
    let mut used = vec![false; n];
    let mut pairs_left: Vec<(Point, Point)> = a.iter().copied().zip(b.iter().copied()).collect();
    let mut x = vec![0u8; n];
    // x(m) is a λ_L-position whose value pairs with λ_R,m.
    for (m, &rv) in block.lambda_r().iter().enumerate() {
        let idx = pairs_left
            .iter()
            .position(|&(_, bv)| bv == rv)
            .ok_or_else(|| FunctorError::Datum(format!("{rv} missing from the right sequence")))?;
        let (av, _) = pairs_left.swap_remove(idx);
        let p = (0..n)
            .find(|&p| !used[p] && block.lambda_l()[p] == av)
            .ok_or_else(|| FunctorError::Datum(format!("{av} missing from the left sequence")))?;
        used[p] = true;
        x[m] = p as u8;
    }
    Ok(block.label_of(&Permutation::from_images(x))?)
}

fn distinct_rearrangements(v: &[i64]) -> BTreeSet<Vec<i64>> {
    Permutation::all(v.len()).iter().map(|p| p.act(v)).collect()
}

fn is_minuscule(v: &[i64]) -> bool {
    match (v.iter().min(), v.iter().max()) {
        (Some(lo), Some(hi)) => hi - lo <= 1,
        _ => true,
    }
}

fn add(a: &[Point], d: &[i64]) -> Vec<Point> {
    a.iter().zip(d).map(|(x, k)| x.shift(*k)).collect()
}

fn sorted_desc(v: &[Point]) -> Vec<Point> {
    let mut s = v.to_vec();
    s.sort_by(|x, y| y.cmp(x));
    s
}

/// A pair `(ν_L, ν_R)` of weight sequences.
type WeightPair = (Vec<Point>, Vec<Point>);

/// Terms `(a, b)` of `T(X(λ_L, wλ_R))` before renormalization, via the
/// coherent family `Θ(ν) = X(ν_L, wν_R)`.
fn translate_terms(d: &TranslationDatum, w: &Permutation) -> Result<Vec<WeightPair>, FunctorError> {
    let (src, tgt) = (&d.source, &d.target);
    let mu_l = points_diff(tgt.lambda_l(), src.lambda_l())?;
    let mu_r = points_diff(tgt.lambda_r(), src.lambda_r())?;
    let theta = |nl: Vec<Point>, nr: &[Point]| (nl, w.act(nr));
    let mut out = Vec::new();
    if is_minuscule(&mu_l) && is_minuscule(&mu_r) {
        // F_μ has the W-orbit of μ as its weights, each with multiplicity one.
        let want_l = sorted_desc(tgt.lambda_l());
        let want_r = sorted_desc(tgt.lambda_r());
        for nl in distinct_rearrangements(&mu_l) {
            let a = add(src.lambda_l(), &nl);
            if sorted_desc(&a) != want_l {
                continue;
            }
            for nr in distinct_rearrangements(&mu_r) {
                let b = add(src.lambda_r(), &nr);
                if sorted_desc(&b) != want_r {
                    continue;
                }
                out.push(theta(a.clone(), &b));
            }
        }
        return Ok(out);
    }
    let (wl, wr) = (src.j(), src.k());
    let (ul, ur) = (tgt.j(), tgt.k());
    if ul.is_subset(wl) && ur.is_subset(wr) {
        // Σ_{s ∈ W_λ / W_λ ∩ W_μ} Θ(sμ)
        let mut seen = BTreeSet::new();
        for sl in wl.elements() {
            for sr in wr.elements() {
                let a = sl.act(tgt.lambda_l());
                let b = sr.act(tgt.lambda_r());
                if seen.insert((a.clone(), b.clone())) {
                    out.push(theta(a, &b));
                }
            }
        }
        Ok(out)
    } else if wl.is_subset(ul) && wr.is_subset(ur) {
        Ok(vec![theta(tgt.lambda_l().to_vec(), tgt.lambda_r())])
    } else {
        Err(FunctorError::Datum(
            "neither block lies in the closure of the other's facet".into(),
        ))
    }
}

fn translate_label(d: &TranslationDatum, w: &DoubleCoset) -> Result<RealElement, FunctorError> {
    let image = |rep: &Permutation| -> Result<RealElement, FunctorError> {
        let mut e = KElement::zero(Basis::RealStd);
        for (a, b) in translate_terms(d, rep)? {
            e.add_term(renormalize(&d.target, &a, &b)?, 1);
        }
        Ok(e)
    };
    let lo = image(&w.w_min)?;
    let hi = image(&w.w_max)?;
    assert_eq!(lo, hi, "translation depends on the representative of {w}");
    Ok(lo)
}

/// `T_{Λ}^{Λ′}` on standard classes of the source block.
pub fn translate(d: &TranslationDatum, x: &RealElement) -> Result<RealElement, FunctorError> {
    expect_basis(x, Basis::RealStd)?;
    for w in x.labels() {
        if !d.source.contains(w) {
            return Err(KError::Block(w.label()).into());
        }
    }
    Ok(x.map_linear(Basis::RealStd, |w| {
        translate_label(d, w).map_err(|e| KError::Block(e.to_string()))
    })?)
}

/// `Σ_{s ∈ W_{λL} / (W_{λL} ∩ W_{λL′})} X(λ_L′, s⁻¹wλ_R)` for a left step;
/// an independent expression of [`translate`] for such data.
pub fn translate_left_step_formula(d: &TranslationDatum, w: &DoubleCoset) -> Result<RealElement, FunctorError> {
    if !matches!(d.kind, DatumKind::Step { side: Side::Left, .. }) {
        return Err(FunctorError::Datum("not a left step".into()));
    }
    let wl = d.source.j();
    let q = wl.intersect(d.target.j());
    let mut reps: Vec<Permutation> = Vec::new();
    for s in wl.elements() {
        if !reps.iter().any(|t| q.elements().contains(&t.inverse().compose(&s))) {
            reps.push(s);
        }
    }
    let mut out = KElement::zero(Basis::RealStd);
    for s in reps {
        let x = s.inverse().compose(&w.w_min);
        out.add_term(d.target.label_of(&x)?, 1);
    }
    Ok(out)
}

/// Coherent continuation by `(w_L, w_R)` on a regular block:
/// `X_a ↦ X_{w_L a w_R⁻¹}`.
pub fn weyl_act(
    block: &RealBlock,
    w: (&Permutation, &Permutation),
    x: &RealElement,
) -> Result<RealElement, FunctorError> {
    if !block.is_regular() {
        return Err(FunctorError::Singular);
    }
    expect_basis(x, Basis::RealStd)?;
    let (wl, wr) = w;
    Ok(x.map_linear(Basis::RealStd, |a| {
        block
            .label_of(&wl.compose(&a.w_min).compose(&wr.inverse()))
            .map(|c| KElement::single(Basis::RealStd, c))
    })?)
}

/// Convolution action on standard sheaves of a regular block:
/// `M_b ↦ M_{w_L⁻¹ b w_R}`, computed in the Hecke algebra at `q = 1`.
pub fn convolve_act(
    block: &RealBlock,
    w: (&Permutation, &Permutation),
    f: &RealElement,
) -> Result<RealElement, FunctorError> {
    if !block.is_regular() {
        return Err(FunctorError::Singular);
    }
    expect_basis(f, Basis::SheafStdReal)?;
    let (wl, wr) = w;
    let left = HeckeElement::t(&wl.inverse());
    let right = HeckeElement::t(wr);
    let mut out = KElement::zero(Basis::SheafStdReal);
    for (b, c) in f.terms() {
        let prod = left
            .multiply(&HeckeElement::t(&b.w_min))
            .multiply(&right)
            .specialize_q1();
        for (y, k) in prod.terms() {
            out.add_term(block.label_of(y)?, c * k);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PushPullMode {
    /// Pairing-transpose of [`translate`].
    Adjoint,
    /// `π_* ∘ π′*` on standard sheaves.
    Direct,
}

/// `𝐈`: standard sheaves on the target block to standard sheaves on the
/// source block, adjoint to [`translate`] for the datum.
pub fn pushpull_with(d: &TranslationDatum, f: &RealElement, mode: PushPullMode) -> Result<RealElement, FunctorError> {
    expect_basis(f, Basis::SheafStdReal)?;
    for c in f.labels() {
        if !d.target.contains(c) {
            return Err(KError::Block(c.label()).into());
        }
    }
    match mode {
        PushPullMode::Adjoint => pushpull_adjoint(d, f),
        PushPullMode::Direct => pushpull_direct(d, f),
    }
}

/// Both modes, asserted equal.
pub fn pushpull(d: &TranslationDatum, f: &RealElement) -> Result<RealElement, FunctorError> {
    let a = pushpull_with(d, f, PushPullMode::Adjoint)?;
    let b = pushpull_with(d, f, PushPullMode::Direct)?;
    assert_eq!(a, b, "push-pull modes disagree on {f} for {} → {}", d.source, d.target);
    Ok(a)
}

fn pushpull_adjoint(d: &TranslationDatum, f: &RealElement) -> Result<RealElement, FunctorError> {
    let mut out = KElement::zero(Basis::SheafStdReal);
    for a in d.source.cosets() {
        let tx = translate(d, &KElement::single(Basis::RealStd, a.clone()))?;
        let p = pairing_real(&d.target, &tx, f)?;
        out.add_term(a.clone(), p * sign(d.source.dim(a) as usize));
    }
    Ok(out)
}

fn pushpull_direct(d: &TranslationDatum, f: &RealElement) -> Result<RealElement, FunctorError> {
    let (src, tgt) = (&d.source, &d.target);
    let q_l = src.j().intersect(tgt.j());
    let q_r = src.k().intersect(tgt.k());
    let q_order = q_l.order() * q_r.order();
    let src_order = src.j().order() * src.k().order();
    let q_cosets = double_cosets(&q_l, &q_r).map_err(KError::from)?;
    let mut out = KElement::zero(Basis::SheafStdReal);
    for (cp, coeff) in f.terms() {
        let d_cp = tgt.dim(cp);
        for dq in q_cosets.iter().filter(|dq| cp.contains(&dq.w_min)) {
            let c = src.label_of(&dq.w_min)?;
            let d_d = dim_z(dq);
            // χ_c of the fibre of D over C, counted by torus-fixed points
            let chi = dq.size() * src_order / (q_order * c.size());
            let s = sign((d_cp + d_d) as usize % 2) * sign((d_d + src.dim(&c)) as usize % 2);
            out.add_term(c, coeff * s * chi as i64);
        }
    }
    Ok(out)
}

/// Checks `T_λ^{λ′} = T_{λ″}^{λ′} ∘ T_λ^{λ″}` on every standard of the
/// `λ`-block.
pub fn factor_check(lambda: &RealBlock, lambda1: &RealBlock, lambda2: &RealBlock) -> Result<bool, FunctorError> {
    let direct = TranslationDatum::between(lambda, lambda1)?;
    let first = TranslationDatum::between(lambda, lambda2)?;
    let second = TranslationDatum::between(lambda2, lambda1)?;
    for a in lambda.cosets() {
        let x = KElement::single(Basis::RealStd, a.clone());
        if translate(&direct, &x)? != translate(&second, &translate(&first, &x)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `λ″ = λ + (e_1 + ⋯ + e_{j−1})` on the left sequence.
pub fn factor_middle(lambda: &RealBlock, j: usize) -> Result<RealBlock, FunctorError> {
    let mut l = lambda.lambda_l().to_vec();
    for x in l.iter_mut().take(j.saturating_sub(1)) {
        *x = x.succ();
    }
    Ok(RealBlock::new(l, lambda.lambda_r().to_vec())?)
}

/// Checks `T_λ^ν T_ν^λ = Σ_{w ∈ W_λ} w` on the standards of the regular
/// block `ν`.
pub fn composed_translation_identity(nu: &RealBlock, lambda: &RealBlock) -> Result<bool, FunctorError> {
    if !nu.is_regular() {
        return Err(FunctorError::Precondition("ν must be regular".into()));
    }
    let down = TranslationDatum::between(nu, lambda)?;
    let up = down.reversed();
    let wl = lambda.j().elements();
    let wr = lambda.k().elements();
    for a in nu.cosets() {
        let x = KElement::single(Basis::RealStd, a.clone());
        let lhs = translate(&up, &translate(&down, &x)?)?;
        let mut rhs = KElement::zero(Basis::RealStd);
        for ul in &wl {
            for ur in &wr {
                rhs = rhs.plus(&weyl_act(nu, (ul, ur), &x)?)?;
            }
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks `p^* p_* = Σ_{u ∈ W_λ} (−1)^{ℓ(u)} u·` as operators on standard
/// sheaves of the regular block `ν`.
pub fn conv_with_cw_check(nu: &RealBlock, lambda: &RealBlock) -> Result<bool, FunctorError> {
    let down = TranslationDatum::between(nu, lambda)?;
    let up = down.reversed();
    let wl = lambda.j().elements();
    let wr = lambda.k().elements();
    for b in nu.cosets() {
        let f = KElement::single(Basis::SheafStdReal, b.clone());
        let lhs = pushpull(&down, &pushpull(&up, &f)?)?;
        let mut rhs = KElement::zero(Basis::SheafStdReal);
        for ul in &wl {
            for ur in &wr {
                let s = sign(ul.length() + ur.length());
                rhs = rhs.plus(&convolve_act(nu, (ul, ur), &f)?.scale(s))?;
            }
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-label outcome of [`verify_main_diagram`].
#[derive(Clone, Debug, Serialize)]
pub struct LabelReport {
    pub label: String,
    pub multisegment: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MainDiagramReport {
    pub phi: WeightFunction,
    pub psi: WeightFunction,
    pub c: u32,
    pub k: Point,
    pub side: Side,
    pub n: usize,
    pub labels: Vec<LabelReport>,
    pub pass: bool,
}

/// `ψ = φ − c[k]` when it is admissible for the given side.
pub fn main_diagram_psi(phi: &WeightFunction, c: u32, k: Point, side: Side) -> Result<WeightFunction, FunctorError> {
    if !k.same_coset(phi.support().next().unwrap_or(k)) {
        return Err(FunctorError::Precondition(format!(
            "{k} is not in the coset of the support"
        )));
    }
    // The right case uses the smallest admissible r, the left case the
    // largest one, read off from the dual weight.
    let r_of = |w: &WeightFunction| -> Result<Point, ComparisonError> {
        Ok(match side {
            Side::Right => ComparisonBlock::new(w)?.r,
            Side::Left => -ComparisonBlock::new(&w.dualize())?.r,
        })
    };
    let r = r_of(phi)?;
    let (lo, hi) = (r - Point::half(), r + Point::half());
    let (ok, next) = match side {
        Side::Left => (k < lo, k.pred()),
        Side::Right => (k > hi, k.succ()),
    };
    if !ok {
        let rel = if side == Side::Right {
            format!("k > ⌈r⌉ = {hi}")
        } else {
            format!("k < ⌊r⌋ = {lo}")
        };
        return Err(FunctorError::Precondition(format!("need {rel}, got k = {k}")));
    }
    let room = phi.get(k) as i64 - phi.get(next) as i64;
    if c == 0 || c as i64 > room {
        return Err(FunctorError::Precondition(format!(
            "need 1 ≤ c ≤ φ({k}) − φ({next}) = {room}, got c = {c}"
        )));
    }
    let psi = phi
        .checked_sub(k, c)
        .ok_or_else(|| FunctorError::Precondition(format!("φ({k}) < {c}")))?;
    let r_psi = r_of(&psi).map_err(|e| FunctorError::Precondition(format!("ψ = {psi}: {e}")))?;
    if r_psi != r {
        return Err(FunctorError::Precondition(format!("ψ has r = {r_psi}, φ has r = {r}")));
    }
    Ok(psi)
}

// The right case in the block of `phi`; returns, per label, the
// multisegment, the derivative side and the translation side.
fn right_case(
    phi: &WeightFunction,
    psi: &WeightFunction,
    c: u32,
    k: Point,
    e_l: Point,
    e_r: Point,
) -> Result<Vec<(DoubleCoset, Multisegment, PadicElement)>, FunctorError> {
    let big = ComparisonBlock::with_shifts(phi, e_l, e_r)?;
    let small = ComparisonBlock::with_shifts(psi, e_l, e_r)?;
    let target_val = k + e_l;
    let l = big.real.lambda_l();
    let end = l
        .iter()
        .rposition(|&x| x == target_val)
        .ok_or_else(|| FunctorError::Precondition(format!("no right endpoint at {k}")))?;
    let j = end + 2 - c as usize;
    let datum = TranslationDatum::decrement_left(&big.real, j, c as usize)?;
    if datum.target != small.real {
        return Err(FunctorError::Precondition(format!(
            "ψ-block {} is not the step {} of the φ-block",
            small.real, datum.target
        )));
    }
    big.cosets()
        .par_iter()
        .map(|w| {
            let m = big.zeta_orbit(w)?;
            let t = translate(&datum, &KElement::single(Basis::RealStd, w.clone()))?;
            let rhs = small.gamma(&t)?;
            Ok((w.clone(), m, rhs))
        })
        .collect()
}

/// Checks `proj_ψ ∘ ^k𝒟 ∘ Γ = Γ′ ∘ T` on every standard of the `φ`-block
/// (right case), or the mirrored identity with `𝒟^k` on the left, where
/// the translation side is computed in the block of the dual weight.
pub fn verify_main_diagram(
    phi: &WeightFunction,
    c: u32,
    k: Point,
    e_l: Point,
    e_r: Point,
    side: Side,
) -> Result<MainDiagramReport, FunctorError> {
    let psi = main_diagram_psi(phi, c, k, side)?;
    let rows: Vec<(String, Multisegment, PadicElement, PadicElement)> = match side {
        Side::Right => right_case(phi, &psi, c, k, e_l, e_r)?
            .into_iter()
            .map(|(w, m, rhs)| {
                let lhs = project_weight(
                    &bz_derivative(Side::Left, k, &KElement::single(Basis::PadicStd, m.clone()))?,
                    &psi,
                );
                Ok((w.label(), m, lhs, rhs))
            })
            .collect::<Result<_, KError>>()?,
        Side::Left => right_case(&phi.dualize(), &psi.dualize(), c, -k, e_l, e_r)?
            .into_iter()
            .map(|(w, m_dual, rhs_dual)| {
                let m = m_dual.dualize();
                let lhs = project_weight(
                    &bz_derivative(Side::Right, k, &KElement::single(Basis::PadicStd, m.clone()))?,
                    &psi,
                );
                let rhs = KElement::from_terms(Basis::PadicStd, rhs_dual.terms().map(|(x, c)| (x.dualize(), c)));
                Ok((format!("{}*", w.label()), m, lhs, rhs))
            })
            .collect::<Result<_, KError>>()?,
    };
    let labels: Vec<LabelReport> = rows
        .into_iter()
        .map(|(label, m, lhs, rhs)| LabelReport {
            label,
            multisegment: m.to_string(),
            pass: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        })
        .collect();
    let n = ComparisonBlock::new(phi)?.n;
    Ok(MainDiagramReport {
        pass: labels.iter().all(|l| l.pass),
        phi: phi.clone(),
        psi,
        c,
        k,
        side,
        n,
        labels,
    })
}

/// Every `(c, k, side)` accepted by [`verify_main_diagram`] for `φ`.
pub fn admissible_main_data(phi: &WeightFunction) -> Vec<(u32, Point, Side)> {
    if ComparisonBlock::new(phi).is_err() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for k in phi.support() {
        for side in [Side::Right, Side::Left] {
            for c in 1..=phi.get(k) {
                if main_diagram_psi(phi, c, k, side).is_ok() {
                    out.push((c, k, side));
                }
            }
        }
    }
    out
}

/// `|W_λ / W_μ|` for nested parabolics.
pub fn coset_count(big: &ParabolicSet, small: &ParabolicSet) -> u64 {
    big.order() / small.order()
}
