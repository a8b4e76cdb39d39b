//! Grothendieck-group elements over tagged bases, the Langlands pairings,
//! standard/simple change of basis, and partial BZ derivatives.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::linalg::Matrix;
use crate::multiseg::{weight_of, Multisegment, Segment, WeightFunction};
use crate::point::Point;
use crate::vogan::orbit_dimension;
use crate::weyl::kl::{kl_poly, sign};
use crate::weyl::parabolic::{check_dominant, dim_z, double_cosets, DoubleCoset, ParabolicError, ParabolicSet};
use crate::weyl::{parabolic_from, Permutation};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KError {
    #[error("expected basis {want:?}, found {got:?}")]
    Basis { want: Basis, got: Basis },
    #[error("label {0} does not belong to this block")]
    Block(String),
    #[error("outside comparison range: {0:?}")]
    OutsideComparisonRange(Vec<String>),
    #[error("real block: {0}")]
    RealBlock(String),
    #[error(transparent)]
    Parabolic(#[from] ParabolicError),
}

/// Which of the eight bases a [`KElement`] is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, serde::Deserialize)]
pub enum Basis {
    RealStd,
    RealSimple,
    PadicStd,
    PadicSimple,
    SheafStdReal,
    SheafSimpleReal,
    SheafStdPadic,
    SheafSimplePadic,
}

impl Basis {
    pub fn is_sheaf(self) -> bool {
        matches!(
            self,
            Basis::SheafStdReal | Basis::SheafSimpleReal | Basis::SheafStdPadic | Basis::SheafSimplePadic
        )
    }

    pub fn is_standard(self) -> bool {
        matches!(
            self,
            Basis::RealStd | Basis::PadicStd | Basis::SheafStdReal | Basis::SheafStdPadic
        )
    }
}

/// A finitely supported integer combination of basis labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KElement<L: Ord> {
    basis: Basis,
    terms: BTreeMap<L, i64>,
}

pub type RealElement = KElement<DoubleCoset>;
pub type PadicElement = KElement<Multisegment>;

impl<L: Ord + Clone> KElement<L> {
    pub fn zero(basis: Basis) -> Self {
        KElement {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(basis: Basis, label: L) -> Self {
        let mut e = KElement::zero(basis);
        e.add_term(label, 1);
        e
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (L, i64)>) -> Self {
        let mut e = KElement::zero(basis);
        for (l, c) in terms {
            e.add_term(l, c);
        }
        e
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn add_term(&mut self, label: L, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(label.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&label);
        }
    }

    pub fn coeff(&self, label: &L) -> i64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&L, i64)> + '_ {
        self.terms.iter().map(|(l, c)| (l, *c))
    }

    pub fn labels(&self) -> impl Iterator<Item = &L> + '_ {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn plus(&self, other: &KElement<L>) -> Result<KElement<L>, KError> {
        expect_basis(other, self.basis)?;
        let mut out = self.clone();
        for (l, c) in other.terms() {
            out.add_term(l.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> KElement<L> {
        KElement::from_terms(self.basis, self.terms().map(|(l, c)| (l.clone(), c * k)))
    }

    /// Same coefficients over another basis tag.
    pub fn retag(&self, basis: Basis) -> KElement<L> {
        KElement {
            basis,
            terms: self.terms.clone(),
        }
    }

    /// Linear extension of a map on labels.
    pub fn map_linear<M: Ord + Clone>(
        &self,
        basis: Basis,
        mut f: impl FnMut(&L) -> Result<KElement<M>, KError>,
    ) -> Result<KElement<M>, KError> {
        let mut out = KElement::zero(basis);
        for (l, c) in self.terms() {
            let img = f(l)?;
            for (m, d) in img.terms() {
                out.add_term(m.clone(), c * d);
            }
        }
        Ok(out)
    }
}

pub fn expect_basis<L: Ord>(e: &KElement<L>, want: Basis) -> Result<(), KError> {
    if e.basis != want {
        return Err(KError::Basis { want, got: e.basis });
    }
    Ok(())
}

impl<L: Ord + Serialize> Serialize for KElement<L> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a, L> {
            basis: Basis,
            terms: Vec<(&'a L, i64)>,
        }
        Raw {
            basis: self.basis,
            terms: self.terms.iter().map(|(l, c)| (l, *c)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for PadicElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            basis: Basis,
            terms: Vec<(Multisegment, i64)>,
        }
        let raw = Raw::deserialize(d)?;
        Ok(KElement::from_terms(raw.basis, raw.terms))
    }
}

impl<L: Ord + fmt::Display> fmt::Display for KElement<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, c)| match c {
                1 => format!("{l}"),
                -1 => format!("-{l}"),
                _ => format!("{c}·{l}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A block `{X(λ_L, wλ_R)}` of `GL_n(ℂ)` with integral infinitesimal
/// character, labelled by `W(λ_L) \ S_n / W(λ_R)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealBlock {
    lambda_l: Vec<Point>,
    lambda_r: Vec<Point>,
    #[serde(skip)]
    j: ParabolicSet,
    #[serde(skip)]
    k: ParabolicSet,
    #[serde(skip)]
    cosets: Vec<DoubleCoset>,
}

impl RealBlock {
    /// Both sequences must be dominant, of equal length, with all entries
    /// in a single ℤ-coset.
    pub fn new(lambda_l: Vec<Point>, lambda_r: Vec<Point>) -> Result<Self, KError> {
        if lambda_l.len() != lambda_r.len() {
            return Err(KError::RealBlock(format!(
                "λ_L has {} entries, λ_R has {}",
                lambda_l.len(),
                lambda_r.len()
            )));
        }
        if let Some(first) = lambda_l.first() {
            if lambda_l.iter().chain(&lambda_r).any(|p| !p.same_coset(*first)) {
                return Err(KError::RealBlock(
                    "entries of λ_L and λ_R must differ by integers".into(),
                ));
            }
        }
        check_dominant(&lambda_l)?;
        check_dominant(&lambda_r)?;
        let j = parabolic_from(&lambda_l)?;
        let k = parabolic_from(&lambda_r)?;
        let cosets = double_cosets(&j, &k)?;
        Ok(RealBlock {
            lambda_l,
            lambda_r,
            j,
            k,
            cosets,
        })
    }

    pub fn ints(l: &[i64], r: &[i64]) -> Result<Self, KError> {
        RealBlock::new(
            l.iter().map(|&x| Point::int(x)).collect(),
            r.iter().map(|&x| Point::int(x)).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.lambda_l.len()
    }

    pub fn lambda_l(&self) -> &[Point] {
        &self.lambda_l
    }

    pub fn lambda_r(&self) -> &[Point] {
        &self.lambda_r
    }

    pub fn j(&self) -> &ParabolicSet {
        &self.j
    }

    pub fn k(&self) -> &ParabolicSet {
        &self.k
    }

    pub fn is_regular(&self) -> bool {
        self.j.simples().next().is_none() && self.k.simples().next().is_none()
    }

    /// Basis labels, ordered by minimal representative.
    pub fn cosets(&self) -> &[DoubleCoset] {
        &self.cosets
    }

    pub fn label_of(&self, w: &Permutation) -> Result<DoubleCoset, KError> {
        Ok(DoubleCoset::of(&self.j, &self.k, w)?)
    }

    pub fn contains(&self, c: &DoubleCoset) -> bool {
        c.j == self.j && c.k == self.k
    }

    fn check(&self, c: &DoubleCoset) -> Result<(), KError> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(KError::Block(c.label()))
        }
    }

    /// `dim Z_c`.
    pub fn dim(&self, c: &DoubleCoset) -> u64 {
        dim_z(c)
    }

    pub fn standard(&self, w: &Permutation) -> Result<RealElement, KError> {
        Ok(KElement::single(Basis::RealStd, self.label_of(w)?))
    }
}

impl fmt::Display for RealBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[Point]| v.iter().map(Point::to_string).collect::<Vec<_>>().join(",");
        write!(f, "(λ_L=({}), λ_R=({}))", show(&self.lambda_l), show(&self.lambda_r))
    }
}

/// Change-of-basis matrix: row `i` expands `from`-basis element `labels[i]`
/// in the `to` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange<L> {
    pub from: Basis,
    pub to: Basis,
    pub labels: Vec<L>,
    pub rows: Vec<Vec<i64>>,
}

impl<L: Ord + Clone + fmt::Display> BasisChange<L> {
    fn index(&self, l: &L) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }

    pub fn apply(&self, e: &KElement<L>) -> Result<KElement<L>, KError> {
        expect_basis(e, self.from)?;
        let missing: Vec<String> = e
            .labels()
            .filter(|l| self.index(l).is_none())
            .map(|l| l.to_string())
            .collect();
        if !missing.is_empty() {
            return Err(KError::OutsideComparisonRange(missing));
        }
        e.map_linear(self.to, |l| {
            let i = self.index(l).expect("checked above");
            Ok(KElement::from_terms(
                self.to,
                self.labels.iter().cloned().zip(self.rows[i].iter().copied()),
            ))
        })
    }

    /// The inverse change, `to → from`.
    pub fn inverse(&self) -> BasisChange<L> {
        BasisChange {
            from: self.to,
            to: self.from,
            labels: self.labels.clone(),
            rows: int_inverse(&self.rows),
        }
    }

    /// Rows of the matrix, one per label, as CSV with a header of labels.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec![format!("{:?}\\{:?}", self.from, self.to)];
        header.extend(self.labels.iter().map(|l| l.to_string()));
        w.write_record(&header).expect("in-memory write");
        for (l, row) in self.labels.iter().zip(&self.rows) {
            let mut rec = vec![l.to_string()];
            rec.extend(row.iter().map(i64::to_string));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

/// Exact inverse of an integer matrix known to be invertible over ℤ.
pub fn int_inverse(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
            .collect(),
    )
    .expect("square");
    let inv = m.inverse().expect("unimodular matrix");
    inv.to_rows()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| {
                    assert!(x.is_integer(), "inverse is not integral");
                    x.to_integer()
                })
                .collect()
        })
        .collect()
}

/// `L_b = Σ_D (−1)^{d_b − d_D} P_{D⁺, b⁺}(1) M_D`, with `⁺` the longest
/// representative.
pub fn sheaf_simple_in_std(block: &RealBlock) -> BasisChange<DoubleCoset> {
    let labels = block.cosets().to_vec();
    let rows = labels
        .iter()
        .map(|b| {
            labels
                .iter()
                .map(|d| {
                    let p = kl_poly(&d.w_max, &b.w_max).at_one();
                    sign((block.dim(b) + block.dim(d)) as usize) * p
                })
                .collect()
        })
        .collect();
    BasisChange {
        from: Basis::SheafSimpleReal,
        to: Basis::SheafStdReal,
        labels,
        rows,
    }
}

/// Standard representations in terms of simples, forced by the pairing:
/// `A = D Sᵀ D` with `S` from [`sheaf_simple_in_std`] and
/// `D = diag((−1)^{dim Z})`.
pub fn rep_std_in_simple(block: &RealBlock) -> BasisChange<DoubleCoset> {
    let s = sheaf_simple_in_std(block);
    let d: Vec<i64> = s.labels.iter().map(|c| sign(block.dim(c) as usize)).collect();
    let n = s.labels.len();
    let rows = (0..n)
        .map(|a| (0..n).map(|b| d[a] * s.rows[b][a] * d[b]).collect())
        .collect();
    BasisChange {
        from: Basis::RealStd,
        to: Basis::RealSimple,
        labels: s.labels,
        rows,
    }
}

pub fn rep_simple_in_std(block: &RealBlock) -> BasisChange<DoubleCoset> {
    rep_std_in_simple(block).inverse()
}

pub fn sheaf_std_in_simple(block: &RealBlock) -> BasisChange<DoubleCoset> {
    sheaf_simple_in_std(block).inverse()
}

fn to_std(block: &RealBlock, e: &RealElement) -> Result<RealElement, KError> {
    match e.basis() {
        Basis::RealStd | Basis::SheafStdReal => Ok(e.clone()),
        Basis::RealSimple => rep_simple_in_std(block).apply(e),
        Basis::SheafSimpleReal => sheaf_simple_in_std(block).apply(e),
        other => Err(KError::Basis {
            want: Basis::RealStd,
            got: other,
        }),
    }
}

/// `⟨X_a, M_b⟩ = (−1)^{dim Z_b} δ_{a,b}`, extended bilinearly; simple
/// elements are first rewritten in standards.
pub fn pairing_real(block: &RealBlock, rep: &RealElement, sheaf: &RealElement) -> Result<i64, KError> {
    if rep.basis().is_sheaf() || !sheaf.basis().is_sheaf() {
        return Err(KError::Basis {
            want: Basis::RealStd,
            got: rep.basis(),
        });
    }
    for l in rep.labels().chain(sheaf.labels()) {
        block.check(l)?;
    }
    let x = to_std(block, rep)?;
    let m = to_std(block, sheaf)?;
    Ok(x.terms()
        .map(|(a, c)| c * m.coeff(a) * sign(block.dim(a) as usize))
        .sum())
}

/// `⟨X_m, M_n⟩ = (−1)^{dim O_n} δ_{m,n}` (also for simple/simple pairs).
pub fn pairing_padic(rep: &PadicElement, sheaf: &PadicElement) -> Result<i64, KError> {
    let ok = matches!(
        (rep.basis(), sheaf.basis()),
        (Basis::PadicStd, Basis::SheafStdPadic) | (Basis::PadicSimple, Basis::SheafSimplePadic)
    );
    if !ok {
        return Err(KError::Basis {
            want: if rep.basis() == Basis::PadicStd {
                Basis::SheafStdPadic
            } else {
                Basis::SheafSimplePadic
            },
            got: sheaf.basis(),
        });
    }
    Ok(rep
        .terms()
        .map(|(m, c)| c * sheaf.coeff(m) * sign(orbit_dimension(m) as usize))
        .sum())
}

/// `X_{m₁} · X_{m₂} = X_{m₁ + m₂}`.
pub fn multiply_standards(a: &PadicElement, b: &PadicElement) -> Result<PadicElement, KError> {
    expect_basis(a, Basis::PadicStd)?;
    expect_basis(b, Basis::PadicStd)?;
    let mut out = KElement::zero(Basis::PadicStd);
    for (x, c) in a.terms() {
        for (y, d) in b.terms() {
            out.add_term(x.sum(y), c * d);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Image of one generator `St_s` under the derivative: `St_s` plus an
/// optional shortened term (`None` inside means the unit).
fn derive_segment(side: Side, k: Point, s: &Segment) -> Option<Option<Segment>> {
    match side {
        Side::Left if s.b() == k => Some((s.a() < s.b()).then(|| Segment::new(s.a(), k.pred()).expect("shorter"))),
        Side::Right if s.a() == k => Some((s.a() < s.b()).then(|| Segment::new(k.succ(), s.b()).expect("shorter"))),
        _ => None,
    }
}

/// `^k𝒟` (left) or `𝒟^k` (right), as ring endomorphisms on standards.
///
/// Left: `St_{[a,k]} ↦ St_{[a,k]} + St_{[a,k−1]}`, `St_{[k]} ↦ St_{[k]} + 1`.
/// Right: `St_{[k,b]} ↦ St_{[k,b]} + St_{[k+1,b]}`, `St_{[k]} ↦ St_{[k]} + 1`.
pub fn bz_derivative(side: Side, k: Point, e: &PadicElement) -> Result<PadicElement, KError> {
    expect_basis(e, Basis::PadicStd)?;
    e.map_linear(Basis::PadicStd, |m| {
        let mut partial: BTreeMap<Vec<Segment>, i64> = BTreeMap::from([(Vec::new(), 1)]);
        for s in m.segments() {
            let mut next: BTreeMap<Vec<Segment>, i64> = BTreeMap::new();
            for (v, c) in &partial {
                let mut keep = v.clone();
                keep.push(*s);
                *next.entry(keep).or_insert(0) += c;
                if let Some(short) = derive_segment(side, k, s) {
                    let mut d = v.clone();
                    d.extend(short);
                    *next.entry(d).or_insert(0) += c;
                }
            }
            partial = next;
        }
        Ok(KElement::from_terms(
            Basis::PadicStd,
            partial.into_iter().map(|(v, c)| (Multisegment::new(v), c)),
        ))
    })
}

/// Keep exactly the labels of weight `phi`.
pub fn project_weight(e: &PadicElement, phi: &WeightFunction) -> PadicElement {
    KElement::from_terms(
        e.basis(),
        e.terms()
            .filter(|(m, _)| &weight_of(m) == phi)
            .map(|(m, c)| (m.clone(), c)),
    )
}
