//! Standard parabolic subgroups of `S_n` and their double cosets.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::perm::Permutation;
use crate::point::Point;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParabolicError {
    #[error("sequence is not dominant: entry {i} ({a}) is below entry {j} ({b}) in the same coset")]
    NotDominant { i: usize, j: usize, a: Point, b: Point },
    #[error("composition {0:?} does not sum to {1}")]
    BadComposition(Vec<usize>, usize),
    #[error("parabolics live in S_{0} and S_{1}")]
    RankMismatch(usize, usize),
}

/// A set of simple reflections `J ⊆ {s_0, …, s_{n−2}}` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParabolicSet {
    n: usize,
    simples: BTreeSet<usize>,
}

impl ParabolicSet {
    pub fn new(n: usize, simples: impl IntoIterator<Item = usize>) -> Self {
        ParabolicSet {
            n,
            simples: simples.into_iter().filter(|&i| i + 1 < n).collect(),
        }
    }

    pub fn borel(n: usize) -> Self {
        ParabolicSet::new(n, [])
    }

    pub fn full(n: usize) -> Self {
        ParabolicSet::new(n, 0..n.saturating_sub(1))
    }

    pub fn from_composition(c: &[usize]) -> Self {
        let n = c.iter().sum();
        let mut simples = Vec::new();
        let mut start = 0;
        for &k in c {
            simples.extend(start..start + k.saturating_sub(1));
            start += k;
        }
        ParabolicSet::new(n, simples)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn simples(&self) -> impl Iterator<Item = usize> + '_ {
        self.simples.iter().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.simples.contains(&i)
    }

    /// Block sizes, e.g. `(3,1,1,4)`.
    pub fn composition(&self) -> Vec<usize> {
        self.blocks().iter().map(|b| b.len()).collect()
    }

    /// Consecutive index ranges of the Levi blocks.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 0..self.n {
            if !self.contains(i) {
                out.push(start..i + 1);
                start = i + 1;
            }
        }
        out
    }

    /// Index of the block containing position `i`.
    pub fn block_of(&self, i: usize) -> usize {
        (0..i).filter(|&k| !self.contains(k)).count()
    }

    /// The longest element `w_J`: reverses each block.
    pub fn longest(&self) -> Permutation {
        let mut v: Vec<u8> = Vec::with_capacity(self.n);
        for b in self.blocks() {
            v.extend(b.rev().map(|x| x as u8));
        }
        Permutation::from_images(v)
    }

    /// All elements of `W_J`.
    pub fn elements(&self) -> Vec<Permutation> {
        Permutation::all(self.n)
            .into_iter()
            .filter(|w| (0..self.n).all(|i| self.block_of(w.apply(i)) == self.block_of(i)))
            .collect()
    }

    pub fn order(&self) -> u64 {
        self.composition().iter().map(|&k| factorial(k)).product()
    }

    pub fn intersect(&self, other: &ParabolicSet) -> ParabolicSet {
        ParabolicSet::new(self.n, self.simples.intersection(&other.simples).copied())
    }

    pub fn is_subset(&self, other: &ParabolicSet) -> bool {
        self.simples.is_subset(&other.simples)
    }
}

impl fmt::Display for ParabolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.composition().iter().map(usize::to_string).collect();
        write!(f, "({})", c.join(","))
    }
}

pub fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// `{s_i : λ_i = λ_{i+1}}` for `λ` dominant within each ℤ-coset.
pub fn parabolic_from(lambda: &[Point]) -> Result<ParabolicSet, ParabolicError> {
    check_dominant(lambda)?;
    Ok(ParabolicSet::new(
        lambda.len(),
        (0..lambda.len().saturating_sub(1)).filter(|&i| lambda[i] == lambda[i + 1]),
    ))
}

pub fn check_dominant(lambda: &[Point]) -> Result<(), ParabolicError> {
    for i in 0..lambda.len() {
        for j in i + 1..lambda.len() {
            if lambda[i].same_coset(lambda[j]) && lambda[i] < lambda[j] {
                return Err(ParabolicError::NotDominant {
                    i,
                    j,
                    a: lambda[i],
                    b: lambda[j],
                });
            }
        }
    }
    Ok(())
}

/// A double coset `W_J w W_K`, identified by its table
/// `N[p][q] = #{i in K-block q : w(i) in J-block p}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DoubleCoset {
    pub j: ParabolicSet,
    pub k: ParabolicSet,
    pub w_min: Permutation,
    pub w_max: Permutation,
    pub table: Vec<Vec<usize>>,
}

impl PartialOrd for DoubleCoset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DoubleCoset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.j, &self.k, &self.w_min).cmp(&(&other.j, &other.k, &other.w_min))
    }
}

pub fn coset_table(j: &ParabolicSet, k: &ParabolicSet, w: &Permutation) -> Vec<Vec<usize>> {
    let (nj, nk) = (j.blocks().len(), k.blocks().len());
    let mut t = vec![vec![0; nk]; nj];
    for i in 0..w.n() {
        t[j.block_of(w.apply(i))][k.block_of(i)] += 1;
    }
    t
}

impl DoubleCoset {
    /// The double coset containing `w`.
    pub fn of(j: &ParabolicSet, k: &ParabolicSet, w: &Permutation) -> Result<Self, ParabolicError> {
        if j.n() != w.n() || k.n() != w.n() {
            return Err(ParabolicError::RankMismatch(j.n(), k.n()));
        }
        Ok(DoubleCoset::from_table(j, k, coset_table(j, k, w)))
    }

    fn from_table(j: &ParabolicSet, k: &ParabolicSet, table: Vec<Vec<usize>>) -> Self {
        let w_min = rep_from_table(j, k, &table, false);
        let w_max = rep_from_table(j, k, &table, true);
        DoubleCoset {
            j: j.clone(),
            k: k.clone(),
            w_min,
            w_max,
            table,
        }
    }

    pub fn n(&self) -> usize {
        self.w_min.n()
    }

    pub fn contains(&self, w: &Permutation) -> bool {
        coset_table(&self.j, &self.k, w) == self.table
    }

    /// `|W_J w W_K| = Π|J_p|! Π|K_q|! / Π N[p][q]!`
    pub fn size(&self) -> u64 {
        let num: u64 = self.j.order() * self.k.order();
        let den: u64 = self.table.iter().flatten().map(|&x| factorial(x)).product();
        num / den
    }

    pub fn elements(&self) -> Vec<Permutation> {
        Permutation::all(self.n())
            .into_iter()
            .filter(|w| self.contains(w))
            .collect()
    }

    /// `W_K w⁻¹ W_J`.
    pub fn inverse(&self) -> DoubleCoset {
        DoubleCoset::of(&self.k, &self.j, &self.w_min.inverse()).expect("same rank")
    }

    /// Bruhat order on double cosets, via minimal representatives.
    pub fn bruhat_leq(&self, other: &DoubleCoset) -> bool {
        self.w_min.bruhat_leq(&other.w_min)
    }

    /// One-line label, e.g. `W(2,1)·132·W(1,2)`.
    pub fn label(&self) -> String {
        format!("W{}·{}·W{}", self.j, self.w_min, self.k)
    }
}

impl fmt::Display for DoubleCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

// For each J-block the smallest (or largest, for `max`) values go to the
// earliest K-blocks; within each K-block positions are filled ascending
// (or descending).
fn rep_from_table(j: &ParabolicSet, k: &ParabolicSet, t: &[Vec<usize>], max: bool) -> Permutation {
    let jb = j.blocks();
    let kb = k.blocks();
    let mut pools: Vec<Vec<usize>> = jb
        .iter()
        .map(|r| {
            if max {
                r.clone().rev().collect()
            } else {
                r.clone().collect()
            }
        })
        .collect();
    let mut img = vec![0u8; j.n()];
    for (q, positions) in kb.iter().enumerate() {
        let mut vals: Vec<usize> = Vec::new();
        for (p, pool) in pools.iter_mut().enumerate() {
            vals.extend(pool.drain(..t[p][q]));
        }
        vals.sort_unstable();
        if max {
            vals.reverse();
        }
        for (i, v) in positions.clone().zip(vals) {
            img[i] = v as u8;
        }
    }
    Permutation::from_images(img)
}

/// All double cosets `W_J \ S_n / W_K`, ordered by minimal representative.
pub fn double_cosets(j: &ParabolicSet, k: &ParabolicSet) -> Result<Vec<DoubleCoset>, ParabolicError> {
    if j.n() != k.n() {
        return Err(ParabolicError::RankMismatch(j.n(), k.n()));
    }
    let rows = j.composition();
    let cols = k.composition();
    let mut tables = Vec::new();
    let mut t = vec![vec![0; cols.len()]; rows.len()];
    fill_tables(&rows, &cols, 0, 0, &mut t, &mut tables, cols.clone());
    let mut out: Vec<DoubleCoset> = tables.into_iter().map(|t| DoubleCoset::from_table(j, k, t)).collect();
    out.sort_by(|a, b| a.w_min.cmp(&b.w_min));
    Ok(out)
}

// Enumerate nonnegative matrices with the given row and column sums.
fn fill_tables(
    rows: &[usize],
    cols: &[usize],
    p: usize,
    q: usize,
    t: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
    col_left: Vec<usize>,
) {
    if p == rows.len() {
        if col_left.iter().all(|&c| c == 0) {
            out.push(t.clone());
        }
        return;
    }
    if q == cols.len() {
        let used: usize = t[p].iter().sum();
        if used == rows[p] {
            fill_tables(rows, cols, p + 1, 0, t, out, col_left);
        }
        return;
    }
    let used: usize = t[p][..q].iter().sum();
    let room = rows[p] - used;
    for x in 0..=room.min(col_left[q]) {
        t[p][q] = x;
        let mut cl = col_left.clone();
        cl[q] -= x;
        fill_tables(rows, cols, p, q + 1, t, out, cl);
    }
    t[p][q] = 0;
}

/// `dim Z_w = n² − n − #{α ∈ Φ(P_J) : w⁻¹α ∈ Φ(P_K)}`, the dimension of the
/// diagonal `GL_n`-orbit through `(P_J, ẇ P_K)`.
pub fn dim_z(c: &DoubleCoset) -> u64 {
    let n = c.n();
    let w = &c.w_min;
    let winv = w.inverse();
    let in_phi = |p: &ParabolicSet, i: usize, j: usize| i < j || p.block_of(i) == p.block_of(j);
    let mut count = 0u64;
    for i in 0..n {
        for jj in 0..n {
            if i != jj && in_phi(&c.j, i, jj) && in_phi(&c.k, winv.apply(i), winv.apply(jj)) {
                count += 1;
            }
        }
    }
    (n * n - n) as u64 - count
}
