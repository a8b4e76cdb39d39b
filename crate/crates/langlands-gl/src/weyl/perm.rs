//! Permutations in one-line notation, length and Bruhat order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("`{0}` is not a permutation of 1..n in one-line notation")]
    NotAPermutation(String),
    #[error("size mismatch: {0} vs {1}")]
    Size(usize, usize),
}

/// A permutation `w` of `{0, …, n−1}`, stored as `w(0), …, w(n−1)`.
///
/// Displayed and parsed 1-based, e.g. `3412`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u8).collect())
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(v: &[usize]) -> Result<Self, PermError> {
        let n = v.len();
        let mut seen = vec![false; n];
        for &x in v {
            if x == 0 || x > n || seen[x - 1] {
                return Err(PermError::NotAPermutation(format!("{v:?}")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation(v.iter().map(|&x| (x - 1) as u8).collect()))
    }

    /// From 0-based images; panics if `v` is not a permutation.
    pub fn from_images(v: Vec<u8>) -> Self {
        let mut s = v.clone();
        s.sort_unstable();
        assert!(s.iter().enumerate().all(|(i, &x)| i == x as usize), "not a permutation");
        Permutation(v)
    }

    /// The simple reflection `s_i` swapping `i` and `i+1` (0-based).
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v: Vec<u8> = (0..n as u8).collect();
        v.swap(i, i + 1);
        Permutation(v)
    }

    pub fn longest(n: usize) -> Self {
        Permutation((0..n as u8).rev().collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize + 1).collect()
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.0;
        (0..v.len())
            .map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count())
            .sum()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation(inv)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    /// `self · s_i`: swaps positions `i, i+1`.
    pub fn mul_simple_right(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i, i + 1);
        Permutation(v)
    }

    /// `s_i · self`: swaps values `i, i+1`.
    pub fn mul_simple_left(&self, i: usize) -> Self {
        Permutation(
            self.0
                .iter()
                .map(|&x| match x as usize {
                    v if v == i => (i + 1) as u8,
                    v if v == i + 1 => i as u8,
                    _ => x,
                })
                .collect(),
        )
    }

    /// `s_i w < w`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.0[i] > inv.0[i + 1]
    }

    /// `w s_i < w`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.0[i] > self.0[i + 1]
    }

    pub fn left_descents(&self) -> Vec<usize> {
        (0..self.n().saturating_sub(1))
            .filter(|&i| self.has_left_descent(i))
            .collect()
    }

    /// A reduced word `w = s_{i_1} ⋯ s_{i_k}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut w = self.clone();
        while let Some(i) = (0..w.n().saturating_sub(1)).find(|&i| w.has_right_descent(i)) {
            word.push(i);
            w = w.mul_simple_right(i);
        }
        word.reverse();
        word
    }

    /// Bruhat order by the tableau criterion.
    pub fn bruhat_leq(&self, other: &Permutation) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let mut a: Vec<u8> = Vec::with_capacity(self.n());
        let mut b: Vec<u8> = Vec::with_capacity(self.n());
        for i in 0..self.n() {
            a.push(self.0[i]);
            b.push(other.0[i]);
            a.sort_unstable();
            b.sort_unstable();
            if a.iter().zip(&b).any(|(x, y)| x > y) {
                return false;
            }
        }
        true
    }

    /// `(w·v)_i = v_{w⁻¹(i)}`.
    pub fn act<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let inv = self.inverse();
        (0..self.n()).map(|i| v[inv.apply(i)].clone()).collect()
    }

    /// All of `S_n`, in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(usize::to_string).collect();
        if self.n() < 10 {
            write!(f, "{}", parts.concat())
        } else {
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = PermError;
    /// `3412` or `3,4,1,2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || PermError::NotAPermutation(s.to_string());
        let v: Vec<usize> = if t.contains(',') {
            t.split(',')
                .map(|x| x.trim().parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else {
            t.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        };
        Permutation::from_one_line(&v)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_line(&v).map_err(D::Error::custom)
    }
}
