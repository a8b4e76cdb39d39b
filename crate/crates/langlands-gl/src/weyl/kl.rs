//! Kazhdan–Lusztig polynomials of symmetric groups.

use std::collections::HashMap;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::Path;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use thiserror::Error;

use super::hecke::GroupAlgebra;
use super::laurent::LaurentPoly;
use super::parabolic::ParabolicSet;
use super::perm::Permutation;

#[derive(Debug, Error)]
pub enum KlCacheError {
    #[error("cache I/O: {0}")]
    Io(#[from] io::Error),
    #[error("cache line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

type Key = (Permutation, Permutation);

fn memo() -> &'static DashMap<Key, LaurentPoly> {
    static MEMO: OnceLock<DashMap<Key, LaurentPoly>> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

/// `S_n` in lexicographic order, shared.
pub fn all_perms(n: usize) -> Arc<Vec<Permutation>> {
    static ALL: OnceLock<DashMap<usize, Arc<Vec<Permutation>>>> = OnceLock::new();
    let m = ALL.get_or_init(DashMap::new);
    if let Some(v) = m.get(&n) {
        return v.clone();
    }
    let v = Arc::new(Permutation::all(n));
    m.insert(n, v.clone());
    v
}

/// `P_{x,w}`; zero unless `x ≤ w`. Memoized across calls and threads.
pub fn kl_poly(x: &Permutation, w: &Permutation) -> LaurentPoly {
    if x.n() != w.n() || !x.bruhat_leq(w) {
        return LaurentPoly::zero();
    }
    if x == w {
        return LaurentPoly::one();
    }
    let key = (x.clone(), w.clone());
    if let Some(p) = memo().get(&key) {
        return p.clone();
    }
    let p = kl_recursive(x, w);
    memo().insert(key, p.clone());
    p
}

fn kl_recursive(x: &Permutation, w: &Permutation) -> LaurentPoly {
    let s = w.left_descents()[0];
    let v = w.mul_simple_left(s);
    let sx = x.mul_simple_left(s);
    let c = x.has_left_descent(s) as i32;
    let mut p = &kl_poly(&sx, &v).shift(1 - c) + &kl_poly(x, &v).shift(c);
    let lw = w.length() as i32;
    let lv = v.length() as i32;
    for z in all_perms(x.n()).iter() {
        let lz = z.length() as i32;
        if (lv - lz) % 2 == 0 || lz >= lv || !z.has_left_descent(s) {
            continue;
        }
        if !x.bruhat_leq(z) || !z.bruhat_leq(&v) {
            continue;
        }
        let m = mu(z, &v);
        if m != 0 {
            let t = kl_poly(x, z).shift((lw - lz) / 2);
            p = &p - &(&t * &LaurentPoly::monomial(m, 0));
        }
    }
    p
}

/// Coefficient of `q^{(ℓ(w)−ℓ(z)−1)/2}` in `P_{z,w}`.
pub fn mu(z: &Permutation, w: &Permutation) -> i64 {
    let d = w.length() as i32 - z.length() as i32;
    if d <= 0 || d % 2 == 0 {
        return 0;
    }
    kl_poly(z, w).coeff((d - 1) / 2)
}

/// Independent slow computation through R-polynomials, with a private memo.
#[derive(Default)]
pub struct SlowKl {
    r: HashMap<Key, LaurentPoly>,
    p: HashMap<Key, LaurentPoly>,
}

impl SlowKl {
    pub fn new() -> Self {
        SlowKl::default()
    }

    pub fn r_poly(&mut self, x: &Permutation, w: &Permutation) -> LaurentPoly {
        if !x.bruhat_leq(w) {
            return LaurentPoly::zero();
        }
        if x == w {
            return LaurentPoly::one();
        }
        let key = (x.clone(), w.clone());
        if let Some(r) = self.r.get(&key) {
            return r.clone();
        }
        let s = w.left_descents()[0];
        let sw = w.mul_simple_left(s);
        let sx = x.mul_simple_left(s);
        let r = if x.has_left_descent(s) {
            self.r_poly(&sx, &sw)
        } else {
            let qm1 = LaurentPoly::from_coeffs(&[-1, 1]);
            &(&qm1 * &self.r_poly(x, &sw)) + &self.r_poly(&sx, &sw).shift(1)
        };
        self.r.insert(key, r.clone());
        r
    }

    /// From `q^{ℓ(w)−ℓ(x)} P̄_{x,w} − P_{x,w} = Σ_{x<y≤w} R_{x,y} P_{y,w}`.
    pub fn kl_poly(&mut self, x: &Permutation, w: &Permutation) -> LaurentPoly {
        if !x.bruhat_leq(w) {
            return LaurentPoly::zero();
        }
        if x == w {
            return LaurentPoly::one();
        }
        let key = (x.clone(), w.clone());
        if let Some(p) = self.p.get(&key) {
            return p.clone();
        }
        let d = (w.length() - x.length()) as i32;
        let mut sum = LaurentPoly::zero();
        for y in Permutation::all(x.n()) {
            if &y != x && x.bruhat_leq(&y) && y.bruhat_leq(w) {
                let t = &self.r_poly(x, &y) * &self.kl_poly(&y, w);
                sum = &sum + &t;
            }
        }
        let p = -sum.truncate_below((d + 1) / 2);
        self.p.insert(key, p.clone());
        p
    }
}

/// `Σ_{w ∈ W_J} (−1)^{ℓ(w_J) − ℓ(w)} w`, checked against
/// `Σ_{y ≤ w_J} (−1)^{ℓ(w_J)−ℓ(y)} P_{y,w_J}(1) y`.
pub fn kl_basis_at_one(j: &ParabolicSet) -> GroupAlgebra {
    let wj = j.longest();
    let lj = wj.length();
    let mut out = GroupAlgebra::zero();
    for w in j.elements() {
        out.add_term(&w, sign(lj - w.length()));
    }
    assert_eq!(out, c_basis_at_one(&wj), "signed W_J sum disagrees with KL evaluation");
    out
}

/// `Σ_{y ≤ w} (−1)^{ℓ(w)−ℓ(y)} P_{y,w}(1) y`.
pub fn c_basis_at_one(w: &Permutation) -> GroupAlgebra {
    let mut out = GroupAlgebra::zero();
    for y in all_perms(w.n()).iter() {
        if y.bruhat_leq(w) {
            out.add_term(y, sign(w.length() - y.length()) * kl_poly(y, w).at_one());
        }
    }
    out
}

pub fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Number of memoized `P_{x,w}`.
pub fn cache_len() -> usize {
    memo().len()
}

/// Read records `n x w : c0,c1,…` into the memo; returns the count loaded.
pub fn load_cache(path: &Path) -> Result<usize, KlCacheError> {
    let file = fs::File::open(path)?;
    let mut count = 0;
    for (idx, line) in io::BufReader::new(file).lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| KlCacheError::Parse {
            line: idx + 1,
            msg: msg.to_string(),
        };
        let (lhs, rhs) = t.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let parts: Vec<&str> = lhs.split_whitespace().collect();
        let [n, x, w] = parts[..] else {
            return Err(bad("expected `n x w`"));
        };
        let n: usize = n.parse().map_err(|_| bad("bad n"))?;
        let x: Permutation = x.parse().map_err(|_| bad("bad x"))?;
        let w: Permutation = w.parse().map_err(|_| bad("bad w"))?;
        if x.n() != n || w.n() != n {
            return Err(bad("permutation size differs from n"));
        }
        let coeffs: Vec<i64> = rhs
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| bad("bad coefficient")))
            .collect::<Result<_, _>>()?;
        memo().insert((x, w), LaurentPoly::from_coeffs(&coeffs));
        count += 1;
    }
    Ok(count)
}

/// Write the memo, sorted, one record per line.
pub fn save_cache(path: &Path) -> Result<usize, KlCacheError> {
    let mut rows: Vec<(Permutation, Permutation, LaurentPoly)> = memo()
        .iter()
        .map(|e| (e.key().0.clone(), e.key().1.clone(), e.value().clone()))
        .collect();
    rows.sort_by(|a, b| (a.0.n(), &a.0, &a.1).cmp(&(b.0.n(), &b.0, &b.1)));
    let mut f = io::BufWriter::new(fs::File::create(path)?);
    for (x, w, p) in &rows {
        let c: Vec<String> = p.coeffs().iter().map(i64::to_string).collect();
        writeln!(f, "{} {} {} : {}", x.n(), x, w, c.join(","))?;
    }
    f.flush()?;
    Ok(rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn s3_all_one() {
        for x in Permutation::all(3) {
            for w in Permutation::all(3) {
                let expect = if x.bruhat_leq(&w) {
                    LaurentPoly::one()
                } else {
                    LaurentPoly::zero()
                };
                assert_eq!(kl_poly(&x, &w), expect);
            }
        }
    }

    #[test]
    fn s4_singular_examples() {
        let e = Permutation::identity(4);
        assert_eq!(kl_poly(&e, &p("3412")), LaurentPoly::from_coeffs(&[1, 1]));
        let mut slow = SlowKl::new();
        assert_eq!(kl_poly(&e, &p("4231")), slow.kl_poly(&e, &p("4231")));
        // both singular Schubert varieties of S_4 have P_e = 1 + q
        assert_eq!(kl_poly(&e, &p("4231")), LaurentPoly::from_coeffs(&[1, 1]));
        assert_eq!(slow.kl_poly(&e, &p("3412")), LaurentPoly::from_coeffs(&[1, 1]));
    }

    #[test]
    fn fast_matches_slow_s4() {
        let mut slow = SlowKl::new();
        for x in Permutation::all(4) {
            for w in Permutation::all(4) {
                assert_eq!(kl_poly(&x, &w), slow.kl_poly(&x, &w), "{x} {w}");
            }
        }
    }

    #[test]
    fn signed_sums() {
        assert_eq!(
            kl_basis_at_one(&ParabolicSet::borel(3)),
            GroupAlgebra::basis(&Permutation::identity(3))
        );
        let s = kl_basis_at_one(&ParabolicSet::full(2));
        assert_eq!(s.coeff(&p("21")), 1);
        assert_eq!(s.coeff(&p("12")), -1);
        let full = kl_basis_at_one(&ParabolicSet::full(3));
        for w in Permutation::all(3) {
            assert_eq!(full.coeff(&w), sign(3 - w.length()));
        }
    }

    #[test]
    fn cache_round_trip() {
        kl_poly(&Permutation::identity(4), &p("4231"));
        let dir = std::env::temp_dir().join(format!("klcache-{}", std::process::id()));
        let saved = save_cache(&dir).unwrap();
        assert!(saved > 0);
        let loaded = load_cache(&dir).unwrap();
        assert!(loaded >= saved);
        let text = fs::read_to_string(&dir).unwrap();
        assert!(text.lines().any(|l| l == "4 1234 4231 : 1,1"));
        fs::write(&dir, "4 1234 : 1\n").unwrap();
        assert!(load_cache(&dir).is_err());
        let _ = fs::remove_file(&dir);
    }
}
