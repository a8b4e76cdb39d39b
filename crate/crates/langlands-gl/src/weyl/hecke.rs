//! The Hecke algebra of `S_n` in the standard basis, and its `q = 1` shadow.

use std::collections::BTreeMap;
use std::fmt;

use super::laurent::LaurentPoly;
use super::perm::Permutation;

/// An element `Σ c_w w` of `ℤ[S_n]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupAlgebra(BTreeMap<Permutation, i64>);

impl GroupAlgebra {
    pub fn zero() -> Self {
        GroupAlgebra::default()
    }

    pub fn basis(w: &Permutation) -> Self {
        let mut g = GroupAlgebra::zero();
        g.add_term(w, 1);
        g
    }

    pub fn add_term(&mut self, w: &Permutation, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.0.entry(w.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(w);
        }
    }

    pub fn coeff(&self, w: &Permutation) -> i64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, i64)> + '_ {
        self.0.iter().map(|(w, c)| (w, *c))
    }

    pub fn plus(&self, other: &GroupAlgebra) -> GroupAlgebra {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w, c);
        }
        out
    }

    pub fn mul(&self, other: &GroupAlgebra) -> GroupAlgebra {
        let mut out = GroupAlgebra::zero();
        for (x, a) in self.terms() {
            for (y, b) in other.terms() {
                out.add_term(&x.compose(y), a * b);
            }
        }
        out
    }
}

impl fmt::Display for GroupAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(w, c)| format!("{c}·{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An element `Σ a_w(q) T_w` of the Hecke algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElement(BTreeMap<Permutation, LaurentPoly>);

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement::default()
    }

    pub fn t(w: &Permutation) -> Self {
        let mut h = HeckeElement::zero();
        h.add_term(w, &LaurentPoly::one());
        h
    }

    pub fn add_term(&mut self, w: &Permutation, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(w.clone()).or_default();
        *e = &*e + c;
        if e.is_zero() {
            self.0.remove(w);
        }
    }

    pub fn coeff(&self, w: &Permutation) -> LaurentPoly {
        self.0.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &LaurentPoly)> + '_ {
        self.0.iter()
    }

    /// Right multiplication by `T_{s_i}`:
    /// `T_x T_s = T_{xs}` if `xs > x`, else `(q−1)T_x + q T_{xs}`.
    pub fn mul_simple(&self, i: usize) -> HeckeElement {
        let mut out = HeckeElement::zero();
        let qm1 = LaurentPoly::from_coeffs(&[-1, 1]);
        for (x, a) in self.terms() {
            let xs = x.mul_simple_right(i);
            if x.has_right_descent(i) {
                out.add_term(x, &(a * &qm1));
                out.add_term(&xs, &a.shift(1));
            } else {
                out.add_term(&xs, a);
            }
        }
        out
    }

    /// Product in the Hecke algebra.
    pub fn multiply(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (y, b) in other.terms() {
            let mut part = self.clone();
            for i in y.reduced_word() {
                part = part.mul_simple(i);
            }
            for (w, c) in part.terms() {
                out.add_term(w, &(c * b));
            }
        }
        out
    }

    /// Specialize at `q = 1`, where `T_w ↦ w`.
    pub fn specialize_q1(&self) -> GroupAlgebra {
        let mut g = GroupAlgebra::zero();
        for (w, c) in self.terms() {
            g.add_term(w, c.at_one());
        }
        g
    }

    pub fn from_group_algebra(g: &GroupAlgebra) -> HeckeElement {
        let mut h = HeckeElement::zero();
        for (w, c) in g.terms() {
            h.add_term(w, &LaurentPoly::monomial(c, 0));
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::kl::kl_basis_at_one;
    use crate::weyl::parabolic::ParabolicSet;

    #[test]
    fn quadratic_relation() {
        let s = Permutation::simple(2, 0);
        let ts = HeckeElement::t(&s);
        let sq = ts.multiply(&ts);
        assert_eq!(sq.coeff(&s), LaurentPoly::from_coeffs(&[-1, 1]));
        assert_eq!(sq.coeff(&Permutation::identity(2)), LaurentPoly::q());
        assert_eq!(sq.specialize_q1(), GroupAlgebra::basis(&Permutation::identity(2)));
    }

    #[test]
    fn braid_case() {
        let x: Permutation = "213".parse().unwrap();
        let t = HeckeElement::t(&x).multiply(&HeckeElement::t(&Permutation::simple(3, 1)));
        assert_eq!(t, HeckeElement::t(&"231".parse().unwrap()));
    }

    #[test]
    fn q1_is_group_algebra() {
        let all = Permutation::all(3);
        for x in &all {
            for y in &all {
                let h = HeckeElement::t(x).multiply(&HeckeElement::t(y)).specialize_q1();
                assert_eq!(h, GroupAlgebra::basis(&x.compose(y)));
            }
        }
        let c = kl_basis_at_one(&ParabolicSet::full(2));
        let h = HeckeElement::t(&Permutation::simple(2, 0));
        let mut e = HeckeElement::t(&Permutation::identity(2));
        e = HeckeElement::from_group_algebra(&e.specialize_q1());
        let mut cs = h.clone();
        for (w, a) in e.terms() {
            cs.add_term(w, &-a);
        }
        assert_eq!(cs.specialize_q1(), c);
    }

    #[test]
    fn associativity_s3() {
        let all = Permutation::all(3);
        let q = LaurentPoly::from_coeffs(&[2, -1, 3]);
        let mut a = HeckeElement::t(&all[3]);
        a.add_term(&all[1], &q);
        let b = HeckeElement::t(&all[5]);
        let mut c = HeckeElement::t(&all[2]);
        c.add_term(&all[4], &LaurentPoly::q());
        assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
    }
}
