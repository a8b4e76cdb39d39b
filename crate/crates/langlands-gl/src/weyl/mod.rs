//! Symmetric groups, parabolic double cosets, Kazhdan–Lusztig polynomials
//! and the Hecke algebra.

pub mod hecke;
pub mod kl;
pub mod laurent;
pub mod parabolic;
pub mod perm;

pub use hecke::{GroupAlgebra, HeckeElement};
pub use kl::{kl_basis_at_one, kl_poly};
pub use laurent::LaurentPoly;
pub use parabolic::{dim_z, double_cosets, parabolic_from, DoubleCoset, ParabolicSet};
pub use perm::Permutation;
