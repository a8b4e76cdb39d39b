//! Grothendieck-group combinatorics for blocks of `GL_n(ℂ)` and unramified
//! blocks of `GL_m` over a `p`-adic field, and the maps between them.
//!
//! The combinatorial layers are exact: points are rationals, multiplicities
//! are integers, ranks are computed over `ℚ`. The linear algebra in
//! [`linalg`] is generic over [`scalar::Field`] so float operators can be
//! fed to [`vogan::jordan_type`] as well.

pub mod assumption;
pub mod comparison;
pub mod functors;
pub mod kgroups;
pub mod linalg;
pub mod multiseg;
pub mod order;
pub mod point;
pub mod scalar;
pub mod vogan;
pub mod weyl;

pub type Rational = num_rational::Ratio<i64>;
pub type BigQ = num_rational::BigRational;

/// Dense matrix over `Ratio<i64>`.
pub type QMatrix = linalg::Matrix<Rational>;
/// Dense matrix over arbitrary-precision rationals.
pub type BigQMatrix = linalg::Matrix<BigQ>;
/// Dense matrix over `f64`, with tolerance-based rank.
pub type FMatrix = linalg::Matrix<f64>;

pub use assumption::{assumption_r, RPiece};
pub use comparison::{
    block_data_from_infchar, gamma_std, infchar_from_weight, parabolics_from_weight, ComparisonBlock, ComparisonError,
};
pub use functors::{
    composed_translation_identity, convolve_act, factor_check, pushpull, translate, verify_main_diagram, weyl_act,
    FunctorError, MainDiagramReport, TranslationDatum,
};
pub use kgroups::{
    bz_derivative, multiply_standards, pairing_padic, pairing_real, project_weight, Basis, BasisChange, KElement,
    KError, PadicElement, RealBlock, RealElement, Side,
};
pub use multiseg::{is_linked, weight_of, Dualize, Multisegment, Segment, WeightFunction};
pub use order::{closure_leq, elementary_moves, enumerate_multisegments, rank_profile};
pub use point::Point;
pub use vogan::{is_full_rank, jordan_rep, jordan_type, orbit_dimension, GradedOperator};

/// Any error raised by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Multiseg(#[from] multiseg::MultisegError),
    #[error(transparent)]
    Vogan(#[from] vogan::VoganError),
    #[error(transparent)]
    Parabolic(#[from] weyl::parabolic::ParabolicError),
    #[error(transparent)]
    KlCache(#[from] weyl::kl::KlCacheError),
    #[error(transparent)]
    K(#[from] KError),
    #[error(transparent)]
    Comparison(#[from] ComparisonError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
}
