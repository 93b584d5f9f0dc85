//! Low-rank approximation of isotropic kernels restricted to real algebraic
//! varieties.
//!
//! Two regimes are covered. For high precision, a kernel profile is replaced
//! by a polynomial and factorized exactly over the variety, with rank equal
//! to the variety's Hilbert function. For high dimension, random Fourier
//! features drawn from a truncated spectral measure give rank independent of
//! the ambient dimension.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod audit;
pub mod error;
pub mod hilbert;
pub mod kernels;
pub mod linalg;
pub mod lowrank;
pub mod norming;
pub mod polybasis;
pub mod rff;
pub mod rng;
pub mod varieties;

pub use error::{Error, Result};
pub use hilbert::{ambient_bound, count_standard_monomials, hf, hf_via_rank, HfMethod, HilbertFunctionValue};
pub use kernels::{
    cheb_fit, degree_for_eps, taylor_features_profile, ChebFit, IsotropicKernel, KernelSpec, PolynomialKernel,
};
pub use polybasis::{enumerate_monomials, numerical_rank, vandermonde, Monomial, MonomialBasis, MonomialOrder, Point};
pub use varieties::{builtin, MonomialIdeal, VarietySpec};
pub use lowrank::{
    approximate_on_variety, exact_rank, nystrom, select_unisolvent, standard_monomial_features, taylor_on_variety,
    ErrorCertificate, FeatureMap, LowRankFactorization, UnisolventDesign,
};
pub use norming::{approx_fekete, audit_slack, norming_set, FeketeSet, NormingSet, SlackAudit};
pub use rff::{RffModel, TailReport};
