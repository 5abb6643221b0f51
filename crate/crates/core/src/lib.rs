//! Exact-arithmetic toolkit for the N=2 superconformal minimal models `M_d`.
//!
//! Everything here is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in the crate. The main pieces are:
//!
//! - [`qseries`]: truncated formal q-series with rational exponents, plus the
//!   Dedekind eta and Jacobi theta products character formulas are built from.
//! - [`nsmodules`]: labels and exact conformal/J-weights for the irreducible
//!   NS-sector modules of `M_d`, and their characters as exact q-series.
//! - [`embeddings`]: central-charge arithmetic for diagonal conformal
//!   embeddings, tensor-product characters, and exact decomposition of a
//!   product character into minimal-quotient characters.
//! - [`shapovalov`]: the symbolic mode algebra of the universal N=2 vacuum
//!   module, Shapovalov Gram matrices, radical ranks (graded dimensions of the
//!   quotients), and the isometry check for the diagonal embeddings.
//! - [`linalg`]: fraction-free exact rank computation used by the Gram-matrix
//!   radical calculations.
//!
//! The two decompositions the crate is built to verify are
//! `M_3 (x) M_4 = C_1 + C_7` over `M_12` and
//! `M_3 (x) M_5 = C_1 + C_11 + C_19 + C_29` over `M_30`,
//! checked both by exact character arithmetic and, independently, by
//! Gram-matrix ranks of the Shapovalov form.

pub mod embeddings;
pub mod linalg;
pub mod nsmodules;
pub mod qseries;
pub mod rational;
pub mod shapovalov;

pub use qseries::QSeries;
pub use rational::Rational;
