//! Isotropic positive definite kernels on compact two-point homogeneous
//! spaces.
//!
//! A kernel `K(x, y) = f(t(x, y))` is stored through the expansion
//! coefficients of its isotropic part `f` in the orthogonal basis attached
//! to the space (Jacobi, Gegenbauer, Chebyshev, monomial or disk
//! polynomials, all normalized to equal one at `t = 1`). Strict positive
//! definiteness of a kernel, and of the product of two kernels, depends only
//! on which coefficients are positive, so verdicts are computed exactly on
//! [`semilinear::SemilinearSet`] supports. The [`numverify`] module provides
//! an independent numerical cross-check: quadrature projections, sampled
//! Gram matrices and falsification searches.
//!
//! Module map:
//!
//! * [`orthopoly`] evaluates basis polynomials, builds Gauss–Jacobi rules and
//!   linearization tables.
//! * [`semilinear`] implements finite-set-plus-progression arithmetic and
//!   the arithmetic-progression covering test.
//! * [`kernelmodel`] holds spaces, coefficient sequences, product expansions
//!   and point geometry.
//! * [`spdlaw`] decides strict positive definiteness of single kernels and
//!   products.
//! * [`numverify`] samples points, assembles Gram matrices and checks the
//!   space-time product criterion on sampled configurations.

#![forbid(unsafe_code)]

pub mod error;
pub mod kernelmodel;
pub mod linalg;
pub mod numverify;
pub mod orthopoly;
pub mod semilinear;
pub mod spdlaw;

pub use error::{Error, Result};
