//! Orthogonal polynomial families normalized to one at `t = 1`, Gauss–Jacobi
//! quadrature, and linearization tables for products of basis polynomials.

mod basis;
mod disk;
mod jacobi;
mod linearize;
mod quadrature;

pub use basis::Basis;
pub use disk::{disk_eval, linearize_disk, DiskLinearizer, DiskTable};
pub use jacobi::{chebyshev_eval, gegenbauer_eval, jacobi_at_one, jacobi_eval, jacobi_values};
pub use linearize::{linearize_jacobi, JacobiLinearizer, LinearizationTable, CLAMP_THRESHOLD};
pub use quadrature::{gauss_jacobi_rule, jacobi_weight_mass, QuadratureRule};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponents `(alpha, beta)` of the Jacobi weight `(1 - t)^alpha (1 + t)^beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolyParams {
    pub alpha: f64,
    pub beta: f64,
}

impl PolyParams {
    /// Parameters with `alpha >= beta > -1`, the ordering every
    /// two-point homogeneous space satisfies.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let p = PolyParams { alpha, beta };
        p.check_ordered()?;
        Ok(p)
    }

    /// Any integrable Jacobi weight: `alpha, beta > -1`, no ordering.
    /// Disk polynomials need `beta = |m - n|` above `alpha = q - 2`.
    pub fn weight(alpha: f64, beta: f64) -> Result<Self> {
        let p = PolyParams { alpha, beta };
        p.check_integrable()?;
        Ok(p)
    }

    /// `alpha = beta = (d - 2) / 2`, the Gegenbauer case of `S^d`.
    pub fn sphere(d: u32) -> Result<Self> {
        let a = (f64::from(d) - 2.0) / 2.0;
        Self::new(a, a)
    }

    pub fn check_integrable(&self) -> Result<()> {
        if !(self.alpha > -1.0 && self.beta > -1.0) || !self.alpha.is_finite() || !self.beta.is_finite() {
            return Err(Error::Parameter(format!(
                "Jacobi exponents must exceed -1, got alpha = {}, beta = {}",
                self.alpha, self.beta
            )));
        }
        Ok(())
    }

    pub fn check_ordered(&self) -> Result<()> {
        self.check_integrable()?;
        if self.alpha < self.beta {
            return Err(Error::Parameter(format!(
                "expected alpha >= beta, got alpha = {}, beta = {}",
                self.alpha, self.beta
            )));
        }
        Ok(())
    }

    /// Whether nonnegativity of the linearization coefficients is covered by
    /// the sufficient condition `alpha >= beta > -1`, `alpha + beta >= -1`.
    pub fn nonnegative_linearization(&self) -> bool {
        self.check_ordered().is_ok() && self.alpha + self.beta >= -1.0
    }
}
