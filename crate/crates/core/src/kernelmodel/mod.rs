//! Isotropic kernels as coefficient sequences: spaces, validated
//! coefficient data, series evaluation, supports and product expansions.

mod bi;
mod document;
mod points;
mod product;
mod seq;
mod space;
mod tail;

use num_complex::Complex64;

pub use bi::{BiCoefficientSeq, DiskTail, LaurentSeq};
pub use points::{
    complex_inner, eval_kernel, kernel_applies, point_model, quaternion_inner, t_of_points, Argument, Point,
    Quaternion, INFINITE_MODEL_DIM, UNIT_TOLERANCE,
};
pub use product::{circle_product_coeffs, product_expand, product_support};
pub use seq::{eval_series, CoefficientSeq};
pub use space::Space;
pub use tail::GeometricTail;

use crate::error::{Error, Result};
use crate::semilinear::SemilinearSet;

/// A validated isotropic part on any supported space.
#[derive(Debug, Clone, PartialEq)]
pub enum Kernel {
    /// Single-index expansion on a Wang space, `sphereInf` or `projInf`.
    Series(CoefficientSeq),
    /// Disk-polynomial expansion on `complexSphere(q)`, `q >= 2`.
    Disk(BiCoefficientSeq),
    /// `sum a_m z^m` on `complexSphere(1)`.
    Laurent(LaurentSeq),
}

impl Kernel {
    pub fn space(&self) -> Space {
        match self {
            Kernel::Series(f) => f.space().clone(),
            Kernel::Disk(f) => Space::ComplexSphere { q: f.q() },
            Kernel::Laurent(_) => Space::ComplexSphere { q: 1 },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Kernel::Series(f) => f.is_zero(),
            Kernel::Disk(f) => f.is_zero(),
            Kernel::Laurent(f) => f.is_zero(),
        }
    }

    /// `f(1)`, the largest value of the kernel.
    pub fn value_at_one(&self) -> f64 {
        match self {
            Kernel::Series(f) => f.value_at_one(),
            Kernel::Disk(f) => f.value_at_one(),
            Kernel::Laurent(f) => f.value_at_one(),
        }
    }

    pub fn as_series(&self) -> Option<&CoefficientSeq> {
        match self {
            Kernel::Series(f) => Some(f),
            _ => None,
        }
    }

    /// Whether only finitely many coefficients are nonzero.
    pub fn is_polynomial(&self) -> bool {
        match self {
            Kernel::Series(f) => f.is_polynomial(),
            Kernel::Disk(f) => f.tails().is_empty(),
            Kernel::Laurent(f) => f.tails().is_empty(),
        }
    }

    /// Support in the index the SPD criteria read: `{k}` for single-index
    /// series, `{m - n}` for disk expansions, `{m}` in `Z` for `q = 1`.
    pub fn index_support(&self) -> SemilinearSet {
        match self {
            Kernel::Series(f) => f.support(),
            Kernel::Disk(f) => f.diff_support(),
            Kernel::Laurent(f) => f.support(),
        }
    }

    /// `f(arg)` within `eps`.
    pub fn eval(&self, arg: Argument, eps: f64) -> Result<Complex64> {
        match (self, arg) {
            (Kernel::Series(f), Argument::Real(t)) => Ok(Complex64::new(f.eval(t, eps), 0.0)),
            (Kernel::Series(_), Argument::Complex(_)) => {
                Err(Error::Domain("single-index kernels take a real argument".into()))
            }
            (Kernel::Disk(f), arg) => Ok(f.eval(arg.as_complex(), eps)),
            (Kernel::Laurent(f), arg) => Ok(f.eval(arg.as_complex(), eps)),
        }
    }
}

impl From<CoefficientSeq> for Kernel {
    fn from(f: CoefficientSeq) -> Self {
        Kernel::Series(f)
    }
}

impl From<BiCoefficientSeq> for Kernel {
    fn from(f: BiCoefficientSeq) -> Self {
        Kernel::Disk(f)
    }
}

impl From<LaurentSeq> for Kernel {
    fn from(f: LaurentSeq) -> Self {
        Kernel::Laurent(f)
    }
}
