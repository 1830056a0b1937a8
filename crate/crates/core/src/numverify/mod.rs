//! Independent numerical checks: quadrature coefficient oracles, point
//! sampling, Gram-matrix reports, falsifiers for non-strict kernels and
//! sampled checks of the space-time criterion.

mod extended;
mod falsify;
mod gram;
mod group;
mod project;
mod sampling;
mod spacetime;

pub use falsify::{dimension_bound, falsify_spd, Falsification};
pub use gram::{gram, gram_matrix, tol_scale, GramReport, NearNull, PD_TOLERANCE_FACTOR};
pub use group::{GroupDescriptor, GroupElement, REAL_SAMPLE_RADIUS};
pub use project::{oracle_product_coeffs, project_coeffs, ORACLE_EPS};
pub use sampling::{sample_point, sample_points, sample_points_with, stream_rng, PointSet, COINCIDENCE_TOLERANCE};
pub use spacetime::{
    cosine_build, spacetime_check, spacetime_check_at, CoeffFunc, Expr, SpacetimeKernel, SpacetimeReport, TrialCensus,
    MIN_TRUNCATION, SPACETIME_TOLERANCE,
};
