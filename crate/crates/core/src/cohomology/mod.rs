//! Cohomology of π_{g_1} × ... × π_{g_n} with sign-twisted integer
//! coefficients, computed from the tensor product resolution.

pub mod cochain;
pub mod coeffs;
pub mod cup;
pub mod group;
pub mod named;
pub mod smith;

pub use cochain::{coboundary_matrix, Cochain};
pub use coeffs::{CoefficientSystem, SignSet};
pub use group::{cohomology_group, ClassCoordinates, CohomologyPresentation};
pub use smith::{smith_normal_form, IntMatrix, Smith};
pub use cup::{cup_closed_form, cup_single, cup_two_factor, cup_two_factor_direct, pullback_diagonal};
pub use named::{named_cocycle, NamedCocycle};
