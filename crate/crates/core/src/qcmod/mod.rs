//! Quasiconformal toolkit: the Grötzsch ring modulus and its inverse, round
//! annuli with the derivative bound for conformal maps between them, and the
//! collar interpolation map together with its Beltrami coefficient.

mod annulus;
mod collar;
mod modulus;
mod quad;

pub use annulus::{
    check_derivative_bound, core_preserving_map, fitted_target, Annulus, DerivativeBoundReport,
    BOUND_SLACK, HYPOTHESIS_TOLERANCE,
};
pub use collar::{
    collar_interpolation, BoundaryProfile, CollarMap, CollarReport, CollarSample, DIFFERENCE_STEP,
    PROFILE_SAMPLES, QUADRATURE_TOLERANCE,
};
pub use modulus::{inner_annulus, mu, mu_inv};
