//! `f64` transcendental functions for `no_std`, backed by `libm`.

pub(crate) use libm::{acosh, cos, exp, hypot, log, pow, sin, sinh, sqrt};

pub(crate) const PI: f64 = core::f64::consts::PI;
pub(crate) const TAU: f64 = core::f64::consts::TAU;

/// `cosh(x) − 1` without cancellation.
pub(crate) fn cosh_minus_one(x: f64) -> f64 {
    let s = sinh(0.5 * x);
    2.0 * s * s
}
