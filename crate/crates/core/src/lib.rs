//! Geometry and numerics for truncated, possibly infinitely generated,
//! classical Schottky groups.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of immutable inputs:
//!
//! * [`moebius`]: points of the Riemann sphere, Möbius maps, oriented circles,
//!   chordal and hyperbolic distances, and the canonical pairing of two circles.
//! * [`config`]: circle pairs, finite systems, infinite families and their
//!   truncations, admissibility validation, accumulation sets and condition
//!   (∗) checks.
//! * [`orbit`]: reduced words, Cayley-tree enumeration of translated circles,
//!   maximal nested chains, diameter profiles and limit-set samples.
//! * [`construct`]: generators for end-space realization, the nested-geodesic
//!   counterexample and the uniformly separated ("fat") configuration.
//! * [`qcmod`]: the Grötzsch modulus, annulus derivative bounds and the
//!   collar interpolation map with its Beltrami coefficient.
//!
//! Infinite objects are always handled through explicit truncation and every
//! exponential enumeration is guarded by a [`orbit::Budget`].

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod config;
pub mod construct;
mod error;
mod math;
pub mod moebius;
pub mod orbit;
pub mod qcmod;
pub mod tol;

pub use error::{Error, Result};
pub use num_complex::Complex64;
