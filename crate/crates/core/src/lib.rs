//! Exact and multi-precision spreading measures of the Rakhmanov densities
//! `ρ_n(x) = e^{-x²} H̃_n(x)²` of the orthonormal Hermite polynomials.
//!
//! Rational and algebraic quantities (moments, entropic moments, Fisher
//! information, Rényi-type functionals at integer order) are computed exactly
//! as [`exactreal::ExactReal`]. Transcendental ones (Shannon entropy and its
//! length, bounds, fits) are computed in binary multi-precision arithmetic.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod entropic;
pub mod error;
pub mod exactreal;
pub mod hermite;
pub mod mp;
pub mod oscillator;
pub mod polypow;
pub mod quadrature;
pub mod shannon;

pub use error::{Error, Result};
pub use exactreal::ExactReal;
pub use mp::{Mp, Real};
