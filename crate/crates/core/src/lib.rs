//! Simulation library for a line-of-sight radio link between two coaxial
//! uniform circular arrays, modelled two ways:
//!
//! * as a spatially correlated MIMO channel (Kronecker fading around a
//!   truncated-Gaussian angular spread), and
//! * as an orbital-angular-momentum mode-multiplexed channel whose
//!   per-mode gains follow integer-order Bessel functions.
//!
//! The [`metrics`] module quantifies orthogonality, degrees of freedom and
//! Shannon capacity for both views on a shared normalised-SNR axis, so
//! the two multiplexing strategies can be compared like for like.
//!
//! All randomness is seed-explicit and splits into counter-derived
//! substreams; every public operation is a pure function of its inputs.

pub mod error;
pub mod geometry;
pub mod metrics;
pub mod mimo;
pub mod numerics;
pub mod oam;

pub use error::{Error, Result};
pub use num_complex::Complex64;
