//! Octonion algebra, isotropic-plane geometry in `R^8`, and a loop-group
//! Weierstrass-type (DPW) pipeline for constructing and analyzing
//! rho-harmonic isotropic surfaces.
//!
//! The crate is organized bottom-up:
//!
//! * [`algebra`] — quaternions, octonions, their complexifications, and
//!   dense 8x8 operators;
//! * [`geometry`] — the isotropic-plane variety, its symmetry group, orbit
//!   classification, normal forms, and the inverse-orbit construction;
//! * [`spin7`] — the octonionic cross product, `Spin(7)` membership and
//!   stabilizers, and the cross-product mean-curvature formula;
//! * [`loops`] — truncated Laurent loops with the order-four twisting, the
//!   graded Lie algebra, and zero-curvature diagnostics;
//! * [`dpw`] — holomorphic potentials, frame integration, Iwasawa and
//!   Birkhoff factorization, surface extraction, and round trips;
//! * [`analysis`] — discrete differential-geometry diagnostics on surface
//!   grids;
//! * [`verify`] — seeded identity suites with optional fault injection.

pub mod algebra;
pub mod analysis;
pub mod dpw;
pub mod geometry;
pub mod grid;
pub mod loops;
pub mod spin7;
pub mod verify;

mod error;

pub use error::{Error, Result};
