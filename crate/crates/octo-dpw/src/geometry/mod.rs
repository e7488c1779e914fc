//! Isotropic-plane geometry in `R^8`.
//!
//! A pair of octonions `(q, q')` spans an *isotropic* plane when both have
//! unit norm and the quaternion-valued bilinear form
//!
//! ```text
//! B(q, q') = x conj(x') + y' conj(y),        q = (x, y), q' = (x', y')
//! ```
//!
//! vanishes. `B` packages four of the eight real 2-forms
//! `omega_i(q, q') = <q, e_i q'>`; the other four assemble into the
//! quaternion
//!
//! ```text
//! rho(q, q') = conj(x) y' - conj(x') y,
//! ```
//!
//! and the two sit inside the octonion product as
//! `q * conj(q') = (B, -rho)`. On the isotropy variety `rho` has unit norm
//! and recovers the second column via `q' = (0, rho) * q`.
//!
//! The variety carries an `SO(2)` right action rotating the two columns
//! inside their common plane, and a symmetry group generated by
//! `Diag(R_a L_c, R_b L_c)` (unit quaternions `a, b, c`) together with left
//! multiplication by `e4`. Orbits of the symmetry group are the fibers of
//! the invariant `p(q, q') = |Im(x conj(x'))|`, which ranges over
//! `[0, 1/2]`: `p = 0` is the singular class (x-parts linearly dependent),
//! `p = 1/2` the balanced class, and everything between is regular.

mod group;
mod reconstruct;

pub use group::{random_g0, G2Element, GroupElementG0};
pub use reconstruct::{
    reconstruct, reference_frame, Branch, Reconstruction, RECONSTRUCT_DEFAULT_TOL,
};

use crate::algebra::{Octonion, Operator8, Quaternion};
use crate::{Error, Result};
use serde::Serialize;

/// An ordered pair of octonions, the candidate frame of an isotropic plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub q: Octonion,
    pub qp: Octonion,
}

impl Frame {
    pub const fn new(q: Octonion, qp: Octonion) -> Self {
        Self { q, qp }
    }

    /// Builds a frame from 16 reals (components of `q` then `q'`).
    pub fn from_components(v: &[f64; 16]) -> Self {
        let mut a = [0.0; 8];
        let mut b = [0.0; 8];
        a.copy_from_slice(&v[..8]);
        b.copy_from_slice(&v[8..]);
        Self::new(Octonion::from_array(a), Octonion::from_array(b))
    }

    pub fn to_components(&self) -> [f64; 16] {
        let mut v = [0.0; 16];
        v[..8].copy_from_slice(&self.q.to_array());
        v[8..].copy_from_slice(&self.qp.to_array());
        v
    }

    /// The quaternion-valued bilinear form `B`.
    pub fn bform(&self) -> Quaternion {
        bform(self.q, self.qp)
    }

    /// The quaternion-valued form `rho`.
    pub fn rho(&self) -> Quaternion {
        rho(self.q, self.qp)
    }

    /// Worst violation of the isotropy equations
    /// (`|q| = |q'| = 1`, `B = 0`).
    pub fn isotropy_residual(&self) -> f64 {
        let nq = (self.q.norm_sq() - 1.0).abs();
        let nqp = (self.qp.norm_sq() - 1.0).abs();
        nq.max(nqp).max(self.bform().max_abs())
    }

    /// Rotates the two columns inside their span:
    /// `(q, q') -> (cos t q + sin t q', -sin t q + cos t q')`.
    pub fn rotate(&self, t: f64) -> Self {
        let (s, c) = t.sin_cos();
        Self::new(self.q * c + self.qp * s, self.q * -s + self.qp * c)
    }

    /// The two-parameter column scaling `((a x, b y), (b x', a y'))` used by
    /// the orbit normal forms.
    pub fn biscale(&self, alpha: f64, beta: f64) -> Self {
        Self::new(
            Octonion::new(self.q.x * alpha, self.q.y * beta),
            Octonion::new(self.qp.x * beta, self.qp.y * alpha),
        )
    }

    /// Largest absolute component difference against another frame.
    pub fn max_abs_diff(&self, other: &Frame) -> f64 {
        (self.q - other.q)
            .max_abs()
            .max((self.qp - other.qp).max_abs())
    }
}

/// `B(q, q') = x conj(x') + y' conj(y)`.
pub fn bform(q: Octonion, qp: Octonion) -> Quaternion {
    q.x * qp.x.conj() + qp.y * q.y.conj()
}

/// `rho(q, q') = conj(x) y' - conj(x') y`.
pub fn rho(q: Octonion, qp: Octonion) -> Quaternion {
    q.x.conj() * qp.y - qp.x.conj() * q.y
}

/// The orbit invariant `p(q, q') = |Im(x conj(x'))| / (|q| |q'|)`.
///
/// On the unit isotropy variety the normalization is a no-op and the value
/// lies in `[0, 1/2]`.
pub fn p_invariant(frame: &Frame) -> f64 {
    let scale = frame.q.norm() * frame.qp.norm();
    if scale == 0.0 {
        return 0.0;
    }
    (frame.q.x * frame.qp.x.conj()).im_norm() / scale
}

/// Orbit classes of the symmetry-group action on isotropic planes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrbitKind {
    /// `p = 0`: the x-parts are linearly dependent (singular class).
    TypeP1,
    /// `p = 1/2`: orthogonal, equal-norm x-parts (balanced class).
    TypeP2,
    /// `0 < p < 1/2`.
    Regular,
}

/// Classification result: the class together with the invariant value.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrbitClass {
    pub kind: OrbitKind,
    pub p_value: f64,
}

/// Classifies an isotropic frame by the invariant `p`.
///
/// Fails with [`Error::NotIsotropic`] when the frame violates the isotropy
/// equations by more than `tol`; the same `tol` decides proximity to the
/// boundary classes.
pub fn classify(frame: &Frame, tol: f64) -> Result<OrbitClass> {
    let res = frame.isotropy_residual();
    if res > tol {
        return Err(Error::NotIsotropic(format!(
            "isotropy residual {res:.3e} exceeds tolerance {tol:.3e}"
        )));
    }
    let p = p_invariant(frame);
    let kind = if p <= tol {
        OrbitKind::TypeP1
    } else if (p - 0.5).abs() <= tol {
        OrbitKind::TypeP2
    } else {
        OrbitKind::Regular
    };
    Ok(OrbitClass { kind, p_value: p })
}

/// An isotropic 2-plane: a frame modulo the internal `SO(2)` rotation.
///
/// Stored as a validated representative frame plus the rank-2 orthogonal
/// projector onto the span, which is the rotation-invariant datum used for
/// comparisons.
#[derive(Debug, Clone)]
pub struct Plane {
    frame: Frame,
    projector: Operator8,
}

impl Plane {
    /// Validates isotropy within `tol` and builds the plane.
    pub fn from_frame(frame: Frame, tol: f64) -> Result<Self> {
        let res = frame.isotropy_residual();
        if res > tol {
            return Err(Error::NotIsotropic(format!(
                "isotropy residual {res:.3e} exceeds tolerance {tol:.3e}"
            )));
        }
        let q = frame.q.to_array();
        let qp = frame.qp.to_array();
        let mut m = crate::algebra::Matrix8::zeros();
        for i in 0..8 {
            for j in 0..8 {
                m[(i, j)] = q[i] * q[j] + qp[i] * qp[j];
            }
        }
        Ok(Self {
            frame,
            projector: Operator8(m),
        })
    }

    pub fn representative(&self) -> &Frame {
        &self.frame
    }

    pub fn projector(&self) -> &Operator8 {
        &self.projector
    }

    /// Rotation-invariant distance: max-abs difference of the projectors.
    pub fn distance(&self, other: &Plane) -> f64 {
        self.projector.max_abs_diff(&other.projector)
    }
}

/// Canonical `theta`-independence normal form of a frame.
///
/// Finds a rotation angle `t` such that the x-parts of `frame.rotate(t)`
/// become orthogonal, solving `c2 cos 2t + d2 sin 2t = 0` with
/// `c2 = <x, x'>` and `d2 = (|x'|^2 - |x|^2)/2`. The solution is unique
/// modulo `pi/2`; the representative returned has `t` in `[0, pi/2)`.
///
/// Returns `(normalized frame, t, ambiguous)`; `ambiguous` is set when
/// `c2` and `d2` both vanish within `tol` (balanced frames and symmetric
/// singular frames), in which case every rotation works and `t = 0` is
/// returned.
pub fn normalize_frame(frame: &Frame, tol: f64) -> (Frame, f64, bool) {
    let c2 = frame.q.x.dot(frame.qp.x);
    let d2 = 0.5 * (frame.qp.x.norm_sq() - frame.q.x.norm_sq());
    let amplitude = (c2 * c2 + d2 * d2).sqrt();
    if amplitude <= tol {
        return (*frame, 0.0, true);
    }
    let mut t = 0.5 * (-c2).atan2(d2);
    // Shift into [0, pi/2).
    let half_pi = std::f64::consts::FRAC_PI_2;
    while t < 0.0 {
        t += half_pi;
    }
    while t >= half_pi {
        t -= half_pi;
    }
    (frame.rotate(t), t, false)
}

/// Draws a uniformly random point of the isotropy variety by choosing a
/// unit first column and a unit quaternion direction for the second:
/// `q' = (0, r) q` is unit and satisfies `B(q, q') = 0` for any unit
/// quaternion `r`.
pub fn random_isotropic_frame<R: rand::Rng + ?Sized>(rng: &mut R) -> Frame {
    let q = crate::algebra::random_unit_octonion(rng);
    let r = crate::algebra::random_unit_quaternion(rng);
    let qp = Octonion::new(Quaternion::ZERO, r) * q;
    Frame::new(q, qp)
}
