//! Inverse-orbit construction: writing an isotropic frame as a symmetry
//! image of the balanced reference frame.
//!
//! Every frame `(q, q')` with `B = 0`, equal column norms `m`, and regular
//! invariant `0 < p < 1/2` decomposes as
//!
//! ```text
//! (q, q') = g . [ reference.biscale(alpha, beta).rotate(theta) ]
//! ```
//!
//! with `g` in the identity component of the symmetry group and the scaling
//! pair determined *up to a two-fold branch choice* by
//!
//! ```text
//! alpha^2 = m^2 (1 -+ sqrt(1 - 4 p^2)),    beta^2 = 2 m^2 - alpha^2.
//! ```
//!
//! The `Low` branch takes the minus sign (`alpha <= m`), the `High` branch
//! the plus sign (`alpha >= m`); the two coincide exactly on the balanced
//! class `p = 1/2`. The group element is produced in closed form: after
//! rotating the target so its x-parts are orthogonal and sized to the
//! chosen branch, the pure-imaginary quaternions `u = x conj(x')` of
//! target and scaled reference have equal norms, a half-angle conjugation
//! aligns them, and the `a, b` coordinates follow by division. No
//! least-squares step is involved, so residuals sit at rounding level.

use super::{group::GroupElementG0, Frame};
use crate::algebra::{Octonion, Quaternion};
use crate::{Error, Result};
use serde::Serialize;

/// Default validation tolerance for [`reconstruct`].
pub const RECONSTRUCT_DEFAULT_TOL: f64 = 1e-9;

/// Scaling-branch selector for the inverse-orbit construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `alpha <= m` (minus sign under the square root).
    Low,
    /// `alpha >= m` (plus sign under the square root).
    High,
}

/// Result of the inverse-orbit construction.
#[derive(Debug, Clone, Serialize)]
pub struct Reconstruction {
    /// Identity-component group element (eflag is always false).
    pub g: GroupElementG0,
    pub alpha: f64,
    pub beta: f64,
    /// Internal rotation angle applied to the scaled reference.
    pub theta: f64,
    pub branch: Branch,
    /// Max-abs difference between the input frame and its reconstruction.
    pub residual: f64,
}

impl Reconstruction {
    /// Rebuilds the frame this decomposition describes.
    pub fn assemble(&self) -> Frame {
        let ref_scaled = reference_frame()
            .biscale(self.alpha, self.beta)
            .rotate(self.theta);
        self.g.apply_frame(&ref_scaled)
    }
}

/// The balanced (`p = 1/2`) reference frame:
/// `q0 = (1, i)/sqrt(2)`, `q0' = (-i, 1)/sqrt(2)` as quaternion pairs.
pub fn reference_frame() -> Frame {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Frame::new(
        Octonion::new(Quaternion::scalar(s), Quaternion::pure(s, 0.0, 0.0)),
        Octonion::new(Quaternion::pure(-s, 0.0, 0.0), Quaternion::scalar(s)),
    )
}

/// Decomposes `frame` through the reference frame on the requested branch.
///
/// Accepts frames of any common column norm `m > 0` (the scaling pair
/// absorbs `m`). Fails with:
///
/// * [`Error::NotIsotropic`] — `B != 0` or unequal column norms;
/// * [`Error::TypeP1Input`] — `p <= tol` (the singular class is not in the
///   image of the construction);
/// * [`Error::Degenerate`] — internal normal-form ambiguity outside the
///   balanced class (cannot happen for exact members of the variety).
pub fn reconstruct(frame: &Frame, branch: Branch, tol: f64) -> Result<Reconstruction> {
    let m2 = frame.q.norm_sq();
    let m2p = frame.qp.norm_sq();
    if m2 <= tol {
        return Err(Error::Degenerate("zero frame".into()));
    }
    if (m2 - m2p).abs() > tol * m2.max(1.0) {
        return Err(Error::NotIsotropic(format!(
            "column norms differ: |q|^2 = {m2}, |q'|^2 = {m2p}"
        )));
    }
    let b = frame.bform().max_abs();
    if b > tol * m2.max(1.0) {
        return Err(Error::NotIsotropic(format!(
            "bilinear form does not vanish: |B| = {b:.3e}"
        )));
    }
    let m = m2.sqrt();

    // Orbit invariant of the (rescaled-to-unit) frame.
    let p = (frame.q.x * frame.qp.x.conj()).im_norm() / m2;
    if p <= tol {
        return Err(Error::TypeP1Input(format!("p = {p:.3e}")));
    }

    // Branch scalars.
    let s = (1.0 - 4.0 * p * p).max(0.0).sqrt();
    let alpha_sq = match branch {
        Branch::Low => 1.0 - s,
        Branch::High => 1.0 + s,
    };
    let alpha_u = alpha_sq.sqrt();
    let beta_u = (2.0 - alpha_sq).sqrt();
    let alpha = alpha_u * m;
    let beta = beta_u * m;

    // Scaled reference; its x-parts are a real scalar and a pure -i
    // multiple, so u_r = x_r conj(x'_r) always points along +i.
    let refer = reference_frame().biscale(alpha, beta);
    let x_r = refer.q.x;
    let y_r = refer.q.y;
    let target_xnorm_sq = 0.5 * alpha * alpha;

    // Normal-form angle: x-parts of frame.rotate(t0) are orthogonal.
    let c2 = frame.q.x.dot(frame.qp.x);
    let d2 = 0.5 * (frame.qp.x.norm_sq() - frame.q.x.norm_sq());
    let amplitude = (c2 * c2 + d2 * d2).sqrt();
    let half_pi = std::f64::consts::FRAC_PI_2;
    let t0 = if amplitude <= tol * m2 {
        // Balanced class (every rotation works). For regular inputs this
        // cannot occur on the exact variety.
        if (p - 0.5).abs() > (tol * 10.0).max(1e-7) {
            return Err(Error::Degenerate(format!(
                "normal-form ambiguity at regular invariant p = {p}"
            )));
        }
        0.0
    } else {
        let mut t = 0.5 * (-c2).atan2(d2);
        while t < 0.0 {
            t += half_pi;
        }
        while t >= half_pi {
            t -= half_pi;
        }
        t
    };

    // Among the four quarter-turn representatives pick the one whose
    // x-part norm matches the chosen branch (smallest index on ties).
    let mut best_k = 0usize;
    let mut best_err = f64::INFINITY;
    for k in 0..4 {
        let cand = frame.rotate(t0 + k as f64 * half_pi);
        let err = (cand.q.x.norm_sq() - target_xnorm_sq).abs();
        if err < best_err - 1e-15 {
            best_err = err;
            best_k = k;
        }
    }
    let t_sel = t0 + best_k as f64 * half_pi;
    let target = frame.rotate(t_sel);

    // Align the pure-imaginary products u = x conj(x').
    let u_t = (target.q.x * target.qp.x.conj()).im();
    let u_norm = u_t.norm();
    if u_norm <= tol * m2 {
        return Err(Error::Degenerate(
            "vanishing x-part product after normalization".into(),
        ));
    }
    let n2 = u_t / u_norm;
    let n1 = Quaternion::I;
    let c_raw = Quaternion::ONE - n2 * n1;
    let c = if c_raw.norm() < 1e-8 {
        // Antipodal axes: any half-turn about an axis orthogonal to n1.
        Quaternion::J
    } else {
        c_raw / c_raw.norm()
    };

    // Divide out the remaining right factors.
    let xr_nsq = x_r.norm_sq();
    let yr_nsq = y_r.norm_sq();
    if xr_nsq <= 0.0 || yr_nsq <= 0.0 {
        return Err(Error::Degenerate("degenerate scaled reference".into()));
    }
    let a = x_r.conj() * c.conj() * target.q.x / xr_nsq;
    let b_coord = y_r.conj() * c.conj() * target.q.y / yr_nsq;

    let g = GroupElementG0::new(
        a.normalized()
            .ok_or_else(|| Error::Degenerate("zero a-coordinate".into()))?,
        b_coord
            .normalized()
            .ok_or_else(|| Error::Degenerate("zero b-coordinate".into()))?,
        c,
        false,
    )?;

    let theta = -t_sel;
    let rec = Reconstruction {
        g,
        alpha,
        beta,
        theta,
        branch,
        residual: 0.0,
    };
    let residual = rec.assemble().max_abs_diff(frame);
    Ok(Reconstruction { residual, ..rec })
}
