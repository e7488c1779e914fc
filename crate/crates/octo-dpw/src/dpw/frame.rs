//! Group-valued loops: frames of the loop-group pipeline.
//!
//! A frame is an affine map depending on the loop parameter,
//! `o = (x, y) -> (c x a, c y b) + t`, stored in the factored coordinates
//! `(a, b, c)` (quaternionic loops) plus the translation loop `t`.
//! Composition is anti-homomorphic in `a` and `b` and homomorphic in `c`.

use crate::algebra::COctonion;
use crate::loops::{OLoop, QLoop};
use num_complex::Complex64;

/// An affine loop-group element in factored coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupLoop {
    pub a: QLoop,
    pub b: QLoop,
    pub c: QLoop,
    pub t: OLoop,
}

impl GroupLoop {
    pub fn identity(n: i32) -> Self {
        Self {
            a: QLoop::one(n),
            b: QLoop::one(n),
            c: QLoop::one(n),
            t: OLoop::zero(n),
        }
    }

    pub fn truncation(&self) -> i32 {
        self.a
            .truncation()
            .max(self.b.truncation())
            .max(self.c.truncation())
            .max(self.t.truncation())
    }

    /// Applies the linear part to an octonionic loop:
    /// slots `(x, y) -> (c x a, c y b)` by loop convolution.
    pub fn linear_apply(&self, o: &OLoop) -> OLoop {
        let x = self.c.mul(&o.x_loop()).mul(&self.a);
        let y = self.c.mul(&o.y_loop()).mul(&self.b);
        OLoop::from_slots(&x, &y)
    }

    /// Full affine action on an octonionic loop.
    pub fn apply(&self, o: &OLoop) -> OLoop {
        &self.linear_apply(o) + &self.t
    }

    /// `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &Self) -> Self {
        Self {
            a: inner.a.mul(&self.a),
            b: inner.b.mul(&self.b),
            c: self.c.mul(&inner.c),
            t: &self.linear_apply(&inner.t) + &self.t,
        }
    }

    /// Inverse of a frame whose factors are unitary on the circle
    /// (adjoint loops); exact up to the coefficient window.
    pub fn inverse_unitary(&self) -> Self {
        let lin_inv = Self {
            a: self.a.adjoint(),
            b: self.b.adjoint(),
            c: self.c.adjoint(),
            t: OLoop::zero(self.t.truncation()),
        };
        let t = -&lin_inv.linear_apply(&self.t);
        Self { t, ..lin_inv }
    }

    /// Inverse of a frame with factors in `1 + (negative powers)`.
    pub fn inverse_minus(&self) -> crate::Result<Self> {
        let lin_inv = Self {
            a: self.a.inverse_minus()?,
            b: self.b.inverse_minus()?,
            c: self.c.inverse_minus()?,
            t: OLoop::zero(self.t.truncation()),
        };
        let t = -&lin_inv.linear_apply(&self.t);
        Ok(Self { t, ..lin_inv })
    }

    /// Pointwise evaluation of the affine map at `lambda`.
    pub fn eval_apply(&self, lambda: Complex64, o: COctonion) -> COctonion {
        let a = self.a.eval(lambda);
        let b = self.b.eval(lambda);
        let c = self.c.eval(lambda);
        let t = self.t.eval(lambda);
        COctonion::new(c * o.x * a, c * o.y * b) + t
    }

    /// Translation part evaluated at `lambda`.
    pub fn eval_translation(&self, lambda: Complex64) -> COctonion {
        self.t.eval(lambda)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.a
            .max_abs_diff(&other.a)
            .max(self.b.max_abs_diff(&other.b))
            .max(self.c.max_abs_diff(&other.c))
            .max(self.t.max_abs_diff(&other.t))
    }

    pub fn max_abs(&self) -> f64 {
        self.a
            .max_abs()
            .max(self.b.max_abs())
            .max(self.c.max_abs())
            .max(self.t.max_abs())
    }

    pub fn tail(&self) -> f64 {
        self.a.tail + self.b.tail + self.c.tail + self.t.tail
    }

    /// Deviation from the group-level twisting: `a` supported on even
    /// powers, `b = a(i lambda)`, `c` supported on multiples of four, and
    /// the translation on odd powers.
    pub fn twisting_defect(&self) -> f64 {
        self.a
            .support_defect(0, 2)
            .max(self.b.max_abs_diff(&self.a.rotate_i()))
            .max(self.c.support_defect(0, 4))
            .max(self.t.support_defect(1, 2))
    }

    /// Deviation of the factors from circle-unitarity plus of the
    /// translation from circle-reality — zero for a compact factor.
    pub fn unitary_defect(&self) -> f64 {
        self.a
            .unitarity_defect()
            .max(self.b.unitarity_defect())
            .max(self.c.unitarity_defect())
            .max(self.t.reality_defect())
    }
}

/// Weighted sum of frames, coefficient by coefficient (a chart
/// operation, not a group one — used by difference stencils and
/// Runge-Kutta updates).
pub(crate) fn lin_comb(terms: &[(f64, &GroupLoop)]) -> GroupLoop {
    let n = terms[0].1.truncation();
    let mut acc = GroupLoop {
        a: QLoop::zero(n),
        b: QLoop::zero(n),
        c: QLoop::zero(n),
        t: OLoop::zero(n),
    };
    for &(w, g) in terms {
        let s = Complex64::new(w, 0.0);
        acc.a = &acc.a + &g.a.scale(s);
        acc.b = &acc.b + &g.b.scale(s);
        acc.c = &acc.c + &g.c.scale(s);
        acc.t = &acc.t + &g.t.scale(s);
    }
    acc
}

/// One directional component of the Maurer-Cartan form `F^{-1} dF` from
/// a frame derivative `df` and the inverse `inv` at the same point:
/// `alpha = da a^{-1}`, `beta = db b^{-1}`, `delta = c^{-1} dc`, and the
/// translation `F^{-1}(dT)`.
pub(crate) fn maurer_cartan_component(
    df: &GroupLoop,
    inv: &GroupLoop,
) -> crate::loops::TwistedLoop {
    let n = df.truncation();
    let alpha = df.a.mul(&inv.a);
    let beta = df.b.mul(&inv.b);
    let delta = inv.c.mul(&df.c);
    let t = inv.linear_apply(&df.t);
    let mut out = crate::loops::TwistedLoop::zero(n);
    for k in -n..=n {
        out.set(
            k,
            crate::loops::LieElement::new(
                alpha.coeff(k),
                beta.coeff(k),
                delta.coeff(k),
                t.coeff(k),
            ),
        );
    }
    out
}
