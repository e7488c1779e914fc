//! Twisted loops of Lie-algebra elements and the extended connection.
//!
//! A twisted loop stores a Laurent coefficient for every power in
//! `[-n, n]`; the twisting condition requires the coefficient at power `k`
//! to be homogeneous of grade `k mod 4`. Connections real on the unit
//! circle additionally satisfy `coeff(-k) = conj(coeff(k))`.

use super::laurent::{OLoop, QLoop};
use super::lie::LieElement;
use crate::grid::{aggregate, Grid};
use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A truncated Laurent loop with [`LieElement`] coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedLoop {
    n: i32,
    coeffs: Vec<LieElement>,
    /// Accumulated truncation-error estimate from bracket products.
    pub tail: f64,
}

impl TwistedLoop {
    pub fn zero(n: i32) -> Self {
        assert!(n >= 0);
        Self {
            n,
            coeffs: vec![LieElement::ZERO; (2 * n + 1) as usize],
            tail: 0.0,
        }
    }

    pub fn monomial(n: i32, k: i32, value: LieElement) -> Self {
        let mut l = Self::zero(n);
        l.set(k, value);
        l
    }

    pub fn truncation(&self) -> i32 {
        self.n
    }

    #[inline]
    pub fn coeff(&self, k: i32) -> LieElement {
        if k.abs() > self.n {
            LieElement::ZERO
        } else {
            self.coeffs[(k + self.n) as usize]
        }
    }

    #[inline]
    pub fn set(&mut self, k: i32, value: LieElement) {
        assert!(k.abs() <= self.n, "power {k} outside truncation {}", self.n);
        self.coeffs[(k + self.n) as usize] = value;
    }

    pub fn add_to(&mut self, k: i32, value: LieElement) {
        let cur = self.coeff(k);
        self.set(k, cur + value);
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.max_abs()))
    }

    pub fn l1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.max_abs()).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.n.max(other.n);
        let mut worst = 0.0f64;
        for k in -n..=n {
            worst = worst.max((self.coeff(k) - other.coeff(k)).max_abs());
        }
        worst
    }

    pub fn eval(&self, lambda: Complex64) -> LieElement {
        let mut acc = LieElement::ZERO;
        for k in -self.n..=self.n {
            let c = self.coeff(k);
            if c.max_abs() != 0.0 {
                acc = acc + c.scale(lambda.powi(k));
            }
        }
        acc
    }

    /// Worst-over-powers distance of coefficient `k` from grade `k mod 4`.
    pub fn grading_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for k in -self.n..=self.n {
            worst = worst.max(self.coeff(k).grading_defect(k));
        }
        worst
    }

    /// Projects every coefficient onto its mandated grade.
    pub fn project_twisted(&self) -> Self {
        let mut out = Self::zero(self.n);
        out.tail = self.tail;
        for k in -self.n..=self.n {
            out.set(k, self.coeff(k).project_grade(k));
        }
        out
    }

    /// Deviation from being real-valued on the unit circle.
    pub fn reality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..=self.n {
            worst = worst.max((self.coeff(-k) - self.coeff(k).conj_c()).max_abs());
        }
        worst
    }

    /// Truncated bracket `[self, other]` by coefficient convolution.
    pub fn bracket(&self, other: &Self) -> Self {
        let n = self.n.max(other.n);
        let mut out = Self::zero(n);
        let mut discarded = 0.0f64;
        for k in -self.n..=self.n {
            let a = self.coeff(k);
            if a.max_abs() == 0.0 {
                continue;
            }
            for l in -other.n..=other.n {
                let b = other.coeff(l);
                if b.max_abs() == 0.0 {
                    continue;
                }
                let p = a.bracket(&b);
                let m = k + l;
                if m.abs() <= n {
                    out.add_to(m, p);
                } else {
                    discarded += p.max_abs();
                }
            }
        }
        out.tail = discarded + 2.0 * (self.tail * other.l1() + other.tail * self.l1());
        out
    }

    /// The loop of `alpha` coordinates.
    pub fn alpha_loop(&self) -> QLoop {
        let mut l = QLoop::zero(self.n);
        for k in -self.n..=self.n {
            l.set(k, self.coeff(k).alpha);
        }
        l
    }

    pub fn beta_loop(&self) -> QLoop {
        let mut l = QLoop::zero(self.n);
        for k in -self.n..=self.n {
            l.set(k, self.coeff(k).beta);
        }
        l
    }

    pub fn delta_loop(&self) -> QLoop {
        let mut l = QLoop::zero(self.n);
        for k in -self.n..=self.n {
            l.set(k, self.coeff(k).delta);
        }
        l
    }

    pub fn translation_loop(&self) -> OLoop {
        let mut l = OLoop::zero(self.n);
        for k in -self.n..=self.n {
            l.set(k, self.coeff(k).t);
        }
        l
    }
}

impl std::ops::Add for &TwistedLoop {
    type Output = TwistedLoop;
    fn add(self, rhs: Self) -> TwistedLoop {
        let n = self.n.max(rhs.n);
        let mut out = TwistedLoop::zero(n);
        for k in -n..=n {
            out.set(k, self.coeff(k) + rhs.coeff(k));
        }
        out.tail = self.tail + rhs.tail;
        out
    }
}

impl std::ops::Sub for &TwistedLoop {
    type Output = TwistedLoop;
    fn sub(self, rhs: Self) -> TwistedLoop {
        let n = self.n.max(rhs.n);
        let mut out = TwistedLoop::zero(n);
        for k in -n..=n {
            out.set(k, self.coeff(k) - rhs.coeff(k));
        }
        out.tail = self.tail + rhs.tail;
        out
    }
}

/// A Lie-algebra valued 1-form `p du + q dv` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LieForm {
    pub p: LieElement,
    pub q: LieElement,
}

impl LieForm {
    pub const ZERO: Self = Self {
        p: LieElement::ZERO,
        q: LieElement::ZERO,
    };

    pub fn project_grade(&self, k: i32) -> Self {
        Self {
            p: self.p.project_grade(k),
            q: self.q.project_grade(k),
        }
    }

    /// The `dz` part evaluated on `(du, dv)`: `w' = w(dz-part)`,
    /// with `w'(du) = (p - i q)/2` and `w'(dv) = i (p - i q)/2`.
    fn dz_part(&self) -> Self {
        let half = (self.p - self.q.scale(I)).scale(0.5.into());
        Self {
            p: half,
            q: half.scale(I),
        }
    }

    /// The `dzbar` part: `w''(du) = (p + i q)/2`, `w''(dv) = -i (p + i q)/2`.
    fn dzbar_part(&self) -> Self {
        let half = (self.p + self.q.scale(I)).scale(0.5.into());
        Self {
            p: half,
            q: half.scale(-I),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.p.max_abs().max(self.q.max_abs())
    }
}

/// Inserts the loop parameter into a flat connection form.
///
/// The graded pieces of `form` are redistributed over Laurent powers:
/// `lambda^{-2}` carries the `dz` part of the grade-2 piece, `lambda^{-1}`
/// the grade `-1` piece, `lambda^0` the grade-0 piece, `lambda^{+1}` the
/// grade `+1` piece and `lambda^{+2}` the `dzbar` part of grade 2. For the
/// surface class treated here the grade `-1` piece must be of type `dz`
/// and the grade `+1` piece of type `dzbar`; a violation beyond `tol`
/// (relative to the form's magnitude) is reported as `NotSigmaV`.
///
/// At `lambda = 1` the extension sums back to `form` exactly.
pub fn assemble_extended(
    form: &LieForm,
    n: i32,
    tol: f64,
) -> crate::Result<(TwistedLoop, TwistedLoop)> {
    if n < 2 {
        return Err(crate::Error::InvalidInput(
            "extended connection needs truncation >= 2".into(),
        ));
    }
    let scale = form.max_abs().max(1.0);
    let g0 = form.project_grade(0);
    let g1 = form.project_grade(1);
    let g2 = form.project_grade(2);
    let gm1 = form.project_grade(3);

    let gm1_bad = gm1.dzbar_part().max_abs();
    let g1_bad = g1.dz_part().max_abs();
    if gm1_bad > tol * scale || g1_bad > tol * scale {
        return Err(crate::Error::NotSigmaV(format!(
            "grade -1 dzbar mass {gm1_bad:.3e} / grade +1 dz mass {g1_bad:.3e} exceed {:.3e}",
            tol * scale
        )));
    }

    let g2p = g2.dz_part();
    let g2pp = g2.dzbar_part();

    let mut au = TwistedLoop::zero(n);
    let mut av = TwistedLoop::zero(n);
    au.set(-2, g2p.p);
    av.set(-2, g2p.q);
    au.set(-1, gm1.p);
    av.set(-1, gm1.q);
    au.set(0, g0.p);
    av.set(0, g0.q);
    au.set(1, g1.p);
    av.set(1, g1.q);
    au.set(2, g2pp.p);
    av.set(2, g2pp.q);
    Ok((au, av))
}

/// Discrete flatness residual `d_u A_v - d_v A_u + [A_u, A_v]` of a
/// loop-valued connection given on a grid, returned coefficient-complete.
pub fn zero_curvature_residual(
    au: &Grid<TwistedLoop>,
    av: &Grid<TwistedLoop>,
) -> crate::Result<Grid<TwistedLoop>> {
    if au.spec != av.spec {
        return Err(crate::Error::InvalidInput(
            "connection component grids disagree".into(),
        ));
    }
    let n = au
        .iter()
        .chain(av.iter())
        .map(|l| l.truncation())
        .max()
        .unwrap_or(0);

    let mut residual = Grid::fill(au.spec, TwistedLoop::zero(n));
    // Differentiate per Laurent power so the scalar grid stencils apply.
    for k in -n..=n {
        let au_k = au.map(|l| l.coeff(k));
        let av_k = av.map(|l| l.coeff(k));
        let dv_du = av_k.deriv_u();
        let du_dv = au_k.deriv_v();
        for j in 0..au.spec.nv {
            for i in 0..au.spec.nu {
                let mut r = residual.get(i, j).clone();
                r.add_to(k, *dv_du.get(i, j) - *du_dv.get(i, j));
                residual.set(i, j, r);
            }
        }
    }
    for j in 0..au.spec.nv {
        for i in 0..au.spec.nu {
            let br = au.get(i, j).bracket(av.get(i, j));
            let r = residual.get(i, j) + &br;
            residual.set(i, j, r);
        }
    }
    Ok(residual)
}

/// Max/mean of the coefficient-wise residual magnitude over the interior
/// (margin 1 keeps one-sided boundary stencils out of the statistics).
pub fn residual_stats(residual: &Grid<TwistedLoop>) -> (f64, f64) {
    aggregate(residual, 1, |l| l.max_abs())
}
