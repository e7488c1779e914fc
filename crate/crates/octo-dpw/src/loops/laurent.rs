//! Truncated Laurent loops with quaternionic / octonionic coefficients.
//!
//! A loop is a finite sum `m(lambda) = sum_{k=-n..n} m_k lambda^k` with
//! coefficients in the complexified quaternions or octonions. Products
//! truncate back to the window `[-n, n]`; the discarded coefficient mass
//! (plus a first-order propagation of the operands' own tails) accumulates
//! in a `tail` estimate carried by every loop, so downstream consumers can
//! report how much truncation error a pipeline has ingested.
//!
//! On the unit circle the *adjoint* loop `m*(lambda) = conj(m(lambda))`
//! (quaternionic + complex conjugation, index flipped) is the pointwise
//! adjoint; for loops unitary on the circle it is the exact inverse.

use crate::algebra::{COctonion, CQuaternion};
use num_complex::Complex64;

/// Coefficient algebras usable inside a [`Loop`].
pub trait Coeff:
    Copy
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Neg<Output = Self>
    + std::ops::Mul<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn max_abs(&self) -> f64;
    /// Multiplication by a complex scalar (componentwise).
    fn scale(&self, s: Complex64) -> Self;
    /// Quaternionic/octonionic conjugate combined with complex
    /// conjugation — the pointwise adjoint on the unit circle.
    fn adjoint(&self) -> Self;
    /// Complex conjugation only (the reality involution on the circle).
    fn conj_c(&self) -> Self;
}

impl Coeff for CQuaternion {
    fn zero() -> Self {
        CQuaternion::ZERO
    }
    fn one() -> Self {
        CQuaternion::ONE
    }
    fn max_abs(&self) -> f64 {
        CQuaternion::max_abs(*self)
    }
    fn scale(&self, s: Complex64) -> Self {
        *self * s
    }
    fn adjoint(&self) -> Self {
        self.conj_q().conj_c()
    }
    fn conj_c(&self) -> Self {
        CQuaternion::conj_c(*self)
    }
}

impl Coeff for COctonion {
    fn zero() -> Self {
        COctonion::ZERO
    }
    fn one() -> Self {
        COctonion::ONE
    }
    fn max_abs(&self) -> f64 {
        COctonion::max_abs(*self)
    }
    fn scale(&self, s: Complex64) -> Self {
        COctonion::scale(*self, s)
    }
    fn adjoint(&self) -> Self {
        self.conj_o().conj_c()
    }
    fn conj_c(&self) -> Self {
        COctonion::conj_c(*self)
    }
}

/// A truncated Laurent loop over the coefficient algebra `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct Loop<T> {
    n: i32,
    /// Coefficients for powers `-n..=n`, index `k + n`.
    coeffs: Vec<T>,
    /// Accumulated truncation-error estimate.
    pub tail: f64,
}

pub type QLoop = Loop<CQuaternion>;
pub type OLoop = Loop<COctonion>;

impl<T: Coeff> Loop<T> {
    pub fn zero(n: i32) -> Self {
        assert!(n >= 0);
        Self {
            n,
            coeffs: vec![T::zero(); (2 * n + 1) as usize],
            tail: 0.0,
        }
    }

    /// The constant loop `1`.
    pub fn one(n: i32) -> Self {
        let mut l = Self::zero(n);
        l.set(0, T::one());
        l
    }

    /// The constant loop with value `c`.
    pub fn constant(n: i32, c: T) -> Self {
        let mut l = Self::zero(n);
        l.set(0, c);
        l
    }

    /// A single monomial `c lambda^k`.
    pub fn monomial(n: i32, k: i32, c: T) -> Self {
        let mut l = Self::zero(n);
        l.set(k, c);
        l
    }

    pub fn truncation(&self) -> i32 {
        self.n
    }

    #[inline]
    pub fn coeff(&self, k: i32) -> T {
        if k.abs() > self.n {
            T::zero()
        } else {
            self.coeffs[(k + self.n) as usize]
        }
    }

    #[inline]
    pub fn set(&mut self, k: i32, value: T) {
        assert!(k.abs() <= self.n, "power {k} outside truncation {}", self.n);
        self.coeffs[(k + self.n) as usize] = value;
    }

    pub fn add_to(&mut self, k: i32, value: T) {
        let cur = self.coeff(k);
        self.set(k, cur + value);
    }

    /// Changes the truncation window; shrinking adds the discarded mass to
    /// `tail`.
    pub fn resized(&self, n: i32) -> Self {
        let mut out = Self::zero(n);
        out.tail = self.tail;
        for k in -self.n..=self.n {
            if k.abs() <= n {
                out.set(k, self.coeff(k));
            } else {
                out.tail += self.coeff(k).max_abs();
            }
        }
        out
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.max_abs()))
    }

    /// Sum of coefficient magnitudes (submultiplicative loop norm).
    pub fn l1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.max_abs()).sum()
    }

    /// Largest `|k|` carrying a coefficient above `eps`.
    pub fn effective_degree(&self, eps: f64) -> i32 {
        let mut d = 0;
        for k in -self.n..=self.n {
            if self.coeff(k).max_abs() > eps {
                d = d.max(k.abs());
            }
        }
        d
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.n.max(other.n);
        let mut worst = 0.0f64;
        for k in -n..=n {
            worst = worst.max((self.coeff(k) - other.coeff(k)).max_abs());
        }
        worst
    }

    /// Pointwise evaluation (valid on and off the unit circle).
    pub fn eval(&self, lambda: Complex64) -> T {
        let mut acc = T::zero();
        for k in -self.n..=self.n {
            let c = self.coeff(k);
            if c.max_abs() != 0.0 {
                acc = acc + c.scale(lambda.powi(k));
            }
        }
        acc
    }

    /// The pointwise-adjoint loop (exact inverse for circle-unitary loops).
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.n);
        out.tail = self.tail;
        for k in -self.n..=self.n {
            out.set(k, self.coeff(-k).adjoint());
        }
        out
    }

    /// Pointwise complex conjugate on the circle: coefficients complex
    /// conjugated and index-flipped.
    pub fn bar_circle(&self) -> Self {
        let mut out = Self::zero(self.n);
        out.tail = self.tail;
        for k in -self.n..=self.n {
            out.set(k, self.coeff(-k).conj_c());
        }
        out
    }

    /// Deviation from being real-valued on the circle.
    pub fn reality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..=self.n {
            worst = worst.max((self.coeff(-k) - self.coeff(k).conj_c()).max_abs());
        }
        worst
    }

    /// `m(i lambda)`: coefficient `k` picks up `i^k`.
    pub fn rotate_i(&self) -> Self {
        let mut out = Self::zero(self.n);
        out.tail = self.tail;
        let i = Complex64::new(0.0, 1.0);
        for k in -self.n..=self.n {
            out.set(k, self.coeff(k).scale(i.powi(k)));
        }
        out
    }

    /// Keeps only powers with `k ≡ r (mod s)`.
    pub fn support_filter(&self, r: i32, s: i32) -> Self {
        let mut out = Self::zero(self.n);
        out.tail = self.tail;
        for k in -self.n..=self.n {
            if (k - r).rem_euclid(s) == 0 {
                out.set(k, self.coeff(k));
            }
        }
        out
    }

    /// Coefficient mass on powers with `k !≡ r (mod s)`.
    pub fn support_defect(&self, r: i32, s: i32) -> f64 {
        let mut worst = 0.0f64;
        for k in -self.n..=self.n {
            if (k - r).rem_euclid(s) != 0 {
                worst = worst.max(self.coeff(k).max_abs());
            }
        }
        worst
    }

    /// Strictly positive part (powers `>= 1`).
    pub fn pos_part(&self) -> Self {
        let mut out = Self::zero(self.n);
        for k in 1..=self.n {
            out.set(k, self.coeff(k));
        }
        out
    }

    /// Strictly negative part (powers `<= -1`).
    pub fn neg_part(&self) -> Self {
        let mut out = Self::zero(self.n);
        for k in 1..=self.n {
            out.set(-k, self.coeff(-k));
        }
        out
    }

    /// Non-negative part (powers `>= 0`).
    pub fn nonneg_part(&self) -> Self {
        let mut out = self.pos_part();
        out.set(0, self.coeff(0));
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self::zero(self.n);
        out.tail = self.tail * s.norm();
        for k in -self.n..=self.n {
            out.set(k, self.coeff(k).scale(s));
        }
        out
    }

    /// Truncated product with tail-mass bookkeeping.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.n.max(rhs.n);
        let mut out = Self::zero(n);
        let mut discarded = 0.0f64;
        for k in -self.n..=self.n {
            let a = self.coeff(k);
            if a.max_abs() == 0.0 {
                continue;
            }
            for l in -rhs.n..=rhs.n {
                let b = rhs.coeff(l);
                if b.max_abs() == 0.0 {
                    continue;
                }
                let p = a * b;
                let m = k + l;
                if m.abs() <= n {
                    out.add_to(m, p);
                } else {
                    discarded += p.max_abs();
                }
            }
        }
        out.tail = discarded + self.tail * rhs.l1() + rhs.tail * self.l1();
        out
    }
}

impl<T: Coeff> std::ops::Add for &Loop<T> {
    type Output = Loop<T>;
    fn add(self, rhs: Self) -> Loop<T> {
        let n = self.n.max(rhs.n);
        let mut out = Loop::zero(n);
        for k in -n..=n {
            out.set(k, self.coeff(k) + rhs.coeff(k));
        }
        out.tail = self.tail + rhs.tail;
        out
    }
}

impl<T: Coeff> std::ops::Sub for &Loop<T> {
    type Output = Loop<T>;
    fn sub(self, rhs: Self) -> Loop<T> {
        let n = self.n.max(rhs.n);
        let mut out = Loop::zero(n);
        for k in -n..=n {
            out.set(k, self.coeff(k) - rhs.coeff(k));
        }
        out.tail = self.tail + rhs.tail;
        out
    }
}

impl<T: Coeff> std::ops::Neg for &Loop<T> {
    type Output = Loop<T>;
    fn neg(self) -> Loop<T> {
        let mut out = Loop::zero(self.n);
        for k in -self.n..=self.n {
            out.set(k, -self.coeff(k));
        }
        out.tail = self.tail;
        out
    }
}

impl QLoop {
    /// Inverse of a loop with only non-negative powers and invertible
    /// constant term, by the finite Neumann series (exact within the
    /// truncation window).
    pub fn inverse_plus(&self) -> crate::Result<Self> {
        let neg_mass = self.neg_part().max_abs();
        if neg_mass > 1e-12 * self.max_abs().max(1.0) {
            return Err(crate::Error::FactorizationDiverged(format!(
                "inverse_plus on a loop with negative-power mass {neg_mass:.3e}"
            )));
        }
        let c0 = self.coeff(0);
        let c0_inv = c0.inverse().ok_or_else(|| {
            crate::Error::FactorizationDiverged("non-invertible constant term".into())
        })?;
        // self = c0 (1 + p), p strictly positive powers.
        let p = {
            let mut l = self.pos_part();
            for k in 1..=l.n {
                l.set(k, c0_inv * l.coeff(k));
            }
            l
        };
        // (1 + p)^{-1} = sum (-p)^j, nilpotent within the window.
        let mut inv = Self::one(self.n);
        let mut term = Self::one(self.n);
        for j in 1..=self.n {
            term = term.mul(&p);
            if term.max_abs() == 0.0 {
                break;
            }
            let signed = if j % 2 == 1 { -&term } else { term.clone() };
            inv = &inv + &signed;
        }
        // inverse = (1+p)^{-1} c0^{-1}.
        let mut out = inv;
        for k in 0..=out.n {
            out.set(k, out.coeff(k) * c0_inv);
        }
        Ok(out)
    }

    /// Inverse of a loop with only non-positive powers and invertible
    /// constant term (mirror of [`QLoop::inverse_plus`]).
    pub fn inverse_minus(&self) -> crate::Result<Self> {
        let pos_mass = self.pos_part().max_abs();
        if pos_mass > 1e-12 * self.max_abs().max(1.0) {
            return Err(crate::Error::FactorizationDiverged(format!(
                "inverse_minus on a loop with positive-power mass {pos_mass:.3e}"
            )));
        }
        let flipped = self.flip_powers();
        let inv = flipped.inverse_plus()?;
        Ok(inv.flip_powers())
    }

    /// `m(1/lambda)` — flips the coefficient indexes.
    pub fn flip_powers(&self) -> Self {
        let mut out = Self::zero(self.n);
        out.tail = self.tail;
        for k in -self.n..=self.n {
            out.set(k, self.coeff(-k));
        }
        out
    }

    /// Transpose in the standard 2x2 complex representation
    /// (`w + xi + yj + zk -> w + xi - yj + zk`); reverses products.
    pub fn transpose_loop(&self) -> Self {
        let mut out = Self::zero(self.n);
        out.tail = self.tail;
        for k in -self.n..=self.n {
            let q = self.coeff(k);
            out.set(k, CQuaternion::new(q.w, q.x, -q.y, q.z));
        }
        out
    }

    /// Worst deviation of `self * adjoint(self)` from the constant loop 1.
    pub fn unitarity_defect(&self) -> f64 {
        self.mul(&self.adjoint()).max_abs_diff(&Self::one(self.n))
    }
}

impl OLoop {
    /// Left multiplication by `e4` applied to every coefficient.
    pub fn left_e4(&self) -> Self {
        let mut out = Self::zero(self.truncation());
        out.tail = self.tail;
        for k in -self.truncation()..=self.truncation() {
            out.set(k, self.coeff(k).left_e4());
        }
        out
    }

    /// The loop of first quaternionic slots.
    pub fn x_loop(&self) -> QLoop {
        let mut out = QLoop::zero(self.truncation());
        out.tail = self.tail;
        for k in -self.truncation()..=self.truncation() {
            out.set(k, self.coeff(k).x);
        }
        out
    }

    /// The loop of second quaternionic slots.
    pub fn y_loop(&self) -> QLoop {
        let mut out = QLoop::zero(self.truncation());
        out.tail = self.tail;
        for k in -self.truncation()..=self.truncation() {
            out.set(k, self.coeff(k).y);
        }
        out
    }

    /// Reassembles an octonionic loop from its two quaternionic slots.
    pub fn from_slots(x: &QLoop, y: &QLoop) -> Self {
        let n = x.truncation().max(y.truncation());
        let mut out = Self::zero(n);
        out.tail = x.tail + y.tail;
        for k in -n..=n {
            out.set(k, COctonion::new(x.coeff(k), y.coeff(k)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_quaternion, Quaternion};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_qloop(rng: &mut impl rand::Rng, n: i32, deg: i32) -> QLoop {
        let mut l = QLoop::zero(n);
        for k in -deg..=deg {
            l.set(k, CQuaternion::from_real(random_quaternion(rng)) * 0.3);
        }
        l
    }

    #[test]
    fn product_matches_pointwise_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let a = random_qloop(&mut rng, 8, 3);
        let b = random_qloop(&mut rng, 8, 3);
        let p = a.mul(&b);
        for t in [0.0, 0.7, 2.9] {
            let lam = Complex64::from_polar(1.0, t);
            let lhs = p.eval(lam);
            let rhs = a.eval(lam) * b.eval(lam);
            assert!((lhs - rhs).max_abs() < 1e-12);
        }
        assert_eq!(p.tail, 0.0, "no discard expected at degree 6 <= 8");
    }

    #[test]
    fn truncation_records_tail() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let a = random_qloop(&mut rng, 3, 3);
        let b = random_qloop(&mut rng, 3, 3);
        let p = a.mul(&b);
        assert!(p.tail > 0.0, "degree-6 content must be discarded at n = 3");
    }

    #[test]
    fn adjoint_inverts_unitary_loops() {
        // diag(lambda, 1) in the 2x2 representation: w = (lambda + 1)/2,
        // x = (lambda - 1)/(2i). Pointwise in U(2), hence circle-unitary.
        let half = Complex64::new(0.5, 0.0);
        let half_i = Complex64::new(0.0, 0.5);
        let mut u = QLoop::zero(4);
        u.set(0, CQuaternion::new(half, half_i, 0.0.into(), 0.0.into()));
        u.set(1, CQuaternion::new(half, -half_i, 0.0.into(), 0.0.into()));
        let defect = u.unitarity_defect();
        assert!(defect < 1e-14, "defect {defect}");
        let prod = u.mul(&u.adjoint());
        assert!(prod.max_abs_diff(&QLoop::one(4)) < 1e-14);
    }

    #[test]
    fn inverse_plus_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let mut l = QLoop::one(6);
        for k in 1..=4 {
            l.set(k, CQuaternion::from_real(random_quaternion(&mut rng)) * 0.2);
        }
        let inv = l.inverse_plus().unwrap();
        let prod = l.mul(&inv);
        // Exact within the window: residual only beyond power 6.
        for k in -6..=6 {
            let expect = if k == 0 { CQuaternion::ONE } else { CQuaternion::ZERO };
            assert!(
                (prod.coeff(k) - expect).max_abs() < 1e-10,
                "power {k} residual {}",
                (prod.coeff(k) - expect).max_abs()
            );
        }
    }

    #[test]
    fn rotate_i_matches_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(54);
        let l = random_qloop(&mut rng, 5, 5);
        let r = l.rotate_i();
        let lam = Complex64::from_polar(1.0, 1.1);
        let i = Complex64::new(0.0, 1.0);
        assert!((r.eval(lam) - l.eval(i * lam)).max_abs() < 1e-12);
    }

    #[test]
    fn reality_defect_detects_imaginary_loops() {
        let mut real_loop = QLoop::zero(3);
        let q = CQuaternion::from_real(Quaternion::new(0.3, 1.0, -0.2, 0.5));
        real_loop.set(1, q);
        real_loop.set(-1, q.conj_c());
        real_loop.set(0, CQuaternion::from_real(Quaternion::ONE));
        assert!(real_loop.reality_defect() < 1e-15);
        let mut bad = real_loop.clone();
        bad.set(2, CQuaternion::scalar(Complex64::new(0.0, 0.4)));
        assert!(bad.reality_defect() > 0.3);
    }

    #[test]
    fn transpose_reverses_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        let a = random_qloop(&mut rng, 6, 2);
        let b = random_qloop(&mut rng, 6, 2);
        let lhs = a.mul(&b).transpose_loop();
        let rhs = b.transpose_loop().mul(&a.transpose_loop());
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }
}
