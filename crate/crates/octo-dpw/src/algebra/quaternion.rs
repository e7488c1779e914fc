//! Real and complexified quaternions.
//!
//! `Quaternion` is the ordinary division algebra H with basis `1, i, j, k`
//! (`i*j = k`, `j*k = i`, `k*i = j`). `CQuaternion` is the complexification
//! `H (x) C`: same multiplication rules with `Complex64` components. The
//! complexification is an associative algebra with zero divisors; inverses
//! exist exactly when the complex norm `N(q) = w^2 + x^2 + y^2 + z^2` is
//! nonzero.

use num_complex::Complex64;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// A quaternion `w + x i + y j + z k` with real components.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize, serde::Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    /// Embeds a real scalar.
    #[inline]
    pub const fn scalar(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Builds a pure-imaginary quaternion `x i + y j + z k`.
    #[inline]
    pub const fn pure(x: f64, y: f64, z: f64) -> Self {
        Self::new(0.0, x, y, z)
    }

    #[inline]
    pub const fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub const fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// Quaternion conjugate `w - x i - y j - z k`.
    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Multiplicative norm `N(q) = q * conj(q) = w^2 + x^2 + y^2 + z^2`.
    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Euclidean inner product of the component vectors.
    #[inline]
    pub fn dot(self, rhs: Self) -> f64 {
        self.w * rhs.w + self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    /// Scalar (real) part.
    #[inline]
    pub fn re(self) -> f64 {
        self.w
    }

    /// Imaginary part as a quaternion with zero scalar component.
    #[inline]
    pub fn im(self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    /// Euclidean length of the imaginary part.
    #[inline]
    pub fn im_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Multiplicative inverse `conj(q) / N(q)`; `None` for (near-)zero input.
    pub fn inverse(self) -> Option<Self> {
        let n = self.norm_sq();
        if n == 0.0 {
            None
        } else {
            Some(self.conj() / n)
        }
    }

    /// Returns `q / |q|`; `None` for zero input.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n == 0.0 {
            None
        } else {
            Some(self / n)
        }
    }

    /// Largest absolute component (max-norm), handy for residual reporting.
    #[inline]
    pub fn max_abs(self) -> f64 {
        self.w
            .abs()
            .max(self.x.abs())
            .max(self.y.abs())
            .max(self.z.abs())
    }

    /// Conjugation action `q v conj(q)`; a rotation of the imaginary part
    /// when `|q| = 1`.
    #[inline]
    pub fn rotate(self, v: Self) -> Self {
        self * v * self.conj()
    }

    /// Quaternion exponential. For pure `q` with `|q| = t` this is
    /// `cos t + sin t * q/t`.
    pub fn exp(self) -> Self {
        let t = self.im_norm();
        let ew = self.w.exp();
        if t < 1e-300 {
            return Self::scalar(ew);
        }
        let s = ew * t.sin() / t;
        Self::new(ew * t.cos(), s * self.x, s * self.y, s * self.z)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, r: Self) -> Self {
        Self::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, r: Self) -> Self {
        Self::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, r: Self) -> Self {
        Self::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

/// A complexified quaternion: `w + x i + y j + z k` with complex components.
///
/// `i, j, k` commute with the complex unit; quaternion conjugation
/// (`conj_q`) negates `x, y, z` while complex conjugation (`conj_c`)
/// conjugates each component. On the unit circle of a loop parameter the
/// composite `conj_q . conj_c` plays the role of the adjoint.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CQuaternion {
    pub w: Complex64,
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

impl CQuaternion {
    pub const ZERO: Self = Self::new(C_ZERO, C_ZERO, C_ZERO, C_ZERO);
    pub const ONE: Self = Self::new(C_ONE, C_ZERO, C_ZERO, C_ZERO);

    #[inline]
    pub const fn new(w: Complex64, x: Complex64, y: Complex64, z: Complex64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub fn scalar(w: Complex64) -> Self {
        Self::new(w, C_ZERO, C_ZERO, C_ZERO)
    }

    #[inline]
    pub const fn to_array(self) -> [Complex64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub const fn from_array(a: [Complex64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// Embeds a real quaternion.
    #[inline]
    pub fn from_real(q: Quaternion) -> Self {
        Self::new(q.w.into(), q.x.into(), q.y.into(), q.z.into())
    }

    /// Real parts of the components (the real quaternion this approximates
    /// when the imaginary defect is negligible).
    #[inline]
    pub fn real_part(self) -> Quaternion {
        Quaternion::new(self.w.re, self.x.re, self.y.re, self.z.re)
    }

    /// Largest absolute imaginary component: distance from being a real
    /// quaternion.
    #[inline]
    pub fn imag_defect(self) -> f64 {
        self.w
            .im
            .abs()
            .max(self.x.im.abs())
            .max(self.y.im.abs())
            .max(self.z.im.abs())
    }

    /// Quaternion conjugate (negates `x, y, z`, keeps complex components).
    #[inline]
    pub fn conj_q(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Componentwise complex conjugate.
    #[inline]
    pub fn conj_c(self) -> Self {
        Self::new(self.w.conj(), self.x.conj(), self.y.conj(), self.z.conj())
    }

    /// Complex multiplicative norm `N(q) = w^2 + x^2 + y^2 + z^2`
    /// (a complex number; multiplicative but not positive).
    #[inline]
    pub fn norm_c(self) -> Complex64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Euclidean magnitude over the 8 real dimensions.
    #[inline]
    pub fn abs_sq(self) -> f64 {
        self.w.norm_sqr() + self.x.norm_sqr() + self.y.norm_sqr() + self.z.norm_sqr()
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.abs_sq().sqrt()
    }

    #[inline]
    pub fn max_abs(self) -> f64 {
        self.w
            .norm()
            .max(self.x.norm())
            .max(self.y.norm())
            .max(self.z.norm())
    }

    /// Multiplicative inverse `conj_q(q) / N(q)`; `None` when `N(q)` is
    /// (numerically) zero — the complexification has zero divisors.
    pub fn inverse(self) -> Option<Self> {
        let n = self.norm_c();
        if n.norm() < 1e-300 {
            None
        } else {
            Some(self.conj_q() * (C_ONE / n))
        }
    }

    /// Scalar (complex) part.
    #[inline]
    pub fn re(self) -> Complex64 {
        self.w
    }

    /// Zeroes the scalar component.
    #[inline]
    pub fn im(self) -> Self {
        Self::new(C_ZERO, self.x, self.y, self.z)
    }
}

impl From<Quaternion> for CQuaternion {
    fn from(q: Quaternion) -> Self {
        Self::from_real(q)
    }
}

impl Add for CQuaternion {
    type Output = Self;
    #[inline]
    fn add(self, r: Self) -> Self {
        Self::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl AddAssign for CQuaternion {
    #[inline]
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl Sub for CQuaternion {
    type Output = Self;
    #[inline]
    fn sub(self, r: Self) -> Self {
        Self::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl SubAssign for CQuaternion {
    #[inline]
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

impl Neg for CQuaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for CQuaternion {
    type Output = Self;
    #[inline]
    fn mul(self, r: Self) -> Self {
        Self::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

impl Mul<Complex64> for CQuaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: Complex64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<f64> for CQuaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}
