//! Octonions realized as pairs of quaternions.
//!
//! An octonion is a pair `q = (x, y)` of quaternions with the
//! Cayley–Dickson-style product
//!
//! ```text
//! (x, y) * (x', y') = (x x' - y' conj(y),  x' y + conj(x) y')
//! ```
//!
//! conjugation `conj(x, y) = (conj(x), -y)` and the multiplicative norm
//! `N(q) = q * conj(q) = |x|^2 + |y|^2`. The algebra is alternative but not
//! associative; the associator `(a b) c - a (b c)` is totally antisymmetric.
//!
//! The standard orthonormal basis is indexed `e0..e7` with
//! `e0..e3 = (1,0), (i,0), (j,0), (k,0)` and `e4..e7 = (0,1), (0,i), (0,j),
//! (0,k)`. `e4` plays a distinguished role: left multiplication by it maps
//! `(x, y)` to `(-y, x)` and squares to `-Id`, giving the complex structure
//! used throughout the isotropic-surface machinery.

use super::quaternion::{CQuaternion, Quaternion};
use num_complex::Complex64;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// Octonion as a quaternion pair `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize, serde::Deserialize)]
pub struct Octonion {
    pub x: Quaternion,
    pub y: Quaternion,
}

impl Octonion {
    pub const ZERO: Self = Self::new(Quaternion::ZERO, Quaternion::ZERO);
    pub const ONE: Self = Self::new(Quaternion::ONE, Quaternion::ZERO);

    /// The distinguished imaginary unit `e4 = (0, 1)`.
    pub const E4: Self = Self::new(Quaternion::ZERO, Quaternion::ONE);

    #[inline]
    pub const fn new(x: Quaternion, y: Quaternion) -> Self {
        Self { x, y }
    }

    /// The basis vector `e_i`, `i` in `0..8`.
    pub fn basis(i: usize) -> Self {
        let mut a = [0.0; 8];
        a[i] = 1.0;
        Self::from_array(a)
    }

    /// Components in the order `e0..e7`.
    #[inline]
    pub const fn to_array(self) -> [f64; 8] {
        [
            self.x.w, self.x.x, self.x.y, self.x.z, self.y.w, self.y.x, self.y.y, self.y.z,
        ]
    }

    #[inline]
    pub const fn from_array(a: [f64; 8]) -> Self {
        Self::new(
            Quaternion::new(a[0], a[1], a[2], a[3]),
            Quaternion::new(a[4], a[5], a[6], a[7]),
        )
    }

    /// Embeds a real scalar as `w * e0`.
    #[inline]
    pub fn scalar(w: f64) -> Self {
        Self::new(Quaternion::scalar(w), Quaternion::ZERO)
    }

    /// Octonion conjugate `(conj(x), -y)`.
    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.x.conj(), -self.y)
    }

    /// Multiplicative norm `N(q) = |x|^2 + |y|^2`.
    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.x.norm_sq() + self.y.norm_sq()
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Euclidean inner product of the component vectors; coincides with
    /// `Re(a * conj(b))`.
    #[inline]
    pub fn dot(self, r: Self) -> f64 {
        self.x.dot(r.x) + self.y.dot(r.y)
    }

    /// Real (e0) component.
    #[inline]
    pub fn re(self) -> f64 {
        self.x.w
    }

    /// Imaginary part (zeroes the e0 component).
    #[inline]
    pub fn im(self) -> Self {
        Self::new(self.x.im(), self.y)
    }

    #[inline]
    pub fn max_abs(self) -> f64 {
        self.x.max_abs().max(self.y.max_abs())
    }

    /// Multiplicative inverse `conj(q)/N(q)`; `None` for zero input.
    pub fn inverse(self) -> Option<Self> {
        let n = self.norm_sq();
        if n == 0.0 {
            None
        } else {
            Some(self.conj() / n)
        }
    }

    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n == 0.0 {
            None
        } else {
            Some(self / n)
        }
    }
}

impl Add for Octonion {
    type Output = Self;
    #[inline]
    fn add(self, r: Self) -> Self {
        Self::new(self.x + r.x, self.y + r.y)
    }
}

impl AddAssign for Octonion {
    #[inline]
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl Sub for Octonion {
    type Output = Self;
    #[inline]
    fn sub(self, r: Self) -> Self {
        Self::new(self.x - r.x, self.y - r.y)
    }
}

impl SubAssign for Octonion {
    #[inline]
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

impl Neg for Octonion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl Mul for Octonion {
    type Output = Self;
    #[inline]
    fn mul(self, r: Self) -> Self {
        Self::new(
            self.x * r.x - r.y * self.y.conj(),
            r.x * self.y + self.x.conj() * r.y,
        )
    }
}

impl Mul<f64> for Octonion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}

impl Mul<Octonion> for f64 {
    type Output = Octonion;
    #[inline]
    fn mul(self, o: Octonion) -> Octonion {
        o * self
    }
}

impl Div<f64> for Octonion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.x / s, self.y / s)
    }
}

/// Associator `(a b) c - a (b c)`; identically antisymmetric in its three
/// arguments and zero whenever two arguments coincide (alternativity).
#[inline]
pub fn associator(a: Octonion, b: Octonion, c: Octonion) -> Octonion {
    (a * b) * c - a * (b * c)
}

/// The 2-form family `omega_i(q, q') = <q, e_i * q'>`, `i` in `0..8`.
///
/// `omega_0` is the Euclidean inner product; the `i = 4..8` components
/// assemble into the quaternion-valued form `rho` of the isotropic-plane
/// geometry.
#[inline]
pub fn omega(i: usize, q: Octonion, qp: Octonion) -> f64 {
    q.dot(Octonion::basis(i) * qp)
}

/// Complexified octonion: a pair of complexified quaternions with the same
/// product rule. Appears as the coefficient type of translation loops.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct COctonion {
    pub x: CQuaternion,
    pub y: CQuaternion,
}

impl COctonion {
    pub const ZERO: Self = Self::new(CQuaternion::ZERO, CQuaternion::ZERO);
    pub const ONE: Self = Self::new(CQuaternion::ONE, CQuaternion::ZERO);

    #[inline]
    pub const fn new(x: CQuaternion, y: CQuaternion) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn from_real(o: Octonion) -> Self {
        Self::new(CQuaternion::from_real(o.x), CQuaternion::from_real(o.y))
    }

    #[inline]
    pub fn real_part(self) -> Octonion {
        Octonion::new(self.x.real_part(), self.y.real_part())
    }

    #[inline]
    pub fn imag_defect(self) -> f64 {
        self.x.imag_defect().max(self.y.imag_defect())
    }

    #[inline]
    pub const fn to_array(self) -> [Complex64; 8] {
        [
            self.x.w, self.x.x, self.x.y, self.x.z, self.y.w, self.y.x, self.y.y, self.y.z,
        ]
    }

    #[inline]
    pub const fn from_array(a: [Complex64; 8]) -> Self {
        Self::new(
            CQuaternion::new(a[0], a[1], a[2], a[3]),
            CQuaternion::new(a[4], a[5], a[6], a[7]),
        )
    }

    /// Octonion conjugate `(conj_q(x), -y)` (complex components untouched).
    #[inline]
    pub fn conj_o(self) -> Self {
        Self::new(self.x.conj_q(), -self.y)
    }

    /// Componentwise complex conjugate.
    #[inline]
    pub fn conj_c(self) -> Self {
        Self::new(self.x.conj_c(), self.y.conj_c())
    }

    #[inline]
    pub fn abs_sq(self) -> f64 {
        self.x.abs_sq() + self.y.abs_sq()
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.abs_sq().sqrt()
    }

    #[inline]
    pub fn max_abs(self) -> f64 {
        self.x.max_abs().max(self.y.max_abs())
    }

    /// Left multiplication by `e4`: `(x, y) -> (-y, x)`.
    #[inline]
    pub fn left_e4(self) -> Self {
        Self::new(-self.y, self.x)
    }

    /// Componentwise multiplication by a complex scalar.
    #[inline]
    pub fn scale(self, s: Complex64) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}

impl Add for COctonion {
    type Output = Self;
    #[inline]
    fn add(self, r: Self) -> Self {
        Self::new(self.x + r.x, self.y + r.y)
    }
}

impl AddAssign for COctonion {
    #[inline]
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl Sub for COctonion {
    type Output = Self;
    #[inline]
    fn sub(self, r: Self) -> Self {
        Self::new(self.x - r.x, self.y - r.y)
    }
}

impl SubAssign for COctonion {
    #[inline]
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

impl Neg for COctonion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl Mul for COctonion {
    type Output = Self;
    #[inline]
    fn mul(self, r: Self) -> Self {
        Self::new(
            self.x * r.x - r.y * self.y.conj_q(),
            r.x * self.y + self.x.conj_q() * r.y,
        )
    }
}

impl Mul<Complex64> for COctonion {
    type Output = Self;
    #[inline]
    fn mul(self, s: Complex64) -> Self {
        self.scale(s)
    }
}

impl Mul<f64> for COctonion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}
