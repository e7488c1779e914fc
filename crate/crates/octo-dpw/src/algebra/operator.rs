//! Dense 8x8 real operators on the octonions.
//!
//! `Operator8` wraps an `nalgebra` fixed-size matrix acting on octonion
//! component vectors (basis order `e0..e7`). The key constructors are the
//! left- and right-multiplication operators `L_a : q -> a q` and
//! `R_a : q -> q a`; both satisfy `transpose(L_a) = L_conj(a)`,
//! `transpose(R_a) = R_conj(a)`, and are orthogonal for unit `a`.

use super::octonion::Octonion;
use nalgebra::SMatrix;

pub type Matrix8 = SMatrix<f64, 8, 8>;

/// A dense linear operator on `R^8` in the octonion basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Operator8(pub Matrix8);

impl Operator8 {
    pub fn identity() -> Self {
        Self(Matrix8::identity())
    }

    pub fn zero() -> Self {
        Self(Matrix8::zeros())
    }

    /// Builds the operator column-by-column from its action on the basis.
    pub fn from_action(mut f: impl FnMut(Octonion) -> Octonion) -> Self {
        let mut m = Matrix8::zeros();
        for j in 0..8 {
            let col = f(Octonion::basis(j)).to_array();
            for i in 0..8 {
                m[(i, j)] = col[i];
            }
        }
        Self(m)
    }

    /// Left multiplication operator `L_a : q -> a q`.
    pub fn left_mul(a: Octonion) -> Self {
        Self::from_action(|q| a * q)
    }

    /// Right multiplication operator `R_a : q -> q a`.
    pub fn right_mul(a: Octonion) -> Self {
        Self::from_action(|q| q * a)
    }

    pub fn apply(&self, q: Octonion) -> Octonion {
        let v = nalgebra::SVector::<f64, 8>::from_column_slice(&q.to_array());
        let w = self.0 * v;
        let mut a = [0.0; 8];
        a.copy_from_slice(w.as_slice());
        Octonion::from_array(a)
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    /// Operator composition: `(self * rhs)(q) = self(rhs(q))`.
    pub fn compose(&self, rhs: &Self) -> Self {
        Self(self.0 * rhs.0)
    }

    /// Largest absolute entry of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        (self.0 - rhs.0).amax()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.amax()
    }

    /// Deviation from orthogonality, `max |M^T M - Id|`.
    pub fn orthogonality_defect(&self) -> f64 {
        (self.0.transpose() * self.0 - Matrix8::identity()).amax()
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }
}

impl std::ops::Mul for Operator8 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs)
    }
}

impl std::ops::Add for Operator8 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Operator8 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl std::ops::Neg for Operator8 {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl std::ops::Mul<f64> for Operator8 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self(self.0 * s)
    }
}
