//! The affine symmetry Lie algebra and its order-four grading.
//!
//! An element is an affine vector field on the octonions with linear part
//! `Diag(R_alpha + L_delta, R_beta + L_delta)` — right translations acting
//! separately on the two quaternionic slots plus a shared left translation
//! — and a translation part `t`. Coefficients are complexified so the same
//! type serves both the real form and its loop extension.
//!
//! The order-four automorphism `tau` swaps the two right-translation
//! coordinates and acts on translations by `t -> -e4 t`. Its eigenspaces
//! grade the algebra: grade 0 (`alpha = beta`, plus `delta`), grade 2
//! (`alpha = -gamma, beta = gamma`), and grades ±1 consisting purely of
//! translations in the `∓i`-eigenspaces of left multiplication by `e4`.

use crate::algebra::{COctonion, CQuaternion, Octonion};
use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// One element of the affine symmetry algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LieElement {
    /// Right-translation coordinate on the first quaternionic slot
    /// (pure imaginary).
    pub alpha: CQuaternion,
    /// Right-translation coordinate on the second slot (pure imaginary).
    pub beta: CQuaternion,
    /// Shared left-translation coordinate (pure imaginary).
    pub delta: CQuaternion,
    /// Translation part.
    pub t: COctonion,
}

fn commutator(a: CQuaternion, b: CQuaternion) -> CQuaternion {
    a * b - b * a
}

impl LieElement {
    pub const ZERO: Self = Self {
        alpha: CQuaternion::ZERO,
        beta: CQuaternion::ZERO,
        delta: CQuaternion::ZERO,
        t: COctonion::ZERO,
    };

    pub fn new(alpha: CQuaternion, beta: CQuaternion, delta: CQuaternion, t: COctonion) -> Self {
        Self {
            alpha,
            beta,
            delta,
            t,
        }
    }

    pub fn translation(t: COctonion) -> Self {
        Self {
            t,
            ..Self::ZERO
        }
    }

    /// Applies the linear part: `(x, y) -> (x alpha + delta x, y beta + delta y)`.
    pub fn linear_apply(&self, o: COctonion) -> COctonion {
        COctonion::new(
            o.x * self.alpha + self.delta * o.x,
            o.y * self.beta + self.delta * o.y,
        )
    }

    /// Value of the affine vector field at `o`.
    pub fn apply(&self, o: COctonion) -> COctonion {
        self.linear_apply(o) + self.t
    }

    /// Lie bracket of affine vector fields:
    /// `[(eta, t), (eta', t')] = ([eta, eta'], eta t' - eta' t)`.
    ///
    /// In coordinates the right-translation parts anticommute through the
    /// bracket (`[R_a, R_b] = R_{-[a,b]}`) while the left part is direct.
    pub fn bracket(&self, other: &Self) -> Self {
        Self {
            alpha: -commutator(self.alpha, other.alpha),
            beta: -commutator(self.beta, other.beta),
            delta: commutator(self.delta, other.delta),
            t: self.linear_apply(other.t) - other.linear_apply(self.t),
        }
    }

    /// The order-four automorphism: swaps `alpha` and `beta`, sends the
    /// translation to `-e4 t`.
    pub fn tau(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
            delta: self.delta,
            t: -self.t.left_e4(),
        }
    }

    /// Projection onto the grade `k mod 4` eigenspace of `tau`
    /// (eigenvalue `i^k`).
    pub fn project_grade(&self, k: i32) -> Self {
        match k.rem_euclid(4) {
            0 => {
                let s = (self.alpha + self.beta) * 0.5;
                Self::new(s, s, self.delta, COctonion::ZERO)
            }
            2 => {
                let g = (self.beta - self.alpha) * 0.5;
                Self::new(-g, g, CQuaternion::ZERO, COctonion::ZERO)
            }
            1 => Self::translation((self.t + self.t.left_e4().scale(I)).scale(0.5.into())),
            3 => Self::translation((self.t - self.t.left_e4().scale(I)).scale(0.5.into())),
            _ => unreachable!(),
        }
    }

    /// Distance to the grade-`k` eigenspace.
    pub fn grading_defect(&self, k: i32) -> f64 {
        (*self - self.project_grade(k)).max_abs()
    }

    /// Deviation of the right/left coordinates from being pure imaginary.
    pub fn purity_defect(&self) -> f64 {
        self.alpha
            .w
            .norm()
            .max(self.beta.w.norm())
            .max(self.delta.w.norm())
    }

    pub fn max_abs(&self) -> f64 {
        self.alpha
            .max_abs()
            .max(self.beta.max_abs())
            .max(self.delta.max_abs())
            .max(self.t.max_abs())
    }

    pub fn conj_c(&self) -> Self {
        Self {
            alpha: self.alpha.conj_c(),
            beta: self.beta.conj_c(),
            delta: self.delta.conj_c(),
            t: self.t.conj_c(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            alpha: self.alpha * s,
            beta: self.beta * s,
            delta: self.delta * s,
            t: self.t.scale(s),
        }
    }

    /// Homogeneous 9x9 matrix `[[eta, t], [0, 0]]` acting on `(o, 1)`
    /// column vectors — the faithful affine representation. The matrix
    /// commutator realises [`LieElement::bracket`].
    pub fn to_affine_matrix(&self) -> nalgebra::SMatrix<Complex64, 9, 9> {
        let mut m = nalgebra::SMatrix::<Complex64, 9, 9>::zeros();
        for col in 0..8 {
            let image = self.linear_apply(COctonion::from_real(Octonion::basis(col)));
            let coords = image.to_array();
            for row in 0..8 {
                m[(row, col)] = coords[row];
            }
        }
        let t = self.t.to_array();
        for row in 0..8 {
            m[(row, 8)] = t[row];
        }
        m
    }
}

impl std::ops::Add for LieElement {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self {
            alpha: self.alpha + r.alpha,
            beta: self.beta + r.beta,
            delta: self.delta + r.delta,
            t: self.t + r.t,
        }
    }
}

impl std::ops::Sub for LieElement {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self {
            alpha: self.alpha - r.alpha,
            beta: self.beta - r.beta,
            delta: self.delta - r.delta,
            t: self.t - r.t,
        }
    }
}

impl std::ops::Neg for LieElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            alpha: -self.alpha,
            beta: -self.beta,
            delta: -self.delta,
            t: -self.t,
        }
    }
}

impl std::ops::Mul<f64> for LieElement {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s.into())
    }
}

/// A graded payload in the compact coordinates used by potential files.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GradedComponent {
    /// Grade 0: shared right-translation `a` plus left-translation `delta`.
    Zero { a: CQuaternion, delta: CQuaternion },
    /// Grade 1: translation payload `w`, embedded as `(w, i w)/2`.
    One { w: CQuaternion },
    /// Grade 2: right-translation pair `(-gamma, gamma)`.
    Two { gamma: CQuaternion },
    /// Grade -1: translation payload `w`, embedded as `(w, -i w)/2`.
    MinusOne { w: CQuaternion },
}

impl GradedComponent {
    pub fn grade(&self) -> i32 {
        match self {
            Self::Zero { .. } => 0,
            Self::One { .. } => 1,
            Self::Two { .. } => 2,
            Self::MinusOne { .. } => -1,
        }
    }

    pub fn to_element(&self) -> LieElement {
        match *self {
            Self::Zero { a, delta } => LieElement::new(a, a, delta, COctonion::ZERO),
            Self::Two { gamma } => {
                LieElement::new(-gamma, gamma, CQuaternion::ZERO, COctonion::ZERO)
            }
            Self::One { w } => LieElement::translation(embed_plus_one(w)),
            Self::MinusOne { w } => LieElement::translation(embed_minus_one(w)),
        }
    }

    /// Reads the payload of `elem` in grade `k`, together with the mass of
    /// `elem` outside that grade.
    pub fn from_element(elem: &LieElement, k: i32) -> (Self, f64) {
        let proj = elem.project_grade(k);
        let defect = (*elem - proj).max_abs();
        let comp = match k.rem_euclid(4) {
            0 => Self::Zero {
                a: proj.alpha,
                delta: proj.delta,
            },
            2 => Self::Two { gamma: proj.beta },
            1 => Self::One {
                w: proj.t.x * Complex64::from(2.0),
            },
            3 => Self::MinusOne {
                w: proj.t.x * Complex64::from(2.0),
            },
            _ => unreachable!(),
        };
        (comp, defect)
    }
}

/// Embeds a quaternionic payload into the grade `-1` translation space:
/// `w -> (w, -i w)/2`, i.e. `w * epsilon` with `epsilon = (1, -i)/2`.
pub fn embed_minus_one(w: CQuaternion) -> COctonion {
    COctonion::new(w * Complex64::new(0.5, 0.0), w * Complex64::new(0.0, -0.5))
}

/// Embeds a quaternionic payload into the grade `+1` translation space:
/// `w -> (w, i w)/2`.
pub fn embed_plus_one(w: CQuaternion) -> COctonion {
    COctonion::new(w * Complex64::new(0.5, 0.0), w * Complex64::new(0.0, 0.5))
}
