//! The symmetry group of the isotropic-plane variety.
//!
//! The identity component consists of the maps
//! `Diag(R_a L_c, R_b L_c) : (x, y) -> (c x a, c y b)` for unit quaternions
//! `a, b, c`; the other component appends a preceding left multiplication
//! by `e4` (the `eflag`). The triple is determined up to the simultaneous
//! sign flip `(a, b, c) -> (-a, -b, -c)`, removed here by making the first
//! nonzero component of `a` positive.
//!
//! Key covariances (all exercised in tests):
//!
//! * `B(g q, g q') = c B(q, q') conj(c)` (with an extra quaternion
//!   conjugation of `B` when `eflag` is set), giving the induced rotation
//!   [`GroupElementG0::theta`] on the imaginary quaternions;
//! * `rho(g q, g q') = conj(a) rho(q, q') b` for the identity component,
//!   which makes `tilde_rho(g) = conj(a) b` a relative invariant: it is
//!   unchanged under right composition with the subgroup `b = a`;
//! * the semidirect splitting `g = Diag(Id, R_tilde_rho) . Diag(R_a L_c,
//!   R_a L_c)` implemented by [`GroupElementG0::semidirect_split`].

use super::Frame;
use crate::algebra::{random_unit_quaternion, Octonion, Quaternion};
use crate::{Error, Result};
use nalgebra::Matrix3;
use rand::Rng;

const UNIT_TOL: f64 = 1e-9;

/// An element of the plane-symmetry group.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GroupElementG0 {
    pub a: Quaternion,
    pub b: Quaternion,
    pub c: Quaternion,
    /// When set, the element acts as the composition with a *preceding*
    /// left multiplication by `e4`.
    pub eflag: bool,
}

impl GroupElementG0 {
    /// Validates unit norms (within `1e-9`) and canonicalizes the sign.
    pub fn new(a: Quaternion, b: Quaternion, c: Quaternion, eflag: bool) -> Result<Self> {
        for (name, q) in [("a", a), ("b", b), ("c", c)] {
            if (q.norm() - 1.0).abs() > UNIT_TOL {
                return Err(Error::InvalidInput(format!(
                    "group coordinate {name} must be a unit quaternion, |{name}| = {}",
                    q.norm()
                )));
            }
        }
        Ok(Self { a, b, c, eflag }.canonicalized())
    }

    pub fn identity() -> Self {
        Self {
            a: Quaternion::ONE,
            b: Quaternion::ONE,
            c: Quaternion::ONE,
            eflag: false,
        }
    }

    /// Simultaneous sign flip making the first nonzero component of `a`
    /// positive.
    pub fn canonicalized(self) -> Self {
        let comp = self.a.to_array();
        for v in comp {
            if v != 0.0 {
                if v < 0.0 {
                    return Self {
                        a: -self.a,
                        b: -self.b,
                        c: -self.c,
                        eflag: self.eflag,
                    };
                }
                break;
            }
        }
        self
    }

    /// Applies the element to an octonion.
    pub fn apply(&self, o: Octonion) -> Octonion {
        let o = if self.eflag {
            // Left multiplication by e4: (x, y) -> (-y, x).
            Octonion::new(-o.y, o.x)
        } else {
            o
        };
        Octonion::new(self.c * o.x * self.a, self.c * o.y * self.b)
    }

    pub fn apply_frame(&self, f: &Frame) -> Frame {
        Frame::new(self.apply(f.q), self.apply(f.qp))
    }

    /// Group composition `self . rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Self) -> Self {
        // Move self's preceding e4 past rhs's diagonal part:
        // L_{e4} . Diag(R_a L_c, R_b L_c) = Diag(R_b L_c, R_a L_c) . L_{e4},
        // and L_{e4}^2 = -Id = Diag(R_{-1}, R_{-1}).
        let (ra, rb) = if self.eflag {
            (rhs.b, rhs.a)
        } else {
            (rhs.a, rhs.b)
        };
        let mut a = ra * self.a;
        let mut b = rb * self.b;
        let c = self.c * rhs.c;
        let eflag = self.eflag ^ rhs.eflag;
        if self.eflag && rhs.eflag {
            a = -a;
            b = -b;
        }
        Self { a, b, c, eflag }.canonicalized()
    }

    pub fn inverse(&self) -> Self {
        if self.eflag {
            // (Op(a,b,c) . L)^{-1} = (-L) . Op(a~,b~,c~)
            //                      = Op(-b~, -a~, c~) . L.
            Self {
                a: -self.b.conj(),
                b: -self.a.conj(),
                c: self.c.conj(),
                eflag: true,
            }
            .canonicalized()
        } else {
            Self {
                a: self.a.conj(),
                b: self.b.conj(),
                c: self.c.conj(),
                eflag: false,
            }
            .canonicalized()
        }
    }

    /// The induced rotation of the imaginary quaternions carrying the
    /// `B`-form: `v -> c v conj(c)`, composed with `-Id` when `eflag` is
    /// set.
    pub fn theta(&self) -> Matrix3<f64> {
        let sign = if self.eflag { -1.0 } else { 1.0 };
        let mut m = Matrix3::zeros();
        let basis = [Quaternion::I, Quaternion::J, Quaternion::K];
        for (j, v) in basis.iter().enumerate() {
            let w = self.c.rotate(*v) * sign;
            let arr = [w.x, w.y, w.z];
            for i in 0..3 {
                m[(i, j)] = arr[i];
            }
        }
        m
    }

    /// The relative invariant `conj(a) b` (identity component only).
    pub fn tilde_rho(&self) -> Result<Quaternion> {
        if self.eflag {
            return Err(Error::InvalidInput(
                "tilde_rho is defined on the identity component (eflag must be false)".into(),
            ));
        }
        Ok(self.a.conj() * self.b)
    }

    /// Splits an identity-component element as
    /// `g = Diag(Id, R_tilde_rho) . Diag(R_a L_c, R_a L_c)`.
    pub fn semidirect_split(&self) -> Result<(G2Element, GroupElementG0)> {
        let rho = self.tilde_rho()?;
        let g0 = GroupElementG0 {
            a: self.a,
            b: self.a,
            c: self.c,
            eflag: false,
        }
        .canonicalized();
        Ok((G2Element { rho }, g0))
    }
}

/// The normal factor of the semidirect splitting: `(x, y) -> (x, y rho)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct G2Element {
    pub rho: Quaternion,
}

impl G2Element {
    pub fn apply(&self, o: Octonion) -> Octonion {
        Octonion::new(o.x, o.y * self.rho)
    }

    pub fn apply_frame(&self, f: &Frame) -> Frame {
        Frame::new(self.apply(f.q), self.apply(f.qp))
    }
}

/// Draws a uniformly random group element; `eflag` is set with
/// probability 1/2 when `allow_eflag` is true.
pub fn random_g0<R: Rng + ?Sized>(rng: &mut R, allow_eflag: bool) -> GroupElementG0 {
    GroupElementG0 {
        a: random_unit_quaternion(rng),
        b: random_unit_quaternion(rng),
        c: random_unit_quaternion(rng),
        eflag: allow_eflag && rng.gen_bool(0.5),
    }
    .canonicalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::random_octonion;
    use crate::geometry::{bform, p_invariant, rho};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_frame(rng: &mut impl Rng) -> Frame {
        Frame::new(random_octonion(rng), random_octonion(rng))
    }

    #[test]
    fn compose_matches_pointwise_application() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let g = random_g0(&mut rng, true);
            let h = random_g0(&mut rng, true);
            let o = random_octonion(&mut rng);
            let lhs = g.compose(&h).apply(o);
            let rhs = g.apply(h.apply(o));
            assert!((lhs - rhs).max_abs() < 1e-12);
        }
    }

    #[test]
    fn inverse_composes_to_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..200 {
            let g = random_g0(&mut rng, true);
            let o = random_octonion(&mut rng);
            let back = g.inverse().apply(g.apply(o));
            assert!((back - o).max_abs() < 1e-12);
        }
    }

    #[test]
    fn canonical_sign_is_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let g = random_g0(&mut rng, true);
            let flipped = GroupElementG0 {
                a: -g.a,
                b: -g.b,
                c: -g.c,
                eflag: g.eflag,
            }
            .canonicalized();
            assert_eq!(g, flipped);
        }
    }

    #[test]
    fn b_transforms_by_theta_and_rho_by_cocycle() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..300 {
            let g = random_g0(&mut rng, true);
            let f = random_frame(&mut rng);
            let gf = g.apply_frame(&f);

            // B covariance: c B conj(c), with B -> conj(B) first if eflag.
            let b0 = bform(f.q, f.qp);
            let b0 = if g.eflag { b0.conj() } else { b0 };
            let expected_b = g.c * b0 * g.c.conj();
            assert!((bform(gf.q, gf.qp) - expected_b).max_abs() < 1e-12);

            // theta transports the imaginary part of the *original* B to
            // that of the transformed B (theta already carries the parity
            // sign of the non-identity component).
            let th = g.theta();
            let b_orig = bform(f.q, f.qp);
            let v = th * nalgebra::Vector3::new(b_orig.x, b_orig.y, b_orig.z);
            let eb = bform(gf.q, gf.qp);
            assert!((v[0] - eb.x).abs() < 1e-12);
            assert!((v[1] - eb.y).abs() < 1e-12);
            assert!((v[2] - eb.z).abs() < 1e-12);

            // rho covariance: conj(a) rho b, with rho -> conj(rho) first if
            // eflag.
            let r0 = rho(f.q, f.qp);
            let r0 = if g.eflag { r0.conj() } else { r0 };
            let expected_r = g.a.conj() * r0 * g.b;
            assert!((rho(gf.q, gf.qp) - expected_r).max_abs() < 1e-12);
        }
    }

    #[test]
    fn theta_is_special_orthogonal_up_to_component() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for _ in 0..100 {
            let g = random_g0(&mut rng, true);
            let th = g.theta();
            let defect = (th.transpose() * th - Matrix3::identity()).amax();
            assert!(defect < 1e-12);
            let det = th.determinant();
            let expected = if g.eflag { -1.0 } else { 1.0 };
            assert!((det - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn p_is_invariant_under_the_group() {
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        for _ in 0..300 {
            let f = crate::geometry::random_isotropic_frame(&mut rng);
            let g = random_g0(&mut rng, true);
            let gf = g.apply_frame(&f);
            assert!(gf.isotropy_residual() < 1e-11);
            assert!((p_invariant(&gf) - p_invariant(&f)).abs() < 1e-11);
        }
    }

    #[test]
    fn semidirect_split_reassembles_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        for _ in 0..300 {
            let g = random_g0(&mut rng, false);
            let (g2, g0) = g.semidirect_split().unwrap();
            // b-coordinate of the split factor equals its a-coordinate.
            assert_eq!(g0.a, g0.b);
            let o = random_octonion(&mut rng);
            let lhs = g2.apply(g0.apply(o));
            let rhs = g.apply(o);
            assert!((lhs - rhs).max_abs() < 1e-13);
        }
    }

    #[test]
    fn tilde_rho_is_right_invariant_under_diagonal_subgroup() {
        let mut rng = ChaCha8Rng::seed_from_u64(28);
        for _ in 0..200 {
            let g = random_g0(&mut rng, false);
            let a = random_unit_quaternion(&mut rng);
            let c = random_unit_quaternion(&mut rng);
            let h = GroupElementG0::new(a, a, c, false).unwrap();
            let lhs = g.compose(&h).tilde_rho().unwrap();
            let rhs = g.tilde_rho().unwrap();
            assert!((lhs - rhs).max_abs() < 1e-12);
        }
    }

    #[test]
    fn rho_normalization_iff_tilde_rho_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..200 {
            let g = random_g0(&mut rng, false);
            // Build a frame whose rho equals tilde_rho(g); then the inverse
            // action normalizes rho to 1.
            let r = g.tilde_rho().unwrap();
            let q = crate::algebra::random_unit_octonion(&mut rng);
            let qp = Octonion::new(Quaternion::ZERO, r) * q;
            let f = Frame::new(q, qp);
            let ginv = g.inverse();
            let fi = ginv.apply_frame(&f);
            assert!((rho(fi.q, fi.qp) - Quaternion::ONE).max_abs() < 1e-12);
        }
    }
}
