//! Iwasawa factorization `H = U B` of frames: `U` circle-unitary with
//! circle-real translation, `B` with factors in non-negative powers and
//! normalized constant blocks.
//!
//! Each quaternionic factor loop is factored independently through the
//! 2x2 complex representation by Bauer's method: the Hermitian
//! block-Toeplitz matrix of `Phi = m* m` is Cholesky-factored and a late
//! row of the upper factor converges (geometrically in the section size)
//! to the Laurent coefficients of the spectral factor `b`. The unitary
//! part is the quotient `u = m b^{-1}`.
//!
//! Composition orders differ per coordinate: `c_H = c_U c_B` is factored
//! directly, while `a_H = a_B a_U` is reduced to the first kind by the
//! transpose anti-automorphism (`q -> w + xi - yj + zk`). The `b`
//! coordinate of a twisted frame is `a` rotated by a quarter turn in
//! `lambda`, so its factors are obtained by the same rotation. The
//! translation splits in closed form once the linear factors are known.

use super::frame::GroupLoop;
use crate::algebra::CQuaternion;
use crate::loops::{OLoop, QLoop};
use nalgebra::{DMatrix, SMatrix};
use num_complex::Complex64;

type M2 = SMatrix<Complex64, 2, 2>;

/// 2x2 complex representation `w + xi + yj + zk ->
/// [[w+ix, y+iz], [-y+iz, w-ix]]`.
fn phi(q: CQuaternion) -> M2 {
    let i = Complex64::new(0.0, 1.0);
    M2::new(
        q.w + i * q.x,
        q.y + i * q.z,
        -q.y + i * q.z,
        q.w - i * q.x,
    )
}

fn phi_inv(m: &M2) -> CQuaternion {
    let i = Complex64::new(0.0, 1.0);
    let half = Complex64::new(0.5, 0.0);
    CQuaternion::new(
        (m[(0, 0)] + m[(1, 1)]) * half,
        -i * (m[(0, 0)] - m[(1, 1)]) * half,
        (m[(0, 1)] - m[(1, 0)]) * half,
        -i * (m[(0, 1)] + m[(1, 0)]) * half,
    )
}

/// Largest stride in {4, 2, 1} carrying the whole support of `m`.
fn support_stride(m: &QLoop, eps: f64) -> i32 {
    for s in [4i32, 2] {
        if m.support_defect(0, s) <= eps {
            return s;
        }
    }
    1
}

/// Bauer factorization `m = u b` with one section size.
fn bauer_once(
    compressed: &[M2],
    dc: i32,
    read_deg: i32,
    blocks: usize,
) -> Option<Vec<M2>> {
    let r = blocks;
    let dim = 2 * r;
    // Phi_l = sum_j phi(c_j)^H phi(c_{j+l}), banded in |l| <= 2 dc.
    let idx = |j: i32| (j + dc) as usize;
    let phi_of = |l: i32| -> M2 {
        let mut acc = M2::zeros();
        for j in -dc..=dc {
            let jl = j + l;
            if jl < -dc || jl > dc {
                continue;
            }
            acc += compressed[idx(j)].adjoint() * compressed[idx(jl)];
        }
        acc
    };
    let mut toeplitz = DMatrix::<Complex64>::zeros(dim, dim);
    for br in 0..r {
        for bc in 0..r {
            let l = bc as i32 - br as i32;
            if l.abs() > 2 * dc {
                continue;
            }
            let block = if l >= 0 {
                phi_of(l)
            } else {
                phi_of(-l).adjoint()
            };
            for a in 0..2 {
                for b in 0..2 {
                    toeplitz[(2 * br + a, 2 * bc + b)] = block[(a, b)];
                }
            }
        }
    }
    let chol = toeplitz.cholesky()?;
    let lower = chol.l();
    // Upper factor R = L^H; read row j* = r - 1 - read_deg.
    let jstar = r - 1 - read_deg as usize;
    let mut out = Vec::with_capacity(read_deg as usize + 1);
    for l in 0..=read_deg as usize {
        let mut block = M2::zeros();
        for a in 0..2 {
            for b in 0..2 {
                // R[(2 jstar + a, 2 (jstar + l) + b)] = conj(L[col, row]).
                block[(a, b)] = lower[(2 * (jstar + l) + b, 2 * jstar + a)].conj();
            }
        }
        out.push(block);
    }
    Some(out)
}

/// Factors `m = u b` with `u` circle-unitary and `b` in non-negative
/// powers, `b(0)` upper-triangular with positive diagonal.
pub fn factor_unitary_plus(m: &QLoop) -> crate::Result<(QLoop, QLoop)> {
    let n = m.truncation();
    let scale = m.max_abs();
    if scale == 0.0 {
        return Err(crate::Error::FactorizationDiverged(
            "cannot factor the zero loop".into(),
        ));
    }
    let stride = support_stride(m, 1e-12 * scale);
    let dc = n / stride;
    let idx = |j: i32| (j + dc) as usize;
    let mut compressed = vec![M2::zeros(); (2 * dc + 1) as usize];
    for j in -dc..=dc {
        compressed[idx(j)] = phi(m.coeff(stride * j));
    }
    let deg_c = {
        let mut d = 0;
        for j in -dc..=dc {
            if m.coeff(stride * j).max_abs() > 1e-14 * scale {
                d = d.max(j.abs());
            }
        }
        d
    };
    let read_deg = dc;

    let mut blocks = ((4 * deg_c + 16).max(24) as usize).min(160).max(read_deg as usize + 2);
    let mut best: Option<(QLoop, QLoop, f64)> = None;
    for _attempt in 0..3 {
        let Some(row) = bauer_once(&compressed, dc, read_deg, blocks) else {
            blocks *= 2;
            continue;
        };
        let mut b = QLoop::zero(n);
        for (l, block) in row.iter().enumerate() {
            b.set(stride * l as i32, phi_inv(block));
        }
        let b_inv = match b.inverse_plus() {
            Ok(x) => x,
            Err(_) => {
                blocks *= 2;
                continue;
            }
        };
        let u = m.mul(&b_inv);
        let quality = u.unitarity_defect() / scale.max(1.0);
        if best.as_ref().map_or(true, |(_, _, q)| quality < *q) {
            best = Some((u, b, quality));
        }
        if best.as_ref().unwrap().2 <= 1e-9 {
            break;
        }
        blocks *= 2;
    }
    match best {
        Some((u, b, q)) if q <= 1e-7 => Ok((u, b)),
        Some((_, _, q)) => Err(crate::Error::FactorizationDiverged(format!(
            "unitarity defect {q:.3e} after section growth"
        ))),
        None => Err(crate::Error::FactorizationDiverged(
            "Toeplitz section not positive definite".into(),
        )),
    }
}

/// Factors `m = b u` (plus times unitary) through the transpose
/// anti-automorphism; `b(0)` is lower-triangular with positive diagonal.
pub fn factor_plus_unitary(m: &QLoop) -> crate::Result<(QLoop, QLoop)> {
    let (ut, bt) = factor_unitary_plus(&m.transpose_loop())?;
    Ok((bt.transpose_loop(), ut.transpose_loop()))
}

/// The result of an Iwasawa splitting.
#[derive(Debug, Clone)]
pub struct IwasawaFactors {
    /// Circle-unitary factor carrying the geometry.
    pub u: GroupLoop,
    /// Non-negative-power factor.
    pub b: GroupLoop,
    /// Coefficient norm of `U ∘ B - H`.
    pub residual: f64,
    /// Circle-unitarity of `U`'s factors plus reality of its translation.
    pub unitary_defect: f64,
}

/// Splits the translation once the linear factors of `U` are known:
/// `Y = F_U^{-1} T_H`, the `B` part is the non-real non-negative content
/// of `Y` and the rest maps forward to a circle-real `T_U`.
fn split_translation(u_lin: &GroupLoop, t_h: &OLoop) -> (OLoop, OLoop) {
    let u_inv = u_lin.inverse_unitary();
    let y = u_inv.linear_apply(t_h);
    let d = &y - &y.bar_circle();
    let mut t_b = d.pos_part();
    t_b.set(0, crate::loops::Coeff::scale(&d.coeff(0), Complex64::new(0.5, 0.0)));
    let rest = &y - &t_b;
    let t_u = u_lin.linear_apply(&rest);
    (t_u, t_b)
}

/// Iwasawa factorization of a twisted frame.
pub fn iwasawa_factorize(h: &GroupLoop) -> crate::Result<IwasawaFactors> {
    let n = h.truncation();
    let scale = h.max_abs().max(1.0);
    let twist = h.b.max_abs_diff(&h.a.rotate_i());
    if twist > 1e-8 * scale {
        return Err(crate::Error::GradingViolation(format!(
            "frame is not twisted: b deviates from the quarter-rotated a by {twist:.3e}"
        )));
    }

    let one = QLoop::one(n);
    let vacuum_like = h.a.max_abs_diff(&one) < 1e-14 * scale
        && h.c.max_abs_diff(&one) < 1e-14 * scale;

    let (a_u, a_b, c_u, c_b) = if vacuum_like {
        (one.clone(), one.clone(), one.clone(), one.clone())
    } else {
        let (a_b, a_u) = factor_plus_unitary(&h.a)?;
        let (c_u, c_b) = factor_unitary_plus(&h.c)?;
        (a_u, a_b, c_u, c_b)
    };
    let b_u = a_u.rotate_i();
    let b_b = a_b.rotate_i();

    let u_lin = GroupLoop {
        a: a_u,
        b: b_u,
        c: c_u,
        t: OLoop::zero(n),
    };
    let (t_u, t_b) = split_translation(&u_lin, &h.t);
    let u = GroupLoop { t: t_u, ..u_lin };
    let b = GroupLoop {
        a: a_b,
        b: b_b,
        c: c_b,
        t: t_b,
    };
    let residual = u.compose(&b).max_abs_diff(h);
    let unitary_defect = u.unitary_defect();
    Ok(IwasawaFactors {
        u,
        b,
        residual,
        unitary_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{COctonion, Quaternion};
    use crate::dpw::{integrate_frame, PotentialSpec};
    use crate::grid::GridSpec;
    use crate::loops::embed_minus_one;

    fn q_upper() -> CQuaternion {
        // phi^{-1}([[0, 1], [0, 0]])
        CQuaternion::new(
            0.0.into(),
            0.0.into(),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, -0.5),
        )
    }

    fn q_lower() -> CQuaternion {
        // phi^{-1}([[0, 0], [1, 0]])
        CQuaternion::new(
            0.0.into(),
            0.0.into(),
            Complex64::new(-0.5, 0.0),
            Complex64::new(0.0, -0.5),
        )
    }

    #[test]
    fn phi_is_a_homomorphism() {
        let p = CQuaternion::from_real(Quaternion::new(0.3, -1.1, 0.7, 0.2));
        let q = CQuaternion::from_real(Quaternion::new(-0.4, 0.9, 0.1, 1.3));
        let lhs = phi(p * q);
        let rhs = phi(p) * phi(q);
        assert!((lhs - rhs).iter().all(|c| c.norm() < 1e-14));
        let back = phi_inv(&phi(p));
        assert!((back - p).max_abs() < 1e-15);
    }

    #[test]
    fn closed_form_oracle_nilpotent_loop() {
        // m = 1 + c lambda^{-1} E12 factors as u b with
        // b = [[1/s, 0], [(c/s) lambda, s]],
        // u = (1/s) [[1, c lambda^{-1}], [-c lambda, 1]],  s = sqrt(1 + c^2).
        let c = 0.6f64;
        let s = (1.0 + c * c).sqrt();
        let mut m = QLoop::one(6);
        m.set(-1, q_upper() * c);
        let (u, b) = factor_unitary_plus(&m).unwrap();

        let prod = u.mul(&b);
        assert!(prod.max_abs_diff(&m) < 1e-9);
        assert!(u.unitarity_defect() < 1e-9);

        // Frozen coefficients.
        let b0 = phi_inv(&M2::new(
            Complex64::new(1.0 / s, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(s, 0.0),
        ));
        assert!((b.coeff(0) - b0).max_abs() < 1e-9, "{:?}", b.coeff(0) - b0);
        assert!((b.coeff(1) - q_lower() * (c / s)).max_abs() < 1e-9);
        for k in 2..=6 {
            assert!(b.coeff(k).max_abs() < 1e-9, "b power {k}");
        }
        assert!((u.coeff(0) - CQuaternion::ONE * (1.0 / s)).max_abs() < 1e-9);
        assert!((u.coeff(-1) - q_upper() * (c / s)).max_abs() < 1e-9);
        assert!((u.coeff(1) - q_lower() * (-c / s)).max_abs() < 1e-9);
    }

    #[test]
    fn unitary_input_passes_through() {
        // diag(lambda^2, 1) is unitary and twisted-even: b must be 1.
        let half = Complex64::new(0.5, 0.0);
        let half_i = Complex64::new(0.0, 0.5);
        let mut m = QLoop::zero(6);
        m.set(0, CQuaternion::new(half, half_i, 0.0.into(), 0.0.into()));
        m.set(2, CQuaternion::new(half, -half_i, 0.0.into(), 0.0.into()));
        let (u, b) = factor_unitary_plus(&m).unwrap();
        assert!(b.max_abs_diff(&QLoop::one(6)) < 1e-9, "b should be trivial");
        assert!(u.max_abs_diff(&m) < 1e-9);
    }

    #[test]
    fn transpose_variant_factors_in_the_other_order() {
        let c = 0.6f64;
        let mut m = QLoop::one(6);
        m.set(-1, q_upper() * c);
        let (b, u) = factor_plus_unitary(&m).unwrap();
        let prod = b.mul(&u);
        assert!(prod.max_abs_diff(&m) < 1e-9);
        assert!(u.unitarity_defect() < 1e-9);
        assert!(b.neg_part().max_abs() < 1e-12);
    }

    #[test]
    fn vacuum_frame_splits_in_closed_form() {
        let spec = PotentialSpec::vacuum(GridSpec::unit_square(5), 6);
        let h = integrate_frame(&spec).unwrap();
        let z = Complex64::new(spec.domain.u(3), spec.domain.v(4));
        let g = h.get(3, 4);
        let fac = iwasawa_factorize(g).unwrap();
        assert!(fac.residual < 1e-12);
        assert!(fac.unitary_defect < 1e-12);
        let eps = embed_minus_one(CQuaternion::ONE);
        // T_U = lambda^{-1} eps z + lambda conj(eps) conj(z).
        let want_m1 = eps.scale(z);
        let want_p1 = eps.conj_c().scale(z.conj());
        assert!((fac.u.t.coeff(-1) - want_m1).max_abs() < 1e-12);
        assert!((fac.u.t.coeff(1) - want_p1).max_abs() < 1e-12);
        // T_B = -lambda conj(eps) conj(z).
        assert!((fac.b.t.coeff(1) + want_p1).max_abs() < 1e-12);
        assert!(fac.b.t.neg_part().max_abs() < 1e-15);
        assert_eq!(fac.b.t.coeff(0).max_abs(), 0.0);
    }

    #[test]
    fn integrated_frame_factors_with_small_residual() {
        let spec = PotentialSpec::constant_curved(GridSpec::unit_square(5), 12, 0.15);
        let h = integrate_frame(&spec).unwrap();
        for (i, j) in [(4usize, 4usize), (2, 3), (0, 4)] {
            let fac = iwasawa_factorize(h.get(i, j)).unwrap();
            assert!(
                fac.residual < 1e-7,
                "residual {} at ({i},{j})",
                fac.residual
            );
            assert!(
                fac.unitary_defect < 1e-7,
                "unitary defect {} at ({i},{j})",
                fac.unitary_defect
            );
            // B stays in non-negative powers; U and B remain twisted.
            assert!(fac.b.a.neg_part().max_abs() < 1e-10);
            assert!(fac.b.c.neg_part().max_abs() < 1e-10);
            assert!(fac.b.t.neg_part().max_abs() < 1e-10);
            assert!(fac.u.twisting_defect() < 1e-7);
            assert!(fac.b.twisting_defect() < 1e-7);
        }
    }

    #[test]
    fn untwisted_frame_is_rejected() {
        let mut g = GroupLoop::identity(4);
        g.a.set(1, CQuaternion::from_real(Quaternion::new(0.0, 0.4, 0.0, 0.0)));
        // leave b = 1: not the rotation of a.
        g.t.set(
            1,
            COctonion::new(CQuaternion::ONE, CQuaternion::ZERO),
        );
        let err = iwasawa_factorize(&g).unwrap_err();
        assert!(matches!(err, crate::Error::GradingViolation(_)));
    }
}
