//! The octonionic cross product, `Spin(7)` membership, stabilizer
//! subgroups, and the cross-product mean-curvature formula.
//!
//! The binary cross product used here is
//!
//! ```text
//! cross(q, q') = -Im(q * conj(q')),
//! ```
//!
//! antisymmetric, and for orthogonal arguments equal to `-q conj(q')`
//! outright. On an isotropic frame its second quaternion slot recovers the
//! form `rho` of the plane geometry.
//!
//! `Spin(7)` sits inside `SO(8)` as the transformations `g` admitting a
//! *companion* `chi_g` with `g(u v) = chi_g(u) g(v)` for all octonions;
//! the companion is recovered from `g` itself by
//! `chi_g(u) = g(u * g^{-1}(1))`. The subgroup is generated by left
//! multiplications `L_u` with `u` a unit imaginary octonion, which is how
//! the tests sample it. The cross product is then equivariant:
//! `cross(g q, g q') = chi_g(cross(q, q'))`.
//!
//! For an index set `I` the stabilizer `G_I` collects the `Spin(7)`
//! elements commuting with every `L_{e_i}`, `i in I`, and `V_I` the unit
//! pairs with `<q, q'> = 0` and `omega_i(q, q') = 0` for `i in I`; for
//! `I = {1, 2, 3}` this recovers the isotropic-plane variety.

use crate::algebra::{omega, Octonion, Operator8};
use crate::geometry::Frame;
use crate::grid::{aggregate, Grid};
use crate::{Error, Result};

/// An antisymmetric cross-product value (a pure-imaginary octonion).
pub type CrossValue = Octonion;

/// A validated set of imaginary basis indexes (each in `1..=7`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropySet(Vec<usize>);

impl IsotropySet {
    pub fn new(mut indexes: Vec<usize>) -> Result<Self> {
        indexes.sort_unstable();
        indexes.dedup();
        if indexes.iter().any(|&i| i == 0 || i > 7) {
            return Err(Error::InvalidInput(
                "isotropy-set indexes must lie in 1..=7".into(),
            ));
        }
        Ok(Self(indexes))
    }

    pub fn indexes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `cross(q, q') = -Im(q * conj(q'))`.
pub fn cross(q: Octonion, qp: Octonion) -> CrossValue {
    -(q * qp.conj()).im()
}

/// The multiplicative companion `chi_g(u) = g(u * g^{-1}(1))`.
///
/// Defined for any invertible operator; it is a genuine algebra companion
/// (and an isometry) exactly when `g` lies in `Spin(7)`.
pub fn chi(g: &Operator8, u: Octonion) -> Result<Octonion> {
    let inv = g
        .0
        .try_inverse()
        .ok_or_else(|| Error::Degenerate("operator is singular".into()))?;
    let ginv = Operator8(inv);
    Ok(g.apply(u * ginv.apply(Octonion::ONE)))
}

/// Worst violation of the `Spin(7)` characterization: orthogonality of `g`
/// plus the companion relation `g(e_i e_j) = chi_g(e_i) g(e_j)` over all
/// basis pairs.
pub fn spin7_defect(g: &Operator8) -> f64 {
    let mut worst = g.orthogonality_defect();
    let chi_basis: Vec<Octonion> = match (0..8)
        .map(|i| chi(g, Octonion::basis(i)))
        .collect::<Result<_>>()
    {
        Ok(v) => v,
        Err(_) => return f64::INFINITY,
    };
    for (i, chi_i) in chi_basis.iter().enumerate() {
        let ei = Octonion::basis(i);
        for j in 0..8 {
            let ej = Octonion::basis(j);
            let lhs = g.apply(ei * ej);
            let rhs = *chi_i * g.apply(ej);
            worst = worst.max((lhs - rhs).max_abs());
        }
    }
    worst
}

/// `Spin(7)` membership within `tol`.
pub fn is_spin7(g: &Operator8, tol: f64) -> bool {
    spin7_defect(g) <= tol
}

/// Left multiplication by a unit imaginary octonion — the standard
/// `Spin(7)` generator. Fails unless `u` is unit and imaginary within
/// `1e-9`.
pub fn spin7_generator(u: Octonion) -> Result<Operator8> {
    if (u.norm() - 1.0).abs() > 1e-9 || u.re().abs() > 1e-9 {
        return Err(Error::InvalidInput(
            "Spin(7) generators are unit imaginary octonions".into(),
        ));
    }
    Ok(Operator8::left_mul(u))
}

/// Worst violation of `G_I` membership: the `Spin(7)` defect plus the
/// commutators with `L_{e_i}` for `i` in the set.
pub fn g_i_defect(g: &Operator8, set: &IsotropySet) -> f64 {
    let mut worst = spin7_defect(g);
    for &i in set.indexes() {
        let li = Operator8::left_mul(Octonion::basis(i));
        worst = worst.max(g.compose(&li).max_abs_diff(&li.compose(g)));
    }
    worst
}

/// `G_I` membership within `tol`.
pub fn in_g_i(g: &Operator8, set: &IsotropySet, tol: f64) -> bool {
    g_i_defect(g, set) <= tol
}

/// Worst violation of `V_I` membership: unit norms, `<q, q'> = 0`, and
/// `omega_i(q, q') = 0` for `i` in the set.
pub fn v_i_defect(frame: &Frame, set: &IsotropySet) -> f64 {
    let mut worst = (frame.q.norm_sq() - 1.0)
        .abs()
        .max((frame.qp.norm_sq() - 1.0).abs());
    worst = worst.max(frame.q.dot(frame.qp).abs());
    for &i in set.indexes() {
        worst = worst.max(omega(i, frame.q, frame.qp).abs());
    }
    worst
}

/// `V_I` membership within `tol`.
pub fn in_v_i(frame: &Frame, set: &IsotropySet, tol: f64) -> bool {
    v_i_defect(frame, set) <= tol
}

/// Mean curvature of an immersed surface grid computed through the cross
/// product, together with the intermediate fields.
#[derive(Debug, Clone)]
pub struct MeanCurvatureField {
    /// Mean curvature vector per node.
    pub h: Grid<Octonion>,
    /// Conformal factor `e^{2f} = |X_u|^2 (= |X_v|^2)`.
    pub conformal_factor: Grid<f64>,
    /// The cross-product direction field `rho = X_v conj(X_u) / |X_u|^2`.
    pub rho: Grid<Octonion>,
    /// Worst conformality violation over the aggregation region.
    pub conformality_defect: f64,
    /// Stencil margin inside which the values are second-order accurate.
    pub margin: usize,
}

impl MeanCurvatureField {
    /// Max and mean of `|H|` over the accurate region.
    pub fn h_norm_stats(&self) -> (f64, f64) {
        aggregate(&self.h, self.margin, |h| h.norm())
    }
}

/// Cross-product mean-curvature formula for a conformally immersed grid.
///
/// With `rho = X_v conj(X_u)/|X_u|^2` (so `X_v = rho X_u`), the mean
/// curvature vector of a conformal immersion is
///
/// ```text
/// H = e^{-2f}/2 * (rho_v X_u - rho_u X_v),
/// ```
///
/// all products octonionic. The formula needs no knowledge of the ambient
/// splitting and works for any conformal surface in `R^8` (curves of the
/// direction field `rho` capture the second fundamental form's trace).
///
/// Fails with [`Error::DegeneratePoint`] when `|X_u|` collapses on the
/// aggregation region and [`Error::NonConformalFrame`] when the
/// conformality defect exceeds `conformal_tol` there.
pub fn general_mean_curvature(
    x: &Grid<Octonion>,
    conformal_tol: f64,
) -> Result<MeanCurvatureField> {
    let margin = 2usize;
    if x.spec.nu < 5 || x.spec.nv < 5 {
        return Err(Error::InvalidInput(
            "mean-curvature stencils need at least a 5x5 grid".into(),
        ));
    }
    let xu = x.deriv_u();
    let xv = x.deriv_v();

    let mut conf_defect = 0.0f64;
    let mut degenerate: Option<(usize, usize)> = None;
    let conformal_factor = Grid::from_fn(x.spec, |i, j| {
        let a = xu.get(i, j).norm_sq();
        let b = xv.get(i, j).norm_sq();
        let mixed = xu.get(i, j).dot(*xv.get(i, j));
        let scale = 0.5 * (a + b);
        if x.is_interior(i, j, margin) {
            if scale < 1e-14 {
                degenerate.get_or_insert((i, j));
            } else {
                let d = ((a - b).abs().max(mixed.abs())) / scale;
                conf_defect = conf_defect.max(d);
            }
        }
        scale
    });
    if let Some((i, j)) = degenerate {
        return Err(Error::DegeneratePoint(format!(
            "vanishing differential near node ({i}, {j})"
        )));
    }
    if conf_defect > conformal_tol {
        return Err(Error::NonConformalFrame(format!(
            "conformality defect {conf_defect:.3e} exceeds {conformal_tol:.3e}"
        )));
    }

    let rho = Grid::from_fn(x.spec, |i, j| {
        let nu2 = xu.get(i, j).norm_sq().max(1e-300);
        (*xv.get(i, j) * xu.get(i, j).conj()) / nu2
    });
    let rho_u = rho.deriv_u();
    let rho_v = rho.deriv_v();

    let h = Grid::from_fn(x.spec, |i, j| {
        let e2f = conformal_factor.get(i, j).max(1e-300);
        (*rho_v.get(i, j) * *xu.get(i, j) - *rho_u.get(i, j) * *xv.get(i, j)) * (0.5 / e2f)
    });

    Ok(MeanCurvatureField {
        h,
        conformal_factor,
        rho,
        conformality_defect: conf_defect,
        margin,
    })
}
