//! Diagnostics on discrete immersions: conformality, isotropy, the
//! direction field `rho`, harmonicity, mean curvature, closedness
//! residuals, and per-point orbit classification.
//!
//! Everything is stencil-based: interior derivatives are 2nd-order
//! central differences and acceptance aggregation happens two nodes
//! inside the boundary (one-sided boundary stencils are computed but not
//! trusted). Unless stated otherwise, residuals are relative to the
//! local metric scale `e^{2f} = (|X_u|^2 + |X_v|^2)/2`.

use crate::algebra::{omega, CQuaternion, Octonion, Quaternion};
use crate::dpw::GroupLoop;
use crate::geometry::{classify, Frame, OrbitClass};
use crate::grid::{aggregate, Grid, GridSpec};
use crate::loops::TwistedLoop;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Aggregation margin for trustworthy stencil output.
pub const MARGIN: usize = 2;

/// First-order data of a discrete immersion into the octonions.
#[derive(Debug, Clone)]
pub struct SurfaceFields {
    /// `u`-derivative per node.
    pub xu: Grid<Octonion>,
    /// `v`-derivative per node.
    pub xv: Grid<Octonion>,
    /// Metric scale `e^{2f} = (|X_u|^2 + |X_v|^2)/2`.
    pub e2f: Grid<f64>,
    /// Unit direction field: `rho(X_u, X_v)/(|X_u| |X_v|)`, normalized.
    /// (Equals `rho(X_u, X_v)/|X_u|^2` on conformal frames, but stays unit
    /// under pure axis rescalings, so its norm defect measures isotropy
    /// failure rather than repeating the conformality defect.)
    pub rho: Grid<Quaternion>,
    /// Relative conformality defect per node.
    pub conformality: Grid<f64>,
    /// Relative size of the isotropy obstruction `B(X_u, X_v)` per node.
    pub b_isotropy: Grid<f64>,
    /// Relative size of `omega_i(X_u, X_v)`, `i = 1, 2, 3`, per node.
    pub omega_isotropy: Grid<f64>,
    /// `| |rho_raw| - 1 |` before normalization, per node.
    pub rho_norm_defect: Grid<f64>,
    /// Stencil margin inside which all fields are second-order accurate.
    pub margin: usize,
}

/// Extracts the first-order fields of a gridded immersion.
///
/// Fails with [`crate::Error::DegeneratePoint`] when `|X_u|` collapses
/// below `1e-6` of its grid maximum anywhere in the interior.
pub fn surface_fields(x: &Grid<Octonion>) -> crate::Result<SurfaceFields> {
    if x.spec.nu < 5 || x.spec.nv < 5 {
        return Err(crate::Error::InvalidInput(
            "surface stencils need at least a 5x5 grid".into(),
        ));
    }
    let xu = x.deriv_u();
    let xv = x.deriv_v();

    let mut top_speed = 0.0f64;
    for jp in 0..x.spec.nv {
        for ip in 0..x.spec.nu {
            top_speed = top_speed.max(xu.get(ip, jp).norm());
        }
    }
    let floor = 1e-6 * top_speed;

    let mut degenerate = None;
    let e2f = Grid::from_fn(x.spec, |i, j| {
        let nu2 = xu.get(i, j).norm_sq();
        if nu2.sqrt() < floor && x.is_interior(i, j, 1) && degenerate.is_none() {
            degenerate = Some((i, j));
        }
        0.5 * (nu2 + xv.get(i, j).norm_sq())
    });
    if let Some((i, j)) = degenerate {
        return Err(crate::Error::DegeneratePoint(format!(
            "|X_u| below {floor:.3e} at node ({i}, {j})"
        )));
    }

    let conformality = Grid::from_fn(x.spec, |i, j| {
        let a = xu.get(i, j).norm_sq();
        let b = xv.get(i, j).norm_sq();
        let mixed = xu.get(i, j).dot(*xv.get(i, j));
        ((a - b).abs().max(mixed.abs())) / e2f.get(i, j).max(1e-300)
    });
    let b_isotropy = Grid::from_fn(x.spec, |i, j| {
        crate::geometry::bform(*xu.get(i, j), *xv.get(i, j)).max_abs()
            / e2f.get(i, j).max(1e-300)
    });
    let omega_isotropy = Grid::from_fn(x.spec, |i, j| {
        let (a, b) = (*xu.get(i, j), *xv.get(i, j));
        let scale = e2f.get(i, j).max(1e-300);
        (1..=3)
            .map(|k| omega(k, a, b).abs() / scale)
            .fold(0.0, f64::max)
    });

    let mut rho_defect_vec = Vec::with_capacity(x.spec.len());
    let mut rho_vec = Vec::with_capacity(x.spec.len());
    for jp in 0..x.spec.nv {
        for ip in 0..x.spec.nu {
            let raw = crate::geometry::rho(*xu.get(ip, jp), *xv.get(ip, jp))
                / (xu.get(ip, jp).norm() * xv.get(ip, jp).norm()).max(1e-300);
            let nrm = raw.norm();
            rho_defect_vec.push((nrm - 1.0).abs());
            rho_vec.push(if nrm > 1e-300 { raw / nrm } else { raw });
        }
    }
    let rho = Grid::from_vec(x.spec, rho_vec)?;
    let rho_norm_defect = Grid::from_vec(x.spec, rho_defect_vec)?;

    Ok(SurfaceFields {
        xu,
        xv,
        e2f,
        rho,
        conformality,
        b_isotropy,
        omega_isotropy,
        rho_norm_defect,
        margin: MARGIN,
    })
}

/// Discrete tension field `Delta rho + |d rho|^2 rho` of a sphere-valued
/// map; vanishes to stencil order exactly for harmonic maps.
pub fn tension_field(rho: &Grid<Quaternion>) -> Grid<Quaternion> {
    let lap = {
        let uu = rho.second_u();
        let vv = rho.second_v();
        uu.zip_map(&vv, |a, b| *a + *b)
    };
    let ru = rho.deriv_u();
    let rv = rho.deriv_v();
    Grid::from_fn(rho.spec, |i, j| {
        let grad2 = ru.get(i, j).norm_sq() + rv.get(i, j).norm_sq();
        *lap.get(i, j) + *rho.get(i, j) * grad2
    })
}

/// Mean curvature through the definition: `H = e^{-2f}/2 (X_uu + X_vv)`.
pub fn laplacian_mean_curvature(x: &Grid<Octonion>, e2f: &Grid<f64>) -> Grid<Octonion> {
    let xuu = x.second_u();
    let xvv = x.second_v();
    Grid::from_fn(x.spec, |i, j| {
        (*xuu.get(i, j) + *xvv.get(i, j)) * (0.5 / e2f.get(i, j).max(1e-300))
    })
}

/// Mean curvature through the structure of the isotropy variety:
/// with the unit frame `(q, q')`, `(x, y)` the two quaternion slots of
/// the trivialized `q`, and `gamma = d rho rho^{-1}`,
///
/// ```text
/// H = e^{-f}/2 * R_rho (y gamma_v - x gamma_u, y gamma_u + x gamma_v).
/// ```
///
/// Fails with [`crate::Error::NonIsotropicFrame`] when the isotropy
/// obstruction exceeds `isotropy_tol` inside the margin.
pub fn sigma_v_mean_curvature(
    fields: &SurfaceFields,
    isotropy_tol: f64,
) -> crate::Result<Grid<Octonion>> {
    let (b_max, _) = aggregate(&fields.b_isotropy, fields.margin, |r| *r);
    if b_max > isotropy_tol {
        return Err(crate::Error::NonIsotropicFrame(format!(
            "isotropy obstruction {b_max:.3e} exceeds {isotropy_tol:.3e}"
        )));
    }
    let rho_u = fields.rho.deriv_u();
    let rho_v = fields.rho.deriv_v();
    Ok(Grid::from_fn(fields.rho.spec, |i, j| {
        let rho = *fields.rho.get(i, j);
        let gamma_u = *rho_u.get(i, j) * rho.conj();
        let gamma_v = *rho_v.get(i, j) * rho.conj();
        let ef = fields.e2f.get(i, j).max(1e-300).sqrt();
        let q = *fields.xu.get(i, j) * (1.0 / ef);
        // Trivialize: (x, y) = R_rho^{-1} q.
        let xq = q.x;
        let yq = q.y * rho.conj();
        let top = yq * gamma_v - xq * gamma_u;
        let bottom = (yq * gamma_u + xq * gamma_v) * rho;
        Octonion::new(top, bottom) * (0.5 / ef)
    }))
}

/// Residuals of the closedness system in real and complex form.
#[derive(Debug, Clone)]
pub struct ClosednessReport {
    /// First real equation: `x_v + y_u`.
    pub eq_a: Grid<Quaternion>,
    /// Second real equation: `y_v - x_u + y gamma_v - x gamma_u`.
    pub eq_b: Grid<Quaternion>,
    /// Complex form projected on the top slot.
    pub eq_complex: Grid<CQuaternion>,
    /// Worst deviation between the complex residual and its exact
    /// algebraic combination of the real ones (a pure rounding check).
    pub equivalence_defect: f64,
    /// Trustworthy margin.
    pub margin: usize,
}

/// Evaluates both forms of the closedness system for the trivialized
/// frame fields `(x, y) = R_rho^{-1} (X_u slots)`.
pub fn closedness_residual(fields: &SurfaceFields) -> ClosednessReport {
    let spec = fields.rho.spec;
    let xf = Grid::from_fn(spec, |i, j| fields.xu.get(i, j).x);
    let yf = Grid::from_fn(spec, |i, j| fields.xu.get(i, j).y * fields.rho.get(i, j).conj());
    let xu_ = xf.deriv_u();
    let xv_ = xf.deriv_v();
    let yu_ = yf.deriv_u();
    let yv_ = yf.deriv_v();
    let rho_u = fields.rho.deriv_u();
    let rho_v = fields.rho.deriv_v();

    let eq_a = Grid::from_fn(spec, |i, j| *xv_.get(i, j) + *yu_.get(i, j));
    let eq_b = Grid::from_fn(spec, |i, j| {
        let rho = *fields.rho.get(i, j);
        let gamma_u = *rho_u.get(i, j) * rho.conj();
        let gamma_v = *rho_v.get(i, j) * rho.conj();
        *yv_.get(i, j) - *xu_.get(i, j) + *yf.get(i, j) * gamma_v - *xf.get(i, j) * gamma_u
    });

    // Complex form: E = (x + iy) eps; on the top slot the equation reads
    // dE/dzbar + E gamma(d/dzbar)/2 + conj(E) gamma(d/dz)/2 = 0 and must
    // equal (i eq_a - eq_b)/4 identically.
    let i_c = Complex64::new(0.0, 1.0);
    let e_top = Grid::from_fn(spec, |i, j| {
        (CQuaternion::from_real(*xf.get(i, j)) + CQuaternion::from_real(*yf.get(i, j)) * i_c)
            * Complex64::new(0.5, 0.0)
    });
    let e_u = e_top.deriv_u();
    let e_v = e_top.deriv_v();
    let mut equivalence_defect = 0.0f64;
    let eq_complex = Grid::from_fn(spec, |i, j| {
        let rho = *fields.rho.get(i, j);
        let gamma_u = CQuaternion::from_real(*rho_u.get(i, j) * rho.conj());
        let gamma_v = CQuaternion::from_real(*rho_v.get(i, j) * rho.conj());
        let gamma_zbar = (gamma_u + gamma_v * i_c) * Complex64::new(0.5, 0.0);
        let gamma_z = (gamma_u - gamma_v * i_c) * Complex64::new(0.5, 0.0);
        let e = *e_top.get(i, j);
        let de_zbar = (*e_u.get(i, j) + *e_v.get(i, j) * i_c) * Complex64::new(0.5, 0.0);
        let r = de_zbar
            + e * gamma_zbar * Complex64::new(0.5, 0.0)
            + e.conj_c() * gamma_z * Complex64::new(0.5, 0.0);
        let combo = (CQuaternion::from_real(*eq_a.get(i, j)) * i_c
            - CQuaternion::from_real(*eq_b.get(i, j)))
            * Complex64::new(0.25, 0.0);
        if spec.nu > 2 * MARGIN
            && spec.nv > 2 * MARGIN
            && i >= MARGIN
            && i < spec.nu - MARGIN
            && j >= MARGIN
            && j < spec.nv - MARGIN
        {
            equivalence_defect = equivalence_defect.max((r - combo).max_abs());
        }
        r
    });

    ClosednessReport {
        eq_a,
        eq_b,
        eq_complex,
        equivalence_defect,
        margin: MARGIN,
    }
}

/// Classifies every node of a gridded immersion by its orbit invariant.
///
/// `tol` bounds both the accepted isotropy residual of the normalized
/// tangent frames and the proximity to the boundary classes.
pub fn singular_map(x: &Grid<Octonion>, tol: f64) -> crate::Result<Grid<OrbitClass>> {
    let fields_xu = x.deriv_u();
    let fields_xv = x.deriv_v();
    let mut out = Vec::with_capacity(x.spec.len());
    for jp in 0..x.spec.nv {
        for ip in 0..x.spec.nu {
            let nu = fields_xu.get(ip, jp).norm().max(1e-300);
            let nv = fields_xv.get(ip, jp).norm().max(1e-300);
            let frame = Frame::new(
                *fields_xu.get(ip, jp) * (1.0 / nu),
                *fields_xv.get(ip, jp) * (1.0 / nv),
            );
            let class = classify(&frame, tol).map_err(|e| match e {
                crate::Error::NotIsotropic(msg) => {
                    crate::Error::NotIsotropic(format!("node ({ip}, {jp}): {msg}"))
                }
                other => other,
            })?;
            out.push(class);
        }
    }
    Grid::from_vec(x.spec, out)
}

/// Discrete Maurer-Cartan form `alpha = U^{-1} dU` of a unitary frame
/// grid, split into its `du` and `dv` components.
pub fn maurer_cartan_unitary(
    frames: &Grid<GroupLoop>,
) -> crate::Result<(Grid<TwistedLoop>, Grid<TwistedLoop>)> {
    let spec = frames.spec;
    if spec.nu < 3 || spec.nv < 3 {
        return Err(crate::Error::InvalidInput(
            "Maurer-Cartan stencils need at least a 3x3 grid".into(),
        ));
    }
    let mut au = Vec::with_capacity(spec.len());
    let mut av = Vec::with_capacity(spec.len());
    let deriv = |i: usize, j: usize, along_u: bool| -> GroupLoop {
        let (len, h) = if along_u {
            (spec.nu, spec.du())
        } else {
            (spec.nv, spec.dv())
        };
        let pos = if along_u { i } else { j };
        let at = |p: usize| -> &GroupLoop {
            if along_u {
                frames.get(p, j)
            } else {
                frames.get(i, p)
            }
        };
        let w = 1.0 / (2.0 * h);
        if pos == 0 {
            crate::dpw::frame_lin_comb(&[
                (-3.0 * w, at(0)),
                (4.0 * w, at(1)),
                (-w, at(2)),
            ])
        } else if pos == len - 1 {
            crate::dpw::frame_lin_comb(&[
                (3.0 * w, at(len - 1)),
                (-4.0 * w, at(len - 2)),
                (w, at(len - 3)),
            ])
        } else {
            crate::dpw::frame_lin_comb(&[(w, at(pos + 1)), (-w, at(pos - 1))])
        }
    };
    for j in 0..spec.nv {
        for i in 0..spec.nu {
            let inv = frames.get(i, j).inverse_unitary();
            au.push(crate::dpw::frame_maurer_cartan(&deriv(i, j, true), &inv));
            av.push(crate::dpw::frame_maurer_cartan(&deriv(i, j, false), &inv));
        }
    }
    Ok((Grid::from_vec(spec, au)?, Grid::from_vec(spec, av)?))
}

/// Metadata of the grid a metric was measured on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    pub nu: usize,
    pub nv: usize,
    pub h: f64,
}

/// One aggregated residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricStat {
    pub max: f64,
    pub mean: f64,
    pub grid: GridMeta,
}

/// Flat metric-name -> statistics map; serializes losslessly to JSON.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
pub struct DiagnosticsReport {
    #[serde(flatten)]
    pub metrics: BTreeMap<String, MetricStat>,
}

impl DiagnosticsReport {
    pub fn insert(&mut self, name: &str, (max, mean): (f64, f64), spec: GridSpec) {
        self.metrics.insert(
            name.to_string(),
            MetricStat {
                max,
                mean,
                grid: GridMeta {
                    nu: spec.nu,
                    nv: spec.nv,
                    h: spec.h(),
                },
            },
        );
    }

    pub fn get(&self, name: &str) -> Option<&MetricStat> {
        self.metrics.get(name)
    }

    pub fn to_json(&self) -> crate::Result<String> {
        Ok(serde_json::to_string_pretty(&self)?)
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Assembles the full per-surface diagnostics report.
///
/// `conformal_tol` gates the cross-product mean-curvature formula (it
/// assumes conformality); the three mean-curvature variants and their
/// pairwise disagreements are all reported.
pub fn diagnostics(x: &Grid<Octonion>, conformal_tol: f64) -> crate::Result<DiagnosticsReport> {
    let fields = surface_fields(x)?;
    let spec = x.spec;
    let m = fields.margin;
    let mut report = DiagnosticsReport::default();

    report.insert("conformality", aggregate(&fields.conformality, m, |r| *r), spec);
    report.insert("b_isotropy", aggregate(&fields.b_isotropy, m, |r| *r), spec);
    report.insert(
        "omega_isotropy",
        aggregate(&fields.omega_isotropy, m, |r| *r),
        spec,
    );
    report.insert(
        "rho_norm",
        aggregate(&fields.rho_norm_defect, m, |r| *r),
        spec,
    );

    let tension = tension_field(&fields.rho);
    report.insert("tension", aggregate(&tension, m, |t| t.norm()), spec);

    let h_lap = laplacian_mean_curvature(x, &fields.e2f);
    report.insert("mean_curvature", aggregate(&h_lap, m, |h| h.norm()), spec);

    let h_gen = crate::spin7::general_mean_curvature(x, conformal_tol)?;
    report.insert(
        "mean_curvature_lap_vs_general",
        aggregate(&h_lap.zip_map(&h_gen.h, |a, b| (*a - *b).norm()), m, |d| *d),
        spec,
    );

    if let Ok(h_sigma) = sigma_v_mean_curvature(&fields, conformal_tol) {
        report.insert(
            "mean_curvature_lap_vs_sigma",
            aggregate(&h_lap.zip_map(&h_sigma, |a, b| (*a - *b).norm()), m, |d| *d),
            spec,
        );
        report.insert(
            "mean_curvature_sigma_vs_general",
            aggregate(&h_sigma.zip_map(&h_gen.h, |a, b| (*a - *b).norm()), m, |d| *d),
            spec,
        );
    }

    let closed = closedness_residual(&fields);
    report.insert("closedness_a", aggregate(&closed.eq_a, m, |q| q.norm()), spec);
    report.insert("closedness_b", aggregate(&closed.eq_b, m, |q| q.norm()), spec);
    report.insert(
        "closedness_complex",
        aggregate(&closed.eq_complex, m, |q| q.abs()),
        spec,
    );
    report.insert(
        "closedness_equivalence",
        (closed.equivalence_defect, closed.equivalence_defect),
        spec,
    );

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpw::{dpw_run, PotentialSpec};
    use crate::geometry::OrbitKind;

    fn plane(n: usize) -> Grid<Octonion> {
        let spec = GridSpec::unit_square(n);
        Grid::from_fn(spec, |i, j| {
            Octonion::new(
                Quaternion::new(spec.u(i), 0.0, 0.0, 0.0),
                Quaternion::new(spec.v(j), 0.0, 0.0, 0.0),
            )
        })
    }

    #[test]
    fn plane_fields_are_flat_and_isotropic() {
        let x = plane(9);
        let f = surface_fields(&x).unwrap();
        let (cmax, _) = aggregate(&f.conformality, 2, |r| *r);
        let (bmax, _) = aggregate(&f.b_isotropy, 2, |r| *r);
        assert!(cmax < 1e-12);
        assert!(bmax < 1e-12);
        // rho == 1 (the real unit quaternion) everywhere.
        for jp in 0..9 {
            for ip in 0..9 {
                assert!((*f.rho.get(ip, jp) - Quaternion::new(1.0, 0.0, 0.0, 0.0)).max_abs() < 1e-12);
            }
        }
        let tension = tension_field(&f.rho);
        let (tmax, _) = aggregate(&tension, 2, |t| t.norm());
        assert!(tmax < 1e-12);
        let h = laplacian_mean_curvature(&x, &f.e2f);
        let (hmax, _) = aggregate(&h, 2, |h| h.norm());
        assert!(hmax < 1e-12);
    }

    #[test]
    fn plane_singular_map_is_type_p1() {
        // The plane 2 Re(eps z) has x-parts of X_u, X_v linearly
        // dependent (X_v's x-part vanishes): class P1 with p = 0.
        let x = plane(7);
        let classes = singular_map(&x, 1e-8).unwrap();
        for jp in 0..7 {
            for ip in 0..7 {
                let c = classes.get(ip, jp);
                assert_eq!(c.kind, OrbitKind::TypeP1);
                assert!(c.p_value < 1e-12);
            }
        }
    }

    #[test]
    fn dpw_surface_passes_diagnostics() {
        let spec = PotentialSpec::constant_curved(GridSpec::unit_square(17), 8, 0.15);
        let run = dpw_run(&spec).unwrap();
        let sheet = &run.sheets[0];
        let report = diagnostics(&sheet.x, 0.05).unwrap();
        let conf = report.get("conformality").unwrap();
        assert!(conf.max < 1e-2, "conformality {}", conf.max);
        let biso = report.get("b_isotropy").unwrap();
        assert!(biso.max < 1e-2, "b isotropy {}", biso.max);
        let rho_n = report.get("rho_norm").unwrap();
        assert!(rho_n.max < 1e-2, "rho norm {}", rho_n.max);
        let equiv = report.get("closedness_equivalence").unwrap();
        assert!(equiv.max < 1e-12, "equivalence {}", equiv.max);
        // JSON round trip is lossless.
        let json = report.to_json().unwrap();
        let back = DiagnosticsReport::from_json(&json).unwrap();
        assert_eq!(report, back);
    }

    #[test]
    fn flatness_residual_shrinks_at_second_order() {
        // Truncation 16: the Laurent tails that alias into the bracket sit
        // far below the stencil error, so the h^2 term is what we measure.
        let mut rates = Vec::new();
        for n in [9usize, 17] {
            let spec = PotentialSpec::constant_curved(GridSpec::unit_square(n), 16, 0.15);
            let run = dpw_run(&spec).unwrap();
            let (au, av) = maurer_cartan_unitary(&run.unitary).unwrap();
            let res = crate::loops::zero_curvature_residual(&au, &av).unwrap();
            let (rmax, _) = crate::loops::residual_stats(&res);
            rates.push((run.unitary.spec.h(), rmax));
        }
        let order = (rates[0].1 / rates[1].1).ln() / (rates[0].0 / rates[1].0).ln();
        assert!(
            (order - 2.0).abs() < 0.6,
            "observed order {order}, data {rates:?}"
        );
    }

    #[test]
    fn stretched_plane_is_flagged_non_conformal_but_still_measured() {
        // Scale the v-axis by 1.1: conformality defect is |1 - 1.1^2| / e2f.
        let spec = GridSpec::unit_square(9);
        let x = Grid::from_fn(spec, |i, j| {
            Octonion::new(
                Quaternion::new(spec.u(i), 0.0, 0.0, 0.0),
                Quaternion::new(1.1 * spec.v(j), 0.0, 0.0, 0.0),
            )
        });
        let f = surface_fields(&x).unwrap();
        let (cmax, _) = aggregate(&f.conformality, 2, |r| *r);
        let expected = (1.21f64 - 1.0) / (0.5 * (1.0 + 1.21));
        assert!((cmax - expected).abs() < 1e-10, "conformality {cmax}");
        // The direction field is still well defined and unit.
        let (rmax, _) = aggregate(&f.rho_norm_defect, 2, |r| *r);
        assert!(rmax < 1e-10);
        // A frankly non-isotropic immersion trips the sigma_v gate.
        let bad = Grid::from_fn(spec, |i, j| {
            Octonion::new(
                Quaternion::new(spec.u(i), spec.v(j), 0.0, 0.0),
                Quaternion::new(spec.v(j), spec.u(i), 0.0, 0.0),
            )
        });
        let bf = surface_fields(&bad).unwrap();
        assert!(matches!(
            sigma_v_mean_curvature(&bf, 1e-6),
            Err(crate::Error::NonIsotropicFrame(_))
        ));
    }

    #[test]
    fn tension_detects_non_harmonic_fields() {
        // rho = exp(u^2 i): analytic tension (2 + ...) stays away from 0.
        let spec = GridSpec::unit_square(33);
        let rho = Grid::from_fn(spec, |i, j| {
            let _ = j;
            let t = spec.u(i) * spec.u(i);
            Quaternion::new(t.cos(), t.sin(), 0.0, 0.0)
        });
        let tension = tension_field(&rho);
        let (tmax, _) = aggregate(&tension, 2, |t| t.norm());
        // |tension| = |(u^2)''| = 2 at every node (the |d rho|^2 rho term
        // cancels the radial part of Delta rho for unit-circle fields).
        assert!((tmax - 2.0).abs() < 1e-2, "tension max {tmax}");
    }
}
