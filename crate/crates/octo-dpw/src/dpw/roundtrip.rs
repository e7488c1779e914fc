//! Round trip: unitary frame -> Birkhoff minus factor -> meromorphic
//! potential -> re-integration -> surface, compared against the original.
//!
//! The minus factor `F_-` solves `dF_- = F_- mu` where
//! `mu = F_-^{-1} dF_-` carries only the powers `lambda^{-2}` and
//! `lambda^{-1}`; any other power in the numerically recovered `mu` is a
//! discretization artifact and is reported. Re-integrating `mu` from the
//! value of `F_-` at one node must reproduce `F_-` — and, after Iwasawa
//! factorization, the original surface: the plus factor only changes `U`
//! by a constant-in-lambda linear gauge, which cannot move the
//! translation part. Twisting kills every constant translation
//! coefficient, so no rigid-motion fitting is needed for the comparison.
//!
//! Derivatives use 4th-order central differences two nodes inside the
//! boundary; the re-integration marches node to node with classical RK4,
//! reading `mu` at half-steps through cubic Lagrange interpolation along
//! the marching direction.

use super::birkhoff::birkhoff_factorize;
use super::frame::{lin_comb as frame_lin_comb, maurer_cartan_component, GroupLoop};
use super::iwasawa::iwasawa_factorize;
use super::surface::DpwRun;
use crate::grid::{Grid, GridSpec};
use crate::loops::{LieElement, TwistedLoop};
use num_complex::Complex64;
use rayon::prelude::*;

/// Weighted sum of twisted loops.
fn loop_lin_comb(terms: &[(f64, &TwistedLoop)]) -> TwistedLoop {
    let n = terms[0].1.truncation();
    let mut acc = TwistedLoop::zero(n);
    for k in -n..=n {
        let mut elem = LieElement::ZERO;
        for &(w, l) in terms {
            elem = elem + l.coeff(k) * w;
        }
        acc.set(k, elem);
    }
    acc
}

/// 4th-order derivative of a frame grid along one axis at a node at
/// least two nodes from the boundary.
fn frame_deriv(
    frames: &Grid<GroupLoop>,
    i: usize,
    j: usize,
    along_u: bool,
) -> GroupLoop {
    let h = if along_u {
        frames.spec.du()
    } else {
        frames.spec.dv()
    };
    let at = |off: i32| -> &GroupLoop {
        if along_u {
            frames.get((i as i32 + off) as usize, j)
        } else {
            frames.get(i, (j as i32 + off) as usize)
        }
    };
    let w = 1.0 / (12.0 * h);
    frame_lin_comb(&[
        (-w, at(2)),
        (8.0 * w, at(1)),
        (-8.0 * w, at(-1)),
        (w, at(-2)),
    ])
}

/// Cubic Lagrange interpolation of a loop grid along one axis at
/// fractional index `t` (the other index fixed).
fn interp_mu(grid: &Grid<TwistedLoop>, t: f64, fixed: usize, along_u: bool) -> TwistedLoop {
    let len = if along_u { grid.spec.nu } else { grid.spec.nv };
    let base = (t.floor() as i64 - 1).clamp(0, len as i64 - 4) as usize;
    let xs = [base as f64, base as f64 + 1.0, base as f64 + 2.0, base as f64 + 3.0];
    let mut weights = [0.0f64; 4];
    for k in 0..4 {
        let mut w = 1.0;
        for m in 0..4 {
            if m != k {
                w *= (t - xs[m]) / (xs[k] - xs[m]);
            }
        }
        weights[k] = w;
    }
    let node = |k: usize| -> &TwistedLoop {
        if along_u {
            grid.get(base + k, fixed)
        } else {
            grid.get(fixed, base + k)
        }
    };
    loop_lin_comb(&[
        (weights[0], node(0)),
        (weights[1], node(1)),
        (weights[2], node(2)),
        (weights[3], node(3)),
    ])
}

/// Right-hand side of `dH = H mu` in the factored coordinates.
fn rhs(state: &GroupLoop, mu: &TwistedLoop) -> GroupLoop {
    GroupLoop {
        a: mu.alpha_loop().mul(&state.a),
        b: mu.beta_loop().mul(&state.b),
        c: state.c.mul(&mu.delta_loop()),
        t: state.linear_apply(&mu.translation_loop()),
    }
}

/// One fixed-size RK4 step from index `from` to `from + dir` along an
/// axis, with `mu` sampled by interpolation at the half point.
fn rk4_step(
    state: &GroupLoop,
    mu: &Grid<TwistedLoop>,
    from: usize,
    dir: i64,
    fixed: usize,
    along_u: bool,
) -> GroupLoop {
    let h = if along_u { mu.spec.du() } else { mu.spec.dv() } * dir as f64;
    let t0 = from as f64;
    let t_half = t0 + 0.5 * dir as f64;
    let t1 = t0 + dir as f64;
    let mu0 = if along_u {
        mu.get(from, fixed).clone()
    } else {
        mu.get(fixed, from).clone()
    };
    let mu_half = interp_mu(mu, t_half, fixed, along_u);
    let mu1 = if along_u {
        mu.get((t1 + 0.5) as usize, fixed).clone()
    } else {
        mu.get(fixed, (t1 + 0.5) as usize).clone()
    };
    let k1 = rhs(state, &mu0);
    let s2 = frame_lin_comb(&[(1.0, state), (h / 2.0, &k1)]);
    let k2 = rhs(&s2, &mu_half);
    let s3 = frame_lin_comb(&[(1.0, state), (h / 2.0, &k2)]);
    let k3 = rhs(&s3, &mu_half);
    let s4 = frame_lin_comb(&[(1.0, state), (h, &k3)]);
    let k4 = rhs(&s4, &mu1);
    frame_lin_comb(&[
        (1.0, state),
        (h / 6.0, &k1),
        (h / 3.0, &k2),
        (h / 3.0, &k3),
        (h / 6.0, &k4),
    ])
}

/// Result of re-integrating the recovered meromorphic potential.
#[derive(Debug, Clone)]
pub struct ReintegrationReport {
    /// Worst coefficient deviation of the re-integrated frame from the
    /// Birkhoff minus factor over the inner grid.
    pub frame_deviation: f64,
    /// Worst deviation of the reconstructed base surface from the
    /// original `lambda = 1` sheet over the inner grid.
    pub x_deviation: f64,
}

/// Full round-trip diagnostics.
#[derive(Debug, Clone)]
pub struct RoundTrip {
    /// Birkhoff minus factor per node (identity placeholder off-cell).
    pub minus: Grid<GroupLoop>,
    /// Off-big-cell flags per node.
    pub off_cell: Grid<bool>,
    /// Fraction of flagged nodes.
    pub off_cell_fraction: f64,
    /// Grid the potential and re-integration live on (two nodes inside).
    pub inner: GridSpec,
    /// Recovered meromorphic potential, `du` component, on `inner`.
    pub mu_u: Grid<TwistedLoop>,
    /// Recovered meromorphic potential, `dv` component, on `inner`.
    pub mu_v: Grid<TwistedLoop>,
    /// Worst relative mass of `mu` outside powers {-2, -1}.
    pub mero_power_defect: f64,
    /// Present when every node needed for re-integration is on the big
    /// cell.
    pub reintegration: Option<ReintegrationReport>,
}

const MARGIN: usize = 2;

fn inner_spec(spec: GridSpec) -> crate::Result<GridSpec> {
    if spec.nu < 2 * MARGIN + 5 || spec.nv < 2 * MARGIN + 5 {
        return Err(crate::Error::InvalidInput(format!(
            "round trip needs at least a {0}x{0} grid",
            2 * MARGIN + 5
        )));
    }
    Ok(GridSpec::new(
        spec.u(MARGIN),
        spec.u(spec.nu - 1 - MARGIN),
        spec.v(MARGIN),
        spec.v(spec.nv - 1 - MARGIN),
        spec.nu - 2 * MARGIN,
        spec.nv - 2 * MARGIN,
    ))
}

/// Runs the Birkhoff/meromorphic round trip on a completed pipeline run.
pub fn roundtrip(run: &DpwRun) -> crate::Result<RoundTrip> {
    let spec = run.unitary.spec;
    let inner = inner_spec(spec)?;

    // Birkhoff splitting per node; off-cell nodes are flagged, any other
    // failure aborts.
    let splits: Vec<crate::Result<GroupLoop>> = (0..spec.len())
        .into_par_iter()
        .map(|idx| {
            birkhoff_factorize(run.unitary.get(idx % spec.nu, idx / spec.nu)).map(|f| f.minus)
        })
        .collect();
    let truncation = run.unitary.get(0, 0).truncation();
    let mut minus_vec = Vec::with_capacity(spec.len());
    let mut flags = Vec::with_capacity(spec.len());
    let mut flagged = 0usize;
    for outcome in splits {
        match outcome {
            Ok(m) => {
                minus_vec.push(m);
                flags.push(false);
            }
            Err(crate::Error::OffBigCell(_)) => {
                minus_vec.push(GroupLoop::identity(truncation));
                flags.push(true);
                flagged += 1;
            }
            Err(e) => return Err(e),
        }
    }
    let minus = Grid::from_vec(spec, minus_vec)?;
    let off_cell = Grid::from_vec(spec, flags)?;
    let off_cell_fraction = flagged as f64 / spec.len() as f64;

    // Meromorphic potential on the inner grid wherever the stencil is
    // clean.
    let clean_stencil = |ii: usize, jj: usize| -> bool {
        for off in -(MARGIN as i32)..=(MARGIN as i32) {
            if *off_cell.get((ii as i32 + off) as usize, jj)
                || *off_cell.get(ii, (jj as i32 + off) as usize)
            {
                return false;
            }
        }
        true
    };
    let mut mero_defect = 0.0f64;
    let mut all_clean = true;
    let mut mu_u_vec = Vec::with_capacity(inner.len());
    let mut mu_v_vec = Vec::with_capacity(inner.len());
    for jp in 0..inner.nv {
        for ip in 0..inner.nu {
            let (i, j) = (ip + MARGIN, jp + MARGIN);
            if !clean_stencil(i, j) {
                all_clean = false;
                mu_u_vec.push(TwistedLoop::zero(truncation));
                mu_v_vec.push(TwistedLoop::zero(truncation));
                continue;
            }
            let inv = minus.get(i, j).inverse_minus()?;
            let mu_u = maurer_cartan_component(&frame_deriv(&minus, i, j, true), &inv);
            let mu_v = maurer_cartan_component(&frame_deriv(&minus, i, j, false), &inv);
            let scale = mu_u.max_abs().max(mu_v.max_abs()).max(1e-300);
            for m in [&mu_u, &mu_v] {
                for k in -truncation..=truncation {
                    if k != -1 && k != -2 {
                        mero_defect = mero_defect.max(m.coeff(k).max_abs() / scale);
                    }
                }
            }
            mu_u_vec.push(mu_u);
            mu_v_vec.push(mu_v);
        }
    }
    let mu_u = Grid::from_vec(inner, mu_u_vec)?;
    let mu_v = Grid::from_vec(inner, mu_v_vec)?;

    let reintegration = if all_clean {
        Some(reintegrate(run, &minus, &mu_u, &mu_v)?)
    } else {
        None
    };

    Ok(RoundTrip {
        minus,
        off_cell,
        off_cell_fraction,
        inner,
        mu_u,
        mu_v,
        mero_power_defect: mero_defect,
        reintegration,
    })
}

/// Integrates `dH = H mu` over the inner grid starting from the minus
/// factor's value at the inner node nearest the original basepoint, and
/// compares frames and surfaces.
fn reintegrate(
    run: &DpwRun,
    minus: &Grid<GroupLoop>,
    mu_u: &Grid<TwistedLoop>,
    mu_v: &Grid<TwistedLoop>,
) -> crate::Result<ReintegrationReport> {
    let inner = mu_u.spec;
    // Anchor at the center of the inner grid: any node works since the
    // seed is the minus factor's own value there, and central anchoring
    // halves the longest marching distance.
    let (bi, bj) = inner.nearest_node(
        0.5 * (inner.u_min + inner.u_max),
        0.5 * (inner.v_min + inner.v_max),
    );
    let seed = minus.get(bi + MARGIN, bj + MARGIN).clone();

    let mut h_grid: Vec<Option<GroupLoop>> = vec![None; inner.len()];
    let put = |v: &mut Vec<Option<GroupLoop>>, i: usize, j: usize, g: GroupLoop| {
        v[j * inner.nu + i] = Some(g);
    };
    put(&mut h_grid, bi, bj, seed);

    // Basepoint column first (march in v), then each row (march in u).
    for j in (0..bj).rev() {
        let prev = h_grid[(j + 1) * inner.nu + bi].clone().unwrap();
        put(&mut h_grid, bi, j, rk4_step(&prev, mu_v, j + 1, -1, bi, false));
    }
    for j in bj + 1..inner.nv {
        let prev = h_grid[(j - 1) * inner.nu + bi].clone().unwrap();
        put(&mut h_grid, bi, j, rk4_step(&prev, mu_v, j - 1, 1, bi, false));
    }
    for j in 0..inner.nv {
        for i in (0..bi).rev() {
            let prev = h_grid[j * inner.nu + i + 1].clone().unwrap();
            put(&mut h_grid, i, j, rk4_step(&prev, mu_u, i + 1, -1, j, true));
        }
        for i in bi + 1..inner.nu {
            let prev = h_grid[j * inner.nu + i - 1].clone().unwrap();
            put(&mut h_grid, i, j, rk4_step(&prev, mu_u, i - 1, 1, j, true));
        }
    }
    let h_grid = Grid::from_vec(inner, h_grid.into_iter().map(Option::unwrap).collect())?;

    let mut frame_deviation = 0.0f64;
    for jp in 0..inner.nv {
        for ip in 0..inner.nu {
            frame_deviation = frame_deviation.max(
                h_grid
                    .get(ip, jp)
                    .max_abs_diff(minus.get(ip + MARGIN, jp + MARGIN)),
            );
        }
    }

    // Surface comparison at lambda = 1 against the original sheet.
    let one = Complex64::new(1.0, 0.0);
    let base_sheet = run
        .sheets
        .iter()
        .find(|s| (s.lambda - one).norm() < 1e-12)
        .ok_or_else(|| {
            crate::Error::InvalidInput("round trip needs a lambda = 1 sample".into())
        })?;
    let xs: Vec<crate::Result<crate::algebra::Octonion>> = (0..inner.len())
        .into_par_iter()
        .map(|idx| {
            let fac = iwasawa_factorize(h_grid.get(idx % inner.nu, idx / inner.nu))?;
            Ok(fac.u.t.eval(one).real_part())
        })
        .collect();
    let mut x_deviation = 0.0f64;
    for (idx, x) in xs.into_iter().enumerate() {
        let (ip, jp) = (idx % inner.nu, idx / inner.nu);
        let orig = base_sheet.x.get(ip + MARGIN, jp + MARGIN);
        x_deviation = x_deviation.max((x? - *orig).max_abs());
    }
    Ok(ReintegrationReport {
        frame_deviation,
        x_deviation,
    })
}
