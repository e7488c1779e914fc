//! Integration of the frame equation `dH = H mu` over the grid.
//!
//! The equation decouples in the factored coordinates: with
//! `mu = M(z) dz` and `M` carrying loops `(alpha, beta, delta, t)`,
//!
//! ```text
//! da/ds = alpha a,   db/ds = beta b,   dc/ds = c delta,
//! dT/ds = Op(a, b, c) t
//! ```
//!
//! (products are loop convolutions; `s` is arc length along a grid line and
//! the direction contributes the `dz` factor `+-1` or `+-i`).
//!
//! Marching starts at the node nearest the basepoint with `H = Id`, fills
//! that node's column, then every row. Each node-to-node edge is integrated
//! by classical RK4 with adaptive halving: the step is accepted when one
//! full step and two half steps agree within `budget * edge_length`.

use super::frame::GroupLoop;
use super::potential::PotentialSpec;
use crate::grid::Grid;
use crate::loops::TwistedLoop;
use num_complex::Complex64;

/// Per-unit-length error budget of the adaptive integrator.
pub const INTEGRATION_BUDGET: f64 = 1e-10;
/// Maximum halving depth before giving up.
pub const MAX_DEPTH: u32 = 12;

fn axpy(y: &GroupLoop, k: &GroupLoop, s: f64) -> GroupLoop {
    let sc = Complex64::from(s);
    GroupLoop {
        a: &y.a + &k.a.scale(sc),
        b: &y.b + &k.b.scale(sc),
        c: &y.c + &k.c.scale(sc),
        t: &y.t + &k.t.scale(sc),
    }
}

fn rhs(state: &GroupLoop, m: &TwistedLoop, dir: Complex64) -> GroupLoop {
    let alpha = m.alpha_loop().scale(dir);
    let beta = m.beta_loop().scale(dir);
    let delta = m.delta_loop().scale(dir);
    let t = m.translation_loop().scale(dir);
    GroupLoop {
        a: alpha.mul(&state.a),
        b: beta.mul(&state.b),
        c: state.c.mul(&delta),
        t: state.linear_apply(&t),
    }
}

fn rk4_step(
    spec: &PotentialSpec,
    state: &GroupLoop,
    z: Complex64,
    dir: Complex64,
    h: f64,
) -> crate::Result<GroupLoop> {
    let m0 = spec.eval(z)?;
    let mh = spec.eval(z + dir * (0.5 * h))?;
    let m1 = spec.eval(z + dir * h)?;
    let k1 = rhs(state, &m0, dir);
    let k2 = rhs(&axpy(state, &k1, 0.5 * h), &mh, dir);
    let k3 = rhs(&axpy(state, &k2, 0.5 * h), &mh, dir);
    let k4 = rhs(&axpy(state, &k3, h), &m1, dir);
    let mut out = axpy(state, &k1, h / 6.0);
    out = axpy(&out, &k2, h / 3.0);
    out = axpy(&out, &k3, h / 3.0);
    out = axpy(&out, &k4, h / 6.0);
    Ok(out)
}

fn advance(
    spec: &PotentialSpec,
    state: &GroupLoop,
    z: Complex64,
    dir: Complex64,
    h: f64,
    depth: u32,
) -> crate::Result<GroupLoop> {
    let full = rk4_step(spec, state, z, dir, h)?;
    let mid = rk4_step(spec, state, z, dir, 0.5 * h)?;
    let fine = rk4_step(spec, &mid, z + dir * (0.5 * h), dir, 0.5 * h)?;
    let scale = state.max_abs().max(1.0);
    let err = full.max_abs_diff(&fine);
    // f64::max ignores NaN, so overflowed states (inf - inf) would fold to
    // a zero estimate; any non-finite value must force subdivision.
    let healthy = err.is_finite() && fine.max_abs().is_finite();
    if healthy && err <= INTEGRATION_BUDGET * h.abs() * scale {
        return Ok(fine);
    }
    if depth >= MAX_DEPTH {
        return Err(crate::Error::StepSizeTooCoarse(format!(
            "edge error {err:.3e} above budget {:.3e} at halving depth {depth}",
            INTEGRATION_BUDGET * h.abs() * scale
        )));
    }
    let first = advance(spec, state, z, dir, 0.5 * h, depth + 1)?;
    advance(spec, &first, z + dir * (0.5 * h), dir, 0.5 * h, depth + 1)
}

/// Snapped basepoint node of a potential spec.
pub fn basepoint_node(spec: &PotentialSpec) -> (usize, usize) {
    spec.domain.nearest_node(spec.basepoint[0], spec.basepoint[1])
}

/// Integrates the frame over the whole grid with `H = Id` at the node
/// nearest the basepoint.
pub fn integrate_frame(spec: &PotentialSpec) -> crate::Result<Grid<GroupLoop>> {
    spec.validate()?;
    let domain = spec.domain;
    let n = spec.truncation;
    let (i0, j0) = basepoint_node(spec);
    let du = domain.du();
    let dv = domain.dv();
    let z_at = |i: usize, j: usize| Complex64::new(domain.u(i), domain.v(j));

    let mut h_grid = Grid::fill(domain, GroupLoop::identity(n));
    let i_dir = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);

    // Basepoint column.
    for j in j0 + 1..domain.nv {
        let prev = h_grid.get(i0, j - 1).clone();
        let next = advance(spec, &prev, z_at(i0, j - 1), i_dir, dv, 0)?;
        h_grid.set(i0, j, next);
    }
    for j in (0..j0).rev() {
        let prev = h_grid.get(i0, j + 1).clone();
        let next = advance(spec, &prev, z_at(i0, j + 1), -i_dir, dv, 0)?;
        h_grid.set(i0, j, next);
    }
    // Rows.
    for j in 0..domain.nv {
        for i in i0 + 1..domain.nu {
            let prev = h_grid.get(i - 1, j).clone();
            let next = advance(spec, &prev, z_at(i - 1, j), one, du, 0)?;
            h_grid.set(i, j, next);
        }
        for i in (0..i0).rev() {
            let prev = h_grid.get(i + 1, j).clone();
            let next = advance(spec, &prev, z_at(i + 1, j), -one, du, 0)?;
            h_grid.set(i, j, next);
        }
    }
    Ok(h_grid)
}

/// Worst deviation of `N(a(lambda))` and `N(b(lambda))` from 1 and of the
/// group twisting across sampled frames — an integration-quality check
/// (the flow preserves both exactly).
pub fn frame_invariant_defect(h: &Grid<GroupLoop>, lambdas: &[Complex64]) -> f64 {
    let mut worst = 0.0f64;
    for g in h.iter() {
        worst = worst.max(g.twisting_defect());
        for &lam in lambdas {
            let na = (g.a.eval(lam).norm_c() - Complex64::new(1.0, 0.0)).norm();
            let nb = (g.b.eval(lam).norm_c() - Complex64::new(1.0, 0.0)).norm();
            let nc = (g.c.eval(lam).norm_c() - Complex64::new(1.0, 0.0)).norm();
            worst = worst.max(na).max(nb).max(nc);
        }
    }
    worst
}
