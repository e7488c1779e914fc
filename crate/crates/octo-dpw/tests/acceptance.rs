//! Acceptance suite: one test per numbered criterion.
//!
//! Each test prints a single line
//! `ACCEPTANCE NN <name>: PASS|FAIL (<measured values vs pinned bounds>)`
//! before asserting, so `cargo test --test acceptance -- --nocapture`
//! doubles as a human-readable report. The three refinement runs shared by
//! criteria 09, 10 and 12 are computed once behind a `OnceLock`.

use num_complex::Complex64;
use octo_dpw::algebra::{
    random_octonion, random_pure_quaternion, random_quaternion, random_unit_quaternion, COctonion,
    CQuaternion, Octonion, Operator8, Quaternion,
};
use octo_dpw::analysis::{
    laplacian_mean_curvature, maurer_cartan_unitary, sigma_v_mean_curvature, singular_map,
    surface_fields, tension_field, MARGIN,
};
use octo_dpw::dpw::{dpw_run, iwasawa_factorize, roundtrip, DpwRun, GroupLoop, PotentialSpec};
use octo_dpw::geometry::{
    classify, p_invariant, random_g0, reconstruct, reference_frame, Branch, Frame, GroupElementG0,
    OrbitClass, OrbitKind,
};
use octo_dpw::grid::{aggregate, Grid, GridSpec};
use octo_dpw::loops::{
    residual_stats, zero_curvature_residual, GradedComponent, LieElement, OLoop, QLoop,
};
use octo_dpw::spin7::{chi, cross, general_mean_curvature, spin7_generator};
use octo_dpw::verify::{run_identity_suite, Fault};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::FRAC_PI_4;
use std::sync::OnceLock;
use std::time::Instant;

/// Prints the per-criterion report line, then enforces the verdict.
fn criterion(id: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {id:02} {name}: {verdict} ({detail})");
    assert!(pass, "ACCEPTANCE {id:02} {name}: FAIL ({detail})");
}

// ---------------------------------------------------------------------------
// Shared fixtures and helpers
// ---------------------------------------------------------------------------

fn curved_run(n: usize, truncation: i32, lambdas: Vec<[f64; 2]>) -> DpwRun {
    let mut spec = PotentialSpec::constant_curved(GridSpec::unit_square(n), truncation, 0.15);
    spec.lambda_samples = lambdas;
    dpw_run(&spec).expect("dpw pipeline")
}

/// One refinement level of the shared curved-potential run.
struct Level {
    h: f64,
    flatness: f64,
    tension: f64,
    x: Grid<Octonion>,
}

static REFINEMENT: OnceLock<Vec<Level>> = OnceLock::new();

/// Curved runs at 32^2, 64^2 and 128^2, shared by criteria 09, 10 and 12.
fn refinement() -> &'static [Level] {
    REFINEMENT.get_or_init(|| {
        [32usize, 64, 128]
            .iter()
            .map(|&n| {
                let run = curved_run(n, 16, vec![[1.0, 0.0]]);
                let (au, av) = maurer_cartan_unitary(&run.unitary).expect("maurer-cartan");
                let flat = zero_curvature_residual(&au, &av).expect("curvature residual");
                let (flatness, _) = residual_stats(&flat);
                let x = run.sheets[0].x.clone();
                let fields = surface_fields(&x).expect("first fundamental data");
                let (tension, _) = aggregate(&tension_field(&fields.rho), MARGIN, |q| q.norm());
                Level {
                    h: x.spec.h(),
                    flatness,
                    tension,
                    x,
                }
            })
            .collect()
    })
}

fn random_cq<R: Rng + ?Sized>(rng: &mut R) -> CQuaternion {
    CQuaternion::from_real(random_quaternion(rng))
        + CQuaternion::from_real(random_quaternion(rng)) * Complex64::i()
}

fn random_pure_cq<R: Rng + ?Sized>(rng: &mut R) -> CQuaternion {
    CQuaternion::from_real(random_pure_quaternion(rng))
        + CQuaternion::from_real(random_pure_quaternion(rng)) * Complex64::i()
}

/// Random element of a single grade of the order-four decomposition.
fn random_homogeneous<R: Rng + ?Sized>(rng: &mut R, k: i32) -> LieElement {
    let component = match k.rem_euclid(4) {
        0 => GradedComponent::Zero {
            a: random_pure_cq(rng),
            delta: random_pure_cq(rng),
        },
        1 => GradedComponent::One { w: random_cq(rng) },
        2 => GradedComponent::Two {
            gamma: random_pure_cq(rng),
        },
        _ => GradedComponent::MinusOne { w: random_cq(rng) },
    };
    component.to_element()
}

fn random_pure_unit_octonion<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    loop {
        if let Some(u) = random_octonion(rng).im().normalized() {
            return u;
        }
    }
}

/// Random unit isotropic frame: the normal form at a random invariant value,
/// rotated in-plane and moved by a random group element.
fn random_isotropic_frame<R: Rng + ?Sized>(rng: &mut R) -> Frame {
    let p: f64 = rng.gen_range(0.0..=0.5);
    let s = (1.0 - 4.0 * p * p).sqrt();
    let alpha = (1.0 - s).sqrt();
    let beta = (2.0 - alpha * alpha).sqrt();
    let theta = rng.gen_range(-3.0..3.0);
    let g = random_g0(rng, true);
    g.apply_frame(&reference_frame().biscale(alpha, beta).rotate(theta))
}

/// Inverse of a positive loop-group element (powers >= 0).
fn inverse_plus_group(g: &GroupLoop) -> GroupLoop {
    let lin_inv = GroupLoop {
        a: g.a.inverse_plus().expect("invertible plus factor"),
        b: g.b.inverse_plus().expect("invertible plus factor"),
        c: g.c.inverse_plus().expect("invertible plus factor"),
        t: OLoop::zero(g.t.truncation()),
    };
    let t = -&lin_inv.linear_apply(&g.t);
    GroupLoop { t, ..lin_inv }
}

/// Translation coefficient at power -1 of `Ad(B) eta` for a positive factor
/// `B` and a potential coefficient `eta` given as Laurent terms.
///
/// Writing the linear part in the factored coordinates: the conjugated
/// right-translations are `a^-1 alpha a` and `b^-1 beta b`, the conjugated
/// left-translation is `c delta c^-1`, and the translation transforms as
/// `B_lin(w) - lin'(t_B)`.
fn adjoint_minus_one_translation(b: &GroupLoop, eta_terms: &[(i32, LieElement)]) -> COctonion {
    let n = b.truncation();
    let binv = inverse_plus_group(b);
    let mut alpha_p = QLoop::zero(n);
    let mut beta_p = QLoop::zero(n);
    let mut delta_p = QLoop::zero(n);
    let mut w_p = OLoop::zero(n);
    for &(k, elem) in eta_terms {
        alpha_p.add_to(k, elem.alpha);
        beta_p.add_to(k, elem.beta);
        delta_p.add_to(k, elem.delta);
        w_p.add_to(k, elem.t);
    }
    let alpha_c = binv.a.mul(&alpha_p).mul(&b.a);
    let beta_c = binv.b.mul(&beta_p).mul(&b.b);
    let delta_c = b.c.mul(&delta_p).mul(&binv.c);
    let tx = &b.t.x_loop().mul(&alpha_c) + &delta_c.mul(&b.t.x_loop());
    let ty = &b.t.y_loop().mul(&beta_c) + &delta_c.mul(&b.t.y_loop());
    let lin_tb = OLoop::from_slots(&tx, &ty);
    let w_total = &b.linear_apply(&w_p) - &lin_tb;
    w_total.coeff(-1)
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

/// Signed basis-product table of the quaternion-pair octonion product:
/// entry `v` in row `i`, column `j` encodes `e_i e_j = sign(v) e_{|v|-1}`.
const PRODUCT_TABLE: [[i8; 8]; 8] = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [2, -1, 4, -3, -6, 5, -8, 7],
    [3, -4, -1, 2, -7, 8, 5, -6],
    [4, 3, -2, -1, -8, -7, 6, 5],
    [5, 6, 7, 8, -1, -2, -3, -4],
    [6, -5, -8, 7, 2, -1, -4, 3],
    [7, 8, -5, -6, 3, 4, -1, -2],
    [8, -7, 6, -5, 4, -3, 2, -1],
];

#[test]
fn acceptance_01_algebra_identity_suite() {
    let t0 = Instant::now();
    let report = run_identity_suite(7, 10_000, 1e-10, Fault::None);
    let mut table_defect = 0.0f64;
    for (i, row) in PRODUCT_TABLE.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let expected = Octonion::basis(v.unsigned_abs() as usize - 1) * f64::from(v.signum());
            let got = Octonion::basis(i) * Octonion::basis(j);
            table_defect = table_defect.max((got - expected).max_abs());
        }
    }
    // The two bracketings of the distinguished imaginary triple land on
    // opposite signs of e4 — the non-associativity witness, exact.
    let e = Octonion::basis;
    let witness = ((e(5) * e(6)) * e(7) + e(4))
        .max_abs()
        .max((e(5) * (e(6) * e(7)) - e(4)).max_abs());
    let secs = t0.elapsed().as_secs_f64();
    let pass = report.all_pass
        && report.worst_residual <= 1e-10
        && table_defect == 0.0
        && witness == 0.0
        && secs <= 5.0;
    criterion(
        1,
        "algebra identity suite",
        pass,
        &format!(
            "{} identities x 10^4 samples, worst residual {:.2e} <= 1e-10; basis table exact; \
             bracketing witness exact; {secs:.2}s <= 5s",
            report.checks.len(),
            report.worst_residual
        ),
    );
}

#[test]
fn acceptance_02_norm_multiplicativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let q = random_octonion(&mut rng);
        let qp = random_octonion(&mut rng);
        worst = worst.max(((q * qp).norm_sq() - q.norm_sq() * qp.norm_sq()).abs());
    }
    let pass = worst <= 1e-10;
    criterion(
        2,
        "norm multiplicativity",
        pass,
        &format!("max |N(qq') - N(q)N(q')| = {worst:.2e} <= 1e-10 over 10^4 pairs"),
    );
}

#[test]
fn acceptance_03_orbit_invariant() {
    let p1 = p_invariant(&Frame::new(Octonion::basis(0), Octonion::basis(4)));
    let p2_defect = (p_invariant(&reference_frame()) - 0.5).abs();
    let boundary_ok = p1 == 0.0 && p2_defect <= 1e-15;

    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let frame = random_isotropic_frame(&mut rng);
        let g = random_g0(&mut rng, true);
        worst = worst.max((p_invariant(&g.apply_frame(&frame)) - p_invariant(&frame)).abs());
    }
    let pass = boundary_ok && worst <= 1e-10;
    criterion(
        3,
        "orbit invariant p",
        pass,
        &format!(
            "p = {p1:.1e} on the degenerate class, |p - 1/2| = {p2_defect:.1e} on the balanced \
             class; invariance defect {worst:.2e} <= 1e-10 over 10^3 (g, frame) pairs"
        ),
    );
}

#[test]
fn acceptance_04_frame_reconstruction() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut worst_res = 0.0f64;
    let mut worst_sum = 0.0f64;
    let mut straddle = true;
    for _ in 0..1000 {
        let p: f64 = rng.gen_range(0.02..0.48);
        let s = (1.0 - 4.0 * p * p).sqrt();
        let alpha = (1.0 - s).sqrt();
        let beta = (2.0 - alpha * alpha).sqrt();
        let theta = rng.gen_range(-3.0..3.0);
        let g = random_g0(&mut rng, false);
        let frame = g.apply_frame(&reference_frame().biscale(alpha, beta).rotate(theta));
        let lo = reconstruct(&frame, Branch::Low, 1e-9).expect("low branch");
        let hi = reconstruct(&frame, Branch::High, 1e-9).expect("high branch");
        worst_res = worst_res.max(lo.residual).max(hi.residual);
        worst_sum = worst_sum
            .max((lo.alpha * lo.alpha + lo.beta * lo.beta - 2.0).abs())
            .max((hi.alpha * hi.alpha + hi.beta * hi.beta - 2.0).abs());
        // For unit frames the branch threshold |q| / (sqrt(2) |x0|) is
        // realized at alpha = 1; the two solutions must straddle it.
        straddle &= lo.alpha <= 1.0 + 1e-12
            && hi.alpha >= 1.0 - 1e-12
            && hi.alpha - lo.alpha > 1e-6;
    }
    let pass = worst_res <= 1e-9 && straddle && worst_sum <= 1e-9;
    criterion(
        4,
        "frame reconstruction",
        pass,
        &format!(
            "frame residual {worst_res:.2e} <= 1e-9 over 10^3 regular frames; both branches \
             found, straddling the threshold; scale constraint defect {worst_sum:.1e}"
        ),
    );
}

#[test]
fn acceptance_05_semidirect_splitting() {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut worst_split = 0.0f64;
    let mut worst_rho = 0.0f64;
    for _ in 0..1000 {
        let g = random_g0(&mut rng, false);
        let (g2, g0) = g.semidirect_split().expect("identity-component split");
        let o = random_octonion(&mut rng);
        worst_split = worst_split.max((g2.apply(g0.apply(o)) - g.apply(o)).max_abs());

        let a = random_unit_quaternion(&mut rng);
        let c = random_unit_quaternion(&mut rng);
        let h = GroupElementG0::new(a, a, c, false).expect("diagonal element");
        let lhs = g.compose(&h).tilde_rho().expect("tilde rho");
        let rhs = g.tilde_rho().expect("tilde rho");
        worst_rho = worst_rho.max((lhs - rhs).max_abs());
    }
    let pass = worst_split <= 1e-12 && worst_rho <= 1e-12;
    criterion(
        5,
        "semidirect splitting",
        pass,
        &format!(
            "split-then-multiply defect {worst_split:.2e} <= 1e-12; tilde-rho right-invariance \
             defect {worst_rho:.2e} <= 1e-12 over 10^3 elements"
        ),
    );
}

#[test]
fn acceptance_06_cross_product_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let mut g = Operator8::identity();
        for _ in 0..rng.gen_range(1..=4) {
            let u = random_pure_unit_octonion(&mut rng);
            g = g.compose(&spin7_generator(u).expect("generator"));
        }
        let q = random_octonion(&mut rng);
        let qp = random_octonion(&mut rng);
        let lhs = cross(g.apply(q), g.apply(qp));
        let rhs = chi(&g, cross(q, qp)).expect("chi");
        worst = worst.max((lhs - rhs).max_abs());
    }
    let pass = worst <= 1e-9;
    criterion(
        6,
        "cross-product equivariance",
        pass,
        &format!(
            "max |cross(gq, gq') - chi_g(cross(q, q'))| = {worst:.2e} <= 1e-9 over 10^3 \
             generator words"
        ),
    );
}

#[test]
fn acceptance_07_bracket_grading() {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut worst_closure = 0.0f64;
    let mut worst_abelian = 0.0f64;
    for _ in 0..250 {
        for k in 0..4i32 {
            for l in 0..4i32 {
                let x = random_homogeneous(&mut rng, k);
                let y = random_homogeneous(&mut rng, l);
                worst_closure = worst_closure.max(x.bracket(&y).grading_defect(k + l));
            }
        }
        let w1 = random_homogeneous(&mut rng, 1);
        let w2 = random_homogeneous(&mut rng, 1);
        worst_abelian = worst_abelian.max(w1.bracket(&w2).max_abs());
    }
    let pass = worst_closure <= 1e-10 && worst_abelian <= 1e-10;
    criterion(
        7,
        "bracket grading",
        pass,
        &format!(
            "closure defect {worst_closure:.2e} <= 1e-10 over all grade pairs x 250 samples; \
             grade +1 commutator {worst_abelian:.2e} <= 1e-10"
        ),
    );
}

#[test]
fn acceptance_08_vacuum_run() {
    let mut spec = PotentialSpec::vacuum(GridSpec::unit_square(64), 8);
    spec.lambda_samples = vec![[1.0, 0.0]];
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("single-thread pool");
    let t0 = Instant::now();
    let run = pool.install(|| dpw_run(&spec)).expect("vacuum pipeline");
    let secs = t0.elapsed().as_secs_f64();

    let x = &run.sheets[0].x;
    let g = x.spec;
    // The vacuum surface is 2 Re(E z) = u e0 + v e4.
    let mut worst_plane = 0.0f64;
    for j in 0..g.nv {
        for i in 0..g.nu {
            let expected = Octonion::basis(0) * g.u(i) + Octonion::basis(4) * g.v(j);
            worst_plane = worst_plane.max((*x.get(i, j) - expected).max_abs());
        }
    }
    let fields = surface_fields(x).expect("first fundamental data");
    let rho0 = *fields.rho.get(g.nu / 2, g.nv / 2);
    let (rho_dev, _) = aggregate(&fields.rho, MARGIN, |q| (*q - rho0).max_abs());
    let (h_max, _) = aggregate(&laplacian_mean_curvature(x, &fields.e2f), MARGIN, |o| {
        o.norm()
    });
    let pass = worst_plane <= 1e-8 && rho_dev <= 1e-8 && h_max <= 1e-9 && secs <= 30.0;
    criterion(
        8,
        "vacuum dpw run",
        pass,
        &format!(
            "64^2 N=8: planar defect {worst_plane:.2e} <= 1e-8; rho deviation {rho_dev:.2e} \
             <= 1e-8; |H| {h_max:.2e} <= 1e-9; {secs:.1}s <= 30s single-threaded"
        ),
    );
}

#[test]
fn acceptance_09_flatness_convergence() {
    let t0 = Instant::now();
    let levels = refinement();
    let orders: Vec<f64> = levels
        .windows(2)
        .map(|w| (w[0].flatness / w[1].flatness).ln() / (w[0].h / w[1].h).ln())
        .collect();
    let pass = orders.iter().all(|o| (o - 2.0).abs() <= 0.3);
    criterion(
        9,
        "flatness convergence",
        pass,
        &format!(
            "orders {:.3}, {:.3} within 2.0 +/- 0.3 over 32^2 -> 64^2 -> 128^2 ({:.0}s)",
            orders[0],
            orders[1],
            t0.elapsed().as_secs_f64()
        ),
    );
}

#[test]
fn acceptance_10_harmonicity_convergence() {
    let levels = refinement();
    let orders: Vec<f64> = levels
        .windows(2)
        .map(|w| (w[0].tension / w[1].tension).ln() / (w[0].h / w[1].h).ln())
        .collect();
    let pass = orders.iter().all(|o| (o - 2.0).abs() <= 0.3);
    criterion(
        10,
        "harmonicity convergence",
        pass,
        &format!(
            "tension-field orders {:.3}, {:.3} within 2.0 +/- 0.3 over 32^2 -> 64^2 -> 128^2",
            orders[0], orders[1]
        ),
    );
}

#[test]
fn acceptance_11_associated_family() {
    let n = 33usize;
    let truncation = 12;
    let lambdas = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::from_polar(1.0, FRAC_PI_4),
        Complex64::from_polar(1.0, 3.0 * FRAC_PI_4),
    ];
    let run = curved_run(n, truncation, lambdas.iter().map(|l| [l.re, l.im]).collect());

    // Per-point singular classification must agree across the family.
    let maps: Vec<Grid<OrbitClass>> = run
        .sheets
        .iter()
        .map(|s| singular_map(&s.x, 0.01).expect("singular map"))
        .collect();
    let g = run.frames.spec;
    let mut maps_identical = true;
    for m in &maps[1..] {
        for j in 0..g.nv {
            for i in 0..g.nu {
                maps_identical &= m.get(i, j).kind == maps[0].get(i, j).kind;
            }
        }
    }

    // Exact per-node metric of the family: the lowest Maurer-Cartan
    // coefficient equals (Ad(B) eta)_{-1} because B_u B^{-1} has no negative
    // powers. Its translation part w is a grade -1 null vector and the
    // conformal factor is |2 Re(lambda^{-1} w)|^2, so the comparison across
    // lambda carries no finite-difference error at all. A loose tie-in
    // against the finite-difference metric anchors w to the actual surfaces.
    let spec = PotentialSpec::constant_curved(GridSpec::unit_square(n), truncation, 0.15);
    let eta = spec.eval(Complex64::new(0.0, 0.0)).expect("potential value");
    let eta_terms: Vec<(i32, LieElement)> = (-2..=0).map(|k| (k, eta.coeff(k))).collect();
    let fields = surface_fields(&run.sheets[0].x).expect("first fundamental data");
    let mut worst_f = 0.0f64;
    let mut worst_null = 0.0f64;
    let mut worst_grade = 0.0f64;
    let mut worst_tie = 0.0f64;
    for j in MARGIN..g.nv - MARGIN {
        for i in MARGIN..g.nu - MARGIN {
            let fac = iwasawa_factorize(run.frames.get(i, j)).expect("iwasawa");
            let w = adjoint_minus_one_translation(&fac.b, &eta_terms);
            worst_grade = worst_grade.max(LieElement::translation(w).grading_defect(-1));
            let s: Complex64 = w.to_array().iter().map(|c| c * c).sum();
            worst_null = worst_null.max(s.norm());
            let e2f: Vec<f64> = lambdas
                .iter()
                .map(|&l| {
                    w.scale(l.inv())
                        .to_array()
                        .iter()
                        .map(|c| (2.0 * c.re).powi(2))
                        .sum::<f64>()
                })
                .collect();
            for value in &e2f[1..] {
                worst_f = worst_f.max(0.5 * (value / e2f[0]).ln().abs());
            }
            worst_tie = worst_tie.max((e2f[0] - fields.e2f.get(i, j)).abs() / e2f[0]);
        }
    }
    let pass = maps_identical
        && worst_f <= 1e-8
        && worst_null <= 1e-12
        && worst_grade <= 1e-12
        && worst_tie <= 1e-3;
    criterion(
        11,
        "associated family",
        pass,
        &format!(
            "singular maps identical across 4 sheets; conformal-factor spread |df| \
             {worst_f:.2e} <= 1e-8; null defect {worst_null:.2e} <= 1e-12; grade defect \
             {worst_grade:.2e} <= 1e-12; finite-difference tie-in {worst_tie:.2e} <= 1e-3"
        ),
    );
}

#[test]
fn acceptance_12_mean_curvature_consistency() {
    let level = &refinement()[1];
    let x = &level.x;
    let fields = surface_fields(x).expect("first fundamental data");
    let h_lap = laplacian_mean_curvature(x, &fields.e2f);
    let h_sig = sigma_v_mean_curvature(&fields, 0.05).expect("sigma-v formula");
    let h_gen = general_mean_curvature(x, 0.05).expect("general formula").h;
    let pair = |a: &Grid<Octonion>, b: &Grid<Octonion>| {
        let d = Grid::from_fn(a.spec, |i, j| *a.get(i, j) - *b.get(i, j));
        aggregate(&d, MARGIN, |o: &Octonion| o.norm()).0
    };
    let d_ls = pair(&h_lap, &h_sig);
    let d_lg = pair(&h_lap, &h_gen);
    let d_sg = pair(&h_sig, &h_gen);
    let bound = 1e-6f64.max(0.1 * level.h * level.h);

    // Sphere oracle: Mercator chart of a radius-r sphere in the imaginary
    // quaternions; |H| r must come back as 1.
    let r = 1.7;
    let sspec = GridSpec::new(0.1, 1.1, -0.5, 0.5, 128, 128);
    let sphere = Grid::from_fn(sspec, |i, j| {
        let u = sspec.u(i);
        let v = sspec.v(j);
        let sech = 1.0 / v.cosh();
        Octonion::new(
            Quaternion::pure(r * sech * u.cos(), r * sech * u.sin(), r * v.tanh()),
            Quaternion::ZERO,
        )
    });
    let mc = general_mean_curvature(&sphere, 0.02).expect("sphere curvature");
    let (h_max, h_mean) = mc.h_norm_stats();
    let sphere_ok = (h_max * r - 1.0).abs() <= 0.01 && (h_mean * r - 1.0).abs() <= 0.01;
    let pass = d_ls <= bound && d_lg <= bound && d_sg <= bound && sphere_ok;
    criterion(
        12,
        "mean-curvature consistency",
        pass,
        &format!(
            "pairwise {d_ls:.2e} / {d_lg:.2e} / {d_sg:.2e} <= max(1e-6, 0.1 h^2) = {bound:.2e} \
             at 64^2; sphere |H| r: max {:.4}, mean {:.4} within 1 +/- 0.01",
            h_max * r,
            h_mean * r
        ),
    );
}

#[test]
fn acceptance_13_birkhoff_roundtrip() {
    let run = curved_run(33, 12, vec![[1.0, 0.0]]);
    let rt = roundtrip(&run).expect("roundtrip");
    let re = rt.reintegration.as_ref().expect("lambda = 1 reintegration");
    let off_count = rt.off_cell.iter().filter(|&&b| b).count();
    let total = rt.inner.nu * rt.inner.nv;
    let pass = re.x_deviation <= 1e-6 && rt.off_cell_fraction <= 0.01;
    criterion(
        13,
        "birkhoff roundtrip",
        pass,
        &format!(
            "surface deviation {:.2e} <= 1e-6 on the big-cell subgrid; off-big-cell fraction \
             {:.4} <= 0.01 ({off_count} of {total} nodes); meromorphic power defect {:.1e}",
            re.x_deviation, rt.off_cell_fraction, rt.mero_power_defect
        ),
    );
}

#[test]
fn acceptance_14_fault_sensitivity() {
    // (a) Multiplication sign fault against the identity suite.
    let clean_suite = run_identity_suite(7, 2000, 1e-10, Fault::None);
    let faulted_suite = run_identity_suite(7, 2000, 1e-10, Fault::MultiplicationSign);
    let r_mul = faulted_suite.worst_residual / clean_suite.worst_residual.max(1e-14);

    let run = curved_run(17, 12, vec![[1.0, 0.0]]);
    let (au, av) = maurer_cartan_unitary(&run.unitary).expect("maurer-cartan");
    let clean_flat = residual_stats(&zero_curvature_residual(&au, &av).expect("residual")).0;

    // (b) Perturbed lambda^-2 coefficient: a legally-graded grade-2 bump that
    // only the flatness residual can see.
    let bump = GradedComponent::Two {
        gamma: CQuaternion::from_real(Quaternion::pure(0.0, 0.0, 0.05)),
    }
    .to_element();
    let au_bumped = au.map(|l| {
        let mut l = l.clone();
        l.add_to(-2, bump);
        l
    });
    let bumped_flat = residual_stats(&zero_curvature_residual(&au_bumped, &av).expect("residual")).0;
    let r_alpha2 = bumped_flat / clean_flat.max(1e-14);

    // (c) Broken grading: a grade-0 payload at an odd power.
    let clean_grading = au.iter().fold(0.0f64, |m, l| m.max(l.grading_defect()));
    let leak = GradedComponent::Zero {
        a: CQuaternion::from_real(Quaternion::pure(0.1, 0.0, 0.0)),
        delta: CQuaternion::ZERO,
    }
    .to_element();
    let au_misgraded = au.map(|l| {
        let mut l = l.clone();
        l.add_to(-1, leak);
        l
    });
    let bad_grading = au_misgraded
        .iter()
        .fold(0.0f64, |m, l| m.max(l.grading_defect()));
    let r_grading = bad_grading / clean_grading.max(1e-13);

    // (d) Non-harmonic rho against the tension residual.
    let fields = surface_fields(&run.sheets[0].x).expect("first fundamental data");
    let clean_tension = aggregate(&tension_field(&fields.rho), MARGIN, |q| q.norm()).0;
    let g = run.sheets[0].x.spec;
    let synthetic = Grid::from_fn(g, |i, _| {
        let t = g.u(i) * g.u(i);
        Quaternion::new(t.cos(), t.sin(), 0.0, 0.0)
    });
    let synthetic_tension = aggregate(&tension_field(&synthetic), MARGIN, |q| q.norm()).0;
    let r_rho = synthetic_tension / clean_tension.max(1e-14);

    let pass = r_mul >= 10.0 && r_alpha2 >= 10.0 && r_grading >= 10.0 && r_rho >= 10.0;
    criterion(
        14,
        "fault sensitivity",
        pass,
        &format!(
            "detection ratios (>= 10x): multiplication sign {r_mul:.1e}; perturbed lambda^-2 \
             coefficient {r_alpha2:.1e}; broken grading {r_grading:.1e}; non-harmonic rho \
             {r_rho:.1e}"
        ),
    );
}

// The singular-map tolerance in criterion 11 doubles as the classifier used
// by the CLI; keep a smoke check here that the classifier agrees with the
// invariant on the normal forms so the acceptance suite is self-contained.
#[test]
fn classifier_normal_forms_smoke() {
    let p1 = classify(&Frame::new(Octonion::basis(0), Octonion::basis(4)), 1e-9).expect("classify");
    assert_eq!(p1.kind, OrbitKind::TypeP1);
    let p2 = classify(&reference_frame(), 1e-9).expect("classify");
    assert_eq!(p2.kind, OrbitKind::TypeP2);
}
