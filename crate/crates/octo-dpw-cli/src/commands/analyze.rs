//! `analyze`: surface diagnostics for an externally supplied CSV surface.

use super::{
    ensure_out_dir, gate_report, read_surface_csv, write_classes_csv,
    H2_GATE_SCALE,
};
use clap::Args;
use octo_dpw::analysis::{diagnostics, singular_map};
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Surface CSV with columns `u,v,X0..X7` on a full tensor grid.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,

    /// Output directory for the report and per-node classes.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,

    /// Base residual tolerance for the pass/fail gate.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

pub fn run(args: AnalyzeArgs) -> octo_dpw::Result<i32> {
    let x = read_surface_csv(&args.input)?;
    ensure_out_dir(&args.out)?;

    let h = x.spec.h();
    let loose_tol = args.tol.max(H2_GATE_SCALE * h * h);

    let report = diagnostics(&x, loose_tol.max(0.05))?;
    std::fs::write(args.out.join("report.json"), report.to_json()?)?;

    // Per-node orbit classes; a frankly non-isotropic surface exits 2 with
    // the offending node named.
    let classes = singular_map(&x, loose_tol)?;
    write_classes_csv(&args.out.join("classes.csv"), &classes)?;

    println!(
        "analyze: {}x{} grid (h = {h}) read from {}",
        x.spec.nu,
        x.spec.nv,
        args.input.display()
    );
    for key in ["conformality", "b_isotropy", "rho_norm", "tension"] {
        if let Some(stat) = report.get(key) {
            println!("{key}: max {:.3e} mean {:.3e}", stat.max, stat.mean);
        }
    }

    let failures = gate_report(&report, args.tol);
    if failures.is_empty() {
        println!(
            "OK: all gated residuals within max({:.1e}, {} h^2)",
            args.tol, H2_GATE_SCALE
        );
        Ok(0)
    } else {
        for f in &failures {
            eprintln!("FAIL {f}");
        }
        eprintln!("{} residual gate(s) failed", failures.len());
        Ok(1)
    }
}
