//! `dpw`: potential -> frame integration -> Iwasawa factorization ->
//! surface sheets, with mesh export and a gated diagnostics report.

use super::{
    ensure_out_dir, gate_report, parse_projection, write_classes_csv,
    write_surface_csv, write_surface_obj, PotentialArgs, H2_GATE_SCALE,
};
use clap::Args;
use octo_dpw::analysis::{diagnostics, singular_map, DiagnosticsReport};
use octo_dpw::dpw::dpw_run;
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct DpwArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,

    /// Output directory for meshes and reports.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,

    /// Base residual tolerance for the pass/fail gate.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,

    /// Coordinate triple projected into the OBJ meshes.
    #[arg(long, value_name = "I,J,K", default_value = "0,1,4",
          value_parser = parse_projection)]
    pub project: [usize; 3],
}

pub fn run(args: DpwArgs) -> octo_dpw::Result<i32> {
    let spec = args.potential.resolve()?;
    ensure_out_dir(&args.out)?;
    std::fs::write(args.out.join("resolved_potential.json"), spec.to_json()?)?;

    let run = dpw_run(&spec)?;
    let h = spec.domain.h();
    let loose_tol = args.tol.max(H2_GATE_SCALE * h * h);

    let mut report = DiagnosticsReport::default();
    report.insert(
        "factorization_residual",
        (run.factorization_residual, run.factorization_residual),
        spec.domain,
    );
    report.insert(
        "unitary_defect",
        (run.unitary_defect, run.unitary_defect),
        spec.domain,
    );

    for (k, sheet) in run.sheets.iter().enumerate() {
        let tag = format!("sheet{k:02}");
        write_surface_csv(&args.out.join(format!("{tag}.csv")), &sheet.x)?;
        write_surface_obj(
            &args.out.join(format!("{tag}.obj")),
            &sheet.x,
            args.project,
            sheet.lambda,
        )?;
        let classes = singular_map(&sheet.x, loose_tol).map_err(|e| match e {
            octo_dpw::Error::NotIsotropic(msg) => octo_dpw::Error::NotIsotropic(
                format!("lambda sample {k}: {msg}"),
            ),
            other => other,
        })?;
        write_classes_csv(&args.out.join(format!("{tag}_classes.csv")), &classes)?;

        let sheet_diag = diagnostics(&sheet.x, loose_tol.max(0.05))?;
        for (name, stat) in sheet_diag.metrics {
            report.metrics.insert(format!("{tag}.{name}"), stat);
        }
        report.insert(
            &format!("{tag}.imag_defect"),
            (sheet.imag_defect, sheet.imag_defect),
            spec.domain,
        );
    }

    std::fs::write(args.out.join("report.json"), report.to_json()?)?;

    println!(
        "dpw: {} lambda sheets on a {}x{} grid (h = {h}), truncation {}",
        run.sheets.len(),
        spec.domain.nu,
        spec.domain.nv,
        spec.truncation
    );
    println!(
        "factorization residual {:.3e}, unitary defect {:.3e}",
        run.factorization_residual, run.unitary_defect
    );

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
