//! `roundtrip`: potential -> unitary frame -> Birkhoff minus factor ->
//! meromorphic potential -> re-integrated frame and surface comparison.

use super::{ensure_out_dir, PotentialArgs};
use clap::Args;
use octo_dpw::dpw::{dpw_run, roundtrip};
use octo_dpw::grid::GridSpec;
use serde::Serialize;
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct RoundtripArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,

    /// Output directory for the comparison report.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,

    /// Gate on the reconstructed-surface deviation (when re-integration
    /// runs). Discretization-limited; loosen on coarse grids.
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,

    /// Largest acceptable fraction of off-big-cell nodes.
    #[arg(long, default_value_t = 0.01)]
    pub max_off_cell: f64,
}

#[derive(Serialize)]
struct RoundtripReport {
    inner_grid: GridSpec,
    off_cell_fraction: f64,
    mero_power_defect: f64,
    frame_deviation: Option<f64>,
    x_deviation: Option<f64>,
}

pub fn run(args: RoundtripArgs) -> octo_dpw::Result<i32> {
    let spec = args.potential.resolve()?;
    ensure_out_dir(&args.out)?;
    std::fs::write(args.out.join("resolved_potential.json"), spec.to_json()?)?;

    let run = dpw_run(&spec)?;
    let rt = roundtrip(&run)?;

    let report = RoundtripReport {
        inner_grid: rt.inner,
        off_cell_fraction: rt.off_cell_fraction,
        mero_power_defect: rt.mero_power_defect,
        frame_deviation: rt.reintegration.as_ref().map(|r| r.frame_deviation),
        x_deviation: rt.reintegration.as_ref().map(|r| r.x_deviation),
    };
    std::fs::write(
        args.out.join("roundtrip.json"),
        serde_json::to_string_pretty(&report)?,
    )?;

    println!(
        "roundtrip: inner grid {}x{}, off-cell fraction {}",
        rt.inner.nu, rt.inner.nv, rt.off_cell_fraction
    );
    println!("meromorphic power defect: {:.3e}", rt.mero_power_defect);

    if rt.off_cell_fraction > args.max_off_cell {
        let mut flagged: Vec<(usize, usize)> = Vec::new();
        for (i, j, &off) in rt.off_cell.iter_indexed() {
            if off {
                flagged.push((i, j));
                if flagged.len() >= 8 {
                    break;
                }
            }
        }
        return Err(octo_dpw::Error::OffBigCell(format!(
            "{:.2}% of nodes are off the big cell (allowed {:.2}%); first \
             flagged inner-grid nodes: {:?}",
            100.0 * rt.off_cell_fraction,
            100.0 * args.max_off_cell,
            flagged
        )));
    }

    match &rt.reintegration {
        Some(re) => {
            println!(
                "re-integration: frame deviation {:.3e}, surface deviation {:.3e}",
                re.frame_deviation, re.x_deviation
            );
            if re.x_deviation > args.tol {
                eprintln!(
                    "FAIL reconstructed surface deviates {:.3e} > {:.1e}",
                    re.x_deviation, args.tol
                );
                Ok(1)
            } else {
                println!("OK: round trip closed within {:.1e}", args.tol);
                Ok(0)
            }
        }
        None => {
            println!(
                "re-integration skipped: {:.2}% off-cell nodes (within the \
                 allowed {:.2}%)",
                100.0 * rt.off_cell_fraction,
                100.0 * args.max_off_cell
            );
            Ok(0)
        }
    }
}
