//! `verify-algebra`: seeded identity suites with optional fault injection.

use clap::Args;
use octo_dpw::verify::{run_identity_suite, Fault};
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// RNG seed for the sample stream.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,

    /// Number of random samples per identity.
    #[arg(long, default_value_t = 10_000)]
    pub count: usize,

    /// Residual tolerance for unit-scale operands.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,

    /// Write the JSON summary to this file (also printed to stdout).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Test hook: inject a deliberate defect before running the suite.
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<FaultArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FaultArg {
    /// Flip one sign in the multiplication table (e5 * e6 entry).
    MultiplicationSign,
}

pub fn run(args: VerifyArgs) -> octo_dpw::Result<i32> {
    let fault = match args.inject_fault {
        None => Fault::None,
        Some(FaultArg::MultiplicationSign) => Fault::MultiplicationSign,
    };
    let report = run_identity_suite(args.seed, args.count, args.tol, fault);

    for check in &report.checks {
        println!(
            "{} {:<28} samples={} max_residual={:.3e} tol={:.1e}",
            if check.pass { "PASS" } else { "FAIL" },
            check.name,
            check.samples,
            check.max_residual,
            check.tol
        );
    }
    println!(
        "{}: worst residual {:.3e} over {} checks (seed {}, {} samples each)",
        if report.all_pass { "OK" } else { "FAILED" },
        report.worst_residual,
        report.checks.len(),
        report.seed,
        report.samples
    );

    let json = serde_json::to_string_pretty(&report)?;
    if let Some(path) = &args.out {
        std::fs::write(path, &json)?;
    }

    if report.all_pass {
        Ok(0)
    } else {
        let failing: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name)
            .collect();
        eprintln!("failing identities: {}", failing.join(", "));
        Ok(1)
    }
}
