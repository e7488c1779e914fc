//! `octo-dpw` — command-line driver for the octonion/DPW surface library.
//!
//! Subcommands: `verify-algebra`, `classify`, `dpw`, `analyze`,
//! `roundtrip`. All numeric output is deterministic: identical inputs and
//! seeds produce byte-identical reports and meshes.
//!
//! Exit codes (stable):
//!
//! * `0` — success, all gated residuals within thresholds;
//! * `1` — a residual gate failed, or a generic runtime error;
//! * `2` — an input frame or surface is not isotropic;
//! * `3` — a loop-group factorization diverged;
//! * `4` — the Birkhoff splitting was off the big cell beyond the allowed
//!   fraction;
//! * `64` — command-line usage error.

mod commands;

use clap::Parser;

fn main() {
    let cli = match commands::Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help/version requests are not usage errors.
            use clap::error::ErrorKind;
            let benign = matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            );
            let _ = err.print();
            std::process::exit(if benign { 0 } else { 64 });
        }
    };

    // OCTO_DPW_THREADS caps the worker pool used by grid-parallel stages.
    if let Ok(raw) = std::env::var("OCTO_DPW_THREADS") {
        match raw.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => {
                eprintln!("warning: ignoring invalid OCTO_DPW_THREADS={raw:?}");
            }
        }
    }

    let code = match commands::dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            commands::exit_code_for(&err)
        }
    };
    std::process::exit(code);
}
