//! Subcommand definitions, shared parsing/IO helpers, and dispatch.

mod analyze;
mod classify;
mod dpw;
mod roundtrip;
mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use octo_dpw::algebra::Octonion;
use octo_dpw::dpw::PotentialSpec;
use octo_dpw::grid::{Grid, GridSpec};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "octo-dpw",
    version,
    about = "Octonion algebra verification, isotropic-plane classification, \
             and DPW surface construction/diagnostics",
    after_help = "Exit codes: 0 success; 1 residual gate failed or runtime \
                  error; 2 not isotropic; 3 factorization diverged; 4 off the \
                  big cell beyond the allowed fraction; 64 usage error.\n\
                  Env: OCTO_DPW_THREADS caps the worker-thread count."
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Run the seeded octonion-identity suites and report residuals.
    VerifyAlgebra(verify::VerifyArgs),
    /// Classify an isotropic frame (16 reals) and print its invariants.
    Classify(classify::ClassifyArgs),
    /// Integrate a holomorphic potential, factorize, and export surfaces.
    Dpw(dpw::DpwArgs),
    /// Run surface diagnostics on an external CSV surface.
    Analyze(analyze::AnalyzeArgs),
    /// Potential -> surface -> meromorphic potential -> surface comparison.
    Roundtrip(roundtrip::RoundtripArgs),
}

pub fn dispatch(cli: Cli) -> octo_dpw::Result<i32> {
    match cli.cmd {
        Cmd::VerifyAlgebra(args) => verify::run(args),
        Cmd::Classify(args) => classify::run(args),
        Cmd::Dpw(args) => dpw::run(args),
        Cmd::Analyze(args) => analyze::run(args),
        Cmd::Roundtrip(args) => roundtrip::run(args),
    }
}

/// Stable mapping from library errors to process exit codes.
pub fn exit_code_for(err: &octo_dpw::Error) -> i32 {
    use octo_dpw::Error::*;
    match err {
        NotIsotropic(_) | NonIsotropicFrame(_) => 2,
        FactorizationDiverged(_) => 3,
        OffBigCell(_) => 4,
        _ => 1,
    }
}

fn invalid(msg: String) -> octo_dpw::Error {
    octo_dpw::Error::InvalidInput(msg)
}

// ---------------------------------------------------------------------------
// Shared flag groups and parsers.

/// Built-in reference potentials, selectable instead of an input file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    /// The flat reference potential `lambda^{-1} eps dz` (plane surface).
    Vacuum,
    /// Vacuum plus a constant grade-2 curvature term (see `--gamma`).
    Curved,
}

/// Flags that resolve to a validated [`PotentialSpec`].
#[derive(Args, Debug)]
pub struct PotentialArgs {
    /// Potential specification file (JSON).
    #[arg(long, value_name = "FILE", conflicts_with = "builtin")]
    pub input: Option<PathBuf>,

    /// Use a built-in potential instead of a file.
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,

    /// Strength of the grade-2 term for `--builtin curved`.
    #[arg(long, default_value_t = 0.15)]
    pub gamma: f64,

    /// Override the grid resolution, as NUxNV (e.g. 65x65).
    #[arg(long, value_name = "NUxNV", value_parser = parse_grid)]
    pub grid: Option<(usize, usize)>,

    /// Override the Laurent truncation order.
    #[arg(long, value_name = "N")]
    pub truncation: Option<i32>,

    /// Override the lambda samples: comma-separated complex numbers on the
    /// unit circle ("1", "i", "-i", "a+bi", "a-bi").
    #[arg(long, value_name = "LIST", value_parser = parse_lambda_list)]
    pub lambda: Option<LambdaList>,
}

impl PotentialArgs {
    pub fn resolve(&self) -> octo_dpw::Result<PotentialSpec> {
        let mut spec = match (&self.input, self.builtin) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)?;
                PotentialSpec::from_json(&text)?
            }
            (None, Some(builtin)) => {
                let domain = GridSpec::unit_square(33);
                match builtin {
                    Builtin::Vacuum => PotentialSpec::vacuum(domain, 8),
                    Builtin::Curved => {
                        PotentialSpec::constant_curved(domain, 12, self.gamma)
                    }
                }
            }
            _ => {
                return Err(invalid(
                    "exactly one of --input or --builtin is required".into(),
                ))
            }
        };
        if let Some((nu, nv)) = self.grid {
            spec.domain.nu = nu;
            spec.domain.nv = nv;
        }
        if let Some(n) = self.truncation {
            spec.truncation = n;
        }
        if let Some(lams) = &self.lambda {
            spec.lambda_samples = lams.0.clone();
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// Parses "NUxNV" into a pair of node counts.
pub fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NUxNV, got {s:?}"))?;
    let nu: usize = a.trim().parse().map_err(|e| format!("bad NU {a:?}: {e}"))?;
    let nv: usize = b.trim().parse().map_err(|e| format!("bad NV {b:?}: {e}"))?;
    if nu < 2 || nv < 2 {
        return Err("grid needs at least 2x2 nodes".into());
    }
    Ok((nu, nv))
}

/// A parsed `--lambda` list (newtype so clap treats it as one value).
#[derive(Debug, Clone)]
pub struct LambdaList(pub Vec<[f64; 2]>);

/// Parses a comma-separated list of complex numbers.
pub fn parse_lambda_list(s: &str) -> Result<LambdaList, String> {
    let mut out = Vec::new();
    for tok in s.split(',') {
        let z = parse_complex(tok.trim())?;
        out.push([z.re, z.im]);
    }
    if out.is_empty() {
        return Err("empty lambda list".into());
    }
    Ok(LambdaList(out))
}

/// Parses one complex number: "1", "-2.5", "i", "-i", "0.3i", "a+bi",
/// "a-bi".
pub fn parse_complex(tok: &str) -> Result<Complex64, String> {
    let t = tok.trim();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    match t {
        "i" | "+i" => return Ok(Complex64::new(0.0, 1.0)),
        "-i" => return Ok(Complex64::new(0.0, -1.0)),
        _ => {}
    }
    if let Some(imag) = t.strip_suffix(['i', 'I']) {
        // Either "bi" or "a+bi" / "a-bi"; find the sign splitting the two
        // parts (skip index 0 and signs that follow an exponent 'e').
        let bytes = imag.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k];
            if (c == b'+' || c == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        if let Some(k) = split {
            let re: f64 = imag[..k]
                .parse()
                .map_err(|e| format!("bad real part in {t:?}: {e}"))?;
            let im_str = &imag[k..];
            let im: f64 = if im_str == "+" {
                1.0
            } else if im_str == "-" {
                -1.0
            } else {
                im_str
                    .parse()
                    .map_err(|e| format!("bad imaginary part in {t:?}: {e}"))?
            };
            return Ok(Complex64::new(re, im));
        }
        let im: f64 = imag
            .parse()
            .map_err(|e| format!("bad imaginary literal {t:?}: {e}"))?;
        return Ok(Complex64::new(0.0, im));
    }
    let re: f64 = t.parse().map_err(|e| format!("bad real literal {t:?}: {e}"))?;
    Ok(Complex64::new(re, 0.0))
}

/// Parses "i,j,k" into three distinct coordinate indexes in `0..8`.
pub fn parse_projection(s: &str) -> Result<[usize; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated indexes, got {s:?}"));
    }
    let mut axes = [0usize; 3];
    for (slot, p) in axes.iter_mut().zip(&parts) {
        let v: usize = p.parse().map_err(|e| format!("bad index {p:?}: {e}"))?;
        if v > 7 {
            return Err(format!("coordinate index {v} out of range 0..8"));
        }
        *slot = v;
    }
    if axes[0] == axes[1] || axes[0] == axes[2] || axes[1] == axes[2] {
        return Err("projection indexes must be distinct".into());
    }
    Ok(axes)
}

// ---------------------------------------------------------------------------
// Surface file IO.

/// Writes a surface grid as CSV with columns `u,v,X0..X7` in storage order.
pub fn write_surface_csv(path: &Path, x: &Grid<Octonion>) -> octo_dpw::Result<()> {
    let spec = x.spec;
    let mut out = String::with_capacity(spec.len() * 64);
    out.push_str("u,v,X0,X1,X2,X3,X4,X5,X6,X7\n");
    for (i, j, q) in x.iter_indexed() {
        out.push_str(&format!("{},{}", spec.u(i), spec.v(j)));
        for c in q.to_array() {
            out.push_str(&format!(",{c}"));
        }
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Reads a `u,v,X0..X7` CSV back into a grid, inferring the grid geometry.
///
/// Rows may come in any order but must cover a full tensor-product grid
/// with uniform spacing (1e-6 relative tolerance) exactly once.
pub fn read_surface_csv(path: &Path) -> octo_dpw::Result<Grid<Octonion>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| invalid(format!("open surface CSV: {e}")))?;
    let mut rows: Vec<(f64, f64, [f64; 8])> = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| invalid(format!("CSV parse: {e}")))?;
        if record.len() != 10 {
            return Err(invalid(format!(
                "data row {line}: expected 10 columns u,v,X0..X7, got {}",
                record.len()
            )));
        }
        let mut nums = [0.0f64; 10];
        for (k, field) in record.iter().enumerate() {
            nums[k] = field
                .parse()
                .map_err(|e| invalid(format!("data row {line} column {k}: {e}")))?;
        }
        let mut coords = [0.0f64; 8];
        coords.copy_from_slice(&nums[2..]);
        rows.push((nums[0], nums[1], coords));
    }
    if rows.is_empty() {
        return Err(invalid("surface CSV has no data rows".into()));
    }

    let us = distinct_sorted(rows.iter().map(|r| r.0));
    let vs = distinct_sorted(rows.iter().map(|r| r.1));
    let (nu, nv) = (us.len(), vs.len());
    if nu < 2 || nv < 2 {
        return Err(invalid(format!(
            "surface grid must be at least 2x2, found {nu}x{nv} distinct \
             parameter values"
        )));
    }
    if rows.len() != nu * nv {
        return Err(invalid(format!(
            "expected {nu}x{nv} = {} rows for a full tensor grid, got {}",
            nu * nv,
            rows.len()
        )));
    }
    check_uniform(&us, "u")?;
    check_uniform(&vs, "v")?;

    let spec = GridSpec::new(us[0], us[nu - 1], vs[0], vs[nv - 1], nu, nv);
    let mut data = vec![None; spec.len()];
    for (u, v, coords) in rows {
        let (i, j) = spec.nearest_node(u, v);
        let slot = &mut data[j * nu + i];
        if slot.is_some() {
            return Err(invalid(format!(
                "duplicate surface sample at node ({i}, {j})"
            )));
        }
        *slot = Some(Octonion::from_array(coords));
    }
    let data: Vec<Octonion> = data
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| invalid("surface CSV does not cover the full grid".into()))?;
    Grid::from_vec(spec, data)
}

/// Distinct values of a coordinate stream, merged within a relative 1e-9
/// span tolerance and sorted ascending.
fn distinct_sorted(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    let span = (v[v.len() - 1] - v[0]).abs().max(1e-12);
    let mut out: Vec<f64> = Vec::new();
    for x in v {
        match out.last() {
            Some(&last) if (x - last).abs() <= 1e-9 * span => {}
            _ => out.push(x),
        }
    }
    out
}

fn check_uniform(values: &[f64], axis: &str) -> octo_dpw::Result<()> {
    let n = values.len();
    let h = (values[n - 1] - values[0]) / (n - 1) as f64;
    for (k, pair) in values.windows(2).enumerate() {
        let step = pair[1] - pair[0];
        if (step - h).abs() > 1e-6 * h.abs().max(1e-12) {
            return Err(invalid(format!(
                "{axis}-axis is not uniformly spaced: step {k} is {step}, \
                 expected {h}"
            )));
        }
    }
    Ok(())
}

/// Writes the projected triangle mesh of a surface grid as Wavefront OBJ.
pub fn write_surface_obj(
    path: &Path,
    x: &Grid<Octonion>,
    axes: [usize; 3],
    lambda: Complex64,
) -> octo_dpw::Result<()> {
    let spec = x.spec;
    let mut out = String::with_capacity(spec.len() * 48);
    out.push_str(&format!(
        "# octo-dpw surface sheet, lambda = {}{}{}i\n",
        lambda.re,
        if lambda.im < 0.0 { "" } else { "+" },
        lambda.im
    ));
    out.push_str(&format!(
        "# projection axes X{} X{} X{}; grid {}x{}\n",
        axes[0], axes[1], axes[2], spec.nu, spec.nv
    ));
    for (_, _, q) in x.iter_indexed() {
        let a = q.to_array();
        out.push_str(&format!("v {} {} {}\n", a[axes[0]], a[axes[1]], a[axes[2]]));
    }
    // Two triangles per grid cell; OBJ indexes vertices from 1.
    for j in 0..spec.nv - 1 {
        for i in 0..spec.nu - 1 {
            let n00 = j * spec.nu + i + 1;
            let n10 = n00 + 1;
            let n01 = n00 + spec.nu;
            let n11 = n01 + 1;
            out.push_str(&format!("f {n00} {n10} {n11}\n"));
            out.push_str(&format!("f {n00} {n11} {n01}\n"));
        }
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Writes per-node orbit classes as CSV (`u,v,class,p`).
pub fn write_classes_csv(
    path: &Path,
    classes: &Grid<octo_dpw::geometry::OrbitClass>,
) -> octo_dpw::Result<()> {
    let spec = classes.spec;
    let mut out = String::with_capacity(spec.len() * 32);
    out.push_str("u,v,class,p\n");
    for (i, j, c) in classes.iter_indexed() {
        out.push_str(&format!(
            "{},{},{:?},{}\n",
            spec.u(i),
            spec.v(j),
            c.kind,
            c.p_value
        ));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Ensures the output directory exists and returns it.
pub fn ensure_out_dir(dir: &Path) -> octo_dpw::Result<()> {
    std::fs::create_dir_all(dir)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Residual gating.

/// Scale constant for discretization-limited residuals: such metrics pass
/// when below `max(tol, H2_GATE_SCALE * h^2)`.
pub const H2_GATE_SCALE: f64 = 25.0;

/// Gate class of a diagnostics metric.
enum GateClass {
    /// Must meet `tol` outright (factorization exactness, reality).
    Exact,
    /// Second-order in the grid spacing; threshold `max(tol, 25 h^2)`.
    SecondOrder,
    /// A geometric quantity, not a residual; never gated.
    Ungated,
}

fn gate_class(metric: &str) -> GateClass {
    // Strip any sheet prefix ("sheet03.conformality" -> "conformality").
    let base = metric.rsplit('.').next().unwrap_or(metric);
    match base {
        "factorization_residual" | "unitary_defect" | "imag_defect"
        | "closedness_equivalence" => GateClass::Exact,
        "conformality" | "b_isotropy" | "omega_isotropy" | "rho_norm"
        | "tension" | "closedness_a" | "closedness_b" | "closedness_complex"
        | "mean_curvature_lap_vs_general" | "mean_curvature_lap_vs_sigma"
        | "mean_curvature_sigma_vs_general" => GateClass::SecondOrder,
        _ => GateClass::Ungated,
    }
}

/// Checks every recognized residual in a report against its threshold;
/// returns human-readable descriptions of the failures.
pub fn gate_report(
    report: &octo_dpw::analysis::DiagnosticsReport,
    tol: f64,
) -> Vec<String> {
    let mut failures = Vec::new();
    for (name, stat) in &report.metrics {
        let threshold = match gate_class(name) {
            GateClass::Exact => tol,
            GateClass::SecondOrder => {
                tol.max(H2_GATE_SCALE * stat.grid.h * stat.grid.h)
            }
            GateClass::Ungated => continue,
        };
        if stat.max > threshold {
            failures.push(format!(
                "{name}: max {:.3e} exceeds threshold {:.3e}",
                stat.max, threshold
            ));
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals_parse() {
        let close = |a: Complex64, b: Complex64| (a - b).norm() < 1e-15;
        assert!(close(parse_complex("1").unwrap(), Complex64::new(1.0, 0.0)));
        assert!(close(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0)));
        assert!(close(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0)));
        assert!(close(parse_complex("0.5i").unwrap(), Complex64::new(0.0, 0.5)));
        assert!(close(
            parse_complex("0.25-0.75i").unwrap(),
            Complex64::new(0.25, -0.75)
        ));
        assert!(close(
            parse_complex("-1e-2+2e-3i").unwrap(),
            Complex64::new(-0.01, 0.002)
        ));
        assert!(close(parse_complex("3-i").unwrap(), Complex64::new(3.0, -1.0)));
        assert!(parse_complex("one").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn grid_and_projection_parse() {
        assert_eq!(parse_grid("65x33").unwrap(), (65, 33));
        assert!(parse_grid("65").is_err());
        assert!(parse_grid("1x5").is_err());
        assert_eq!(parse_projection("0,1,4").unwrap(), [0, 1, 4]);
        assert!(parse_projection("0,1").is_err());
        assert!(parse_projection("0,1,8").is_err());
        assert!(parse_projection("0,1,1").is_err());
    }

    #[test]
    fn surface_csv_roundtrips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let spec = GridSpec::new(-0.5, 0.5, 0.0, 2.0, 5, 4);
        let x = Grid::from_fn(spec, |i, j| {
            Octonion::from_array([
                spec.u(i),
                spec.v(j),
                (i * j) as f64,
                0.25,
                -1.5,
                0.0,
                1e-7,
                spec.u(i) * spec.v(j),
            ])
        });
        write_surface_csv(&path, &x).unwrap();
        let back = read_surface_csv(&path).unwrap();
        assert_eq!(back.spec, spec);
        for (i, j, q) in x.iter_indexed() {
            assert_eq!(*back.get(i, j), *q, "node ({i}, {j})");
        }
    }

    #[test]
    fn malformed_surface_csv_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "u,v,X0,X1,X2,X3,X4,X5,X6,X7\n0,0,1,2,3\n").unwrap();
        assert!(read_surface_csv(&path).is_err());
        // Missing one node of a 2x2 grid.
        std::fs::write(
            &path,
            "u,v,X0,X1,X2,X3,X4,X5,X6,X7\n\
             0,0,0,0,0,0,0,0,0,0\n\
             1,0,0,0,0,0,0,0,0,0\n\
             0,1,0,0,0,0,0,0,0,0\n",
        )
        .unwrap();
        assert!(read_surface_csv(&path).is_err());
    }
}
