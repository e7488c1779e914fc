//! `classify`: orbit classification and inverse-orbit construction of one
//! isotropic frame.

use clap::Args;
use octo_dpw::geometry::{
    classify, normalize_frame, reconstruct, Branch, Frame, OrbitKind,
};
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// The 16 frame components (q then q', each on e0..e7).
    #[arg(value_name = "COMPONENT", num_args = 0..=16, allow_negative_numbers = true)]
    pub components: Vec<f64>,

    /// Read the 16 components (whitespace/comma separated) from a file
    /// instead of the command line.
    #[arg(long, value_name = "FILE", conflicts_with = "components")]
    pub input: Option<PathBuf>,

    /// Isotropy tolerance (also the proximity window for the boundary
    /// classes).
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

fn load_components(args: &ClassifyArgs) -> octo_dpw::Result<[f64; 16]> {
    let values: Vec<f64> = if let Some(path) = &args.input {
        let text = std::fs::read_to_string(path)?;
        text.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>().map_err(|e| {
                    octo_dpw::Error::InvalidInput(format!("bad component {t:?}: {e}"))
                })
            })
            .collect::<Result<_, _>>()?
    } else {
        args.components.clone()
    };
    let arr: [f64; 16] = values.try_into().map_err(|v: Vec<f64>| {
        octo_dpw::Error::InvalidInput(format!(
            "a frame needs exactly 16 components, got {}",
            v.len()
        ))
    })?;
    Ok(arr)
}

pub fn run(args: ClassifyArgs) -> octo_dpw::Result<i32> {
    let comps = load_components(&args)?;
    let frame = Frame::from_components(&comps);

    let class = classify(&frame, args.tol)?;
    println!("class: {:?}", class.kind);
    println!("p: {}", class.p_value);
    println!("isotropy_residual: {:.3e}", frame.isotropy_residual());

    let (_, angle, ambiguous) = normalize_frame(&frame, args.tol);
    if ambiguous {
        println!("angle: ambiguous (every internal rotation is a normal form)");
    } else {
        println!("angle: {angle}");
    }

    match class.kind {
        OrbitKind::TypeP1 => {
            println!("reconstruction: undefined on the singular class (p = 0)");
        }
        _ => {
            for branch in [Branch::Low, Branch::High] {
                let rec = reconstruct(&frame, branch, args.tol.max(1e-12))?;
                println!(
                    "branch {:?}: alpha={} beta={} theta={} residual={:.3e}",
                    branch, rec.alpha, rec.beta, rec.theta, rec.residual
                );
            }
            if class.kind == OrbitKind::TypeP2 {
                println!("note: the two branches coincide on the balanced class");
            }
        }
    }
    Ok(0)
}
