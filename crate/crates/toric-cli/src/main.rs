//! `toric`: exact toric-geometry toolkit for geometric modeling.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use num::BigRational;
use serde_json::json;
use toric_cli::model::{parse_rational_str, Model};
use toric_cli::verify;
use toric_core::{ideal, implicitize, moment, patch, polytope, realmesh};

#[derive(Parser)]
#[command(
    name = "toric",
    about = "Exact arithmetic for toric varieties: ideals, degrees, patches, moment maps, implicitization, real meshes",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List binomial generators of the toric ideal
    Ideal {
        model: PathBuf,
        /// Kernel-vector sup-norm bound (default: coordinate spread of the exponents)
        #[arg(long)]
        bound: Option<u32>,
        /// Only the quadratic midpoint relations
        #[arg(long)]
        quadratic: bool,
        #[arg(long)]
        json: bool,
    },
    /// Implicit degree (normalized volume of the exponent polytope)
    Degree {
        model: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the (projected) parametrization at rational parameters
    Eval {
        model: PathBuf,
        /// Comma-separated rational parameters, e.g. "1/2,3"
        #[arg(long)]
        at: String,
        #[arg(long)]
        json: bool,
    },
    /// Invert the algebraic moment map at an interior point of the polytope
    Invert {
        model: PathBuf,
        /// Comma-separated coordinates of the target point
        #[arg(long)]
        at: String,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Check linear precision on an interior grid of the polytope
    PrecisionCheck {
        model: PathBuf,
        #[arg(long, default_value_t = 11)]
        grid: usize,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Recover implicit equations of the projected variety by interpolation
    Implicitize {
        model: PathBuf,
        /// Degree of the forms (default: the normalized-volume degree)
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Sample a real orthant (or the moment parametrization) into a mesh
    Mesh {
        model: PathBuf,
        #[arg(long, default_value_t = 16)]
        grid: usize,
        /// Orthant sign vector, e.g. "1,-1" (default: all positive)
        #[arg(long)]
        eps: Option<String>,
        /// Parametrize by the polytope via moment-map inversion instead
        #[arg(long)]
        moment: bool,
        /// Output file; `.obj` or `.csv` chosen by extension
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in reference-fixture suite
    Verify {
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Ideal { model, bound, quadratic, json } => {
            cmd_ideal(&model, bound, quadratic, json)?;
        }
        Cmd::Degree { model, json } => cmd_degree(&model, json)?,
        Cmd::Eval { model, at, json } => cmd_eval(&model, &at, json)?,
        Cmd::Invert { model, at, tol, json } => cmd_invert(&model, &at, tol, json)?,
        Cmd::PrecisionCheck { model, grid, tol, json } => {
            cmd_precision_check(&model, grid, tol, json)?;
        }
        Cmd::Implicitize { model, degree, out, json } => {
            cmd_implicitize(&model, degree, out.as_deref(), json)?;
        }
        Cmd::Mesh { model, grid, eps, moment, out, json } => {
            cmd_mesh(&model, grid, eps.as_deref().unwrap_or(""), moment, out.as_deref(), json)?;
        }
        Cmd::Verify { json } => return cmd_verify(json),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_ideal(path: &Path, bound: Option<u32>, quadratic: bool, json: bool) -> Result<()> {
    let m = Model::load(path)?;
    let a = &m.exponents;
    let (bs, used_bound) = if quadratic {
        (ideal::quadratic_binomials(a), None)
    } else {
        let b = bound.unwrap_or_else(|| ideal::default_kernel_bound(a));
        (ideal::binomials_from_kernel(a, b)?, Some(b))
    };
    let rendered: Vec<String> = bs.iter().map(|b| b.render(&m.labels)).collect();
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "count": rendered.len(),
                "quadratic": quadratic,
                "bound": used_bound,
                "binomials": rendered,
            }))?
        );
    } else if rendered.is_empty() {
        println!("(no binomials)");
    } else {
        for r in &rendered {
            println!("{r}");
        }
    }
    Ok(())
}

fn cmd_degree(path: &Path, json: bool) -> Result<()> {
    let m = Model::load(path)?;
    let degree = polytope::implicit_degree(&m.exponents)?;
    let poly = polytope::convex_hull(&m.exponents).ok();
    let volume = poly.as_ref().map(polytope::volume);
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "degree": degree,
                "volume": volume.as_ref().map(ToString::to_string),
                "vertices": poly.as_ref().map(|p| p.vertices().to_vec()),
            }))?
        );
    } else {
        println!("degree {degree}");
        if let Some(v) = volume {
            println!("volume {v}");
        }
    }
    Ok(())
}

fn parse_rational_list(s: &str) -> Result<Vec<BigRational>> {
    s.split(',').map(|p| parse_rational_str(p)).collect()
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| anyhow!("bad coordinate {p:?}"))
        })
        .collect()
}

fn cmd_eval(path: &Path, at: &str, json: bool) -> Result<()> {
    let m = Model::load(path)?;
    let t = parse_rational_list(at).context("--at")?;
    let scheme = m.scheme();
    let x = patch::monomial_values(&m.exponents, &t)?;
    let z = patch::project_vector(&x, &scheme)?;
    let projective: Vec<String> = z.iter().map(ToString::to_string).collect();
    let affine = patch::dehomogenize(&z)
        .ok()
        .map(|a| a.iter().map(ToString::to_string).collect::<Vec<_>>());
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "projective": projective,
                "affine": affine,
            }))?
        );
    } else {
        println!("[{}]", projective.join(" : "));
        if let Some(a) = affine {
            println!("affine ({})", a.join(", "));
        }
    }
    Ok(())
}

fn cmd_invert(path: &Path, at: &str, tol: Option<f64>, json: bool) -> Result<()> {
    let m = Model::load(path)?;
    let u = parse_f64_list(at).context("--at")?;
    let mut q = moment::MomentQuery::new(m.exponents.clone(), u).with_weights(m.weights_f64());
    if let Some(t) = tol {
        q = q.with_tol(t);
    }
    let basis = moment::moment_inverse(&q)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "t": basis.t,
                "basis": basis.values,
                "iterations": basis.iterations,
                "residual": basis.residual,
            }))?
        );
    } else {
        println!("t = {:?}", basis.t);
        println!("basis = {:?}", basis.values);
        println!("iterations = {}, residual = {:.3e}", basis.iterations, basis.residual);
    }
    Ok(())
}

fn cmd_precision_check(path: &Path, grid: usize, tol: Option<f64>, json: bool) -> Result<()> {
    let m = Model::load(path)?;
    let a = &m.exponents;
    let weights = m.weights_f64();
    let tol = tol.unwrap_or(1e-12);
    let mut worst = 0.0f64;
    let mut points = 0usize;
    for u in verify::interior_grid(a, grid, 1e-6) {
        let r = moment::linear_precision_residual(a, &weights, &u, tol)?;
        worst = worst.max(r);
        points += 1;
    }
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "grid": grid,
                "points": points,
                "max_residual": worst,
            }))?
        );
    } else {
        println!("{points} interior points, max residual {worst:.3e}");
    }
    Ok(())
}

fn cmd_implicitize(
    path: &Path,
    degree: Option<u32>,
    out: Option<&Path>,
    json: bool,
) -> Result<()> {
    let m = Model::load(path)?;
    let scheme = m.scheme();
    let d = match degree {
        Some(d) => d,
        None => u32::try_from(polytope::implicit_degree(&m.exponents)?)
            .map_err(|_| anyhow!("degree bound does not fit in u32"))?,
    };
    let forms = implicitize::implicitize(&m.exponents, &scheme, d)?;
    let k = scheme.target_dim();
    let labels: Vec<String> = if k == 3 {
        ["w", "x", "y", "z"].iter().map(|s| s.to_string()).collect()
    } else {
        (0..=k).map(|i| format!("z{i}")).collect()
    };
    let rendered: Vec<String> = forms.iter().map(|f| f.render(&labels)).collect();
    let payload = serde_json::to_string_pretty(&json!({
        "degree": d,
        "forms": rendered,
        "terms": forms.iter().map(implicitize::ImplicitForm::term_count).collect::<Vec<_>>(),
    }))?;
    if let Some(out) = out {
        std::fs::write(out, format!("{}\n", rendered.join("\n")))
            .with_context(|| format!("cannot write {}", out.display()))?;
    }
    if json {
        println!("{payload}");
    } else if rendered.is_empty() {
        println!("(no degree-{d} forms)");
    } else {
        for r in &rendered {
            println!("{r}");
        }
    }
    Ok(())
}

fn cmd_mesh(
    path: &Path,
    grid: usize,
    eps: &str,
    moment_param: bool,
    out: Option<&Path>,
    json: bool,
) -> Result<()> {
    let m = Model::load(path)?;
    let scheme = m.scheme();
    let mesh = if moment_param {
        realmesh::nonneg_patch_via_moment(&m.exponents, &scheme, &m.weights_f64(), grid)?
    } else {
        let signs = match eps {
            "" => realmesh::SignVector::identity(m.exponents.dim()),
            s => realmesh::SignVector::new(
                s.split(',')
                    .map(|p| p.trim().parse::<i8>().map_err(|_| anyhow!("bad sign {p:?}")))
                    .collect::<Result<Vec<_>>>()
                    .context("--eps")?,
            )?,
        };
        realmesh::orthant_sample(&m.exponents, &scheme, &signs, grid)?
    };
    if let Some(out) = out {
        match out.extension().and_then(|e| e.to_str()) {
            Some("obj") => realmesh::write_obj(&mesh, out)?,
            Some("csv") => std::fs::write(out, realmesh::export_csv(&mesh))
                .with_context(|| format!("cannot write {}", out.display()))?,
            _ => bail!("--out must end in .obj or .csv"),
        }
    }
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "vertices": mesh.vertices.len(),
                "faces": mesh.faces.len(),
                "dropped_at_infinity": mesh.dropped_at_infinity,
            }))?
        );
    } else {
        println!(
            "{} vertices, {} faces, {} dropped at infinity",
            mesh.vertices.len(),
            mesh.faces.len(),
            mesh.dropped_at_infinity
        );
    }
    Ok(())
}

fn cmd_verify(json: bool) -> Result<ExitCode> {
    let results = verify::run_all();
    let all_pass = results.iter().all(|r| r.pass);
    if json {
        let items: Vec<_> = results
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "pass": r.pass,
                    "detail": r.detail,
                    "millis": r.millis,
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({ "pass": all_pass, "checks": items }))?
        );
    } else {
        for r in &results {
            let status = if r.pass { "PASS" } else { "FAIL" };
            println!("{status} {:<18} {} ({} ms)", r.name, r.detail, r.millis);
        }
    }
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
