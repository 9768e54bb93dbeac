//! Batch front end: parse a forcing expression, expand it, transfer the
//! coefficients, synthesize the solution, verify the residual, and write
//! machine-readable artifacts.
//!
//! Exit status is 0 only when parsing and every requested check succeed.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::json;

use conewave::analysis::{analyze_exact, analyze_quadrature, CoeffScalar, CoefficientSet};
use conewave::arith::{parse_rational, to_f64, Rational};
use conewave::expr::parse_poly;
use conewave::harmonics::Convention;
use conewave::wavesolver::{
    fd_residual, solve_coefficients, solve_coefficients_recursive, ResidualReport, SolutionSeries,
};
use conewave::{BasisSpec, MultiPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Rational arithmetic end to end; the residual is checked symbolically.
    Exact,
    /// Quadrature transform and float transfer; residual by finite differences.
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Orthonormal,
    TrigPaper,
}

/// Solve (d_tt - c^2 Lap_x) U = e^-t f on the cone |x| <= c t.
#[derive(Parser, Debug)]
#[command(name = "conewave", version, about)]
struct Args {
    /// Spatial dimension (1, 2, or 3).
    #[arg(long, default_value_t = 2)]
    dim: usize,

    /// Wave speed c > 0 (rational, e.g. "1", "2", "1/2").
    #[arg(long, default_value = "1")]
    speed: String,

    /// Forcing expression in x1..xd and t, e.g. "t*x1^2 + t^2*x2 + x1*x2^2".
    #[arg(long, short)]
    f: String,

    /// Arithmetic mode.
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,

    /// Truncation degree (defaults to the degree of f).
    #[arg(long)]
    degree: Option<u32>,

    /// Harmonic convention.
    #[arg(long, value_enum, default_value_t = ConventionArg::Orthonormal)]
    convention: ConventionArg,

    /// Number of residual probe points.
    #[arg(long, default_value_t = 50)]
    probes: usize,

    /// RNG seed for probe placement.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Write forcing and solution coefficients as JSON.
    #[arg(long)]
    out_coeffs: Option<PathBuf>,

    /// Write the closed-form solution (exact mode) as text.
    #[arg(long)]
    out_solution: Option<PathBuf>,

    /// Write the residual report as JSON.
    #[arg(long)]
    out_residual: Option<PathBuf>,

    /// Write CSV samples "NT,NR[,TMAX]": an axial section with NT times in
    /// (0, TMAX] and NR radii across the cone (TMAX defaults to 5).
    #[arg(long)]
    sample_grid: Option<String>,
}

fn write_coeffs<T: CoeffScalar>(
    path: &PathBuf,
    fhat: &CoefficientSet<T>,
    series: &SolutionSeries<T>,
) -> std::io::Result<()> {
    let doc = json!({
        "forcing": fhat.to_json(),
        "solution": series.coeffs.to_json(),
    });
    fs::write(path, serde_json::to_string_pretty(&doc).unwrap())
}

fn sample_csv<T: CoeffScalar>(
    grid: &str,
    series: &SolutionSeries<T>,
    dim: usize,
    c: f64,
) -> Result<String, String> {
    let parts: Vec<&str> = grid.split(',').collect();
    if parts.len() < 2 || parts.len() > 3 {
        return Err("expected NT,NR[,TMAX]".into());
    }
    let nt: usize = parts[0].trim().parse().map_err(|_| "bad NT")?;
    let nr: usize = parts[1].trim().parse().map_err(|_| "bad NR")?;
    let tmax: f64 = if parts.len() == 3 {
        parts[2].trim().parse().map_err(|_| "bad TMAX")?
    } else {
        5.0
    };
    if nt == 0 || nr == 0 || tmax <= 0.0 {
        return Err("grid sizes must be positive".into());
    }
    let evaluator = series.evaluator();
    let mut out = String::new();
    let xs: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
    out.push_str(&format!("{},t,u,U\n", xs.join(",")));
    for it in 1..=nt {
        let t = tmax * it as f64 / nt as f64;
        for ir in 0..nr {
            let rho = if nr == 1 {
                0.0
            } else {
                -0.95 + 1.9 * ir as f64 / (nr - 1) as f64
            };
            let mut x = vec![0.0; dim];
            x[0] = rho * c * t;
            let u = evaluator.eval_u(&x, t);
            let big_u = evaluator.eval_big_u(&x, t);
            let coords: Vec<String> = x.iter().map(|v| format!("{v}")).collect();
            out.push_str(&format!("{},{t},{u},{big_u}\n", coords.join(",")));
        }
    }
    Ok(out)
}

fn run(args: &Args) -> Result<bool, String> {
    let c: Rational = parse_rational(&args.speed).ok_or("invalid --speed")?;
    let convention = match args.convention {
        ConventionArg::Orthonormal => Convention::Orthonormal,
        ConventionArg::TrigPaper => Convention::TrigPaper,
    };
    let spec = BasisSpec::new(
        args.dim,
        Rational::from_integer(0.into()),
        c.clone(),
        convention,
    )
    .map_err(|e| e.to_string())?;
    let f: MultiPoly = parse_poly(&args.f, args.dim).map_err(|e| e.to_string())?;
    let trunc = args.degree.unwrap_or_else(|| f.degree());
    if trunc < f.degree() {
        eprintln!(
            "note: truncation {} below deg f = {}; expansion will be lossy",
            trunc,
            f.degree()
        );
    }

    let mut all_ok = true;
    match args.mode {
        Mode::Exact => {
            let fhat = analyze_exact(&f, &spec);
            let series = solve_coefficients(&fhat);
            let recheck = solve_coefficients_recursive(&fhat);
            if series.coeffs != recheck.coeffs {
                return Err("closed-form and recursive transfers disagree".into());
            }
            let u = series.synthesize();
            let report = series.residual_report(&f, args.probes, args.seed);
            println!("forcing coefficients: {}", fhat.len());
            println!("solution coefficients: {}", series.coeffs.len());
            println!("u = {u}");
            println!(
                "residual: exact_zero={} max_fd={:.3e} (probes={})",
                report.exact_residual_zero, report.max_fd_residual, report.probes
            );
            if !report.exact_residual_zero {
                all_ok = false;
            }
            if let Some(path) = &args.out_coeffs {
                write_coeffs(path, &fhat, &series).map_err(|e| e.to_string())?;
            }
            if let Some(path) = &args.out_solution {
                fs::write(path, format!("{u}\n")).map_err(|e| e.to_string())?;
            }
            if let Some(path) = &args.out_residual {
                fs::write(path, serde_json::to_string_pretty(&report).unwrap())
                    .map_err(|e| e.to_string())?;
            }
            if let Some(grid) = &args.sample_grid {
                let csv = sample_csv(grid, &series, args.dim, to_f64(&c))?;
                fs::write("samples.csv", csv).map_err(|e| e.to_string())?;
                println!("samples written to samples.csv");
            }
        }
        Mode::Float => {
            let deg_hint = f.degree();
            let (fhat, diag) = analyze_quadrature(|x, t| f.eval_f64(x, t), &spec, trunc, deg_hint);
            if diag.insufficient_exactness {
                eprintln!(
                    "warning: reconstruction residual {:.3e} suggests insufficient exactness",
                    diag.max_reconstruction_error
                );
                all_ok = false;
            }
            let series = solve_coefficients(&fhat);
            let fd = fd_residual(
                &series.evaluator(),
                |x, t| f.eval_f64(x, t),
                to_f64(&c),
                args.probes,
                args.seed,
            );
            let report = ResidualReport {
                exact_residual_zero: false,
                max_fd_residual: fd.max_abs,
                probes: args.probes,
            };
            println!("forcing coefficients: {}", fhat.len());
            println!("solution coefficients: {}", series.coeffs.len());
            println!(
                "residual: max_fd={:.3e} at scale {:.3e} (probes={})",
                fd.max_abs, fd.scale, report.probes
            );
            if fd.max_abs > 1e-6 * fd.scale.max(1.0) {
                all_ok = false;
            }
            if let Some(path) = &args.out_coeffs {
                write_coeffs(path, &fhat, &series).map_err(|e| e.to_string())?;
            }
            if let Some(path) = &args.out_solution {
                eprintln!(
                    "note: no closed form in float mode; {} not written",
                    path.display()
                );
            }
            if let Some(path) = &args.out_residual {
                fs::write(path, serde_json::to_string_pretty(&report).unwrap())
                    .map_err(|e| e.to_string())?;
            }
            if let Some(grid) = &args.sample_grid {
                let csv = sample_csv(grid, &series, args.dim, to_f64(&c))?;
                fs::write("samples.csv", csv).map_err(|e| e.to_string())?;
                println!("samples written to samples.csv");
            }
        }
    }
    Ok(all_ok)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("checks failed");
            ExitCode::FAILURE
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
