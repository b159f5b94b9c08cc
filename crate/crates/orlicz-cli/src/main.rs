//! Command-line front end: gauge norms, conjugates, growth indices,
//! verification suites, and geometry constants, with JSON/CSV/text output.
//!
//! Exit codes: 0 when everything requested passed, 1 when at least one
//! check failed, 2 on usage or input errors. Set `ORLICZ_LOG=debug` for
//! diagnostics on stderr.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use orlicz::{
    check_bounds, luxemburg_norm, orlicz_norm, run_suite, schatten_norm, GridFunction, GridSpec,
    OrliczFunction, Suite, VerificationReport, VerifyConfig,
};

#[derive(Parser)]
#[command(name = "orlicz", version, about = "Gauge norms on matrices, with verification suites")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Gauge (Luxemburg) and pairing (Orlicz) norms of one matrix.
    Norm {
        /// Gauge spec: power:<p> or grid:<path>.
        #[arg(long)]
        phi: String,
        /// Matrix file (.csv rows, or .json {"dim", "entries"}).
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Tabulate the conjugate gauge on a log-spaced grid.
    Conjugate {
        #[arg(long)]
        phi: String,
        /// Upper end of the tabulation span.
        #[arg(long, default_value_t = 10.0)]
        max: f64,
        /// Number of grid nodes.
        #[arg(long, default_value_t = 256)]
        nodes: usize,
    },
    /// Growth indices (liminf/limsup of the doubling ratio) of a gauge.
    Indices {
        #[arg(long)]
        phi: String,
    },
    /// Run a verification suite and report per-check gaps.
    Verify {
        /// thm2.1 | holder | ideal | dual | riesz-thorin | clarkson-orlicz |
        /// clarkson-sp | all
        #[arg(long, default_value = "all")]
        suite: String,
        /// First-slot gauge.
        #[arg(long, default_value = "power:2")]
        phi1: String,
        /// Second-slot gauge.
        #[arg(long, default_value = "power:3")]
        phi2: String,
        /// Outer aggregation exponent.
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Interpolation positions (repeatable).
        #[arg(long = "s", default_values_t = [0.25, 0.5, 0.75])]
        s: Vec<f64>,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        /// Evaluation budget for search-based checks.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Estimate geometry constants of one gauge and check their bounds.
    Constants {
        #[arg(long)]
        phi: String,
        /// Interpolate the gauge with u^2 at this position first.
        #[arg(long)]
        s: Option<f64>,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 20_000)]
        budget: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Re-render a stored JSON report; exit code reflects its verdict.
    Report {
        #[arg(long)]
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("ORLICZ_LOG")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> orlicz::Result<ExitCode> {
    let (body, pass) = match &cli.command {
        Command::Norm { phi, matrix } => cmd_norm(cli.format, phi, matrix)?,
        Command::Conjugate { phi, max, nodes } => cmd_conjugate(cli.format, phi, *max, *nodes)?,
        Command::Indices { phi } => cmd_indices(cli.format, phi)?,
        Command::Verify {
            suite,
            phi1,
            phi2,
            p,
            s,
            dim,
            trials,
            budget,
            seed,
        } => {
            let config = VerifyConfig {
                phi_first: OrliczFunction::parse(phi1)?,
                phi_second: OrliczFunction::parse(phi2)?,
                p: *p,
                s_values: s.clone(),
                dim: *dim,
                trials: *trials,
                budget: *budget,
                seed: *seed,
            };
            let report = run_suite(&config, Suite::from_str(suite)?)?;
            (render_report(cli.format, &report), report.is_pass())
        }
        Command::Constants {
            phi,
            s,
            dim,
            budget,
            seed,
        } => cmd_constants(cli.format, phi, *s, *dim, *budget, *seed)?,
        Command::Report { input } => {
            let text = fs::read_to_string(input)?;
            let report: VerificationReport = serde_json::from_str(&text)
                .map_err(|e| orlicz::Error::Parse(format!("{}: {e}", input.display())))?;
            (render_report(cli.format, &report), report.is_pass())
        }
    };

    match &cli.out {
        Some(path) => fs::write(path, &body)?,
        None => print!("{body}"),
    }
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn render_report(format: Format, report: &VerificationReport) -> String {
    match format {
        Format::Json => report.to_json_string(),
        Format::Csv => report.to_csv_string(),
        Format::Text => report.to_text_string(),
    }
}

fn cmd_norm(format: Format, phi_spec: &str, matrix: &PathBuf) -> orlicz::Result<(String, bool)> {
    let phi = OrliczFunction::parse(phi_spec)?;
    let t = orlicz::io::read_matrix(matrix)?;
    let lux = luxemburg_norm(&phi, &t)?;
    let orl = orlicz_norm(&phi, &t)?;
    let schatten = match phi.power_exponent() {
        Some(p) => {
            let value = schatten_norm(&t, p)?;
            Some((p, value, (lux.value - value).abs()))
        }
        None => None,
    };

    let body = match format {
        Format::Json => {
            let mut doc = serde_json::json!({
                "phi": phi.label(),
                "matrix": matrix.display().to_string(),
                "dim": t.dim(),
                "luxemburg": lux,
                "orlicz": orl,
            });
            if let Some((p, value, residual)) = schatten {
                doc["schatten"] = serde_json::json!({
                    "p": p,
                    "value": value,
                    "agreement_with_luxemburg": residual,
                });
            }
            let mut s = serde_json::to_string_pretty(&doc).expect("norm output serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("norm,value,method,residual\n");
            let _ = writeln!(
                s,
                "luxemburg,{:.16e},{:?},{:.3e}",
                lux.value, lux.method, lux.residual
            );
            let _ = writeln!(
                s,
                "orlicz,{:.16e},{:?},{:.3e}",
                orl.value, orl.method, orl.residual
            );
            if let Some((_, value, residual)) = schatten {
                let _ = writeln!(s, "schatten,{value:.16e},ClosedForm,{residual:.3e}");
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "gauge {} matrix {} dim {}\n",
                phi.label(),
                matrix.display(),
                t.dim()
            );
            let _ = writeln!(
                s,
                "luxemburg {:.12e}  method {:?}  residual {:.3e}",
                lux.value, lux.method, lux.residual
            );
            let _ = writeln!(
                s,
                "orlicz    {:.12e}  method {:?}  residual {:.3e}",
                orl.value, orl.method, orl.residual
            );
            if let Some((p, value, residual)) = schatten {
                let _ = writeln!(
                    s,
                    "schatten  {value:.12e}  p {p}  |luxemburg - schatten| {residual:.3e}"
                );
            }
            s
        }
    };
    Ok((body, true))
}

fn cmd_conjugate(
    format: Format,
    phi_spec: &str,
    max: f64,
    nodes: usize,
) -> orlicz::Result<(String, bool)> {
    let phi = OrliczFunction::parse(phi_spec)?;
    let spec = GridSpec::up_to(max, nodes)?;
    let psi = phi.conjugate(&spec)?;
    let us = spec.points();
    let vs: Vec<f64> = us.iter().map(|&u| psi.eval(u)).collect();
    let grid = GridFunction::new(us, vs)?;

    let body = match format {
        Format::Json => {
            let doc = serde_json::json!({
                "phi": phi.label(),
                "conjugate_of": phi_spec,
                "u": grid.abscissas(),
                "value": grid.values(),
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("grid serializes");
            s.push('\n');
            s
        }
        // The CSV form is exactly what grid:<path> accepts back.
        Format::Csv | Format::Text => orlicz::io::grid_to_csv_string(&grid),
    };
    Ok((body, true))
}

fn cmd_indices(format: Format, phi_spec: &str) -> orlicz::Result<(String, bool)> {
    let phi = OrliczFunction::parse(phi_spec)?;
    let idx = phi.indices()?;
    let body = match format {
        Format::Json => {
            let doc = serde_json::json!({
                "phi": phi.label(),
                "alpha": idx.alpha,
                "beta": idx.beta,
                "spread": idx.spread,
                "converged": idx.converged,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("indices serialize");
            s.push('\n');
            s
        }
        Format::Csv => format!(
            "phi,alpha,beta,spread,converged\n{},{:.16e},{:.16e},{:.3e},{}\n",
            phi.label(),
            idx.alpha,
            idx.beta,
            idx.spread,
            idx.converged
        ),
        Format::Text => format!(
            "gauge {}\nalpha {:.12e}\nbeta  {:.12e}\nspread {:.3e} converged {}\n",
            phi.label(),
            idx.alpha,
            idx.beta,
            idx.spread,
            idx.converged
        ),
    };
    Ok((body, true))
}

fn cmd_constants(
    format: Format,
    phi_spec: &str,
    s: Option<f64>,
    dim: usize,
    budget: usize,
    seed: u64,
) -> orlicz::Result<(String, bool)> {
    let phi = OrliczFunction::parse(phi_spec)?;
    let bounds = check_bounds(&phi, s, dim, budget, seed)?;
    let config = serde_json::json!({
        "phi": phi.label(),
        "s": s,
        "dim": dim,
        "budget": budget,
        "seed": seed,
        "alpha": bounds.alpha,
        "beta": bounds.beta,
        "cnj": bounds.cnj.to_json(),
        "nonsquare": bounds.nonsquare.to_json(),
    });
    let report = VerificationReport::new("constants", config, bounds.records);
    let pass = report.is_pass();
    Ok((render_report(format, &report), pass))
}
