//! `crofton`: integrals of functions of the visual angle of planar convex
//! bodies, by closed form, kernel series, functional route or direct
//! quadrature.

mod commands;
mod error;
mod input;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use crofton_core::QuadratureSpec;

use commands::IntegrateOptions;
use error::CliError;
use output::Format;

#[derive(Parser)]
#[command(name = "crofton", version, about = "Integrals of functions of the visual angle of planar convex bodies")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for `random` presets given without one.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Worker threads (default: all cores).
    #[arg(long, env = "CROFTON_THREADS", global = true)]
    threads: Option<usize>,

    /// Relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-12, global = true)]
    rel_tol: f64,

    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = 1e-14, global = true)]
    abs_tol: f64,

    /// Panel budget for adaptive quadrature.
    #[arg(long, default_value_t = 4000, global = true)]
    max_panels: usize,

    /// Width of the sliver next to ω = π integrated with a fixed rule.
    #[arg(long, default_value_t = 1e-2, global = true)]
    margin: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Perimeter, area, deficit and other functionals of a body.
    BodyInfo {
        /// Preset (circle:r, ellipse:a,b[,K], cw3:a0,a3, random[:seed,K,decay]) or JSON file.
        #[arg(long)]
        body: String,
    },
    /// Compute ∫ f(ω) dP by one or more routes and compare them.
    Integrate {
        #[arg(long)]
        body: String,
        /// crofton | masotti | sinpow:m | hurwitz:m | omspow:m
        #[arg(long = "f")]
        function: String,
        /// Comma-separated list of series, direct, functional, closed, or `all`.
        #[arg(long, default_value = "all")]
        method: String,
        /// Relative agreement required between routes, on top of their
        /// error estimates.
        #[arg(long, default_value_t = 1e-6)]
        agree_tol: f64,
        /// Fill the runtime_ms column (makes output run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Evaluate the inequalities for ω^m − sin^m ω.
    Bounds {
        #[arg(long)]
        body: String,
        /// Exponents: `3`, `1..5` or `2,4,6`.
        #[arg(long, default_value = "1..8")]
        m: String,
    },
    /// Run the built-in identity checks.
    Verify {
        /// Comma-separated check names (default: all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// List the available checks and exit.
        #[arg(long)]
        list: bool,
    },
}

fn spec(c: &Common) -> Result<QuadratureSpec, CliError> {
    let spec = QuadratureSpec { rel_tol: c.rel_tol, abs_tol: c.abs_tol, max_panels: c.max_panels, endpoint_margin: c.margin };
    spec.validate().map_err(|e| CliError::core("tolerances", e))?;
    Ok(spec)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let c = &cli.common;
    if let Some(n) = c.threads {
        if n == 0 {
            return Err(CliError::input("thread count must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::input(format!("thread pool: {e}")))?;
    }
    let spec = spec(c)?;
    let report = match &cli.command {
        Command::BodyInfo { body } => commands::body_info(&input::parse_body(body, c.seed)?, c.format)?,
        Command::Integrate { body, function, method, agree_tol, timing } => {
            if !(agree_tol.is_finite() && *agree_tol >= 0.0) {
                return Err(CliError::input("--agree-tol must be a non-negative number"));
            }
            let src = input::parse_body(body, c.seed)?;
            let f = input::parse_function(function)?;
            let methods = input::parse_methods(method)?;
            let opts = IntegrateOptions { agree_tol: *agree_tol, timing: *timing };
            commands::integrate(&src, &f, &methods, &spec, &opts, c.format)?
        }
        Command::Bounds { body, m } => {
            let src = input::parse_body(body, c.seed)?;
            commands::bounds(&src, &input::parse_range(m)?, c.format)?
        }
        Command::Verify { only, list } => {
            if *list {
                let mut s: String = verify::names().collect::<Vec<_>>().join("\n");
                s.push('\n');
                commands::Report { text: s, ok: true }
            } else {
                let checks = verify::run(only, &spec)?;
                let ok = checks.iter().all(|ch| ch.pass);
                commands::Report { text: verify::render(&checks, c.format)?, ok }
            }
        }
    };
    output::emit(&report.text, c.out.as_deref())?;
    Ok(report.ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
