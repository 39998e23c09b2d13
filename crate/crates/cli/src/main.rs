mod commands;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use poincare_core::resolution::{DEFAULT_DEPTH, DEFAULT_DIM_CAP};
use poincare_core::{GroundField, RationalSeries, Scalar};

use commands::{AlgebraParams, ResolveOpts, Source, Variant, VerifyOpts};
use report::Outcome;

/// Poincare series of almost stretched Gorenstein rings: build the algebras,
/// resolve the residue field, and compare against the closed form.
#[derive(Parser)]
#[command(name = "poincare", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Ground field: `rational` or `prime:<p>` (heuristic).
    #[arg(long, global = true)]
    field: Option<GroundField>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the rendered output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Record wall-clock time in `runtime_ms` (otherwise 0, keeping output
    /// byte-for-byte reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Shape {
    h: usize,
    s: usize,
    t: usize,
    #[arg(allow_hyphen_values = true)]
    a: Scalar,
    /// Allow `t = 1`, the stretched algebra.
    #[arg(long)]
    stretched: bool,
}

impl Shape {
    fn params(&self) -> AlgebraParams {
        AlgebraParams { h: self.h, s: self.s, t: self.t, a: self.a.clone(), stretched: self.stretched }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build A(h, s, t, a) and summarize its invariants.
    Build {
        #[command(flatten)]
        shape: Shape,
        /// Also write the algebra in interchange JSON.
        #[arg(long)]
        emit_algebra: Option<PathBuf>,
    },
    /// Betti numbers of k over one of the rings, by explicit resolution.
    #[command(allow_negative_numbers = true)]
    Betti {
        /// A and RK take `h s t a`; SL and SV take `s t a`.
        #[arg(value_enum, required_unless_present = "algebra_file")]
        variant: Option<Variant>,
        /// Negative fractions need `--` first, e.g. `betti SL 3 2 -- -1/2`.
        params: Vec<String>,
        /// Resolve an algebra from an interchange JSON file instead.
        #[arg(long, conflicts_with = "variant")]
        algebra_file: Option<PathBuf>,
        #[arg(long)]
        stretched: bool,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
        /// Series to compare against, e.g. "1 / (1 - z)".
        #[arg(long, allow_hyphen_values = true)]
        expected_series: Option<RationalSeries>,
        /// Write every differential as JSON for audit.
        #[arg(long)]
        maps: Option<PathBuf>,
    },
    /// End-to-end check of the closed form for A(h, s, t, a) of dimension d.
    Verify {
        h: usize,
        s: usize,
        t: usize,
        #[arg(allow_hyphen_values = true)]
        a: Scalar,
        #[arg(long, default_value_t = 0)]
        d: u32,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
        /// Replace the claimed series for A (negative-control hook).
        #[arg(long, allow_hyphen_values = true)]
        expected_series: Option<RationalSeries>,
    },
    /// Admissible Hilbert functions and rationality for multiplicity e.
    Classify { e: usize, h: usize },
    /// Closed-form Poincare series (1 + z)^d / (1 - h z + z^2).
    Poincare {
        d: u32,
        h: usize,
        #[arg(long, default_value_t = 10)]
        expand: usize,
        /// Show the change-of-rings derivation.
        #[arg(long)]
        trace: bool,
    },
}

fn run(cli: Cli) -> Result<ExitCode> {
    let g = &cli.global;
    let start = Instant::now();
    let field = g.field.unwrap_or(GroundField::Rational);
    let mut outcome: Outcome = match &cli.command {
        Command::Build { shape, emit_algebra } => commands::build(&shape.params(), field, emit_algebra.as_deref())?,
        Command::Betti { variant, params, algebra_file, stretched, depth, dim_cap, expected_series, maps } => {
            let source = match (variant, algebra_file) {
                (_, Some(path)) => {
                    if !params.is_empty() {
                        bail!("--algebra-file takes no positional parameters");
                    }
                    Source::File(path)
                }
                (Some(v), None) => Source::Built { variant: *v, params, stretched: *stretched },
                (None, None) => bail!("give a variant or --algebra-file"),
            };
            let opts = ResolveOpts { depth: *depth, dim_cap: *dim_cap, expected: expected_series.clone(), maps: maps.as_deref() };
            commands::betti(source, g.field, opts)?
        }
        Command::Verify { h, s, t, a, d, depth, dim_cap, expected_series } => {
            let p = AlgebraParams { h: *h, s: *s, t: *t, a: a.clone(), stretched: false };
            let opts = VerifyOpts { d: *d, depth: *depth, dim_cap: *dim_cap, expected: expected_series.clone() };
            commands::verify(&p, field, &opts)?
        }
        Command::Classify { e, h } => {
            if g.field.is_some() {
                bail!("classify does not depend on a ground field");
            }
            commands::classify_cmd(*e, *h)?
        }
        Command::Poincare { d, h, expand, trace } => {
            if g.field.is_some() {
                bail!("poincare does not depend on a ground field");
            }
            commands::poincare(*d, *h, *expand, *trace)?
        }
    };
    if g.timing {
        outcome.report.runtime_ms = start.elapsed().as_millis() as u64;
    }
    let rendered = match g.format {
        Format::Text => {
            let mut text = outcome.text.clone();
            if g.timing {
                text.push_str(&format!("runtime: {} ms\n", outcome.report.runtime_ms));
            }
            text
        }
        Format::Json => serde_json::to_string_pretty(&outcome.report)? + "\n",
        Format::Csv => match &outcome.csv {
            Some(csv) => csv.clone(),
            None => bail!("csv output is available for betti and poincare only"),
        },
    };
    match &g.output {
        Some(path) => fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{rendered}"),
    }
    if let Some(c) = outcome.report.first_failure() {
        eprintln!("FAIL {}: expected {} | actual {}", c.name, c.expected, c.actual);
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
