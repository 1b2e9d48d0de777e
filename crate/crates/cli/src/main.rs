use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use odepoly::analyze::{render_text, DEFAULT_SEED, DEFAULT_TOLERANCE};
use odepoly::corpus::{self, parse_checks, parse_point, requests_all};
use odepoly::{analyze, parse_equation, render_polygon, AnalyzeOptions, CliError, PolygonFormat};
use odepoly_core::polygon::{fine_polygon, petrovic_polygon, Flavor};

#[derive(Parser)]
#[command(name = "odepoly", version, about = "Polygon analysis of algebraic ODEs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolygonArg {
    Petrovic,
    Fine,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one equation, given inline or as a file path.
    Analyze {
        input: String,
        /// Base point: a rational or `generic`.
        #[arg(long, default_value = "generic", allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value = "petrovic")]
        polygon: PolygonArg,
        /// Number of series terms per branch.
        #[arg(long)]
        series: Option<usize>,
        /// Comma-separated: fuchs, riccati, binomial, elliptic, convergence, all.
        #[arg(long, value_delimiter = ',')]
        check: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Bundled corpus with golden reports.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    Run {
        /// Glob on fixture names.
        #[arg(long)]
        filter: Option<String>,
        /// Rewrite golden reports instead of comparing.
        #[arg(long)]
        bless: bool,
        /// Corpus directory (contains fixtures/ and golden/).
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

fn read_input(input: &str) -> Result<String, CliError> {
    let path = std::path::Path::new(input);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|source| CliError::Io { path: input.to_string(), source })
    } else {
        Ok(input.to_string())
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Analyze { input, point, polygon, series, check, format, seed, tol } => {
            let f = parse_equation(&read_input(&input)?)?;
            let opts = AnalyzeOptions {
                point: parse_point(&point)?,
                polygon: match polygon {
                    PolygonArg::Petrovic => Flavor::Petrovic,
                    PolygonArg::Fine => Flavor::Fine,
                },
                series,
                checks: parse_checks(&check)?,
                skip_inapplicable: requests_all(&check),
                seed,
                tolerance: tol,
            };
            let report = analyze(&f, &opts)?;
            match format {
                FormatArg::Json => print!("{}", corpus::render_report(&report)),
                FormatArg::Text => print!("{}", render_text(&f, &opts, &report)),
                FormatArg::Svg => {
                    let p = match opts.polygon {
                        Flavor::Petrovic => petrovic_polygon(&f, &opts.point)?,
                        Flavor::Fine => fine_polygon(&f),
                    };
                    print!("{}", render_polygon(&p, Some(&f), PolygonFormat::Svg));
                }
            }
            Ok(0)
        }
        Command::Corpus { action: CorpusAction::Run { filter, bless, dir } } => {
            let dir = dir.unwrap_or_else(corpus::default_dir);
            let outcomes = corpus::run(&dir, filter.as_deref(), bless)?;
            for o in &outcomes {
                println!("{}", corpus::summary_line(o));
            }
            let failed = outcomes.iter().filter(|o| !o.ok()).count();
            println!("{} fixtures, {} failed", outcomes.len(), failed);
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
