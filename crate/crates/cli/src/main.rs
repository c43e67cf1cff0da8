//! `treeprod` command line: JSON in, JSON or CSV out.
//!
//! Exit codes: 0 on success, 1 for usage and parse errors, 2 when the input
//! is invalid or a property suite finds violations.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use treeprod::conelab::{converge_corpus, descriptor_corpus, scale_is_aligned};
use treeprod::json::{
    descriptor_from_json, descriptor_to_json, median_to_json, qtype_from_json, to_pretty, type_of_to_json, JsonError,
};
use treeprod::suites::{run_suite_in_mode, SuiteConfig, SuiteName};
use treeprod::{
    dist_with_divergence, geodesic_point_with, median, phi, phi_inv, realize_type, type_at, type_of, Descriptor,
    GeodesicSelector, NumericMode, Rational, Scalar,
};

#[derive(Parser, Debug)]
#[command(name = "treeprod", version, about = "Tree products of metric spaces")]
struct Cli {
    /// Numeric mode for descriptor inputs.
    #[arg(long, global = true, default_value = "exact")]
    mode: ModeArg,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for NumericMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => NumericMode::Exact,
            ModeArg::Float => NumericMode::Float,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SelectorArg {
    Coordinate,
    Reversed,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a descriptor against the validity conditions.
    Validate { input: PathBuf },
    /// Distance of two descriptors, with the divergence case and point.
    Dist { f: PathBuf, g: PathBuf },
    /// The point at arc length `t` from `f` on the geodesic to `g`.
    Geodesic {
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        t: String,
        /// Geodesic choice inside planes with non-strictly-convex norms.
        #[arg(long, default_value = "coordinate")]
        selector: SelectorArg,
    },
    /// The isometry that moves `f` to the base point, applied to `g`.
    Phi {
        f: PathBuf,
        g: PathBuf,
        /// Apply the inverse isometry instead.
        #[arg(long)]
        inverse: bool,
    },
    /// Median of a geodesic triangle: a point or three gates in one piece.
    Median { f: PathBuf, g: PathBuf, h: PathBuf },
    /// Type of the direction from the base point (or from `--at`) to `f`.
    Type {
        f: PathBuf,
        #[arg(long)]
        at: Option<PathBuf>,
    },
    /// A descriptor realizing a type, with labels derived from the salt.
    Realize {
        #[arg(value_name = "TYPE")]
        qtype: PathBuf,
        #[arg(long)]
        salt: String,
        #[arg(long)]
        at: Option<PathBuf>,
    },
    /// Word distances in Z² * Z against the tree-product metric, as CSV.
    Converge {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// Comma-separated scales.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        n: Vec<u64>,
        /// Reject scales that do not clear every coordinate denominator.
        #[arg(long)]
        strict: bool,
    },
    /// Run a seeded property suite and print per-check counts as CSV.
    Suite {
        name: SuiteName,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Corrupt the distance (or label derivation) to test the runner.
        #[arg(long)]
        inject_fault: bool,
    },
}

/// Failure classes, each with its exit code.
enum Failure {
    Usage(anyhow::Error),
    Invalid(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn json_failure(path: &Path, e: JsonError) -> Failure {
    let msg = format!("{}: {e}", path.display());
    if e.is_validation() {
        Failure::Invalid(msg)
    } else {
        Failure::Usage(anyhow!(msg))
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| json_failure(path, e.into()))
}

fn read_descriptor<S: Scalar>(path: &Path) -> Result<Descriptor<S>, Failure> {
    descriptor_from_json(&read_json(path)?).map_err(|e| json_failure(path, e))
}

fn parse_scalar<S: Scalar>(text: &str) -> Result<S, Failure> {
    S::parse_decimal(text).map_err(|e| Failure::Usage(anyhow!("bad scalar `{text}`: {e}")))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes()).context("cannot write to stdout")?,
    }
    Ok(())
}

/// Commands that read descriptors, generic over the numeric mode.
fn run_geometry<S: Scalar>(command: &Command, out: Option<&Path>) -> Result<(), Failure> {
    let text = match command {
        Command::Validate { input } => {
            let f: Descriptor<S> = read_descriptor(input)?;
            format!("valid: {} steps, length {}\n", f.len(), f.total_length().to_decimal_string())
        }
        Command::Dist { f, g } => {
            let (f, g) = (read_descriptor::<S>(f)?, read_descriptor::<S>(g)?);
            let (d, div) = dist_with_divergence(&f, &g);
            format!("{} {} s={}\n", d.to_decimal_string(), div.case.tag(), div.s.to_decimal_string())
        }
        Command::Geodesic { f, g, t, selector } => {
            let (f, g) = (read_descriptor::<S>(f)?, read_descriptor::<S>(g)?);
            let selector = match selector {
                SelectorArg::Coordinate => GeodesicSelector::CoordinateOrder,
                SelectorArg::Reversed => GeodesicSelector::ReversedOrder,
            };
            let p = geodesic_point_with(&f, &g, &parse_scalar::<S>(t)?, selector)
                .map_err(|e| Failure::Usage(anyhow!("{e}")))?;
            to_pretty(&descriptor_to_json(&p))
        }
        Command::Phi { f, g, inverse } => {
            let (f, g) = (read_descriptor::<S>(f)?, read_descriptor::<S>(g)?);
            let image = if *inverse { phi_inv(&f, &g) } else { phi(&f, &g) };
            to_pretty(&descriptor_to_json(&image))
        }
        Command::Median { f, g, h } => {
            let (f, g, h) = (read_descriptor::<S>(f)?, read_descriptor::<S>(g)?, read_descriptor::<S>(h)?);
            to_pretty(&median_to_json(&median(&f, &g, &h)))
        }
        Command::Type { f, at } => {
            let f = read_descriptor::<S>(f)?;
            let t = match at {
                Some(at) => type_at(&read_descriptor::<S>(at)?, &f),
                None => type_of(&f),
            };
            to_pretty(&type_of_to_json(&t))
        }
        Command::Realize { qtype, salt, at } => {
            let tau = qtype_from_json::<S>(&read_json(qtype)?).map_err(|e| json_failure(qtype, e))?;
            let at = match at {
                Some(at) => read_descriptor::<S>(at)?,
                None => Descriptor::empty(),
            };
            to_pretty(&descriptor_to_json(&realize_type(&at, &tau, salt)))
        }
        Command::Converge { .. } | Command::Suite { .. } => unreachable!("handled by run"),
    };
    emit(out, &text)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Converge { seed, count, n, strict } => {
            if n.is_empty() {
                return Err(Failure::Usage(anyhow!("--n needs at least one scale")));
            }
            let pairs = descriptor_corpus(*seed, *count);
            for &scale in n {
                if pairs.iter().all(|(f, g)| scale_is_aligned::<Rational>(f, scale) && scale_is_aligned(g, scale)) {
                    continue;
                }
                if *strict {
                    return Err(Failure::Usage(anyhow!("n={scale} does not clear the corpus denominators")));
                }
                eprintln!("warning: n={scale} does not clear every denominator; its rows carry no bound");
            }
            let report = converge_corpus(&pairs, n).map_err(|e| Failure::Usage(anyhow!("{e}")))?;
            emit(out, &report.to_csv())?;
            match report.violations().count() {
                0 => Ok(()),
                k => Err(Failure::Invalid(format!("{k} rows exceed the bound"))),
            }
        }
        Command::Suite { name, seed, samples, inject_fault } => {
            let cfg = SuiteConfig { inject_fault: *inject_fault, ..SuiteConfig::new(*seed, *samples) };
            let report = run_suite_in_mode(*name, cli.mode.into(), &cfg);
            emit(out, &report.to_csv())?;
            match report.violations() {
                0 => Ok(()),
                k => Err(Failure::Invalid(format!("{name} suite: {k} violations"))),
            }
        }
        command => match NumericMode::from(cli.mode) {
            NumericMode::Exact => run_geometry::<Rational>(command, out),
            NumericMode::Float => run_geometry::<f64>(command, out),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("invalid: {msg}");
            ExitCode::from(2)
        }
    }
}
