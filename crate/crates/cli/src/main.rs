mod report;
mod spec;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use pg_incidence::bounds::DEFAULT_LINE_CAP;
use pg_incidence::geometry::DEFAULT_POINT_CAP;
use pg_incidence::minimality::DEFAULT_ORACLE_CAP;

use spec::FixtureName;
use verify::Suite;

#[derive(Parser)]
#[command(name = "pgcode", version, about = "Incidence codes of PG(n,q): decomposition and minimality")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
pub struct Caps {
    /// Largest number of points a space may have.
    #[arg(long, global = true, default_value_t = DEFAULT_POINT_CAP)]
    pub cap_points: u64,
    /// Largest number of lines a spectrum scan may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_LINE_CAP)]
    pub cap_lines: u64,
    /// Largest p^m the exhaustive oracle may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP)]
    pub cap_oracle: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Print theta, Delta, W and U tables and the regime flags.
    GeomInfo {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyse the codeword described by a JSON spec file.
    Analyze {
        spec: PathBuf,
        #[arg(long)]
        decompose: bool,
        /// Secant spectrum and line classes (full line scan).
        #[arg(long)]
        spectrum: bool,
        #[arg(long)]
        minimality: bool,
        /// Run the exhaustive oracle (implies --minimality).
        #[arg(long)]
        oracle: bool,
        /// Exit 0 instead of 2 when the input is outside the regime.
        #[arg(long)]
        allow_out_of_regime: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a reproducible verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Emit a named fixture as an explicit spec file.
    Fixture {
        #[arg(value_enum)]
        name: FixtureName,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        q: u64,
        /// Number of hyperplanes (random-j only).
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tally fixpoint sizes, exceptional holes and oracle verdicts over
    /// random in-regime plane codewords.
    Experiment {
        #[arg(long, default_value_t = 125)]
        q: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 8)]
        max_terms: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("cannot configure the thread pool")?;
    }
    let caps = cli.caps;
    match cli.command {
        Command::GeomInfo { n, p, h, out } => {
            let (json, code) = report::geom_info(n, p, h)?;
            report::emit(&json, out.as_deref())?;
            Ok(code)
        }
        Command::Analyze {
            spec,
            decompose,
            spectrum,
            minimality,
            oracle,
            allow_out_of_regime,
            out,
        } => {
            let bytes = std::fs::read(&spec).with_context(|| format!("cannot read {}", spec.display()))?;
            let sections = report::Sections {
                decompose,
                spectrum,
                minimality: minimality || oracle,
                oracle,
            };
            let (json, flagged) = report::analyze(&bytes, sections, caps)?;
            report::emit(&json, out.as_deref())?;
            Ok(if flagged && !allow_out_of_regime { 2 } else { 0 })
        }
        Command::Verify {
            suite,
            seed,
            q,
            n,
            trials,
        } => {
            let ok = verify::run(suite, verify::Params { seed, q, n, trials }, caps);
            Ok(if ok { 0 } else { 1 })
        }
        Command::Fixture {
            name,
            n,
            q,
            j,
            seed,
            out,
        } => {
            let json = report::fixture(name, n, q, j, seed, caps)?;
            report::emit(&json, out.as_deref())?;
            Ok(0)
        }
        Command::Experiment {
            q,
            trials,
            max_terms,
            seed,
            out,
        } => {
            let json = verify::sharpness_experiment(q, trials, max_terms, seed, caps)?;
            report::emit(&json, out.as_deref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
