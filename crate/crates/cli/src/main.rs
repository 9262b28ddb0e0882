//! Batch front end: ideal generators, loci and verification suites as JSON certificates.

use std::path::PathBuf;
use std::process::ExitCode;

use ck_core::galois::PlaceSet;
use ck_core::padic::PadicPolicy;
use ck_core::pipeline::{ideal_run, locus_run, PipelineError, RunConfig};
use ck_core::suites::{suite, suites, SuiteConfig};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "ck",
    version,
    about = "Polylogarithmic Chabauty-Kim computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ideal generators with vanishing certificates.
    Ideal(Common),
    /// Common zeros of the Coleman functions on the p-adic points.
    Locus {
        #[command(flatten)]
        common: Common,
        /// Intersect with the images under the six automorphisms.
        #[arg(long)]
        symmetrize: bool,
    },
    /// Run a named verification suite.
    Verify {
        /// Suite name; `--suite` is accepted too.
        name: Option<String>,
        #[arg(long = "suite")]
        suite: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Inverted primes, comma separated.
    #[arg(long = "S", value_delimiter = ',', default_value = "3")]
    places: Vec<u64>,
    /// Working prime.
    #[arg(long = "p")]
    p: Option<u64>,
    /// Weight bound.
    #[arg(long = "n", default_value_t = 4)]
    n: u32,
    /// Reported p-adic digits M.
    #[arg(long, default_value_t = 12)]
    prec: u32,
    /// Digits g allowed for precision loss.
    #[arg(long, default_value_t = 3)]
    guard: u32,
    /// Elimination strategy.
    #[arg(long, default_value = "groebner")]
    strategy: String,
    /// Write the JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn places(&self) -> Result<PlaceSet, PipelineError> {
        Ok(PlaceSet::new(self.places.iter().copied())?)
    }

    fn policy(&self) -> Result<PadicPolicy, PipelineError> {
        Ok(PadicPolicy::new(self.prec, self.guard)?)
    }

    fn run_config(&self, default_p: u64) -> Result<RunConfig, PipelineError> {
        let mut cfg = RunConfig::new(
            self.places()?,
            self.p.unwrap_or(default_p),
            self.n,
            self.policy()?,
        );
        cfg.strategy = self.strategy.clone();
        Ok(cfg)
    }
}

fn run(cli: &Cli) -> Result<(serde_json::Value, bool, Option<&PathBuf>), PipelineError> {
    match &cli.command {
        Command::Ideal(c) => {
            let r = ideal_run(&c.run_config(5)?)?;
            Ok((r.to_json(), r.certified(), c.out.as_ref()))
        }
        Command::Locus { common, symmetrize } => {
            let r = locus_run(&common.run_config(5)?, *symmetrize)?;
            Ok((r.to_json(), r.certified(), common.out.as_ref()))
        }
        Command::Verify {
            name,
            suite: flag,
            common,
        } => {
            let Some(name) = name.as_ref().or(flag.as_ref()) else {
                let names: Vec<_> = suites()
                    .iter()
                    .map(|s| format!("{}: {}", s.name(), s.description()))
                    .collect();
                return Err(PipelineError::Config(format!(
                    "choose a suite:\n  {}",
                    names.join("\n  ")
                )));
            };
            let cfg = SuiteConfig {
                places: common.places()?,
                primes: common.p.map_or_else(|| vec![5, 7], |p| vec![p]),
                n: common.n,
                policy: common.policy()?,
            };
            if let Some(&p) = cfg
                .primes
                .iter()
                .find(|p| **p <= 3 || cfg.places.contains(**p))
            {
                return Err(PipelineError::Config(format!(
                    "p = {p} must exceed 3 and avoid S = {}",
                    cfg.places
                )));
            }
            let r = suite(name)?.run(&cfg)?;
            for c in &r.checks {
                eprintln!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            }
            Ok((r.to_json(), r.passed(), common.out.as_ref()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((json, certified, out)) => {
            let text = serde_json::to_string_pretty(&json).expect("json") + "\n";
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            if certified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
