mod commands;
mod record;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::Outcome;

/// Verifies non-cover complex collapsibility and its consequences on
/// concrete graphs.
#[derive(Debug, Parser)]
#[command(name = "noncover", version)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct RunConfig {
    /// Largest vertex count accepted.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..=64))]
    pub max_n: u64,
    /// Largest number of faces enumerated for one complex.
    #[arg(long, global = true, default_value_t = noncover::complexes::DEFAULT_FACE_BUDGET, value_parser = positive)]
    pub face_budget: usize,
    /// Largest number of states visited by one collapse search.
    #[arg(long, global = true, default_value_t = noncover::collapse::DEFAULT_STATE_BUDGET, value_parser = positive)]
    pub state_budget: usize,
    #[arg(long, global = true, default_value_t = 2019)]
    pub seed: u64,
    /// Worker threads; defaults to the number of available cores.
    #[arg(long, global = true, value_parser = positive)]
    pub jobs: Option<usize>,
    /// Append the output as one JSON line to this file instead of printing it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full verification pipeline on one edge-list file.
    Analyze {
        path: PathBuf,
        /// Sampled cover families for the rainbow check.
        #[arg(long, default_value_t = 10)]
        rainbow_samples: usize,
    },
    /// Analyze every labeled graph on `n` vertices, one JSON record per line.
    Sweep {
        n: usize,
        #[arg(long)]
        isolated_free: bool,
        #[arg(long)]
        connected: bool,
        #[arg(long, default_value_t = 3)]
        rainbow_samples: usize,
        /// Check induced subcomplexes for homology vanishing up to this size.
        #[arg(long, default_value_t = 5)]
        induced_max_n: usize,
    },
    /// Replay a collapse certificate against a complex.
    VerifyCert {
        complex: PathBuf,
        certificate: PathBuf,
        /// Reject free faces larger than this.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Search a cover system file for a rainbow cover.
    Rainbow { system: PathBuf },
    /// Rainbow search on `C_{3k}` with copies of the matching cover.
    Tightness {
        k: usize,
        /// Number of copies; defaults to `2k - 1`.
        #[arg(long)]
        copies: Option<usize>,
    },
    /// Check Alexander duality on a complex file, or on `I(G)` for a graph.
    DualCheck { path: PathBuf },
    /// Reduced Betti numbers of a complex file, or of `NC(G)` and `I(G)`.
    Homology { path: PathBuf },
}

/// Overrides both budgets, so CI can force small searches without editing
/// command lines.
const BUDGET_OVERRIDE_VAR: &str = "NONCOVER_BUDGET_OVERRIDE";

fn main() -> ExitCode {
    let mut cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(Outcome::Usage as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Ok(raw) = std::env::var(BUDGET_OVERRIDE_VAR) {
        match positive(raw.trim()) {
            Ok(b) => {
                cli.config.face_budget = b;
                cli.config.state_budget = b;
            }
            Err(e) => {
                eprintln!("error: {BUDGET_OVERRIDE_VAR}={raw:?}: {e}");
                return ExitCode::from(Outcome::Usage as u8);
            }
        }
    }
    let outcome = match commands::run(&cli) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e:#}");
            Outcome::Usage
        }
    };
    ExitCode::from(outcome as u8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn global_flags_after_subcommand() {
        let cli = Cli::try_parse_from(["noncover", "sweep", "4", "--isolated-free", "--jobs", "2", "--seed", "7"]).unwrap();
        assert_eq!(cli.config.jobs, Some(2));
        assert_eq!(cli.config.seed, 7);
        assert!(matches!(cli.command, Command::Sweep { n: 4, isolated_free: true, connected: false, .. }));
    }

    #[test]
    fn zero_budget_rejected() {
        assert!(Cli::try_parse_from(["noncover", "--face-budget", "0", "homology", "x"]).is_err());
    }
}
