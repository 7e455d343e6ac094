//! File formats and the command-line front end for the `gscon-core` toolkit.

pub mod commands;
pub mod config;
pub mod dimacs;
pub mod fixtures;
pub mod json;

use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use gscon_core::Tolerances;

pub use commands::{Output, EXIT_ERROR, EXIT_INDETERMINATE, EXIT_NO, EXIT_OK};
pub use config::{Format, Guards, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "gscon", version, about = "Ground state connectivity experiments")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Seed for every random choice in the run.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report file; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = Guards::default().max_qubits)]
    pub max_qubits: usize,
    #[arg(long, global = true, default_value_t = Guards::default().max_steps)]
    pub max_steps: usize,
    #[arg(long, global = true, default_value_t = Guards::default().max_nodes)]
    pub max_nodes: usize,
    #[arg(long, global = true, default_value_t = Tolerances::DEFAULT.unitarity)]
    pub tol_unitarity: f64,
    #[arg(long, global = true, default_value_t = Tolerances::DEFAULT.hermiticity)]
    pub tol_hermiticity: f64,
    #[arg(long, global = true, default_value_t = Tolerances::DEFAULT.comparison)]
    pub tol_comparison: f64,
}

impl GlobalArgs {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            seed: self.seed,
            tolerances: Tolerances {
                unitarity: self.tol_unitarity,
                hermiticity: self.tol_hermiticity,
                comparison: self.tol_comparison,
            },
            guards: Guards { max_qubits: self.max_qubits, max_steps: self.max_steps, max_nodes: self.max_nodes },
            out: self.out.clone(),
            format: self.format,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the |000⟩ → |111⟩ staircase for one Delta or a sweep.
    Staircase {
        #[arg(long, conflicts_with = "sweep")]
        delta: Option<f64>,
        /// Comma-separated Delta values.
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.05,0.02,0.01")]
        sweep: Vec<f64>,
    },
    /// Turn a DIMACS 3-CNF and two satisfying assignments into an instance.
    ReduceStconn {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Check a witness sequence against an instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Run the simulated net-based verifier on a 2-local proof.
    QcmaSim {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        emit_proof: Option<PathBuf>,
    },
    /// Decide a 1-local instance by the rounding net search.
    PspaceSearch {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Decide a tiny instance by exhaustive search over alphabet sequences.
    BruteForce {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        net_eps: Option<f64>,
    },
    /// Test k-orthogonality of two states.
    Korth {
        #[arg(long, requires = "w", conflicts_with = "states")]
        v: Option<String>,
        #[arg(long, requires = "v")]
        w: Option<String>,
        /// JSON file `{n, v, w}` with amplitude lists.
        #[arg(long)]
        states: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Check the net contracts on Haar-random samples.
    NetTest {
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// 2 for the single-qubit net, larger for the pseudo-net.
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
}

/// Runs one command and writes its report, returning the exit code.
pub fn run(cli: &Cli) -> Result<i32> {
    let cfg = cli.global.config();
    cfg.validate()?;
    let out = match &cli.command {
        Command::Staircase { delta, sweep } => {
            let deltas = delta.map_or_else(|| sweep.clone(), |d| vec![d]);
            commands::staircase(&deltas, &cfg)?
        }
        Command::ReduceStconn { cnf, x, y, emit_witness } => {
            commands::reduce_stconn(cnf, x, y, emit_witness.as_deref(), &cfg)?
        }
        Command::Verify { instance, witness } => commands::verify(instance, witness, &cfg)?,
        Command::QcmaSim { instance, witness, emit_proof } => {
            commands::qcma_sim(instance, witness, emit_proof.as_deref(), &cfg)?
        }
        Command::PspaceSearch { instance } => commands::pspace(instance, &cfg)?,
        Command::BruteForce { instance, net_eps } => commands::brute_force(instance, *net_eps, &cfg)?,
        Command::Korth { v, w, states, k, trials } => {
            let pair = match (v, w, states) {
                (Some(v), Some(w), None) => commands::StatePair::Bits(v, w),
                (None, None, Some(p)) => commands::StatePair::File(p),
                _ => anyhow::bail!("give either --v and --w or --states"),
            };
            commands::korth(pair, *k, *trials, &cfg)?
        }
        Command::NetTest { eps, samples, dim } => commands::net_test(*eps, *samples, *dim, &cfg)?,
    };
    match &cfg.out {
        Some(p) => fs::write(p, &out.text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{}", out.text),
    }
    Ok(out.code)
}
