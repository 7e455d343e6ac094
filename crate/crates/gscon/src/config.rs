//! Per-run settings shared by every subcommand.

use std::path::PathBuf;

use anyhow::{bail, Result};
use gscon_core::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Size limits checked before any exponential work starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    pub max_qubits: usize,
    pub max_steps: usize,
    pub max_nodes: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards { max_qubits: 14, max_steps: 4096, max_nodes: 5_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerances: Tolerances,
    pub guards: Guards,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            tolerances: Tolerances::DEFAULT,
            guards: Guards::default(),
            out: None,
            format: Format::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let g = &self.guards;
        if g.max_qubits == 0 || g.max_steps == 0 || g.max_nodes == 0 {
            bail!("guards must be positive");
        }
        let t = &self.tolerances;
        for (name, v) in [("unitarity", t.unitarity), ("hermiticity", t.hermiticity), ("comparison", t.comparison)] {
            if !(v > 0.0 && v.is_finite()) {
                bail!("{name} tolerance must be positive");
            }
        }
        Ok(())
    }

    pub fn check_size(&self, n: usize, m: usize) -> Result<()> {
        if n > self.guards.max_qubits {
            bail!("{n} qubits exceeds the guard of {}", self.guards.max_qubits);
        }
        if m > self.guards.max_steps {
            bail!("m = {m} exceeds the guard of {}", self.guards.max_steps);
        }
        Ok(())
    }
}
