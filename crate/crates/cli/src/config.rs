use std::path::PathBuf;

use clap::{Args, ValueEnum};
use qmds_core::linalg::Budget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Seed for every sampling stage
    #[arg(long, global = true, default_value_t = 0xC0DE)]
    pub seed: u64,
    /// Largest number of projective messages enumerated exhaustively
    #[arg(long, global = true)]
    pub budget_enum: Option<u64>,
    /// Cost cap for exhaustive support scans
    #[arg(long, global = true)]
    pub budget_support: Option<u64>,
    /// Number of random samples before giving up
    #[arg(long, global = true)]
    pub budget_samples: Option<u64>,
    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

/// Caps used for q = 7 and q = 8, where full searches do not finish.
pub const CAPPED: Budget = Budget {
    enumerate: 1_000_000,
    support: 1_000_000_000,
    samples: 2_000,
    seed: 0xC0DE,
};

impl RunConfig {
    pub fn budget(&self) -> Budget {
        self.budget_over(&Budget::default())
    }

    /// `base` with every explicitly given option applied on top.
    pub fn budget_over(&self, base: &Budget) -> Budget {
        Budget {
            enumerate: self.budget_enum.unwrap_or(base.enumerate),
            support: self.budget_support.unwrap_or(base.support),
            samples: self.budget_samples.unwrap_or(base.samples),
            seed: self.seed,
        }
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}
