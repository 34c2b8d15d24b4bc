mod commands;
mod config;
mod figdata;
mod output;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use commands::{parse_range, RouteArg};
use config::RunConfig;
use output::{Report, UsageError};

#[derive(Parser)]
#[command(name = "qmds", version, about = "Construct and verify quantum MDS codes")]
struct Cli {
    #[command(subcommand)]
    command: Commands,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(Subcommand)]
enum Commands {
    /// Descriptor of GF(p^m)
    Field { p: u32, m: u32 },
    /// The (consta)cyclic MDS code of length Q+1 and distance d over GF(Q)
    Mds {
        #[arg(name = "Q")]
        q: u32,
        d: u32,
    },
    /// Puncture code of the Hermitian dual of the length q^2+1 MDS code
    Pc {
        q: u32,
        d: u32,
        #[arg(long, value_enum, default_value = "direct")]
        route: RouteArg,
    },
    /// Which weights occur in the puncture code
    Weights {
        q: u32,
        d: u32,
        /// Inclusive weight range a..b
        #[arg(long, value_parser = parse_range)]
        range: Option<(usize, usize)>,
    },
    /// Full pipeline: weight search and one stabilizer code per weight found
    Qmds { q: u32, d: u32 },
    /// The length 4^m+2 construction over GF(2^m)
    Q2p2 { m: u32 },
    /// Shorten a registry record, key `n,k,d@q`
    Shorten { key: String, s: usize },
    /// Re-verify a witness file from scratch
    Verify { witness: PathBuf },
    /// Check one section of the computational results (6A..6F)
    Reproduce { section: String },
    /// Measured against predicted puncture-code parameters
    Conjectures {
        #[arg(long = "q", value_parser = parse_range)]
        q: (usize, usize),
    },
    /// CSV of achievable (n, d) points for alphabet q
    Figdata { q: u32 },
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("QMDS_THREADS") {
        let n: usize = v.parse().context("QMDS_THREADS must be a positive integer")?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .context("configuring worker threads")?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Report> {
    let cfg = &cli.config;
    match &cli.command {
        Commands::Field { p, m } => commands::field_cmd(*p, *m, cfg),
        Commands::Mds { q, d } => commands::mds_cmd(*q, *d, cfg),
        Commands::Pc { q, d, route } => commands::pc_cmd(*q, *d, *route, cfg),
        Commands::Weights { q, d, range } => commands::weights_cmd(*q, *d, *range, cfg),
        Commands::Qmds { q, d } => commands::qmds_cmd(*q, *d, cfg),
        Commands::Q2p2 { m } => commands::q2p2_cmd(*m, cfg),
        Commands::Shorten { key, s } => commands::shorten_cmd(key, *s, cfg),
        Commands::Verify { witness } => commands::verify_cmd(witness, cfg),
        Commands::Reproduce { section } => reproduce::reproduce_cmd(section, cfg),
        Commands::Conjectures { q } => commands::conjectures_cmd(*q, cfg),
        Commands::Figdata { q } => figdata::figdata_cmd(*q, cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|_| run(&cli)).and_then(|report| {
        match &cli.config.output {
            Some(path) => std::fs::write(path, &report.text)
                .with_context(|| format!("writing {}", path.display()))?,
            None => print!("{}", report.text),
        }
        Ok(report.outcome.exit_code())
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
