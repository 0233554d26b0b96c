mod commands;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use handelman::graph::WeightMode;

use crate::report::Format;

/// Exact LP bounds for the maximum stable set and max-cut problems.
///
/// GRAPH arguments are graph files or generated families such as
/// `circuit:5`, `co-circuit:7`, `wheel:5`, `lt:2`, `fan:2`,
/// `bipartite:2:3` or `random:8:0.5:42` (the seed may be left out and taken
/// from `--seed`).
#[derive(Debug, Parser)]
#[command(name = "handelman", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Rederive edge weights from node weights in this mode; UNIT also resets
    /// node weights to 1.
    #[arg(long, global = true, value_parser = parse_mode)]
    pub mode: Option<WeightMode>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for random families and the reproduction run.
    #[arg(long, global = true, default_value_t = handelman::reproduce::DEFAULT_SEED)]
    pub seed: u64,

    /// Worker threads for independent solves.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,

    /// Add decimal approximations next to exact values.
    #[arg(long, global = true)]
    pub approx: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weighted stability number and a maximum stable set.
    Stab { graph: String },
    /// Fractional stability number.
    Fracstab { graph: String },
    /// Fractional cover by cliques of size at most t.
    Cover {
        graph: String,
        #[arg(long, value_parser = order)]
        t: usize,
    },
    /// Handelman bound of order t.
    Handelman {
        graph: String,
        #[arg(long, value_parser = order)]
        t: usize,
    },
    /// Handelman rank with the bound at every order up to it.
    Rank { graph: String },
    /// Certificate for the order-t bound.
    Certificate {
        graph: String,
        #[arg(long, value_parser = order)]
        t: usize,
    },
    /// Check a certificate file against a graph.
    VerifyCert { certificate: PathBuf, graph: String },
    /// Closed-form rank bounds.
    Bounds { graph: String },
    /// Sherali-Adams bound of order t.
    Sa {
        graph: String,
        #[arg(long, value_parser = order)]
        t: usize,
    },
    /// First lift-and-project bound.
    Ls1 { graph: String },
    /// Copositive bound of order t (node weights ignored).
    Zeta {
        graph: String,
        #[arg(long)]
        t: usize,
    },
    /// Max-cut bound of order t.
    Maxcut {
        graph: String,
        #[arg(long, value_parser = order)]
        t: usize,
    },
    /// Max-cut rank.
    MaxcutRank { graph: String },
    /// Table of all bounds for t = 1..tmax.
    Compare {
        #[arg(required = true)]
        graphs: Vec<String>,
        #[arg(long, value_parser = order)]
        tmax: usize,
        /// Wall-clock limit per solve in seconds.
        #[arg(long, default_value_t = 60.0)]
        timeout: f64,
    },
    /// Run the numbered acceptance checks.
    Reproduce {
        /// Run only these checks.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

fn parse_mode(s: &str) -> Result<WeightMode, String> {
    let mode: WeightMode = s.parse().map_err(|e: handelman::Error| e.to_string())?;
    if mode == WeightMode::Custom {
        return Err("CUSTOM weights come from a graph file, not from --mode".into());
    }
    Ok(mode)
}

fn order(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(t) if t >= 1 => Ok(t),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.output.as_bytes());
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
