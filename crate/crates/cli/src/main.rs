//! `fan`: build, check and draw finite approximations of Mahavier products.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fan_core::Scalar;

/// Exit codes shared by all subcommands.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VERIFICATION_FAILED: u8 = 1;
    pub const CONNECTS: u8 = 2;
    pub const PRECONDITION: u8 = 3;
    pub const RESOURCE: u8 = 4;
    pub const USAGE: u8 = 64;
}

#[derive(Debug, Parser)]
#[command(name = "fan", version, about = "Finite-depth Mahavier products, Lelek and Cantor fans")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalConfig {
    /// Contracting slope r, 0 < r < 1.
    #[arg(long, global = true, default_value = "1/2")]
    pub r: Scalar,
    /// Expanding slope rho > 1.
    #[arg(long, global = true, default_value = "3")]
    pub rho: Scalar,
    /// Word length of the approximation.
    #[arg(long, global = true, default_value_t = 6)]
    pub depth: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on the number of words enumerated.
    #[arg(long, global = true, default_value_t = fan_core::DEFAULT_ENUMERATION_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub max_legs: u64,
    /// Cap on greedy steps for a single orbit.
    #[arg(long, global = true, default_value_t = 1_000_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub max_steps: u64,
    /// Longest word the exhaustive oracle will search.
    #[arg(long, global = true, default_value_t = fan_core::analysis::DEFAULT_ORACLE_MAX_LEN as u64,
          value_parser = clap::value_parser!(u64).range(1..=40))]
    pub oracle_max_len: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether r and rho never connect.
    CheckNc,
    /// Enumerate (or sample) the legs of a relation's product and write a leg file.
    Build(commands::BuildArgs),
    /// Greedy orbit from x under r and rho.
    Greedy(commands::GreedyArgs),
    /// Classify points (or the far ends of a leg file's legs) as end-points.
    Endpoints(commands::EndpointsArgs),
    /// Density witnesses for sampled points of the F product.
    Density(commands::DensityArgs),
    /// Check that the G product embeds in the F product and that F has dense end-points.
    EmbedCheck(commands::EmbedCheckArgs),
    /// Enclose the Hausdorff distance between two fan approximations.
    Hausdorff(commands::HausdorffArgs),
    /// Draw a leg file as SVG.
    Render(commands::RenderArgs),
}

fn configure_threads() {
    if let Some(n) = std::env::var("FAN_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(exit::USAGE),
            };
        }
    };
    configure_threads();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
