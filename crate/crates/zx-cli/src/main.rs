//! `zxe`: interpret diagrams, check rules and derivations, run witnesses.
//!
//! Exit codes: 0 every check passed, 1 a check failed, 2 bad input.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "zxe", version, about = "Exact ZX-calculus engine")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Float comparison tolerance.
    #[arg(long, global = true, env = "ZXE_TOL", default_value_t = 1e-9)]
    pub tol: f64,
    /// Largest number of open tensor indices during contraction.
    #[arg(long, global = true, env = "ZXE_CAP", default_value_t = zx_interp::DEFAULT_RANK_CAP)]
    pub cap: usize,
    /// Seed for random instances.
    #[arg(long, global = true, env = "ZXE_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the standard interpretation of a diagram file.
    Interpret {
        file: String,
        /// exact or float; defaults to exact unless a phase is a float.
        #[arg(long)]
        backend: Option<String>,
    },
    /// Print the invariant bits of a diagram file.
    Invariant { file: String },
    /// Inspect and check rewrite rules.
    #[command(subcommand)]
    Rule(RuleCmd),
    /// Soundness and invariant sweeps over a ruleset.
    #[command(subcommand)]
    Suite(SuiteCmd),
    /// Replay derivation scripts.
    #[command(subcommand)]
    Derive(DeriveCmd),
    /// Independence and separation witnesses.
    #[command(subcommand)]
    Witness(WitnessCmd),
}

#[derive(Subcommand, Debug)]
pub enum RuleCmd {
    /// Every known rule with its origin.
    List,
    /// Print a rule schema, or an instance when bindings are given.
    Show {
        name: String,
        #[arg(long = "bind", value_name = "K=V")]
        bind: Vec<String>,
        #[arg(long, default_value = "plain")]
        variant: String,
    },
    /// Check one instance, or every variant with `--variant all`.
    Check {
        name: String,
        #[arg(long = "bind", value_name = "K=V")]
        bind: Vec<String>,
        #[arg(long, default_value = "plain")]
        variant: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum SuiteCmd {
    /// Check every rule instance on the grid plus random float draws.
    Soundness {
        #[arg(long, default_value = "ZX")]
        ruleset: String,
        #[arg(long, default_value_t = 3)]
        max_arity: usize,
        /// Angle grid, written π/K, pi/K or K.
        #[arg(long, default_value = "π/4")]
        grid: String,
        #[arg(long, default_value_t = 20)]
        random: usize,
        /// Print passing instances too.
        #[arg(long)]
        verbose: bool,
    },
    /// Report how each rule acts on the invariant bits.
    Invariants {
        #[arg(long, default_value = "ZX")]
        ruleset: String,
        #[arg(long, default_value_t = 3)]
        max_arity: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum DeriveCmd {
    /// Replay a script file, or a bundled script by name.
    Check {
        script: String,
        /// Also compare interpretations after every step.
        #[arg(long)]
        paranoid: bool,
    },
    /// Names of the bundled scripts.
    List,
    /// Print a bundled script.
    Show { name: String },
}

#[derive(Subcommand, Debug)]
pub enum WitnessCmd {
    /// E is independent of the other rules of ZX_E.
    Prop1,
    /// Whether sqrt 2 lies in the cyclotomic field of each order k.
    Sqrt2 {
        #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12])]
        k: Vec<u32>,
    },
    /// SUP_p is needed for p an odd prime.
    Supnec {
        #[arg(long, default_value_t = 3)]
        p: usize,
        #[arg(long, default_value_t = 3)]
        max_arity: usize,
    },
    /// The D1/D2 pair: equal interpretations, and both plugged reductions.
    Thm2,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
