use std::path::PathBuf;

use amalgam_core::exponent::Exponent;
use amalgam_core::group::GroupKind;
use clap::{Parser, Subcommand, ValueEnum};

/// Amalgam, Lorentz and fractional-mean norms of simple functions.
///
/// Reports go to `--out`, else to `$AMALGAM_OUT_DIR/<command>.<format>`, else to stdout.
#[derive(Debug, Parser)]
#[command(name = "amalgam", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report path; the format defaults to the file extension.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Partition,
    Ball,
}

fn exponent(s: &str) -> Result<Exponent, String> {
    s.parse::<Exponent>().map_err(|e| format!("{e}; expected a real >= 1 or `inf`"))
}

fn group(s: &str) -> Result<GroupKind, String> {
    s.parse::<GroupKind>().map_err(|_| {
        let names: Vec<&str> = GroupKind::ALL.iter().map(|k| k.name()).collect();
        format!("unknown group `{s}`; expected one of {}", names.join(", "))
    })
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Amalgam norm at one radius, partition or ball form.
    Norm {
        /// Function spec (JSON).
        #[arg(long = "fn", value_name = "PATH")]
        function: PathBuf,
        #[arg(long, value_enum, default_value = "partition")]
        form: FormArg,
        #[arg(long, value_parser = exponent)]
        q: Exponent,
        #[arg(long, value_parser = exponent)]
        p: Exponent,
        #[arg(long)]
        r: f64,
        /// Relative quadrature mesh for ball norms off the real line.
        #[arg(long)]
        mesh: Option<f64>,
    },
    /// Lorentz quasi-norm `‖f‖*_{q,p}`.
    Lorentz {
        #[arg(long = "fn", value_name = "PATH")]
        function: PathBuf,
        #[arg(long, value_parser = exponent)]
        q: Exponent,
        #[arg(long, value_parser = exponent)]
        p: Exponent,
    },
    /// Fractional-mean norm `‖f‖_{q,p,α}` as a maximum over a radius grid.
    Fracnorm {
        #[arg(long = "fn", value_name = "PATH")]
        function: PathBuf,
        #[arg(long, value_enum, default_value = "partition")]
        form: FormArg,
        #[arg(long, value_parser = exponent)]
        q: Exponent,
        #[arg(long, value_parser = exponent)]
        p: Exponent,
        #[arg(long, value_parser = exponent)]
        alpha: Exponent,
        /// Defaults to a sixteenth of the support diameter.
        #[arg(long)]
        r_min: Option<f64>,
        /// Defaults to sixteen times the support diameter.
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long)]
        steps: Option<u32>,
        #[arg(long)]
        mesh: Option<f64>,
    },
    /// Geometry of the partition `π_r` and a randomised validity check.
    PartitionInfo {
        #[arg(long, value_parser = group)]
        group: GroupKind,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Truncated sparse-union counterexample on the real line.
    Counterexample {
        #[arg(long)]
        q: f64,
        #[arg(long, value_parser = exponent)]
        p: Exponent,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 4)]
        levels: u32,
    },
    /// Run the inequality suite; exits with 1 if any case fails.
    Verify {
        /// Suite config (JSON); the built-in checklist when omitted.
        #[arg(long, value_name = "PATH")]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated criterion labels to keep, e.g. `I1,I4`.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Norm { .. } => "norm",
            Command::Lorentz { .. } => "lorentz",
            Command::Fracnorm { .. } => "fracnorm",
            Command::PartitionInfo { .. } => "partition-info",
            Command::Counterexample { .. } => "counterexample",
            Command::Verify { .. } => "verify",
        }
    }
}
