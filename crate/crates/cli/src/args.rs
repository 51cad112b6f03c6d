use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Generalized Li coefficients of the Riemann xi function.
#[derive(Parser, Debug)]
#[command(name = "genli", version, about, long_about = None)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Working precision in bits
    #[arg(long, global = true, env = "GENLI_PRECISION", default_value_t = 256)]
    pub bits: u32,

    /// Target tolerance for reported results (decimal)
    #[arg(long, global = true, default_value = "1e-30")]
    pub tol: String,

    /// Emit a JSON envelope instead of CSV / text
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the output to FILE instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// More log output (-v info, -vv debug)
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    /// Only errors on stderr
    #[arg(short, long, global = true)]
    pub quiet: bool,
}

impl GlobalArgs {
    pub fn log_level(&self) -> &'static str {
        match (self.quiet, self.verbose) {
            (true, _) => "error",
            (false, 0) => "warn",
            (false, 1) => "info",
            _ => "debug",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Table of lambda(n, b, sigma) for n = 1..n-max
    Lambda(LambdaArgs),
    /// Compare the zero-sum and generating-function routes
    Verify(VerifyArgs),
    /// Sign of lambda(n, b, sigma) over a (b, sigma) grid
    Scan(ScanArgs),
    /// Produce or refine tables of zero ordinates
    #[command(subcommand)]
    Zeros(ZerosCommand),
    /// Evaluate a special function at one point
    Eval(EvalArgs),
}

#[derive(Args, Debug)]
pub struct Params {
    /// Shift b (decimal)
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,

    /// Line parameter sigma (decimal)
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: String,

    /// Largest n
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n_max: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    ZeroSum,
    Genfunc,
    Both,
}

#[derive(Args, Debug)]
pub struct LambdaArgs {
    #[command(flatten)]
    pub params: Params,

    /// Which computation to run
    #[arg(long, value_enum, default_value_t = RouteArg::Genfunc)]
    pub route: RouteArg,

    /// Zero table (one ordinate per line); needed for the zero-sum route
    #[arg(long, value_name = "FILE")]
    pub zeros: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub params: Params,

    /// Zero table (one ordinate per line)
    #[arg(long, value_name = "FILE")]
    pub zeros: PathBuf,

    /// Smallest allowed difference; defaults to --tol
    #[arg(long)]
    pub floor: Option<String>,

    /// Multiple of the tail estimate allowed as difference
    #[arg(long, default_value = "2")]
    pub tail_factor: String,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Comma-separated sigma values or start:stop:step ranges
    #[arg(long, allow_hyphen_values = true)]
    pub sigma_grid: String,

    /// Comma-separated b values or start:stop:step ranges
    #[arg(long, allow_hyphen_values = true)]
    pub b_grid: String,

    /// Largest n
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n_max: u32,
}

#[derive(Subcommand, Debug)]
pub enum ZerosCommand {
    /// Locate all zeros 0 < gamma <= max-height by sign changes of Xi(t);
    /// --tol is the ordinate tolerance
    Find {
        #[arg(long)]
        max_height: String,
    },
    /// Refine every ordinate of an existing table to --tol
    Refine {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FunctionArg {
    Zeta,
    Xi,
    XiLogderiv,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Function to evaluate
    #[arg(long = "fn", value_enum)]
    pub function: FunctionArg,

    /// Point: x, x+yi, x-yi or yi
    #[arg(long, allow_hyphen_values = true)]
    pub at: String,
}
