use std::fmt;
use std::io::Write;
use std::path::Path;

use genli_core::li::{PositivityReport, ScanOutcome};
use genli_core::report::{self, RunConfig, ZeroTableView};
use genli_core::special::{xi, xi_log_derivative, zeta};
use genli_core::{
    cross_verify, find_zeros_up_to, li_genfunc, li_zero_sums, parse_zero_file, positivity_scan, refine_table,
    BigComplex, BigContext, BigLiParams, BigReal, BigZeroTable, Real, TolerancePolicy,
};
use serde_json::json;

use crate::args::{Cli, Command, EvalArgs, FunctionArg, LambdaArgs, RouteArg, ScanArgs, VerifyArgs, ZerosCommand};
use crate::literal::{parse_complex, parse_grid, parse_real};

/// How a command failed; decides the exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, literals or files (exit 2).
    Input(String),
    /// A numerical breakdown in the engine (exit 1).
    Numerical(genli_core::Error),
    /// The routes disagree (exit 1).
    Verification(String),
}

impl From<genli_core::Error> for Failure {
    fn from(e: genli_core::Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Numerical(e)
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Verification(m) => f.write_str(m),
            Failure::Numerical(e) => write!(f, "{e}"),
        }
    }
}

type Outcome = Result<(), Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let ctx = BigContext::with_decimal_tol(g.bits, &g.tol)?;
    let base = RunConfig::new(&ctx);
    let out = Output { json: g.json, path: g.out.as_deref() };
    match &cli.command {
        Command::Lambda(args) => lambda(args, &ctx, base, &out),
        Command::Verify(args) => verify(args, &ctx, base, &out),
        Command::Scan(args) => scan(args, &ctx, base, &out),
        Command::Zeros(cmd) => zeros(cmd, &ctx, base, &out),
        Command::Eval(args) => eval(args, &ctx, base, &out),
    }
}

struct Output<'a> {
    json: bool,
    path: Option<&'a Path>,
}

impl Output<'_> {
    fn emit(&self, text: &str) -> Outcome {
        let result = match self.path {
            Some(p) => std::fs::write(p, text),
            None => std::io::stdout().lock().write_all(text.as_bytes()),
        };
        result.map_err(|e| Failure::Input(format!("cannot write output: {e}")))
    }

    fn emit_json<R: serde::Serialize>(&self, config: &RunConfig, report: &R) -> Outcome {
        let mut text = report::json_string(config, report)?;
        text.push('\n');
        self.emit(&text)
    }
}

fn params(b: &str, sigma: &str, ctx: &BigContext) -> Result<BigLiParams, Failure> {
    let b = parse_real(b, ctx).map_err(Failure::Input)?;
    let sigma = parse_real(sigma, ctx).map_err(Failure::Input)?;
    let p = BigLiParams::new(b, sigma);
    if p.is_degenerate() {
        log::warn!("degenerate b = -sigma; all lambda = 0");
    }
    Ok(p)
}

fn load_zeros(path: &Path, ctx: &BigContext) -> Result<BigZeroTable, Failure> {
    parse_zero_file(path, ctx).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn with_params(config: RunConfig, b: &str, sigma: &str, n_max: u32) -> RunConfig {
    config.with("b", b).with("sigma", sigma).with("n_max", n_max)
}

fn lambda(args: &LambdaArgs, ctx: &BigContext, config: RunConfig, out: &Output) -> Outcome {
    let a = &args.params;
    let p = params(&a.b, &a.sigma, ctx)?;
    let n_max = a.n_max as usize;
    let route = match args.route {
        RouteArg::ZeroSum => "zero-sum",
        RouteArg::Genfunc => "genfunc",
        RouteArg::Both => "both",
    };
    let mut config = with_params(config.with("command", "lambda"), &a.b, &a.sigma, a.n_max).with("route", route);

    let mut values = Vec::new();
    let mut constant_term = None;
    if matches!(args.route, RouteArg::ZeroSum | RouteArg::Both) {
        let path = args
            .zeros
            .as_deref()
            .ok_or_else(|| Failure::Input("the zero-sum route needs --zeros FILE".into()))?;
        let table = load_zeros(path, ctx)?;
        config = config
            .with("zeros", path.display())
            .with("zero_count", table.len())
            .with("gamma_max", table.max_height().to_fixed_string(20));
        values.extend(li_zero_sums(&p, n_max, &table, ctx)?);
    }
    if matches!(args.route, RouteArg::Genfunc | RouteArg::Both) {
        let g = li_genfunc(&p, n_max, ctx)?;
        config = config.with("samples", g.samples);
        constant_term = Some(g.constant_term);
        values.extend(g.values);
    }
    if let Some(a0) = &constant_term {
        config = config.with("constant_term", a0.to_full_string());
    }

    if out.json {
        let report = json!({
            "constant_term": constant_term.as_ref().map(Real::to_full_string),
            "values": values,
        });
        out.emit_json(&config, &report)
    } else {
        out.emit(&report::csv_string(&config, &report::rows(&p, &values))?)
    }
}

fn verify(args: &VerifyArgs, ctx: &BigContext, config: RunConfig, out: &Output) -> Outcome {
    let a = &args.params;
    let p = params(&a.b, &a.sigma, ctx)?;
    let table = load_zeros(&args.zeros, ctx)?;
    let floor = match &args.floor {
        Some(f) => parse_real(f, ctx).map_err(Failure::Input)?,
        None => ctx.target_tol().clone(),
    };
    let tail_factor = parse_real(&args.tail_factor, ctx).map_err(Failure::Input)?;
    let config = with_params(config.with("command", "verify"), &a.b, &a.sigma, a.n_max)
        .with("zeros", args.zeros.display())
        .with("floor", floor.to_sci_string(6))
        .with("tail_factor", tail_factor.to_sci_string(6));
    let policy = TolerancePolicy { floor, tail_factor };
    let report = cross_verify(&p, a.n_max as usize, &table, ctx, &policy)?;

    if out.json {
        out.emit_json(&config, &report)?;
    } else {
        out.emit(&report::verification_csv(&config, &report)?)?;
    }
    if report.passed() {
        return Ok(());
    }
    if !report.zero_sum_available {
        return Err(Failure::Verification(report.notes.join("; ")));
    }
    let failing: Vec<String> = report
        .rows
        .iter()
        .filter(|r| r.status != genli_core::CheckStatus::Pass)
        .map(|r| r.n.to_string())
        .collect();
    Err(Failure::Verification(format!("routes disagree for n = {}", failing.join(", "))))
}

fn scan(args: &ScanArgs, ctx: &BigContext, config: RunConfig, out: &Output) -> Outcome {
    let sigma = parse_grid(&args.sigma_grid, ctx).map_err(Failure::Input)?;
    let b = parse_grid(&args.b_grid, ctx).map_err(Failure::Input)?;
    let config = config
        .with("command", "scan")
        .with("sigma_grid", &args.sigma_grid)
        .with("b_grid", &args.b_grid)
        .with("n_max", args.n_max);
    let report: PositivityReport<BigReal> = positivity_scan(&b, &sigma, args.n_max as usize, ctx)?;
    for v in &report.negatives {
        log::warn!(
            "negative coefficient lambda({}, {}, {}) = {}",
            v.n,
            v.b.to_sci_string(6),
            v.sigma.to_sci_string(6),
            v.value.to_sci_string(12)
        );
    }
    if out.json {
        out.emit_json(&config, &report)?;
    } else {
        out.emit(&report::scan_csv(&config, &report)?)?;
    }
    let failed: Vec<String> = report
        .points
        .iter()
        .filter_map(|p| match &p.outcome {
            ScanOutcome::Failed { error } => {
                Some(format!("(b = {}, sigma = {}): {error}", p.b.to_sci_string(6), p.sigma.to_sci_string(6)))
            }
            _ => None,
        })
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Numerical(genli_core::Error::SeriesMismatch(format!(
            "{} grid point(s) failed: {}",
            failed.len(),
            failed.join("; ")
        ))))
    }
}

fn zeros(cmd: &ZerosCommand, ctx: &BigContext, config: RunConfig, out: &Output) -> Outcome {
    let tol = ctx.target_tol().clone();
    let (table, config) = match cmd {
        ZerosCommand::Find { max_height } => {
            let h = parse_real(max_height, ctx).map_err(Failure::Input)?;
            let table = find_zeros_up_to(&h, &tol, ctx)?;
            (table, config.with("command", "zeros find").with("max_height", max_height))
        }
        ZerosCommand::Refine { input } => {
            let table = load_zeros(input, ctx)?;
            let table = refine_table(&table, &tol, ctx)?;
            (table, config.with("command", "zeros refine").with("in", input.display()))
        }
    };
    if let Some(check) = table.count_check() {
        log::info!("{} zeros, Riemann-von Mangoldt estimate {:.2}", check.found, check.expected);
    }
    if out.json {
        out.emit_json(&config, &ZeroTableView::new(&table))
    } else {
        out.emit(&table.to_text(ctx.target_tol_f64(), ctx.bits()))
    }
}

fn eval(args: &EvalArgs, ctx: &BigContext, config: RunConfig, out: &Output) -> Outcome {
    let s = parse_complex(&args.at, ctx).map_err(Failure::Input)?;
    let name = match args.function {
        FunctionArg::Zeta => "zeta",
        FunctionArg::Xi => "xi",
        FunctionArg::XiLogderiv => "xi-logderiv",
    };
    let value: BigComplex = match args.function {
        FunctionArg::Zeta => zeta(&s, ctx)?,
        FunctionArg::Xi => xi(&s, ctx)?,
        FunctionArg::XiLogderiv => {
            if s.im != ctx.zero() {
                return Err(Failure::Input("xi-logderiv is only available at real points".into()));
            }
            BigComplex::new(xi_log_derivative(&s.re, ctx)?, ctx.zero())
        }
    };
    let config = config.with("command", "eval").with("fn", name).with("at", &args.at);
    if out.json {
        let report = json!({
            "re": value.re.to_full_string(),
            "im": value.im.to_full_string(),
        });
        return out.emit_json(&config, &report);
    }
    let digits = reported_digits(ctx);
    let text = if value.im == ctx.zero() {
        plain(&value.re, digits)
    } else {
        let sign = if value.im.is_negative() { "-" } else { "+" };
        format!("{} {sign} {}i", plain(&value.re, digits), plain(&value.im.abs(), digits))
    };
    out.emit(&format!("{text}\n"))
}

/// Significant digits the target tolerance supports, plus a few.
fn reported_digits(ctx: &BigContext) -> usize {
    let tol_digits = (-ctx.target_tol_f64().log10()).ceil().max(1.0) as usize + 3;
    tol_digits.min(ctx.zero().to_prec(ctx.bits()).decimal_digits())
}

/// Positional notation for moderate exponents, scientific otherwise;
/// trailing zeros removed.
fn plain(x: &BigReal, digits: usize) -> String {
    let sci = x.to_sci_string(digits);
    let exp: i64 = sci.split_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-6..=20).contains(&exp) {
        trim(&x.to_fixed_string(digits))
    } else {
        let (m, e) = sci.split_once('e').unwrap_or((&sci, "0"));
        format!("{}e{e}", trim(m))
    }
}
