//! Generalized Li coefficients
//! `lambda(n, b, sigma) = sum_rho 1 - ((rho + b) / (rho - b - 2 sigma))^n`.
//!
//! Two independent routes are provided:
//!
//! * the zero sum, pairing every tabulated `rho = 1/2 + i gamma` with its
//!   conjugate, plus an asymptotic estimate of the omitted zeros;
//! * the generating function: the Taylor coefficients of
//!   `ln xi(s0 + c z / (1 - z))` with `s0 = b + 2 sigma`, `c = 2b + 2 sigma`
//!   are `lambda(n, b, sigma) / n`, and the constant term is `ln xi(s0)`.
//!
//! For `n = 1` a third value follows from `lambda(1) = c * (xi'/xi)(s0)`.

use std::fmt;

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex as cx;
use crate::context::PrecisionContext;
use crate::error::{Error, Result};
use crate::report::{opt_real, real};
use crate::scalar::Real;
use crate::series::{cauchy_expansion, series_log, CauchyOptions, DEFAULT_RADIUS};
use crate::special::{xi, xi_log_derivative, xi_real};
use crate::zeros::ZeroTable;

/// Expansion points the default circle radius supports.
pub const S0_RANGE: (f64, f64) = (-10.0, 11.0);
/// Extra series order computed beyond the requested `n_max`.
pub const EXTRA_ORDER: usize = 8;
/// Smallest table height for which the tail estimate is defined.
pub const TAIL_MIN_HEIGHT: f64 = 50.0;
/// `|n c| / gamma_max` beyond which the tail estimate is flagged unreliable.
pub const TAIL_VALIDITY: f64 = 0.1;

/// The pair `(b, sigma)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiParams<T> {
    b: T,
    sigma: T,
}

impl<T: Real> LiParams<T> {
    pub fn new(b: T, sigma: T) -> Self {
        LiParams { b, sigma }
    }

    /// Parses both values as decimals at the context precision.
    pub fn parse(b: &str, sigma: &str, ctx: &PrecisionContext<T>) -> Result<Self> {
        Ok(LiParams { b: ctx.parse(b)?, sigma: ctx.parse(sigma)? })
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn sigma(&self) -> &T {
        &self.sigma
    }

    /// Expansion point `b + 2 sigma`.
    pub fn s0(&self) -> T {
        self.b.clone() + self.sigma.clone() + &self.sigma
    }

    /// Substitution scale `2b + 2 sigma`.
    pub fn c(&self) -> T {
        let t = self.b.clone() + &self.sigma;
        t.clone() + t
    }

    /// `b = -sigma`: every term of the sum is zero.
    pub fn is_degenerate(&self) -> bool {
        self.c().is_zero()
    }

    /// `b = -2 sigma`: the expansion is centred at `s = 0`, constant term `-ln 2`.
    pub fn is_origin_centred(&self) -> bool {
        self.s0().is_zero()
    }
}

/// Which computation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    ZeroSum,
    #[serde(rename = "genfunc")]
    GeneratingFunction,
    Identity,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::ZeroSum => "zero-sum",
            Route::GeneratingFunction => "genfunc",
            Route::Identity => "identity",
        })
    }
}

/// One coefficient `lambda(n, b, sigma)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct LiValue<T> {
    pub n: usize,
    #[serde(serialize_with = "real")]
    pub value: T,
    pub route: Route,
    /// Tail estimate (zero sum) or sample-doubling change (generating function).
    #[serde(serialize_with = "real")]
    pub error_bound: T,
    /// False when the tail expansion is outside its validity regime.
    pub reliable: bool,
}

/// Estimated pair sum over the zeros above the table.
#[derive(Debug, Clone, PartialEq)]
pub struct TailEstimate<T> {
    pub value: T,
    pub reliable: bool,
}

/// Omitted pair sum above `gamma_max`, assuming critical-line zeros with
/// density `ln(gamma / 2 pi) / (2 pi)`. Each pair contributes about
/// `K / gamma^2` with `K = 2 n c (s0 - 1/2) + n (n - 1) c^2`, which
/// integrates to `K (ln(gamma_max / 2 pi) + 1) / (2 pi gamma_max)`.
pub fn tail_estimate<T: Real>(
    params: &LiParams<T>,
    n: usize,
    gamma_max: &T,
    ctx: &PrecisionContext<T>,
) -> Result<TailEstimate<T>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if gamma_max.to_f64() < TAIL_MIN_HEIGHT {
        return Err(Error::TableTooShort { gamma_max: gamma_max.to_f64() });
    }
    let c = params.c();
    let nn = ctx.int(n as i64);
    let k = nn.clone() * ctx.int(2) * &c * (params.s0() - ctx.real(0.5))
        + nn.clone() * ctx.int(n as i64 - 1) * &c * &c;
    let two_pi = ctx.pi().clone() * ctx.int(2);
    let log_term = (gamma_max.clone() / &two_pi).ln() + ctx.one();
    let value = k * log_term / (two_pi * gamma_max);
    let reliable = (nn * &c).abs().to_f64() / gamma_max.to_f64() <= TAIL_VALIDITY;
    if !reliable {
        log::warn!("tail estimate for n = {n} outside its validity regime (|n c| / gamma_max > {TAIL_VALIDITY})");
    }
    Ok(TailEstimate { value, reliable })
}

/// `lambda(n, b, sigma)` for `n = 1..=n_max` by summing conjugate pairs
/// over the table in increasing height and adding the tail estimate.
pub fn li_zero_sums<T: Real>(
    params: &LiParams<T>,
    n_max: usize,
    table: &ZeroTable<T>,
    ctx: &PrecisionContext<T>,
) -> Result<Vec<LiValue<T>>> {
    if n_max == 0 {
        return Err(Error::ZeroOrder);
    }
    if params.is_degenerate() {
        return Ok((1..=n_max)
            .map(|n| LiValue { n, value: ctx.zero(), route: Route::ZeroSum, error_bound: ctx.zero(), reliable: true })
            .collect());
    }
    if table.is_empty() {
        return Err(Error::EmptyTable);
    }
    let tails = (1..=n_max)
        .map(|n| tail_estimate(params, n, table.max_height(), ctx))
        .collect::<Result<Vec<_>>>()?;

    let half = ctx.real(0.5);
    let b = params.b().clone();
    let s0 = params.s0();
    // Per-zero contributions 2 - r^n - conj(r)^n, summed afterwards in table order.
    let per_zero: Vec<Vec<Complex<T>>> = table
        .zeros()
        .par_iter()
        .map(|z| {
            let rho = Complex::new(half.clone(), z.gamma.clone());
            let rho_bar = rho.conj();
            let r = (rho.clone() + Complex::new(b.clone(), ctx.zero())) / (rho - Complex::new(s0.clone(), ctx.zero()));
            let r_bar = (rho_bar.clone() + Complex::new(b.clone(), ctx.zero()))
                / (rho_bar - Complex::new(s0.clone(), ctx.zero()));
            let two = Complex::new(ctx.int(2), ctx.zero());
            let mut p = r.clone();
            let mut q = r_bar.clone();
            let mut terms = Vec::with_capacity(n_max);
            for _ in 0..n_max {
                terms.push(two.clone() - &p - &q);
                p = p * &r;
                q = q * &r_bar;
            }
            terms
        })
        .collect();

    let limit = ctx.residue_limit();
    let mut values = Vec::with_capacity(n_max);
    for (i, tail) in tails.into_iter().enumerate() {
        let mut acc = Complex::new(ctx.zero(), ctx.zero());
        for terms in &per_zero {
            acc = acc + &terms[i];
        }
        if acc.im.abs() > limit {
            return Err(Error::ImaginaryResidue {
                context: "paired zero sum",
                residue: acc.im.abs().to_f64(),
                limit: limit.to_f64(),
            });
        }
        values.push(LiValue {
            n: i + 1,
            value: acc.re + &tail.value,
            route: Route::ZeroSum,
            error_bound: tail.value.abs(),
            reliable: tail.reliable,
        });
    }
    Ok(values)
}

/// A single zero-sum coefficient; see [`li_zero_sums`].
pub fn li_zero_sum<T: Real>(
    params: &LiParams<T>,
    n: usize,
    table: &ZeroTable<T>,
    ctx: &PrecisionContext<T>,
) -> Result<LiValue<T>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut all = li_zero_sums(params, n, table, ctx)?;
    Ok(all.pop().expect("n >= 1 values"))
}

/// Knobs of the generating-function route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenFuncOptions {
    /// Series order computed beyond `n_max` and discarded.
    pub extra_order: usize,
    pub radius: f64,
    pub cauchy: CauchyOptions,
}

impl Default for GenFuncOptions {
    fn default() -> Self {
        GenFuncOptions { extra_order: EXTRA_ORDER, radius: DEFAULT_RADIUS, cauchy: CauchyOptions::default() }
    }
}

/// Output of the generating-function route.
#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct GenFunc<T> {
    /// Constant term `ln xi(s0)`.
    #[serde(serialize_with = "real")]
    pub constant_term: T,
    pub values: Vec<LiValue<T>>,
    /// Circle samples used for the final coefficients (0 when degenerate).
    pub samples: usize,
}

fn check_center<T: Real>(s0: &T) -> Result<()> {
    let x = s0.to_f64();
    if x < S0_RANGE.0 || x > S0_RANGE.1 {
        return Err(Error::CenterOutOfRange { s0: s0.to_sci_string(12), lo: S0_RANGE.0, hi: S0_RANGE.1 });
    }
    Ok(())
}

/// Generating-function route with default options.
pub fn li_genfunc<T: Real>(params: &LiParams<T>, n_max: usize, ctx: &PrecisionContext<T>) -> Result<GenFunc<T>> {
    li_genfunc_with(params, n_max, GenFuncOptions::default(), ctx)
}

/// `lambda(n) = n [z^n] ln xi(s0 + c z / (1 - z))`: Taylor coefficients of
/// `xi` about `s0` from the circle, their series logarithm, then the
/// Moebius composition.
pub fn li_genfunc_with<T: Real>(
    params: &LiParams<T>,
    n_max: usize,
    options: GenFuncOptions,
    ctx: &PrecisionContext<T>,
) -> Result<GenFunc<T>> {
    if n_max == 0 {
        return Err(Error::ZeroOrder);
    }
    let s0 = params.s0();
    check_center(&s0)?;
    if params.is_degenerate() {
        let constant_term = xi_real(&s0, ctx)?.ln();
        let values = (1..=n_max)
            .map(|n| LiValue {
                n,
                value: ctx.zero(),
                route: Route::GeneratingFunction,
                error_bound: ctx.zero(),
                reliable: true,
            })
            .collect();
        return Ok(GenFunc { constant_term, values, samples: 0 });
    }

    let order = n_max + options.extra_order;
    let center = Complex::new(s0, ctx.zero());
    let radius = ctx.real(options.radius);
    let expansion = cauchy_expansion(|s| xi(s, ctx), &center, &radius, order, options.cauchy, ctx)?;
    let c = Complex::new(params.c(), ctx.zero());
    let z_series = series_log(&expansion.series, ctx)?.compose_mobius(&c, order)?;
    let z_previous = series_log(&expansion.previous, ctx)?.compose_mobius(&c, order)?;

    let limit = ctx.residue_limit();
    let check_real = |v: &Complex<T>| -> Result<()> {
        if v.im.abs() > limit.clone() * v.re.abs().max_of(ctx.one()) {
            return Err(Error::ImaginaryResidue {
                context: "generating-function coefficient",
                residue: v.im.abs().to_f64(),
                limit: limit.to_f64(),
            });
        }
        Ok(())
    };

    let coeffs = z_series.coeffs();
    check_real(&coeffs[0])?;
    let mut values = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        check_real(&coeffs[n])?;
        let nn = ctx.int(n as i64);
        let value = coeffs[n].re.clone() * &nn;
        let previous = z_previous.coeffs()[n].re.clone() * &nn;
        values.push(LiValue {
            n,
            error_bound: (value.clone() - previous).abs(),
            value,
            route: Route::GeneratingFunction,
            reliable: true,
        });
    }
    Ok(GenFunc { constant_term: coeffs[0].re.clone(), values, samples: expansion.samples })
}

/// `lambda(1) = c * (xi'/xi)(s0)`.
pub fn lambda1_identity<T: Real>(params: &LiParams<T>, ctx: &PrecisionContext<T>) -> Result<T> {
    if params.is_degenerate() {
        return Ok(ctx.zero());
    }
    check_center(&params.s0())?;
    Ok(params.c() * xi_log_derivative(&params.s0(), ctx)?)
}

/// Acceptance rule for the zero-sum route: `|zero sum - genfunc| <= max(floor, factor * tail)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TolerancePolicy<T> {
    pub floor: T,
    pub tail_factor: T,
}

impl<T: Real> TolerancePolicy<T> {
    /// `floor = target_tol`, `factor = 2`.
    pub fn standard(ctx: &PrecisionContext<T>) -> Self {
        TolerancePolicy { floor: ctx.target_tol().clone(), tail_factor: ctx.int(2) }
    }

    pub fn allowed(&self, tail: &T) -> T {
        self.floor.clone().max_of(self.tail_factor.clone() * tail.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Unavailable,
}

/// One `n` of a cross-verification.
#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct VerificationRow<T> {
    pub n: usize,
    #[serde(serialize_with = "real")]
    pub genfunc: T,
    #[serde(serialize_with = "real")]
    pub genfunc_delta: T,
    /// Zero sum including the tail estimate.
    #[serde(serialize_with = "opt_real")]
    pub zero_sum: Option<T>,
    #[serde(serialize_with = "opt_real")]
    pub tail: Option<T>,
    pub tail_reliable: bool,
    /// `|zero_sum - genfunc|`.
    #[serde(serialize_with = "opt_real")]
    pub difference: Option<T>,
    #[serde(serialize_with = "opt_real")]
    pub allowed: Option<T>,
    /// `c (xi'/xi)(s0)`, only for `n = 1`.
    #[serde(serialize_with = "opt_real")]
    pub identity: Option<T>,
    /// `|identity - genfunc|`, held to the policy floor.
    #[serde(serialize_with = "opt_real")]
    pub identity_difference: Option<T>,
    pub status: CheckStatus,
}

/// Agreement of the routes for one parameter pair.
#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct VerificationReport<T> {
    #[serde(serialize_with = "real")]
    pub b: T,
    #[serde(serialize_with = "real")]
    pub sigma: T,
    pub n_max: usize,
    pub degenerate: bool,
    #[serde(serialize_with = "real")]
    pub constant_term: T,
    pub zero_count: usize,
    #[serde(serialize_with = "opt_real")]
    pub gamma_max: Option<T>,
    pub zero_sum_available: bool,
    #[serde(serialize_with = "real")]
    pub tolerance_floor: T,
    #[serde(serialize_with = "real")]
    pub tail_factor: T,
    pub rows: Vec<VerificationRow<T>>,
    pub notes: Vec<String>,
}

impl<T: Real> VerificationReport<T> {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status == CheckStatus::Pass)
    }
}

/// Computes both routes for `n = 1..=n_max` and checks them against `policy`.
/// Failures are recorded in the report; only numerical breakdowns of the
/// generating-function route are returned as errors.
pub fn cross_verify<T: Real>(
    params: &LiParams<T>,
    n_max: usize,
    table: &ZeroTable<T>,
    ctx: &PrecisionContext<T>,
    policy: &TolerancePolicy<T>,
) -> Result<VerificationReport<T>> {
    cross_verify_with(params, n_max, table, ctx, policy, GenFuncOptions::default())
}

pub fn cross_verify_with<T: Real>(
    params: &LiParams<T>,
    n_max: usize,
    table: &ZeroTable<T>,
    ctx: &PrecisionContext<T>,
    policy: &TolerancePolicy<T>,
    options: GenFuncOptions,
) -> Result<VerificationReport<T>> {
    let genfunc = li_genfunc_with(params, n_max, options, ctx)?;
    let mut notes = Vec::new();
    if params.is_degenerate() {
        notes.push("degenerate b = -sigma; all lambda = 0".to_string());
    }
    let zero_sums = match li_zero_sums(params, n_max, table, ctx) {
        Ok(v) => Some(v),
        Err(e @ (Error::EmptyTable | Error::TableTooShort { .. })) => {
            notes.push(format!("zero-sum route unavailable: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    let identity = lambda1_identity(params, ctx)?;

    let rows = genfunc
        .values
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let zs = zero_sums.as_ref().map(|v| &v[i]);
            let difference = zs.map(|z| (z.value.clone() - &g.value).abs());
            let allowed = zs.map(|z| policy.allowed(&z.error_bound));
            let (identity, identity_difference) = if g.n == 1 {
                let d = (identity.clone() - &g.value).abs();
                (Some(identity.clone()), Some(d))
            } else {
                (None, None)
            };
            let status = match (&difference, &allowed) {
                (Some(d), Some(a)) => {
                    let routes_ok = d <= a;
                    let identity_ok = identity_difference.as_ref().map_or(true, |d| *d <= policy.floor);
                    if routes_ok && identity_ok {
                        CheckStatus::Pass
                    } else {
                        CheckStatus::Fail
                    }
                }
                _ => CheckStatus::Unavailable,
            };
            VerificationRow {
                n: g.n,
                genfunc: g.value.clone(),
                genfunc_delta: g.error_bound.clone(),
                zero_sum: zs.map(|z| z.value.clone()),
                tail: zs.map(|z| z.error_bound.clone()),
                tail_reliable: zs.map_or(true, |z| z.reliable),
                difference,
                allowed,
                identity,
                identity_difference,
                status,
            }
        })
        .collect();

    Ok(VerificationReport {
        b: params.b().clone(),
        sigma: params.sigma().clone(),
        n_max,
        degenerate: params.is_degenerate(),
        constant_term: genfunc.constant_term,
        zero_count: table.len(),
        gamma_max: (!table.is_empty()).then(|| table.max_height().clone()),
        zero_sum_available: zero_sums.is_some(),
        tolerance_floor: policy.floor.clone(),
        tail_factor: policy.tail_factor.clone(),
        rows,
        notes,
    })
}

/// Outcome for one grid point of a positivity scan.
#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "T: Real"), tag = "status", rename_all = "lowercase")]
pub enum ScanOutcome<T> {
    Computed {
        #[serde(serialize_with = "real")]
        min_value: T,
        min_n: usize,
        #[serde(serialize_with = "real")]
        constant_term: T,
        values: Vec<LiValue<T>>,
    },
    Skipped {
        reason: String,
    },
    Failed {
        error: String,
    },
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct ScanPoint<T> {
    #[serde(serialize_with = "real")]
    pub b: T,
    #[serde(serialize_with = "real")]
    pub sigma: T,
    pub notes: Vec<String>,
    pub outcome: ScanOutcome<T>,
}

/// A negative coefficient found by the scan.
#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct Violation<T> {
    pub n: usize,
    #[serde(serialize_with = "real")]
    pub b: T,
    #[serde(serialize_with = "real")]
    pub sigma: T,
    #[serde(serialize_with = "real")]
    pub value: T,
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct PositivityReport<T> {
    pub n_max: usize,
    pub points: Vec<ScanPoint<T>>,
    /// Smallest coefficient over all computed points.
    pub minimum: Option<Violation<T>>,
    pub negatives: Vec<Violation<T>>,
}

impl<T: Real> PositivityReport<T> {
    pub fn all_nonnegative(&self) -> bool {
        self.negatives.is_empty()
    }

    pub fn skipped(&self) -> impl Iterator<Item = &ScanPoint<T>> {
        self.points.iter().filter(|p| matches!(p.outcome, ScanOutcome::Skipped { .. }))
    }

    pub fn failed(&self) -> impl Iterator<Item = &ScanPoint<T>> {
        self.points.iter().filter(|p| matches!(p.outcome, ScanOutcome::Failed { .. }))
    }
}

/// Generating-function coefficients for every `(b, sigma)` of the grid and
/// `n <= n_max`. Points with `b = -sigma` are skipped.
pub fn positivity_scan<T: Real>(
    b_grid: &[T],
    sigma_grid: &[T],
    n_max: usize,
    ctx: &PrecisionContext<T>,
) -> Result<PositivityReport<T>> {
    if n_max == 0 {
        return Err(Error::ZeroOrder);
    }
    let grid: Vec<LiParams<T>> = sigma_grid
        .iter()
        .flat_map(|sigma| b_grid.iter().map(move |b| LiParams::new(b.clone(), sigma.clone())))
        .collect();

    let points: Vec<ScanPoint<T>> = grid
        .par_iter()
        .map(|params| {
            let mut notes = Vec::new();
            if params.is_origin_centred() {
                notes.push("b = -2 sigma: expansion about s = 0, constant term -ln 2".to_string());
            }
            let outcome = if params.is_degenerate() {
                ScanOutcome::Skipped { reason: "b = -sigma is excluded (all terms vanish)".into() }
            } else if let Err(e) = check_center(&params.s0()) {
                ScanOutcome::Skipped { reason: e.to_string() }
            } else {
                match li_genfunc(params, n_max, ctx) {
                    Ok(g) => {
                        let (min_n, min_value) = g
                            .values
                            .iter()
                            .map(|v| (v.n, v.value.clone()))
                            .fold(None, |best: Option<(usize, T)>, (n, v)| match best {
                                Some((_, ref bv)) if *bv <= v => best,
                                _ => Some((n, v)),
                            })
                            .expect("n_max >= 1");
                        ScanOutcome::Computed { min_value, min_n, constant_term: g.constant_term, values: g.values }
                    }
                    Err(e) => ScanOutcome::Failed { error: e.to_string() },
                }
            };
            ScanPoint { b: params.b().clone(), sigma: params.sigma().clone(), notes, outcome }
        })
        .collect();

    let mut minimum: Option<Violation<T>> = None;
    let mut negatives = Vec::new();
    for p in &points {
        if let ScanOutcome::Computed { values, min_value, min_n, .. } = &p.outcome {
            if minimum.as_ref().map_or(true, |m| *min_value < m.value) {
                minimum = Some(Violation { n: *min_n, b: p.b.clone(), sigma: p.sigma.clone(), value: min_value.clone() });
            }
            for v in values {
                // Values inside the numerical noise of the route are not findings.
                let margin = v.error_bound.clone() + ctx.target_tol();
                if v.value < -margin {
                    negatives.push(Violation { n: v.n, b: p.b.clone(), sigma: p.sigma.clone(), value: v.value.clone() });
                }
            }
        }
    }
    Ok(PositivityReport { n_max, points, minimum, negatives })
}

/// `|(rho + b) / (rho - s0)|` for the zero `rho = 1/2 + i gamma`.
pub fn pair_ratio<T: Real>(params: &LiParams<T>, gamma: &T, ctx: &PrecisionContext<T>) -> T {
    let rho = Complex::new(ctx.real(0.5), gamma.clone());
    let r = (rho.clone() + Complex::new(params.b().clone(), ctx.zero())) / (rho - Complex::new(params.s0(), ctx.zero()));
    cx::abs(&r)
}
