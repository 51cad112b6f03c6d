//! Acceptance criteria 1-9. Run with `cargo test -p genli-core --test acceptance`.
//! Prints one PASS/FAIL line per criterion and exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::Instant;

use genli_core::li::{cross_verify_with, li_genfunc_with, GenFuncOptions, ScanOutcome};
use genli_core::special::{xi, xi_unreflected, zeta};
use genli_core::{
    find_zeros_up_to, lambda1_identity, li_genfunc, li_zero_sums, positivity_scan, refine_table, BigComplex,
    BigContext, BigLiParams, BigReal, BigZeroTable, Real, TolerancePolicy,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::float::Constant;
use rug::Float;

const BITS: u32 = 256;
const TOL: f64 = 1e-30;
const ZERO_TOL: &str = "1e-40";
const CROSS_PARAMS: [(&str, &str); 5] = [("0", "0.5"), ("1", "0.5"), ("-1", "0.5"), ("-0.6", "0.3"), ("0.4", "0.7")];

type Outcome = Result<String, String>;

fn ctx() -> &'static BigContext {
    static CTX: OnceLock<BigContext> = OnceLock::new();
    CTX.get_or_init(|| BigContext::new(BITS, TOL).unwrap())
}

/// Zeros below 250, computed once.
fn zeros_250() -> &'static BigZeroTable {
    static TABLE: OnceLock<BigZeroTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let ctx = ctx();
        find_zeros_up_to(&ctx.int(250), &ctx.parse(ZERO_TOL).unwrap(), ctx).unwrap()
    })
}

fn hundred_zeros() -> BigZeroTable {
    zeros_250().first(100)
}

fn params(b: &str, sigma: &str) -> BigLiParams {
    BigLiParams::parse(b, sigma, ctx()).unwrap()
}

fn big(x: &Float) -> BigReal {
    BigReal::from_float(x.clone())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sci(x: &BigReal) -> String {
    x.to_sci_string(6)
}

/// `-ln 2` and `1 + gamma/2 - ln(4 pi)/2` straight from MPFR.
fn minus_ln2() -> BigReal {
    big(&-Float::with_val(BITS, Constant::Log2))
}

fn lambda1_closed_form() -> BigReal {
    let gamma = Float::with_val(BITS, Constant::Euler);
    let four_pi = Float::with_val(BITS, Constant::Pi) * 4u32;
    big(&(Float::with_val(BITS, 1) + gamma / 2u32 - four_pi.ln() / 2u32))
}

fn criterion_1() -> Outcome {
    let g = li_genfunc(&params("0", "0.5"), 1, ctx()).map_err(|e| e.to_string())?;
    let err = (g.constant_term.clone() - minus_ln2()).abs();
    ensure(err.to_f64() < 1e-30, || format!("|a0 + ln 2| = {}", sci(&err)))?;
    Ok(format!("a0 = {}, |a0 + ln 2| = {}", g.constant_term.to_sci_string(20), sci(&err)))
}

fn criterion_2() -> Outcome {
    let ctx = ctx();
    let p = params("0", "0.5");
    let exact = lambda1_closed_form();
    let g = li_genfunc(&p, 1, ctx).map_err(|e| e.to_string())?;
    let ident = lambda1_identity(&p, ctx).map_err(|e| e.to_string())?;
    let zs = li_zero_sums(&p, 1, &hundred_zeros(), ctx).map_err(|e| e.to_string())?;
    let d_gen = (g.values[0].value.clone() - &exact).abs();
    let d_id = (ident - &exact).abs();
    let d_zs = (zs[0].value.clone() - &exact).abs();
    let tail = zs[0].error_bound.clone();
    ensure(d_gen.to_f64() < 1e-25, || format!("generating function off by {}", sci(&d_gen)))?;
    ensure(d_id.to_f64() < 1e-25, || format!("identity off by {}", sci(&d_id)))?;
    ensure(d_zs <= tail.clone() * ctx.int(2), || format!("zero sum off by {} > 2 x tail {}", sci(&d_zs), sci(&tail)))?;
    Ok(format!(
        "lambda1 = {}; |genfunc - exact| = {}, |identity - exact| = {}, |zero sum - exact| = {} (tail {})",
        exact.to_sci_string(16),
        sci(&d_gen),
        sci(&d_id),
        sci(&d_zs),
        sci(&tail)
    ))
}

fn criterion_3() -> Outcome {
    let ctx = ctx();
    let start = Instant::now();
    let table = hundred_zeros();
    let policy = TolerancePolicy { floor: ctx.parse("1e-25").unwrap(), tail_factor: ctx.int(2) };
    let mut worst = 0.0f64;
    for (b, sigma) in CROSS_PARAMS {
        let report = cross_verify_with(&params(b, sigma), 10, &table, ctx, &policy, GenFuncOptions::default())
            .map_err(|e| e.to_string())?;
        for row in &report.rows {
            let (d, a) = (row.difference.as_ref().unwrap(), row.allowed.as_ref().unwrap());
            ensure(row.status == genli_core::CheckStatus::Pass, || {
                format!("(b, sigma) = ({b}, {sigma}), n = {}: difference {} allowed {}", row.n, sci(d), sci(a))
            })?;
            worst = worst.max(d.to_f64() / a.to_f64());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 300.0, || format!("took {secs:.1} s"))?;
    Ok(format!("50 checks pass, worst difference/allowed = {worst:.3}, {secs:.1} s"))
}

fn criterion_4() -> Outcome {
    let ctx = ctx();
    let table = hundred_zeros();
    for sigma in ["0.2", "0.5", "1.0"] {
        let p = params(&format!("-{sigma}"), sigma);
        let zs = li_zero_sums(&p, 50, &table, ctx).map_err(|e| e.to_string())?;
        ensure(zs.iter().all(|v| v.value == BigReal::from_f64_prec(0.0, BITS)), || {
            format!("sigma = {sigma}: non-zero zero sum")
        })?;
        let g = li_genfunc(&p, 50, ctx).map_err(|e| e.to_string())?;
        ensure(g.values.iter().all(|v| v.value.abs().to_f64() < 1e-30), || {
            format!("sigma = {sigma}: series value above 1e-30")
        })?;
    }
    Ok("sigma in {0.2, 0.5, 1.0}, n <= 50: zero sums exactly 0, series values < 1e-30".into())
}

fn criterion_5() -> Outcome {
    let p = params("-0.6", "0.3");
    let g = li_genfunc(&p, 30, ctx()).map_err(|e| e.to_string())?;
    let err = (g.constant_term.clone() - minus_ln2()).abs();
    ensure(err.to_f64() < 1e-30, || format!("|a0 + ln 2| = {}", sci(&err)))?;
    let min = g.values.iter().map(|v| v.value.clone()).fold(None, |m: Option<BigReal>, v| match m {
        Some(m) if m <= v => Some(m),
        _ => Some(v),
    });
    let min = min.unwrap();
    ensure(!min.is_negative(), || format!("negative coefficient {}", sci(&min)))?;
    Ok(format!("|a0 + ln 2| = {}, min lambda (n <= 30) = {}", sci(&err), sci(&min)))
}

fn criterion_6() -> Outcome {
    let ctx = ctx();
    let b_grid: Vec<BigReal> = ["-2", "-1", "-0.5", "0", "1", "2"].iter().map(|b| ctx.parse(b).unwrap()).collect();
    let sigma_grid = vec![ctx.parse("0.5").unwrap()];
    let report = positivity_scan(&b_grid, &sigma_grid, 50, ctx).map_err(|e| e.to_string())?;
    ensure(report.failed().count() == 0, || "a grid point failed to compute".into())?;
    let skipped: Vec<_> = report.skipped().collect();
    ensure(skipped.len() == 1 && skipped[0].b.to_f64() == -0.5, || "b = -1/2 not the only skipped point".into())?;
    let computed = report.points.iter().filter(|p| matches!(p.outcome, ScanOutcome::Computed { .. })).count();
    ensure(computed == 5, || format!("{computed} points computed"))?;
    let min = report.minimum.as_ref().ok_or("no minimum")?;
    ensure(!min.value.is_negative() && report.all_nonnegative(), || format!("minimum {}", sci(&min.value)))?;
    Ok(format!(
        "min lambda = {} at n = {}, b = {}; b = -0.5 skipped",
        sci(&min.value),
        min.n,
        min.b.to_sci_string(3)
    ))
}

fn criterion_7() -> Outcome {
    let ctx = ctx();
    let t30 = find_zeros_up_to(&ctx.int(30), &ctx.parse(ZERO_TOL).unwrap(), ctx).map_err(|e| e.to_string())?;
    ensure(t30.len() == 3, || format!("{} zeros below 30", t30.len()))?;
    let g1 = t30.zeros()[0].gamma.to_f64();
    ensure((g1 - 14.134725141734694).abs() < 1e-12, || format!("gamma1 = {g1}"))?;
    let full = zeros_250();
    let mut counts = Vec::new();
    for h in [50, 100, 250] {
        let check = full.below(&ctx.int(h)).count_check().copied().ok_or("missing count check")?;
        ensure(check.consistent, || format!("T = {h}: found {} expected {:.2}", check.found, check.expected))?;
        counts.push(format!("N({h}) = {}", check.found));
    }
    Ok(format!("3 zeros below 30, gamma1 = {g1:.15}, {}", counts.join(", ")))
}

fn criterion_8() -> Outcome {
    let ctx = ctx();
    let c = |re: f64| BigComplex::new(ctx.real(re), ctx.zero());
    let pi = big(&Float::with_val(BITS, Constant::Pi));
    let checks = [
        ("zeta(2)", zeta(&c(2.0), ctx), pi.clone() * &pi / ctx.int(6)),
        ("zeta(0)", zeta(&c(0.0), ctx), ctx.real(-0.5)),
        ("zeta(-1)", zeta(&c(-1.0), ctx), ctx.int(-1) / ctx.int(12)),
        ("xi(0)", xi(&c(0.0), ctx), ctx.real(0.5)),
        ("xi(1)", xi(&c(1.0), ctx), ctx.real(0.5)),
    ];
    let mut worst = 0.0f64;
    for (name, got, want) in checks {
        let got = got.map_err(|e| e.to_string())?;
        let err = (got.re - &want).abs().max_of(got.im.abs());
        ensure(err.to_f64() < 1e-30, || format!("{name}: error {}", sci(&err)))?;
        worst = worst.max(err.to_f64());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst_fe = 0.0f64;
    for _ in 0..50 {
        let (r, th): (f64, f64) = (20.0 * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU));
        let s = BigComplex::new(ctx.real(r * th.cos()), ctx.real(r * th.sin()));
        let one_minus = BigComplex::new(ctx.one(), ctx.zero()) - &s;
        let a = xi_unreflected(&s, ctx).map_err(|e| e.to_string())?;
        let b = xi_unreflected(&one_minus, ctx).map_err(|e| e.to_string())?;
        let d = genli_core::complex::abs(&(a - b)).to_f64();
        ensure(d < 1e-30, || format!("|xi(s) - xi(1 - s)| = {d:e} at s = {r:.3} e^({th:.3}i)"))?;
        worst_fe = worst_fe.max(d);
    }
    Ok(format!("fixed points within {worst:.1e}; functional equation within {worst_fe:.1e} on 50 points"))
}

fn criterion_9() -> Outcome {
    let lo = ctx();
    let hi = BigContext::new(320, TOL).map_err(|e| e.to_string())?;
    let table_lo = hundred_zeros();
    let table_hi = refine_table(&table_lo.to_prec(320), &hi.parse(ZERO_TOL).unwrap(), &hi).map_err(|e| e.to_string())?;
    let deep = GenFuncOptions { extra_order: 16, ..GenFuncOptions::default() };
    let mut worst = 0.0f64;
    for (b, sigma) in CROSS_PARAMS {
        let p_lo = params(b, sigma);
        let p_hi = BigLiParams::parse(b, sigma, &hi).unwrap();
        let g_lo = li_genfunc(&p_lo, 10, lo).map_err(|e| e.to_string())?;
        let g_hi = li_genfunc_with(&p_hi, 10, deep, &hi).map_err(|e| e.to_string())?;
        let z_lo = li_zero_sums(&p_lo, 10, &table_lo, lo).map_err(|e| e.to_string())?;
        let z_hi = li_zero_sums(&p_hi, 10, &table_hi, &hi).map_err(|e| e.to_string())?;
        let pairs = g_lo.values.iter().zip(&g_hi.values).chain(z_lo.iter().zip(&z_hi));
        for (a, b_) in pairs {
            let d = (a.value.clone() - &b_.value).abs();
            ensure(d.to_f64() < TOL, || format!("({b}, {sigma}) n = {} {}: change {}", a.n, a.route, sci(&d)))?;
            worst = worst.max(d.to_f64());
        }
        let d = (g_lo.constant_term.clone() - &g_hi.constant_term).abs();
        ensure(d.to_f64() < TOL, || format!("({b}, {sigma}) constant term change {}", sci(&d)))?;
    }
    Ok(format!("largest change at 320 bits / order N+16: {worst:.1e}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("classical constant term", criterion_1),
        ("lambda1 triple agreement", criterion_2),
        ("route agreement, five parameter pairs", criterion_3),
        ("degenerate b = -sigma", criterion_4),
        ("origin-centred case sigma = 0.3", criterion_5),
        ("positivity scan sigma = 1/2", criterion_6),
        ("zero subsystem", criterion_7),
        ("kernel fixed points", criterion_8),
        ("precision convergence", criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} [{secs:.1} s] {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL  {name} [{secs:.1} s] {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
