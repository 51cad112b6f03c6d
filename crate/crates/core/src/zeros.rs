//! Ordinates of the non-trivial zeros on the critical line.
//!
//! Tables are read and written as UTF-8 text with one decimal ordinate per
//! line in ascending order and `#` comment lines, the layout used by the
//! publicly distributed zero tables. Every zero is treated as simple
//! (multiplicity one), which holds throughout the range these tables cover.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::context::PrecisionContext;
use crate::error::{Error, Result};
use crate::report::real;
use crate::scalar::Real;
use crate::special::xi_on_critical_line;

/// Default ceiling for [`find_zeros_up_to`].
pub const DEFAULT_MAX_HEIGHT: f64 = 250.0;
/// Grid step of the sign-change scan; below the smallest gap between
/// consecutive zeros under height 250.
pub const SCAN_STEP: f64 = 0.05;
/// Half-width of the bracket [`refine_zero`] searches around its seed.
pub const BRACKET_HALF_WIDTH: f64 = 0.05;
/// Allowed deviation between the zero count and the Riemann-von Mangoldt estimate.
pub const COUNT_SLACK: f64 = 2.0;

const MAX_ITERATIONS: usize = 400;

/// One ordinate `gamma` of a zero `1/2 + i gamma`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct ZeroOrdinate<T> {
    /// 1-based rank within its table; 0 until placed in a table.
    pub index: usize,
    #[serde(serialize_with = "real")]
    pub gamma: T,
    /// Estimated absolute error of `gamma`.
    #[serde(serialize_with = "crate::report::short_real")]
    pub accuracy: T,
}

/// Completeness check against `N(T) ~ T/(2 pi) ln(T/(2 pi e)) + 7/8`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountCheck {
    pub height: f64,
    pub found: usize,
    pub expected: f64,
    pub consistent: bool,
}

impl CountCheck {
    pub fn new(height: f64, found: usize) -> Self {
        let expected = riemann_von_mangoldt(height);
        CountCheck {
            height,
            found,
            expected,
            consistent: (found as f64 - expected).abs() <= COUNT_SLACK,
        }
    }
}

/// Smooth approximation to the number of zeros with `0 < gamma <= height`.
pub fn riemann_von_mangoldt(height: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    if height <= 0.0 {
        return 0.0;
    }
    height / two_pi * (height / (two_pi * std::f64::consts::E)).ln() + 0.875
}

/// An ascending, gap-free list of zero ordinates.
#[derive(Debug, Clone)]
pub struct ZeroTable<T> {
    zeros: Vec<ZeroOrdinate<T>>,
    max_height: T,
    source: String,
    count_check: Option<CountCheck>,
}

impl<T: Real> ZeroTable<T> {
    /// Builds a table from ascending ordinates; indices are reassigned 1..n.
    pub fn new(zeros: Vec<ZeroOrdinate<T>>, max_height: T, source: impl Into<String>) -> Result<Self> {
        let mut zeros = zeros;
        for i in 0..zeros.len() {
            if !(zeros[i].gamma > T::zero()) {
                return Err(Error::NonPositiveOrdinate { line: i + 1 });
            }
            if i > 0 && !(zeros[i].gamma > zeros[i - 1].gamma) {
                return Err(Error::NonMonotone {
                    line: i + 1,
                    value: zeros[i].gamma.to_sci_string(16),
                    previous: zeros[i - 1].gamma.to_sci_string(16),
                });
            }
            zeros[i].index = i + 1;
        }
        Ok(ZeroTable { zeros, max_height, source: source.into(), count_check: None })
    }

    pub fn zeros(&self) -> &[ZeroOrdinate<T>] {
        &self.zeros
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// Height below which the table claims completeness.
    pub fn max_height(&self) -> &T {
        &self.max_height
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn count_check(&self) -> Option<&CountCheck> {
        self.count_check.as_ref()
    }

    /// The first `n` zeros; the height bound becomes the last kept ordinate.
    pub fn first(&self, n: usize) -> Self {
        let zeros: Vec<_> = self.zeros.iter().take(n).cloned().collect();
        let max_height = zeros.last().map(|z| z.gamma.clone()).unwrap_or_else(|| self.max_height.clone());
        ZeroTable { zeros, max_height, source: self.source.clone(), count_check: None }
    }

    /// Zeros with `gamma <= height`.
    pub fn below(&self, height: &T) -> Self {
        let zeros: Vec<_> = self.zeros.iter().filter(|z| z.gamma <= *height).cloned().collect();
        let count_check = Some(CountCheck::new(height.to_f64(), zeros.len()));
        ZeroTable { zeros, max_height: height.clone(), source: self.source.clone(), count_check }
    }

    /// The same table at another precision.
    pub fn to_prec(&self, bits: u32) -> Self {
        ZeroTable {
            zeros: self
                .zeros
                .iter()
                .map(|z| ZeroOrdinate { index: z.index, gamma: z.gamma.to_prec(bits), accuracy: z.accuracy.to_prec(bits) })
                .collect(),
            max_height: self.max_height.to_prec(bits),
            source: self.source.clone(),
            count_check: self.count_check,
        }
    }

    /// Text form with a `#` header recording tolerance and precision.
    pub fn to_text(&self, tol: f64, bits: u32) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# zeros of xi(1/2 + i t), ascending ordinates");
        let _ = writeln!(out, "# source: {}", self.source);
        let _ = writeln!(out, "# count: {}", self.zeros.len());
        let _ = writeln!(out, "# max_height: {}", self.max_height.to_fixed_string(17));
        let _ = writeln!(out, "# tol: {tol:e}");
        let _ = writeln!(out, "# bits: {bits}");
        for z in &self.zeros {
            let _ = writeln!(out, "{}", z.gamma.to_fixed_string(z.gamma.decimal_digits()));
        }
        out
    }

    pub fn write_file(&self, path: impl AsRef<Path>, tol: f64, bits: u32) -> Result<()> {
        std::fs::write(path, self.to_text(tol, bits))?;
        Ok(())
    }
}

/// Half a unit in the last decimal place of `token`.
fn half_ulp(token: &str) -> f64 {
    let (mantissa, exp) = match token.find(['e', 'E']) {
        Some(i) => (&token[..i], token[i + 1..].parse::<i32>().unwrap_or(0)),
        None => (token, 0),
    };
    let decimals = mantissa.split_once('.').map(|(_, f)| f.len() as i32).unwrap_or(0);
    0.5 * 10f64.powi(exp - decimals)
}

fn header_value<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let rest = line.trim_start_matches('#').trim();
    rest.strip_prefix(key)?.trim_start().strip_prefix(':').map(str::trim)
}

/// Parses a zero table. Header keys written by [`ZeroTable::to_text`]
/// (`max_height`, `tol`) are honoured when present.
pub fn parse_zero_table<T: Real>(text: &str, source: &str, ctx: &PrecisionContext<T>) -> Result<ZeroTable<T>> {
    let mut zeros: Vec<ZeroOrdinate<T>> = Vec::new();
    let mut declared_height: Option<T> = None;
    let mut declared_tol: Option<f64> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if let Some(v) = header_value(line, "max_height") {
                declared_height = ctx.parse(v).ok();
            } else if let Some(v) = header_value(line, "tol") {
                declared_tol = v.parse().ok();
            }
            continue;
        }
        let gamma = ctx
            .parse(line)
            .map_err(|_| Error::BadToken { line: line_no, token: line.to_string() })?;
        if !(gamma > T::zero()) {
            return Err(Error::NonPositiveOrdinate { line: line_no });
        }
        if let Some(prev) = zeros.last() {
            if !(gamma > prev.gamma) {
                return Err(Error::NonMonotone {
                    line: line_no,
                    value: line.to_string(),
                    previous: prev.gamma.to_sci_string(16),
                });
            }
        }
        let accuracy = half_ulp(line).max(declared_tol.unwrap_or(0.0));
        zeros.push(ZeroOrdinate { index: zeros.len() + 1, gamma, accuracy: ctx.real(accuracy) });
    }
    let last = zeros.last().ok_or(Error::EmptyTable)?.gamma.clone();
    let max_height = match declared_height {
        Some(h) if h >= last => h,
        _ => last,
    };
    ZeroTable::new(zeros, max_height, source)
}

pub fn parse_zero_file<T: Real>(path: impl AsRef<Path>, ctx: &PrecisionContext<T>) -> Result<ZeroTable<T>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_zero_table(&text, &path.display().to_string(), ctx)
}

fn sign_of<T: Real>(x: &T) -> i8 {
    if *x > T::zero() {
        1
    } else if *x < T::zero() {
        -1
    } else {
        0
    }
}

/// Refines the zero inside `[lo, hi]`, where `Xi` must change sign: a few
/// bisection steps, then Illinois-safeguarded secant steps until the
/// bracket is no wider than `2 tol`.
pub fn refine_in_bracket<T: Real>(lo: T, hi: T, tol: &T, ctx: &PrecisionContext<T>) -> Result<ZeroOrdinate<T>> {
    let (mut a, mut b) = (lo, hi);
    let mut fa = xi_on_critical_line(&a, ctx)?;
    let mut fb = xi_on_critical_line(&b, ctx)?;
    let no_change = || Error::NoSignChange { lo: a.to_f64(), hi: b.to_f64() };
    if sign_of(&fa) == 0 {
        return Ok(ZeroOrdinate { index: 0, gamma: a, accuracy: ctx.zero() });
    }
    if sign_of(&fb) == 0 {
        return Ok(ZeroOrdinate { index: 0, gamma: b, accuracy: ctx.zero() });
    }
    if sign_of(&fa) == sign_of(&fb) {
        return Err(no_change());
    }

    let half = ctx.real(0.5);
    let two_tol = tol.clone() * ctx.int(2);
    let coarse = ctx.real(1e-3);
    let mut iterations = 0;

    while (b.clone() - &a).abs() > coarse && iterations < MAX_ITERATIONS {
        let m = (a.clone() + &b) * &half;
        let fm = xi_on_critical_line(&m, ctx)?;
        match sign_of(&fm) {
            0 => return Ok(ZeroOrdinate { index: 0, gamma: m, accuracy: ctx.zero() }),
            s if s == sign_of(&fa) => (a, fa) = (m, fm),
            _ => (b, fb) = (m, fm),
        }
        iterations += 1;
    }

    // Illinois regula falsi: the new point replaces the end with the same
    // sign; when one end survives twice in a row its value is halved.
    let mut side = 0i8;
    while (b.clone() - &a).abs() > two_tol && iterations < MAX_ITERATIONS {
        iterations += 1;
        let mut c = b.clone() - fb.clone() * (b.clone() - &a) / (fb.clone() - &fa);
        if !(c > a && c < b) {
            c = (a.clone() + &b) * &half;
        }
        let fc = xi_on_critical_line(&c, ctx)?;
        match sign_of(&fc) {
            0 => return Ok(ZeroOrdinate { index: 0, gamma: c, accuracy: ctx.zero() }),
            s if s == sign_of(&fb) => {
                (b, fb) = (c, fc);
                if side == -1 {
                    fa = fa * &half;
                }
                side = -1;
            }
            _ => {
                (a, fa) = (c, fc);
                if side == 1 {
                    fb = fb * &half;
                }
                side = 1;
            }
        }
    }

    let width = (b.clone() - &a).abs();
    if width > two_tol {
        return Err(Error::NotConverged { delta: width.to_f64(), tol: tol.to_f64(), samples: iterations });
    }
    Ok(ZeroOrdinate { index: 0, gamma: (a + b) * &half, accuracy: width * half })
}

/// Refines the zero near `gamma_approx`, searching `gamma_approx ± 0.05`.
pub fn refine_zero<T: Real>(gamma_approx: &T, tol: &T, ctx: &PrecisionContext<T>) -> Result<ZeroOrdinate<T>> {
    let w = ctx.real(BRACKET_HALF_WIDTH);
    refine_in_bracket(gamma_approx.clone() - &w, gamma_approx.clone() + &w, tol, ctx)
}

/// Refines every entry of a table in place of its stored values.
pub fn refine_table<T: Real>(table: &ZeroTable<T>, tol: &T, ctx: &PrecisionContext<T>) -> Result<ZeroTable<T>> {
    let refined: Vec<ZeroOrdinate<T>> = table
        .zeros()
        .par_iter()
        .map(|z| refine_zero(&z.gamma, tol, ctx))
        .collect::<Result<_>>()?;
    ZeroTable::new(refined, table.max_height().clone(), table.source())
}

/// Options of the sign-change scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub step: f64,
    pub max_height: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { step: SCAN_STEP, max_height: DEFAULT_MAX_HEIGHT }
    }
}

/// All zeros with `0 < gamma <= height`, with the default scan options.
pub fn find_zeros_up_to<T: Real>(height: &T, tol: &T, ctx: &PrecisionContext<T>) -> Result<ZeroTable<T>> {
    find_zeros_with(height, tol, ScanOptions::default(), ctx)
}

/// Scans `Xi` in double precision on a grid over `(0, height]`, then refines
/// every sign change at the context precision. The result carries a
/// [`CountCheck`]; an inconsistent count is logged, not hidden.
pub fn find_zeros_with<T: Real>(
    height: &T,
    tol: &T,
    options: ScanOptions,
    ctx: &PrecisionContext<T>,
) -> Result<ZeroTable<T>> {
    let h = height.to_f64();
    if h > options.max_height {
        return Err(Error::HeightTooLarge { height: h, max: options.max_height });
    }
    let scan_ctx = PrecisionContext::<f64>::hardware(1e-8)?;
    let steps = (h / options.step).floor() as usize;
    let mut grid: Vec<f64> = (0..=steps).map(|k| k as f64 * options.step).collect();
    if grid.last().map_or(true, |&t| t < h) {
        grid.push(h);
    }
    let values: Vec<f64> = grid
        .par_iter()
        .map(|t| xi_on_critical_line(t, &scan_ctx))
        .collect::<Result<_>>()?;

    let mut seeds = Vec::new();
    for k in 1..grid.len() {
        let (fa, fb) = (values[k - 1], values[k]);
        if fa == 0.0 {
            continue;
        }
        if fb == 0.0 || fa.signum() != fb.signum() {
            seeds.push((grid[k - 1], grid[k]));
        }
    }

    let refined: Vec<ZeroOrdinate<T>> = seeds
        .par_iter()
        .map(|&(a, b)| {
            let cell = refine_in_bracket(ctx.real(a), ctx.real(b), tol, ctx);
            match cell {
                Err(Error::NoSignChange { .. }) => refine_zero(&ctx.real(0.5 * (a + b)), tol, ctx),
                other => other,
            }
        })
        .collect::<Result<_>>()?;
    let mut refined: Vec<_> = refined.into_iter().filter(|z| z.gamma <= *height).collect();
    refined.dedup_by(|x, y| (x.gamma.clone() - &y.gamma).abs() <= tol.clone() * ctx.int(4));

    let mut table = ZeroTable::new(refined, height.clone(), "computed")?;
    let check = CountCheck::new(h, table.len());
    if !check.consistent {
        log::warn!(
            "zero count {} below height {} deviates from the estimate {:.2}",
            check.found,
            h,
            check.expected
        );
    }
    table.count_check = Some(check);
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::BigReal;

    fn ctx() -> PrecisionContext<BigReal> {
        PrecisionContext::new(128, 1e-25).unwrap()
    }

    #[test]
    fn parses_three_zeros() {
        let ctx = ctx();
        let t = parse_zero_table("14.134725142\n21.022039639\n25.010857580\n", "inline", &ctx).unwrap();
        assert_eq!(t.len(), 3);
        assert!((t.zeros()[0].gamma.to_f64() - 14.134725142).abs() < 1e-12);
        assert!((t.zeros()[0].accuracy.to_f64() - 5e-10).abs() < 1e-20);
        assert_eq!(t.zeros()[2].index, 3);
        assert!((t.max_height().to_f64() - 25.01085758).abs() < 1e-9);
    }

    #[test]
    fn comments_only_is_empty() {
        let err = parse_zero_table::<BigReal>("# nothing\n# here\n\n", "x", &ctx()).unwrap_err();
        assert_eq!(err.to_string(), "empty table");
    }

    #[test]
    fn rejects_non_monotone_and_garbage() {
        let err = parse_zero_table::<BigReal>("21.0\n14.1\n", "x", &ctx()).unwrap_err();
        assert!(err.to_string().contains("non-monotone"));
        let err = parse_zero_table::<BigReal>("14.1\nfourteen\n", "x", &ctx()).unwrap_err();
        assert!(matches!(err, Error::BadToken { line: 2, .. }));
        let err = parse_zero_table::<BigReal>("-3\n", "x", &ctx()).unwrap_err();
        assert!(matches!(err, Error::NonPositiveOrdinate { line: 1 }));
    }

    #[test]
    fn half_ulp_of_tokens() {
        assert!((half_ulp("14.1") - 0.05).abs() < 1e-17);
        assert!((half_ulp("1.41e1") - 0.05).abs() < 1e-15);
        assert_eq!(half_ulp("14"), 0.5);
    }

    #[test]
    fn text_roundtrip_keeps_header() {
        let ctx = ctx();
        let t = parse_zero_table("14.134725142\n21.022039639\n", "inline", &ctx).unwrap();
        let t = t.below(&ctx.real(22.5));
        let text = t.to_text(1e-20, 128);
        let back = parse_zero_table(&text, "again", &ctx).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back.max_height().to_f64(), 22.5);
        assert!(back.zeros()[1].accuracy.to_f64() >= 1e-20);
        assert_eq!(back.zeros()[1].gamma, t.zeros()[1].gamma);
    }

    #[test]
    fn refine_without_sign_change_fails() {
        let ctx = ctx();
        let err = refine_zero(&ctx.real(15.0), &ctx.real(1e-20), &ctx).unwrap_err();
        assert!(err.to_string().contains("no sign change"));
    }

    #[test]
    fn refine_first_zero() {
        let ctx = ctx();
        let tol = ctx.real(1e-20);
        let z = refine_zero(&ctx.real(14.13), &tol, &ctx).unwrap();
        assert!((z.gamma.to_f64() - 14.134725141734694).abs() < 1e-13);
        assert!(z.accuracy <= tol);
        // Refining a refined value moves it by less than tol.
        let again = refine_zero(&z.gamma, &tol, &ctx).unwrap();
        assert!((again.gamma - &z.gamma).abs() <= tol);
    }

    #[test]
    fn count_estimate() {
        assert!(riemann_von_mangoldt(10.0).abs() < 0.1);
        assert!((riemann_von_mangoldt(100.0) - 29.0).abs() < 1.0);
        assert!(CountCheck::new(100.0, 29).consistent);
        assert!(!CountCheck::new(100.0, 25).consistent);
    }

    #[test]
    fn height_limit() {
        let ctx = ctx();
        let err = find_zeros_up_to(&ctx.real(400.0), &ctx.real(1e-20), &ctx).unwrap_err();
        assert!(matches!(err, Error::HeightTooLarge { .. }));
    }
}
