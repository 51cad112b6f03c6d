//! Truncated Taylor series.
//!
//! The arithmetic (`mul`, the logarithm/exponential recurrences and the
//! Moebius composition) is generic over any coefficient ring with small
//! integer constants, so it runs on `Complex<T>` as well as on exact
//! rationals. Coefficient extraction on a circle is specific to
//! `Complex<T>` with `T: Real`.

use std::fmt;

use num_complex::Complex;
use num_traits::{FromPrimitive, Num, Zero};
use rayon::prelude::*;

use crate::complex as cx;
use crate::context::PrecisionContext;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default circle radius for coefficient extraction about real centres.
pub const DEFAULT_RADIUS: f64 = 7.0;
/// Smallest initial sample count on the circle.
pub const MIN_SAMPLES: usize = 64;
/// Maximal number of sample doublings before giving up.
pub const MAX_DOUBLINGS: usize = 3;

/// The expansion variable of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variable {
    /// `w = s - s0`.
    W,
    /// The Li variable `z`, with `s = s0 + c z / (1 - z)`.
    Z,
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variable::W => "w",
            Variable::Z => "z",
        })
    }
}

/// Coefficients `a_0 ... a_N` of a Taylor expansion about `center`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<S> {
    center: S,
    variable: Variable,
    coeffs: Vec<S>,
}

impl<S: Clone> TruncatedSeries<S> {
    pub fn new(center: S, variable: Variable, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::SeriesMismatch("a series needs at least a constant term".into()));
        }
        Ok(TruncatedSeries { center, variable, coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn center(&self) -> &S {
        &self.center
    }

    pub fn variable(&self) -> Variable {
        self.variable
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Drops every coefficient above `order`.
    pub fn truncated(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        TruncatedSeries {
            center: self.center.clone(),
            variable: self.variable,
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }
}

impl<S> TruncatedSeries<S>
where
    S: Clone + Num + FromPrimitive + PartialEq,
{
    /// A polynomial in `variable` about `center`.
    pub fn from_coeffs(center: S, variable: Variable, coeffs: Vec<S>) -> Result<Self> {
        Self::new(center, variable, coeffs)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.variable != other.variable {
            return Err(Error::SeriesMismatch(format!(
                "variables differ ({} vs {})",
                self.variable, other.variable
            )));
        }
        if self.center != other.center {
            return Err(Error::SeriesMismatch("centres differ".into()));
        }
        Ok(())
    }

    /// Cauchy product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| {
                (0..=k).fold(S::zero(), |acc, j| acc + self.coeffs[j].clone() * other.coeffs[k - j].clone())
            })
            .collect();
        Ok(TruncatedSeries { center: self.center.clone(), variable: self.variable, coeffs })
    }

    /// `alpha * self + beta * other`, truncated at the smaller order.
    pub fn linear_combination(&self, alpha: &S, other: &Self, beta: &S) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| alpha.clone() * self.coeffs[k].clone() + beta.clone() * other.coeffs[k].clone())
            .collect();
        Ok(TruncatedSeries { center: self.center.clone(), variable: self.variable, coeffs })
    }

    /// Coefficients of `ln f` given the constant term `ln a_0`, from
    /// `k b_k a_0 = k a_k - sum_{j=1}^{k-1} j b_j a_{k-j}`.
    pub fn log_with_constant(&self, log_a0: S) -> Result<Self> {
        let a = &self.coeffs;
        if a[0].is_zero() {
            return Err(Error::VanishingConstant);
        }
        let mut b = Vec::with_capacity(a.len());
        b.push(log_a0);
        for k in 1..a.len() {
            let mut acc = S::from_usize(k).unwrap() * a[k].clone();
            for j in 1..k {
                acc = acc - S::from_usize(j).unwrap() * b[j].clone() * a[k - j].clone();
            }
            b.push(acc / (S::from_usize(k).unwrap() * a[0].clone()));
        }
        Ok(TruncatedSeries { center: self.center.clone(), variable: self.variable, coeffs: b })
    }

    /// Coefficients of `exp f` given `exp b_0`, from `k e_k = sum_{j=1}^{k} j b_j e_{k-j}`.
    pub fn exp_with_constant(&self, exp_b0: S) -> Self {
        let b = &self.coeffs;
        let mut e = Vec::with_capacity(b.len());
        e.push(exp_b0);
        for k in 1..b.len() {
            let mut acc = S::zero();
            for j in 1..=k {
                acc = acc + S::from_usize(j).unwrap() * b[j].clone() * e[k - j].clone();
            }
            e.push(acc / S::from_usize(k).unwrap());
        }
        TruncatedSeries { center: self.center.clone(), variable: self.variable, coeffs: e }
    }

    /// Substitutes `w = c z / (1 - z)` into a series in `w` and returns the
    /// series in `z` to `order`. `w(z)` has no constant term, so the
    /// truncation is exact. Horner's scheme; multiplying by `w` is a scaled,
    /// shifted prefix sum, which keeps the whole composition O(order^2).
    pub fn compose_mobius(&self, c: &S, order: usize) -> Result<Self> {
        if self.variable != Variable::W {
            return Err(Error::SeriesMismatch("Moebius composition expects a series in w".into()));
        }
        if self.order() < order {
            return Err(Error::InsufficientOrder { need: order, have: self.order() });
        }
        let mut acc = vec![S::zero(); order + 1];
        acc[0] = self.coeffs[order].clone();
        for k in (0..order).rev() {
            // acc <- acc * w + a_k
            let mut prefix = S::zero();
            for n in 0..=order {
                let next = prefix.clone() + acc[n].clone();
                acc[n] = c.clone() * prefix;
                prefix = next;
            }
            acc[0] = acc[0].clone() + self.coeffs[k].clone();
        }
        Ok(TruncatedSeries { center: S::zero(), variable: Variable::Z, coeffs: acc })
    }
}

/// Cauchy product of two series (same centre and variable).
pub fn series_mul<S>(f: &TruncatedSeries<S>, g: &TruncatedSeries<S>) -> Result<TruncatedSeries<S>>
where
    S: Clone + Num + FromPrimitive + PartialEq,
{
    f.mul(g)
}

/// `ln f`. For a real centre with a real constant term the constant must be
/// positive and the real logarithm is used; otherwise the principal branch.
pub fn series_log<T: Real>(
    f: &TruncatedSeries<Complex<T>>,
    ctx: &PrecisionContext<T>,
) -> Result<TruncatedSeries<Complex<T>>> {
    let a0 = &f.coeffs()[0];
    if a0.is_zero() {
        return Err(Error::VanishingConstant);
    }
    let real_case = f.center().im.is_zero() && a0.im.abs() <= ctx.residue_limit();
    let log_a0 = if real_case {
        if !(a0.re > T::zero()) {
            return Err(Error::NonPositiveConstant(a0.re.to_sci_string(12)));
        }
        Complex::new(a0.re.ln(), ctx.zero())
    } else {
        cx::ln(a0)
    };
    f.log_with_constant(log_a0)
}

/// `exp f` with the complex exponential for the constant term.
pub fn series_exp<T: Real>(f: &TruncatedSeries<Complex<T>>) -> TruncatedSeries<Complex<T>> {
    f.exp_with_constant(cx::exp(&f.coeffs()[0]))
}

/// Composes a `w`-series with `w = c z / (1 - z)`.
pub fn compose_mobius<S>(f: &TruncatedSeries<S>, c: &S, order: usize) -> Result<TruncatedSeries<S>>
where
    S: Clone + Num + FromPrimitive + PartialEq,
{
    f.compose_mobius(c, order)
}

/// Sample-count policy of [`cauchy_coefficients`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CauchyOptions {
    /// Initial number of samples; `None` means `max(8 N, 64)`.
    pub samples: Option<usize>,
    pub max_doublings: usize,
}

impl Default for CauchyOptions {
    fn default() -> Self {
        CauchyOptions { samples: None, max_doublings: MAX_DOUBLINGS }
    }
}

/// Result of a converged coefficient extraction.
#[derive(Debug, Clone)]
pub struct CauchyExpansion<T> {
    /// Coefficients from the final sample count.
    pub series: TruncatedSeries<Complex<T>>,
    /// Coefficients from half as many samples.
    pub previous: TruncatedSeries<Complex<T>>,
    pub samples: usize,
    /// Largest coefficient change between `previous` and `series`.
    pub delta: T,
}

/// Taylor coefficients of `f` about `center` from the trapezoid rule on the
/// circle `|s - center| = radius`:
/// `a_k = (1/M) sum_j f(center + r e^(i theta_j)) e^(-i k theta_j) / r^k`.
/// The sample count doubles until no coefficient moves by more than the
/// target tolerance.
pub fn cauchy_expansion<T, F>(
    f: F,
    center: &Complex<T>,
    radius: &T,
    order: usize,
    options: CauchyOptions,
    ctx: &PrecisionContext<T>,
) -> Result<CauchyExpansion<T>>
where
    T: Real,
    F: Fn(&Complex<T>) -> Result<Complex<T>> + Sync,
{
    if !(radius.clone() > T::zero()) {
        return Err(Error::SeriesMismatch("radius must be positive".into()));
    }
    let mut m = options.samples.unwrap_or_else(|| (8 * order).max(MIN_SAMPLES));
    if m < 4 * order.max(1) {
        return Err(Error::SeriesMismatch(format!(
            "{m} samples is fewer than 4 per requested coefficient"
        )));
    }

    let mut samples = sample_circle(&f, center, radius, m, None, ctx)?;
    let mut current = coefficients_from_samples(&samples, center, radius, order, ctx)?;
    let tol = ctx.target_tol();
    let mut last_delta = None;
    for _ in 0..options.max_doublings.max(1) {
        m *= 2;
        samples = sample_circle(&f, center, radius, m, Some(samples), ctx)?;
        let next = coefficients_from_samples(&samples, center, radius, order, ctx)?;
        let delta = current
            .coeffs()
            .iter()
            .zip(next.coeffs())
            .map(|(a, b)| cx::abs(&(a.clone() - b)))
            .fold(ctx.zero(), T::max_of);
        if delta <= *tol {
            return Ok(CauchyExpansion { series: next, previous: current, samples: m, delta });
        }
        last_delta = Some(delta);
        current = next;
    }
    Err(Error::NotConverged {
        delta: last_delta.map(|d| d.to_f64()).unwrap_or(f64::NAN),
        tol: ctx.target_tol_f64(),
        samples: m,
    })
}

/// Coefficients only; see [`cauchy_expansion`].
pub fn cauchy_coefficients<T, F>(
    f: F,
    center: &Complex<T>,
    radius: &T,
    order: usize,
    options: CauchyOptions,
    ctx: &PrecisionContext<T>,
) -> Result<TruncatedSeries<Complex<T>>>
where
    T: Real,
    F: Fn(&Complex<T>) -> Result<Complex<T>> + Sync,
{
    cauchy_expansion(f, center, radius, order, options, ctx).map(|e| e.series)
}

/// `e^(2 pi i j / m)` for `j < m`.
fn unit_roots<T: Real>(m: usize, ctx: &PrecisionContext<T>) -> Vec<Complex<T>> {
    let step = ctx.pi().clone() * ctx.int(2) / ctx.int(m as i64);
    (0..m)
        .into_par_iter()
        .map(|j| {
            let (s, c) = (step.clone() * ctx.int(j as i64)).sin_cos();
            Complex::new(c, s)
        })
        .collect()
}

/// Evaluates `f` on `m` equispaced points. When `coarse` holds the samples
/// for `m / 2` points they are reused for the even indices.
fn sample_circle<T, F>(
    f: &F,
    center: &Complex<T>,
    radius: &T,
    m: usize,
    coarse: Option<Vec<Complex<T>>>,
    ctx: &PrecisionContext<T>,
) -> Result<Vec<Complex<T>>>
where
    T: Real,
    F: Fn(&Complex<T>) -> Result<Complex<T>> + Sync,
{
    let roots = unit_roots(m, ctx);
    let eval = |j: usize| f(&(center.clone() + cx::scale(&roots[j], radius)));
    match coarse {
        Some(old) if old.len() * 2 == m => {
            let odd: Vec<Complex<T>> = (0..m / 2).into_par_iter().map(|j| eval(2 * j + 1)).collect::<Result<_>>()?;
            let mut out = Vec::with_capacity(m);
            for (even, odd) in old.into_iter().zip(odd) {
                out.push(even);
                out.push(odd);
            }
            Ok(out)
        }
        _ => (0..m).into_par_iter().map(eval).collect(),
    }
}

fn coefficients_from_samples<T: Real>(
    samples: &[Complex<T>],
    center: &Complex<T>,
    radius: &T,
    order: usize,
    ctx: &PrecisionContext<T>,
) -> Result<TruncatedSeries<Complex<T>>> {
    let m = samples.len();
    let roots = unit_roots(m, ctx);
    let inv_m = ctx.one() / ctx.int(m as i64);
    let inv_r = ctx.one() / radius;
    let coeffs: Vec<Complex<T>> = (0..=order)
        .into_par_iter()
        .map(|k| {
            let mut acc = Complex::new(ctx.zero(), ctx.zero());
            for (j, f) in samples.iter().enumerate() {
                acc = acc + f.clone() * roots[(j * k) % m].conj();
            }
            cx::scale(&acc, &inv_m)
        })
        .collect();
    let mut scale = ctx.one();
    let mut scaled = Vec::with_capacity(coeffs.len());
    for a in coeffs {
        scaled.push(cx::scale(&a, &scale));
        scale *= &inv_r;
    }
    TruncatedSeries::new(center.clone(), Variable::W, scaled)
}
