//! Riemann zeta, log-gamma and the completed xi function.
//!
//! `xi` is evaluated through the regrouped closed form
//! `xi(s) = (s-1) zeta(s) * pi^(-s/2) * Gamma(s/2 + 1)`, where `(s-1) zeta(s)`
//! comes from an Euler-Maclaurin sum with the pole factor folded in. Both
//! `s = 0` and `s = 1` are therefore ordinary points.

use num_complex::Complex;
use num_traits::Zero;

use crate::complex as cx;
use crate::context::PrecisionContext;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::{cauchy_coefficients, CauchyOptions, DEFAULT_RADIUS};

/// Whether the Euler-Maclaurin sum returns `zeta(s)` or `(s-1) zeta(s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaMode {
    Plain,
    PoleAbsorbed,
}

/// Truncation parameters of the Euler-Maclaurin formula: `terms` leading
/// terms summed directly, `corrections` Bernoulli correction terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EulerMaclaurin {
    pub terms: usize,
    pub corrections: usize,
}

impl EulerMaclaurin {
    /// The heuristic defaults for `s` at the context precision.
    pub fn for_point<T: Real>(s: &Complex<T>, ctx: &PrecisionContext<T>) -> Self {
        let s_abs = cx::abs(s).to_f64();
        EulerMaclaurin {
            terms: ctx.euler_maclaurin_cutoff(s_abs),
            corrections: ctx.euler_maclaurin_coefficients().len(),
        }
    }
}

fn is_one<T: Real>(s: &Complex<T>) -> bool {
    s.im.is_zero() && s.re == T::one()
}

/// Euler-Maclaurin evaluation with explicit truncation. `params.corrections`
/// is capped at the number of coefficients the context holds.
pub fn zeta_euler_maclaurin<T: Real>(
    s: &Complex<T>,
    params: EulerMaclaurin,
    mode: ZetaMode,
    ctx: &PrecisionContext<T>,
) -> Result<Complex<T>> {
    if mode == ZetaMode::Plain && is_one(s) {
        return Err(Error::Pole { function: "zeta", at: "1".into() });
    }
    let cutoff = params.terms.max(2);
    let neg_s = -s.clone();

    let mut head = Complex::new(ctx.one(), ctx.zero());
    for n in 2..cutoff {
        head = head + cx::pow_from_ln(&ctx.int(n as i64).ln(), &neg_s);
    }

    let big_n = ctx.int(cutoff as i64);
    let n_pow = cx::pow_from_ln(&big_n.ln(), &neg_s); // N^-s
    let half = ctx.real(0.5);
    let mut body = head + cx::scale(&n_pow, &half);

    // sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)
    let coeffs = ctx.euler_maclaurin_coefficients();
    let inv_n2 = ctx.one() / (big_n.clone() * &big_n);
    let mut rising = s.clone();
    let mut power = cx::scale(&n_pow, &(ctx.one() / &big_n));
    let tiny = ctx.epsilon().to_f64();
    for (k, c) in coeffs.iter().take(params.corrections).enumerate() {
        let term = cx::scale(&(rising.clone() * &power), c);
        body = body + &term;
        let k = (k + 1) as i64;
        let t = term.norm_sqr_f64();
        if t == 0.0 && rising.is_zero() {
            break;
        }
        if t.sqrt() < tiny * body.norm_sqr_f64().sqrt() * 1e-3 {
            break;
        }
        let a = s.clone() + Complex::new(ctx.int(2 * k - 1), ctx.zero());
        let b = s.clone() + Complex::new(ctx.int(2 * k), ctx.zero());
        rising = rising * a * b;
        power = cx::scale(&power, &inv_n2);
    }

    let n_pow_one_minus_s = cx::scale(&n_pow, &big_n); // N^(1-s)
    let s_minus_one = s.clone() - Complex::new(ctx.one(), ctx.zero());
    Ok(match mode {
        ZetaMode::Plain => body + n_pow_one_minus_s / s_minus_one,
        ZetaMode::PoleAbsorbed => body * s_minus_one + n_pow_one_minus_s,
    })
}

trait NormF64 {
    fn norm_sqr_f64(&self) -> f64;
}

impl<T: Real> NormF64 for Complex<T> {
    fn norm_sqr_f64(&self) -> f64 {
        let re = self.re.to_f64();
        let im = self.im.to_f64();
        re * re + im * im
    }
}

/// Riemann zeta. Uses Euler-Maclaurin for `Re s >= 0` and the functional
/// equation `zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)` left of it.
pub fn zeta<T: Real>(s: &Complex<T>, ctx: &PrecisionContext<T>) -> Result<Complex<T>> {
    if is_one(s) {
        return Err(Error::Pole { function: "zeta", at: "1".into() });
    }
    if !s.re.is_negative() {
        return zeta_euler_maclaurin(s, EulerMaclaurin::for_point(s, ctx), ZetaMode::Plain, ctx);
    }
    let one = Complex::new(ctx.one(), ctx.zero());
    let reflected = one.clone() - s;
    let z1 = zeta_euler_maclaurin(&reflected, EulerMaclaurin::for_point(&reflected, ctx), ZetaMode::Plain, ctx)?;
    let log_prefactor = cx::scale(s, ctx.ln2()) + cx::scale(&(s.clone() - &one), ctx.ln_pi()) + ln_gamma(&reflected, ctx)?;
    let half_pi = ctx.pi().clone() * ctx.real(0.5);
    let sine = cx::sin(&cx::scale(s, &half_pi));
    Ok(cx::exp(&log_prefactor) * sine * z1)
}

/// `(s - 1) zeta(s)`, regular at `s = 1` (value 1 there).
pub fn zeta_pole_absorbed<T: Real>(s: &Complex<T>, ctx: &PrecisionContext<T>) -> Result<Complex<T>> {
    if !s.re.is_negative() {
        return zeta_euler_maclaurin(s, EulerMaclaurin::for_point(s, ctx), ZetaMode::PoleAbsorbed, ctx);
    }
    let z = zeta(s, ctx)?;
    Ok(z * (s.clone() - Complex::new(ctx.one(), ctx.zero())))
}

fn is_nonpositive_integer<T: Real>(z: &Complex<T>) -> bool {
    if !z.im.is_zero() || z.re > T::zero() {
        return false;
    }
    let r = z.re.to_f64();
    r == r.round() && (z.re.clone() - T::from_f64_prec(r, z.re.precision())).is_zero()
}

/// Principal-branch `ln Gamma(z)`: Stirling series at a shifted argument,
/// then `ln Gamma(z) = ln Gamma(z + m) - sum_{j<m} ln(z + j)`.
pub fn ln_gamma<T: Real>(z: &Complex<T>, ctx: &PrecisionContext<T>) -> Result<Complex<T>> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { function: "gamma", at: cx::describe(z) });
    }
    let threshold = ctx.stirling_min_abs();
    let re = z.re.to_f64();
    let im = z.im.to_f64();
    let mut shift = if re < 0.0 { (-re).ceil() as usize } else { 0 };
    if im.abs() < threshold {
        let need = (threshold * threshold - im * im).sqrt() - re;
        shift = shift.max(need.ceil().max(0.0) as usize);
    }

    let mut correction = Complex::new(ctx.zero(), ctx.zero());
    for j in 0..shift {
        let zj = z.clone() + Complex::new(ctx.int(j as i64), ctx.zero());
        correction = correction + cx::ln(&zj);
    }
    let w = z.clone() + Complex::new(ctx.int(shift as i64), ctx.zero());

    let half = ctx.real(0.5);
    let ln_w = cx::ln(&w);
    let mut result = (w.clone() - Complex::new(half, ctx.zero())) * &ln_w - &w
        + Complex::new(ctx.half_ln_2pi().clone(), ctx.zero());

    let inv_w = Complex::new(ctx.one(), ctx.zero()) / &w;
    let inv_w2 = inv_w.clone() * &inv_w;
    let mut power = inv_w;
    let tiny = ctx.epsilon().to_f64() * 1e-3;
    for c in ctx.stirling_coefficients() {
        let term = cx::scale(&power, c);
        result = result + &term;
        if term.norm_sqr_f64().sqrt() < tiny * result.norm_sqr_f64().sqrt().max(1.0) {
            break;
        }
        power = power * &inv_w2;
    }
    Ok(result - correction)
}

/// The factors of the regrouped closed form at one point.
#[derive(Debug, Clone)]
pub struct XiFactorization<T> {
    /// `(s - 1) zeta(s)`.
    pub pole_absorbed_zeta: Complex<T>,
    /// `ln(pi^(-s/2) Gamma(s/2 + 1))`.
    pub log_gamma_factor: Complex<T>,
}

impl<T: Real> XiFactorization<T> {
    pub fn at(s: &Complex<T>, ctx: &PrecisionContext<T>) -> Result<Self> {
        let half = ctx.real(0.5);
        let half_s = cx::scale(s, &half);
        let gamma_arg = half_s.clone() + Complex::new(ctx.one(), ctx.zero());
        let log_gamma_factor = ln_gamma(&gamma_arg, ctx)? - cx::scale(&half_s, ctx.ln_pi());
        Ok(XiFactorization {
            pole_absorbed_zeta: zeta_pole_absorbed(s, ctx)?,
            log_gamma_factor,
        })
    }

    pub fn value(&self) -> Complex<T> {
        cx::exp(&self.log_gamma_factor) * &self.pole_absorbed_zeta
    }
}

/// The completed form evaluated at `s` itself, without using `xi(s) = xi(1-s)`.
/// Fails at the poles of `Gamma(s/2 + 1)` (s = -2, -4, ...).
pub fn xi_unreflected<T: Real>(s: &Complex<T>, ctx: &PrecisionContext<T>) -> Result<Complex<T>> {
    Ok(XiFactorization::at(s, ctx)?.value())
}

/// The textbook product `s (s-1) pi^(-s/2) Gamma(s/2) zeta(s) / 2`, finite
/// only away from `s = 0, 1` and the trivial zeros.
pub fn xi_ungrouped<T: Real>(s: &Complex<T>, ctx: &PrecisionContext<T>) -> Result<Complex<T>> {
    let half = ctx.real(0.5);
    let half_s = cx::scale(s, &half);
    let log_part = ln_gamma(&half_s, ctx)? - cx::scale(&half_s, ctx.ln_pi());
    let z = zeta(s, ctx)?;
    let s_minus_one = s.clone() - Complex::new(ctx.one(), ctx.zero());
    Ok(cx::scale(&(s.clone() * s_minus_one * cx::exp(&log_part) * z), &half))
}

/// Riemann xi. Points left of the critical line are mapped through
/// `xi(s) = xi(1 - s)` so the kernels always run with `Re s >= 1/2`.
pub fn xi<T: Real>(s: &Complex<T>, ctx: &PrecisionContext<T>) -> Result<Complex<T>> {
    let half = ctx.real(0.5);
    if s.re < half {
        let reflected = Complex::new(ctx.one(), ctx.zero()) - s;
        xi_unreflected(&reflected, ctx)
    } else {
        xi_unreflected(s, ctx)
    }
}

/// `xi(x)` for real `x`; errors if the result is not strictly positive.
pub fn xi_real<T: Real>(x: &T, ctx: &PrecisionContext<T>) -> Result<T> {
    let v = xi(&Complex::new(x.clone(), ctx.zero()), ctx)?;
    if v.re > T::zero() {
        Ok(v.re)
    } else {
        Err(Error::NonPositiveXi { at: x.to_sci_string(12), value: v.re.to_sci_string(12) })
    }
}

/// `Xi(t) = xi(1/2 + i t)`, real for real `t`.
pub fn xi_on_critical_line<T: Real>(t: &T, ctx: &PrecisionContext<T>) -> Result<T> {
    let s = Complex::new(ctx.real(0.5), t.clone());
    let v = xi_unreflected(&s, ctx)?;
    let limit = ctx.residue_limit();
    if v.im.abs() > limit {
        return Err(Error::ImaginaryResidue {
            context: "Xi(t)",
            residue: v.im.abs().to_f64(),
            limit: limit.to_f64(),
        });
    }
    Ok(v.re)
}

/// `xi'(s0) / xi(s0)` at real `s0`, from the degree-one Taylor coefficient
/// of `xi` about `s0`.
pub fn xi_log_derivative<T: Real>(s0: &T, ctx: &PrecisionContext<T>) -> Result<T> {
    let center = Complex::new(s0.clone(), ctx.zero());
    let radius = ctx.real(DEFAULT_RADIUS);
    let series = cauchy_coefficients(|s| xi(s, ctx), &center, &radius, 1, CauchyOptions::default(), ctx)?;
    let a0 = &series.coeffs()[0];
    if !(a0.re > T::zero()) {
        return Err(Error::NonPositiveXi { at: s0.to_sci_string(12), value: a0.re.to_sci_string(12) });
    }
    let ratio = series.coeffs()[1].clone() / a0;
    let limit = ctx.residue_limit();
    if ratio.im.abs() > limit {
        return Err(Error::ImaginaryResidue {
            context: "xi'/xi",
            residue: ratio.im.abs().to_f64(),
            limit: limit.to_f64(),
        });
    }
    Ok(ratio.re)
}
