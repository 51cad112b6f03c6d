//! Precision policy and cached constants.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::One;

use crate::bernoulli::even_bernoulli;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DEFAULT_BITS: u32 = 256;
pub const DEFAULT_TOL: f64 = 1e-30;
pub const MIN_BITS: u32 = 64;
/// Bits held back from the tolerance: `target_tol >= 2^(16 - bits)`.
pub const GUARD_BITS: u32 = 16;

/// Ratio `(|s| + 2K) / (2 pi N)` the Euler-Maclaurin parameters are tuned for.
const EM_RATIO: f64 = 0.35;

/// Working precision, reporting tolerance and the constants every kernel
/// needs at that precision. Immutable once built.
#[derive(Debug, Clone)]
pub struct PrecisionContext<T> {
    bits: u32,
    target_tol: T,
    target_tol_f64: f64,
    epsilon: T,
    pi: T,
    euler_gamma: T,
    ln_pi: T,
    ln2: T,
    half_ln_2pi: T,
    stirling: Vec<T>,
    stirling_min_abs: f64,
    euler_maclaurin: Vec<T>,
}

impl<T: Real> PrecisionContext<T> {
    /// Builds a multiprecision context. Rejects `bits < 64`.
    pub fn new(bits: u32, target_tol: f64) -> Result<Self> {
        if bits < MIN_BITS {
            return Err(Error::PrecisionTooLow { bits, min: MIN_BITS });
        }
        if let Some(max) = T::FIXED_BITS {
            if bits > max {
                return Err(Error::PrecisionTooHigh { bits, max });
            }
        }
        Self::build(bits, target_tol)
    }

    /// Parses the tolerance from its decimal literal.
    pub fn with_decimal_tol(bits: u32, target_tol: &str) -> Result<Self> {
        let tol: f64 = target_tol
            .trim()
            .parse()
            .map_err(|_| Error::InvalidTolerance(target_tol.to_string()))?;
        Self::new(bits, tol)
    }

    /// Context for a fixed-width scalar at its native precision. Used for
    /// fast sign scans, never for reported values.
    pub fn hardware(target_tol: f64) -> Result<Self> {
        match T::FIXED_BITS {
            Some(bits) => Self::build(bits, target_tol),
            None => Err(Error::InvalidTolerance(
                "hardware context requested for a multiprecision scalar".into(),
            )),
        }
    }

    fn build(bits: u32, target_tol: f64) -> Result<Self> {
        if !(target_tol.is_finite() && target_tol > 0.0) {
            return Err(Error::InvalidTolerance(target_tol.to_string()));
        }
        let limit = 2f64.powi(GUARD_BITS as i32 - bits as i32);
        if target_tol < limit {
            return Err(Error::ToleranceTooTight { tol: target_tol, limit, bits });
        }

        let pi = T::pi(bits);
        let ln_pi = pi.ln();
        let ln2 = T::ln2(bits);
        let half = T::from_f64_prec(0.5, bits);
        let half_ln_2pi = (ln2.clone() + &ln_pi) * &half;

        let stirling_min_abs = stirling_threshold(bits);
        let stirling_terms = stirling_term_count(bits, stirling_min_abs);
        let em_terms = em_term_count(bits);
        let bern = even_bernoulli(stirling_terms.max(em_terms));

        let stirling = (1..=stirling_terms)
            .map(|k| {
                let d = BigRational::from_integer(((2 * k) * (2 * k - 1)).into());
                T::from_ratio_prec(&(&bern[k - 1] / d), bits)
            })
            .collect();

        let mut factorial = BigRational::one();
        let mut euler_maclaurin = Vec::with_capacity(em_terms);
        for k in 1..=em_terms {
            factorial *= BigRational::from_integer(((2 * k - 1) * (2 * k)).into());
            euler_maclaurin.push(T::from_ratio_prec(&(&bern[k - 1] / &factorial), bits));
        }

        Ok(PrecisionContext {
            bits,
            target_tol: T::from_f64_prec(target_tol, bits),
            target_tol_f64: target_tol,
            epsilon: T::from_f64_prec(2f64.powi(-(bits as i32)), bits),
            euler_gamma: T::euler_gamma(bits),
            pi,
            ln_pi,
            ln2,
            half_ln_2pi,
            stirling,
            stirling_min_abs,
            euler_maclaurin,
        })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn target_tol(&self) -> &T {
        &self.target_tol
    }

    pub fn target_tol_f64(&self) -> f64 {
        self.target_tol_f64
    }

    /// Unit roundoff `2^-bits`.
    pub fn epsilon(&self) -> &T {
        &self.epsilon
    }

    pub fn pi(&self) -> &T {
        &self.pi
    }

    pub fn euler_gamma(&self) -> &T {
        &self.euler_gamma
    }

    pub fn ln_pi(&self) -> &T {
        &self.ln_pi
    }

    pub fn ln2(&self) -> &T {
        &self.ln2
    }

    /// `ln(2 pi) / 2`.
    pub fn half_ln_2pi(&self) -> &T {
        &self.half_ln_2pi
    }

    /// `B_2k / (2k (2k - 1))` for `k = 1, 2, ...`.
    pub(crate) fn stirling_coefficients(&self) -> &[T] {
        &self.stirling
    }

    /// `|z|` above which the Stirling series reaches working precision.
    pub(crate) fn stirling_min_abs(&self) -> f64 {
        self.stirling_min_abs
    }

    /// `B_2k / (2k)!` for `k = 1, 2, ...`.
    pub(crate) fn euler_maclaurin_coefficients(&self) -> &[T] {
        &self.euler_maclaurin
    }

    /// Default Euler-Maclaurin truncation `N` for an argument of modulus `s_abs`.
    pub(crate) fn euler_maclaurin_cutoff(&self, s_abs: f64) -> usize {
        let k = self.euler_maclaurin.len() as f64;
        let n = (s_abs + 2.0 * k) / (2.0 * std::f64::consts::PI * EM_RATIO);
        (n.ceil() as usize).max(20)
    }

    pub fn real(&self, x: f64) -> T {
        T::from_f64_prec(x, self.bits)
    }

    pub fn int(&self, n: i64) -> T {
        T::from_i64_prec(n, self.bits)
    }

    pub fn parse(&self, s: &str) -> Result<T> {
        T::parse_prec(s, self.bits)
    }

    pub fn complex(&self, re: f64, im: f64) -> Complex<T> {
        Complex::new(self.real(re), self.real(im))
    }

    pub fn zero(&self) -> T {
        self.int(0)
    }

    pub fn one(&self) -> T {
        self.int(1)
    }

    /// Residue bound used for realness checks: `10^3 * target_tol`.
    pub fn residue_limit(&self) -> T {
        self.target_tol.clone() * self.int(1000)
    }
}

fn stirling_threshold(bits: u32) -> f64 {
    (0.15 * bits as f64).max(8.0)
}

/// Smallest `K` with `|B_2K| / (2K (2K-1) x^(2K-1)) < 2^-(bits+8)` at `x = min_abs`.
fn stirling_term_count(bits: u32, min_abs: f64) -> usize {
    let target = -((bits + 8) as f64) * std::f64::consts::LN_2;
    let mut ln_fact = 0.0f64; // ln (2k)!
    for k in 1..2000usize {
        ln_fact += ((2 * k - 1) as f64).ln() + ((2 * k) as f64).ln();
        let ln_b = std::f64::consts::LN_2 + ln_fact - (2 * k) as f64 * (2.0 * std::f64::consts::PI).ln();
        let ln_term = ln_b - ((2 * k) as f64 * (2 * k - 1) as f64).ln() - (2 * k - 1) as f64 * min_abs.ln();
        if ln_term < target {
            return k;
        }
    }
    2000
}

fn em_term_count(bits: u32) -> usize {
    let per_term = 2.0 * (1.0 / EM_RATIO).log2();
    ((bits as f64 + 8.0) / per_term).ceil() as usize
}
