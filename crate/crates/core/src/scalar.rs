//! The scalar abstraction every kernel is written against.
//!
//! [`Real`] is implemented for `f32`, `f64` (through `num_traits::Float`)
//! and for the MPFR-backed [`BigReal`](crate::BigReal). Fixed-width types
//! ignore the `bits` argument of the constructors; multiprecision types
//! create values at exactly that precision.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, Neg, SubAssign};
use std::ops::{Add, Div, Mul, Sub};

use num_rational::BigRational;
use num_traits::{FloatConst, FromPrimitive, Num, ToPrimitive};

use crate::error::{Error, Result};

/// A real scalar usable by the special-function, series and Li kernels.
pub trait Real:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Num
    + FromPrimitive
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
    /// Mantissa width of fixed-width types; `None` when precision is chosen at run time.
    const FIXED_BITS: Option<u32>;

    fn from_f64_prec(x: f64, bits: u32) -> Self;
    fn from_i64_prec(n: i64, bits: u32) -> Self;
    fn from_ratio_prec(q: &BigRational, bits: u32) -> Self;
    /// Parses a decimal literal directly at `bits` precision (no `f64` detour).
    fn parse_prec(s: &str, bits: u32) -> Result<Self>;

    fn pi(bits: u32) -> Self;
    fn euler_gamma(bits: u32) -> Self;
    fn ln2(bits: u32) -> Self;

    /// Precision of this value in bits.
    fn precision(&self) -> u32;
    /// The same value re-rounded to `bits` precision.
    fn to_prec(&self, bits: u32) -> Self;

    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin_cos(&self) -> (Self, Self);
    fn atan2(&self, x: &Self) -> Self;

    fn to_f64(&self) -> f64;
    fn is_finite(&self) -> bool;

    /// Scientific notation with `digits` significant digits, e.g. `2.3095e-2`.
    fn to_sci_string(&self, digits: usize) -> String;

    /// Decimal digits that the value's precision supports.
    fn decimal_digits(&self) -> usize {
        ((self.precision() as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize
    }

    /// Full-precision scientific notation.
    fn to_full_string(&self) -> String {
        self.to_sci_string(self.decimal_digits())
    }

    /// Positional notation (no exponent) with `significant` digits.
    fn to_fixed_string(&self, significant: usize) -> String {
        sci_to_fixed(&self.to_sci_string(significant))
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

macro_rules! impl_real_for_primitive {
    ($t:ty, $bits:expr) => {
        impl Real for $t {
            const FIXED_BITS: Option<u32> = Some($bits);

            fn from_f64_prec(x: f64, _bits: u32) -> Self {
                x as $t
            }

            fn from_i64_prec(n: i64, _bits: u32) -> Self {
                n as $t
            }

            fn from_ratio_prec(q: &BigRational, _bits: u32) -> Self {
                ratio_to_f64(q) as $t
            }

            fn parse_prec(s: &str, _bits: u32) -> Result<Self> {
                s.trim()
                    .parse::<$t>()
                    .map_err(|_| Error::InvalidNumber(s.to_string()))
            }

            fn pi(_bits: u32) -> Self {
                <$t as FloatConst>::PI()
            }

            fn euler_gamma(_bits: u32) -> Self {
                0.577_215_664_901_532_9_f64 as $t
            }

            fn ln2(_bits: u32) -> Self {
                <$t as FloatConst>::LN_2()
            }

            fn precision(&self) -> u32 {
                $bits
            }

            fn to_prec(&self, _bits: u32) -> Self {
                *self
            }

            fn abs(&self) -> Self {
                num_traits::Float::abs(*self)
            }

            fn sqrt(&self) -> Self {
                num_traits::Float::sqrt(*self)
            }

            fn exp(&self) -> Self {
                num_traits::Float::exp(*self)
            }

            fn ln(&self) -> Self {
                num_traits::Float::ln(*self)
            }

            fn sin_cos(&self) -> (Self, Self) {
                num_traits::Float::sin_cos(*self)
            }

            fn atan2(&self, x: &Self) -> Self {
                num_traits::Float::atan2(*self, *x)
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn is_finite(&self) -> bool {
                num_traits::Float::is_finite(*self)
            }

            fn to_sci_string(&self, digits: usize) -> String {
                format!("{:.*e}", digits.saturating_sub(1), self)
            }
        }
    };
}

impl_real_for_primitive!(f32, 24);
impl_real_for_primitive!(f64, 53);

/// Rewrites `d.ddde±x` as a plain decimal.
pub(crate) fn sci_to_fixed(sci: &str) -> String {
    let Some((mantissa, exp)) = sci.split_once('e') else {
        return sci.to_string();
    };
    let exp: i64 = exp.parse().unwrap_or(0);
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = 1 + exp; // digits before the decimal point
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        let (int, frac) = digits.split_at(point as usize);
        format!("{int}.{frac}")
    };
    format!("{sign}{body}")
}

/// Converts a rational to the nearest `f64`, scaling through exponents so
/// that huge numerators and denominators do not overflow on their own.
pub(crate) fn ratio_to_f64(q: &BigRational) -> f64 {
    let (n, d) = (q.numer(), q.denom());
    if let (Some(a), Some(b)) = (n.to_f64(), d.to_f64()) {
        if a.is_finite() && b.is_finite() && b != 0.0 {
            return a / b;
        }
    }
    let shift = n.bits() as i64 - d.bits() as i64;
    let scaled = if shift > 0 {
        BigRational::new(n.clone(), d.clone() << (shift as usize))
    } else {
        BigRational::new(n.clone() << ((-shift) as usize), d.clone())
    };
    let m = scaled.numer().to_f64().unwrap_or(0.0) / scaled.denom().to_f64().unwrap_or(1.0);
    m * 2f64.powi(shift as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn primitive_constants() {
        assert!((f64::pi(0) - std::f64::consts::PI).abs() < 1e-16);
        assert!((f32::ln2(0) - std::f32::consts::LN_2).abs() < 1e-7);
        assert_eq!(f64::parse_prec(" 0.25 ", 0).unwrap(), 0.25);
        assert!(f64::parse_prec("abc", 0).is_err());
    }

    #[test]
    fn huge_ratio_converts() {
        let big = BigInt::from(10).pow(400);
        let q = BigRational::new(big.clone() * 3, big);
        assert!((ratio_to_f64(&q) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn sci_string_shape() {
        assert_eq!(0.5f64.to_sci_string(3), "5.00e-1");
    }

    #[test]
    fn fixed_notation() {
        assert_eq!(sci_to_fixed("1.4134725e1"), "14.134725");
        assert_eq!(sci_to_fixed("-2.5e-3"), "-0.0025");
        assert_eq!(sci_to_fixed("1.2e3"), "1200");
        assert_eq!(sci_to_fixed("7"), "7");
        assert_eq!(21.022039638771555f64.to_fixed_string(8), "21.022040");
    }
}
