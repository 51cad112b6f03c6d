//! MPFR-backed multiprecision real.
//!
//! Binary operations produce a result at the larger of the two operand
//! precisions. `zero()`, `one()` and the `FromPrimitive` constructors create
//! exact low-precision values, so they adopt the working precision of
//! whatever they are combined with. Kernels create their constants through
//! the precision context instead of relying on this.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Zero};
use rug::float::Constant;
use rug::integer::Order;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Arbitrary-precision real number.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigReal(Float);

impl BigReal {
    pub fn from_float(f: Float) -> Self {
        BigReal(f)
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    fn raise_prec(&mut self, bits: u32) {
        if bits > self.0.prec() {
            // Increasing the precision is exact.
            self.0.set_prec(bits);
        }
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({}, {} bits)", self.to_full_string(), self.0.prec())
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(d) => f.write_str(&self.to_sci_string(d.max(1))),
            None => f.write_str(&self.to_full_string()),
        }
    }
}

macro_rules! binop {
    ($Op:ident, $op:ident, $OpAssign:ident, $op_assign:ident) => {
        impl $OpAssign<&BigReal> for BigReal {
            fn $op_assign(&mut self, rhs: &BigReal) {
                self.raise_prec(rhs.0.prec());
                $OpAssign::$op_assign(&mut self.0, &rhs.0);
            }
        }

        impl $OpAssign<BigReal> for BigReal {
            fn $op_assign(&mut self, rhs: BigReal) {
                $OpAssign::$op_assign(self, &rhs);
            }
        }

        impl $Op<&BigReal> for BigReal {
            type Output = BigReal;
            fn $op(mut self, rhs: &BigReal) -> BigReal {
                $OpAssign::$op_assign(&mut self, rhs);
                self
            }
        }

        impl $Op<BigReal> for BigReal {
            type Output = BigReal;
            fn $op(mut self, rhs: BigReal) -> BigReal {
                $OpAssign::$op_assign(&mut self, &rhs);
                self
            }
        }

        impl $Op<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $op(self, rhs: &BigReal) -> BigReal {
                let bits = self.0.prec().max(rhs.0.prec());
                BigReal(Float::with_val(bits, $Op::$op(&self.0, &rhs.0)))
            }
        }

        impl $Op<BigReal> for &BigReal {
            type Output = BigReal;
            fn $op(self, rhs: BigReal) -> BigReal {
                $Op::$op(self, &rhs)
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);
binop!(Div, div, DivAssign, div_assign);
binop!(Rem, rem, RemAssign, rem_assign);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(-self.0)
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(-self.0.clone())
    }
}

impl Zero for BigReal {
    fn zero() -> Self {
        BigReal(Float::with_val(rug::float::prec_min(), 0))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for BigReal {
    fn one() -> Self {
        BigReal(Float::with_val(rug::float::prec_min(), 1))
    }
}

impl Num for BigReal {
    type FromStrRadixErr = Error;

    /// Decimal strings are read at a precision large enough for every digit
    /// they carry (at least 64 bits).
    fn from_str_radix(s: &str, radix: u32) -> Result<Self> {
        if radix != 10 {
            return Err(Error::InvalidNumber(format!("{s} (radix {radix})")));
        }
        let digits = s.chars().filter(|c| c.is_ascii_digit()).count() as f64;
        let bits = ((digits * std::f64::consts::LOG2_10).ceil() as u32 + 16).max(64);
        Self::parse_prec(s, bits)
    }
}

impl FromPrimitive for BigReal {
    fn from_i64(n: i64) -> Option<Self> {
        Some(BigReal(Float::with_val(64, n)))
    }

    fn from_u64(n: u64) -> Option<Self> {
        Some(BigReal(Float::with_val(64, n)))
    }

    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then(|| BigReal(Float::with_val(53, x)))
    }
}

fn bigint_to_integer(n: &BigInt) -> Integer {
    let magnitude = Integer::from_digits(&n.magnitude().to_u32_digits(), Order::Lsf);
    match n.sign() {
        Sign::Minus => -magnitude,
        _ => magnitude,
    }
}

impl Real for BigReal {
    const FIXED_BITS: Option<u32> = None;

    fn from_f64_prec(x: f64, bits: u32) -> Self {
        BigReal(Float::with_val(bits, x))
    }

    fn from_i64_prec(n: i64, bits: u32) -> Self {
        BigReal(Float::with_val(bits, n))
    }

    fn from_ratio_prec(q: &BigRational, bits: u32) -> Self {
        let q = Rational::from((bigint_to_integer(q.numer()), bigint_to_integer(q.denom())));
        BigReal(Float::with_val(bits, &q))
    }

    fn parse_prec(s: &str, bits: u32) -> Result<Self> {
        let parsed = Float::parse(s.trim()).map_err(|_| Error::InvalidNumber(s.to_string()))?;
        let value = Float::with_val(bits, parsed);
        if !value.is_finite() {
            return Err(Error::InvalidNumber(s.to_string()));
        }
        Ok(BigReal(value))
    }

    fn pi(bits: u32) -> Self {
        BigReal(Float::with_val(bits, Constant::Pi))
    }

    fn euler_gamma(bits: u32) -> Self {
        BigReal(Float::with_val(bits, Constant::Euler))
    }

    fn ln2(bits: u32) -> Self {
        BigReal(Float::with_val(bits, Constant::Log2))
    }

    fn precision(&self) -> u32 {
        self.0.prec()
    }

    fn to_prec(&self, bits: u32) -> Self {
        BigReal(Float::with_val(bits, &self.0))
    }

    fn abs(&self) -> Self {
        BigReal(self.0.clone().abs())
    }

    fn sqrt(&self) -> Self {
        BigReal(self.0.clone().sqrt())
    }

    fn exp(&self) -> Self {
        BigReal(self.0.clone().exp())
    }

    fn ln(&self) -> Self {
        BigReal(self.0.clone().ln())
    }

    fn sin_cos(&self) -> (Self, Self) {
        let (s, c) = self.0.clone().sin_cos(Float::new(self.0.prec()));
        (BigReal(s), BigReal(c))
    }

    fn atan2(&self, x: &Self) -> Self {
        let bits = self.0.prec().max(x.0.prec());
        BigReal(Float::with_val(bits, self.0.atan2_ref(&x.0)))
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    fn to_sci_string(&self, digits: usize) -> String {
        let (negative, mantissa, exp) = self.0.to_sign_string_exp(10, Some(digits.max(1)));
        let sign = if negative { "-" } else { "" };
        match exp {
            None => format!("{sign}{mantissa}"),
            Some(e) => {
                let (head, tail) = mantissa.split_at(1);
                if tail.is_empty() {
                    format!("{sign}{head}e{}", e - 1)
                } else {
                    format!("{sign}{head}.{tail}e{}", e - 1)
                }
            }
        }
    }
}

impl BigReal {
    /// Total order for finite values; NaN compares equal to everything.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ops_take_the_larger_precision() {
        let a = BigReal::from_i64_prec(1, 256);
        let three = BigReal::from_i64(3).unwrap();
        let q = &a / &three;
        assert_eq!(q.precision(), 256);
        let third = BigReal::parse_prec("0.333333333333333333333333333333333333333333333333", 256).unwrap();
        assert!((q - &third).abs() < BigReal::from_f64_prec(1e-45, 256));
    }

    #[test]
    fn zero_and_one_promote() {
        let mut acc = BigReal::zero();
        acc += BigReal::pi(200);
        assert_eq!(acc.precision(), 200);
        let p = BigReal::one() * BigReal::pi(300);
        assert_eq!(p.precision(), 300);
    }

    #[test]
    fn parse_is_exact_decimal() {
        let tenth = BigReal::parse_prec("0.1", 256).unwrap();
        let ten = BigReal::from_i64_prec(10, 256);
        let one = tenth * &ten;
        assert!((one - BigReal::from_i64_prec(1, 256)).abs() < BigReal::from_f64_prec(1e-75, 256));
        assert!(BigReal::parse_prec("0.1x", 64).is_err());
        assert!(BigReal::parse_prec("inf", 64).is_err());
    }

    #[test]
    fn sci_formatting() {
        let x = BigReal::parse_prec("-0.0230957", 128).unwrap();
        assert_eq!(x.to_sci_string(4), "-2.310e-2");
        assert_eq!(BigReal::from_i64_prec(0, 64).to_sci_string(3), "0");
        assert_eq!(BigReal::from_i64_prec(5, 64).to_sci_string(1), "5e0");
    }

    #[test]
    fn rational_conversion() {
        let q = BigRational::new(BigInt::from(-1), BigInt::from(12));
        let x = BigReal::from_ratio_prec(&q, 128);
        assert!((x.to_f64() + 1.0 / 12.0).abs() < 1e-17);
    }
}
