//! Reference implementations used by the integration tests. Nothing here
//! calls into the crate's kernels: real values come from MPFR, complex zeta
//! from Borwein's alternating-series algorithm, complex Gamma from Spouge's
//! approximation, and zero ordinates from bisection on Hardy's Z function.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

/// Minimal complex number over `rug::Float`.
#[derive(Clone, Debug)]
pub struct C {
    pub re: Float,
    pub im: Float,
}

impl C {
    pub fn new(re: Float, im: Float) -> Self {
        C { re, im }
    }

    pub fn real(prec: u32, x: f64) -> Self {
        C::new(Float::with_val(prec, x), Float::with_val(prec, 0))
    }

    pub fn add(&self, o: &C) -> C {
        C::new(Float::with_val(self.re.prec(), &self.re + &o.re), Float::with_val(self.re.prec(), &self.im + &o.im))
    }

    pub fn sub(&self, o: &C) -> C {
        C::new(Float::with_val(self.re.prec(), &self.re - &o.re), Float::with_val(self.re.prec(), &self.im - &o.im))
    }

    pub fn mul(&self, o: &C) -> C {
        let p = self.re.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        C::new(re, im)
    }

    pub fn scale(&self, x: &Float) -> C {
        C::new(Float::with_val(self.re.prec(), &self.re * x), Float::with_val(self.re.prec(), &self.im * x))
    }

    pub fn inv(&self) -> C {
        let p = self.re.prec();
        let d = Float::with_val(p, self.re.clone().square() + self.im.clone().square());
        C::new(Float::with_val(p, &self.re / &d), -Float::with_val(p, &self.im / &d))
    }

    pub fn div(&self, o: &C) -> C {
        self.mul(&o.inv())
    }

    pub fn exp(&self) -> C {
        let m = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(Float::new(self.re.prec()));
        C::new(Float::with_val(self.re.prec(), &m * &c), Float::with_val(self.re.prec(), &m * &s))
    }

    /// Principal logarithm.
    pub fn ln(&self) -> C {
        let p = self.re.prec();
        let r = Float::with_val(p, self.re.clone().square() + self.im.clone().square()).sqrt();
        C::new(r.ln(), self.im.clone().atan2(&self.re))
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.re.prec(), self.re.clone().square() + self.im.clone().square()).sqrt()
    }

    /// `x^self` for real `x > 0`.
    pub fn real_pow(&self, x: &Float) -> C {
        self.scale(&x.clone().ln()).exp()
    }
}

/// Riemann zeta at a real point, from MPFR.
pub fn zeta_real(prec: u32, x: f64) -> Float {
    Float::with_val(prec, x).zeta()
}

/// `ln Gamma` at a real positive point, from MPFR.
pub fn ln_gamma_real(prec: u32, x: f64) -> Float {
    Float::with_val(prec, x).ln_gamma()
}

/// Borwein's algorithm 2 for `zeta(s)`, valid for `Re s > 0`, `s != 1`.
/// `n` terms give an error of roughly `3 (1 + 2|t|) / (3 + sqrt 8)^n`.
pub fn zeta_borwein(s: &C, n: usize) -> C {
    let p = s.re.prec();
    // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = Vec::with_capacity(n + 1);
    let mut acc = BigRational::zero();
    let nn = BigInt::from(n);
    for i in 0..=n {
        let num = factorial(n + i - 1) * BigInt::from(4).pow(i as u32);
        let den = factorial(n - i) * factorial(2 * i);
        acc += BigRational::new(num, den);
        d.push(acc.clone() * BigRational::from_integer(nn.clone()));
    }
    let dn = d[n].clone();
    let mut sum = C::real(p, 0.0);
    for k in 0..n {
        let coeff = to_float(&(d[k].clone() - &dn), p);
        let coeff = if k % 2 == 0 { coeff } else { -coeff };
        let neg_s = C::new(-s.re.clone(), -s.im.clone());
        let term = neg_s.real_pow(&Float::with_val(p, k + 1)).scale(&coeff);
        sum = sum.add(&term);
    }
    // 1 - 2^(1-s)
    let one = C::real(p, 1.0);
    let factor = one.sub(&one.sub(s).real_pow(&Float::with_val(p, 2)));
    let denom = factor.scale(&to_float(&dn, p));
    C::new(-sum.re, -sum.im).div(&denom)
}

/// Spouge's approximation of `ln Gamma(z)` for `Re z > 0`, computed at
/// `work` bits with parameter `a`; relative error below `a^(-1/2) (2 pi)^(-(a + 1/2))`.
pub fn ln_gamma_spouge(z: &C, a: u32, work: u32) -> C {
    let z = C::new(Float::with_val(work, &z.re), Float::with_val(work, &z.im));
    let zm1 = z.sub(&C::real(work, 1.0));
    let af = Float::with_val(work, a);
    let two_pi = Float::with_val(work, Constant::Pi) * 2u32;
    let mut sum = C::real(work, 0.0);
    sum.re += two_pi.sqrt();
    let mut k_fact = Float::with_val(work, 1); // (k-1)!
    for k in 1..a {
        if k > 1 {
            k_fact *= k - 1;
        }
        let base = Float::with_val(work, &af - k);
        let ck = base.clone().pow(Float::with_val(work, k) - 0.5f64) * base.exp() / &k_fact;
        let ck = if k % 2 == 1 { ck } else { -ck };
        let term = zm1.add(&C::real(work, k as f64)).inv().scale(&ck);
        sum = sum.add(&term);
    }
    // Gamma(z) = Gamma((z-1)+1) = (z-1+a)^(z-1/2) e^(-(z-1+a)) * sum
    let shifted = zm1.add(&C::new(af, Float::with_val(work, 0)));
    let expo = zm1.add(&C::real(work, 0.5));
    let ln_pow = expo.mul(&shifted.ln());
    ln_pow.sub(&shifted).add(&sum.ln())
}

/// Hardy's `Z(t) = e^(i theta(t)) zeta(1/2 + i t)` with
/// `theta(t) = Im ln Gamma(1/4 + i t/2) - t ln(pi) / 2`.
pub fn hardy_z(t: &Float, terms: usize) -> Float {
    let p = t.prec();
    let g = ln_gamma_spouge(
        &C::new(Float::with_val(p + 128, 0.25), Float::with_val(p + 128, t / 2u32)),
        80,
        p + 128,
    );
    let theta = Float::with_val(p, &g.im) - Float::with_val(p, t * Float::with_val(p, Constant::Pi).ln()) / 2u32;
    let z = zeta_borwein(&C::new(Float::with_val(p, 0.5), t.clone()), terms);
    let rot = C::new(Float::new(p), theta).exp();
    rot.mul(&z).re
}

/// Bisection on Hardy's Z over `[lo, hi]` down to width `tol`.
pub fn bisect_hardy_z(lo: f64, hi: f64, prec: u32, tol: f64) -> Float {
    let terms = (prec as f64 / 2.5) as usize + 40;
    let mut a = Float::with_val(prec, lo);
    let mut b = Float::with_val(prec, hi);
    let fa = hardy_z(&a, terms);
    assert!(fa.is_sign_negative() != hardy_z(&b, terms).is_sign_negative(), "no sign change");
    let fa_neg = fa.is_sign_negative();
    while Float::with_val(prec, &b - &a) > tol {
        let m = Float::with_val(prec, &a + &b) / 2u32;
        if hardy_z(&m, terms).is_sign_negative() == fa_neg {
            a = m;
        } else {
            b = m;
        }
    }
    Float::with_val(prec, &a + &b) / 2u32
}

/// Closed form `lambda_1 = 1 + gamma/2 - ln(4 pi)/2`.
pub fn lambda1(prec: u32) -> Float {
    let gamma = Float::with_val(prec, Constant::Euler);
    let four_pi = Float::with_val(prec, Constant::Pi) * 4u32;
    Float::with_val(prec, 1) + gamma / 2u32 - four_pi.ln() / 2u32
}

/// First Stieltjes constant, 33 significant digits.
pub const STIELTJES_1: &str = "-0.0728158454836767248605863758749547";

/// Closed form `lambda_2 = 1 + gamma - gamma^2 + pi^2/8 - ln(4 pi) - 2 gamma_1`.
pub fn lambda2(prec: u32) -> Float {
    let gamma = Float::with_val(prec, Constant::Euler);
    let pi = Float::with_val(prec, Constant::Pi);
    let g1 = Float::with_val(prec, Float::parse(STIELTJES_1).unwrap());
    Float::with_val(prec, 1) + &gamma - gamma.clone().square() + pi.clone().square() / 8u32
        - (pi * 4u32).ln()
        - g1 * 2u32
}

/// `sum_k a_k (c z / (1 - z))^k` truncated at `z^order`, by repeated
/// polynomial multiplication.
pub fn mobius_brute_force(a: &[BigRational], c: &BigRational, order: usize) -> Vec<BigRational> {
    // w = c (z + z^2 + ...)
    let w: Vec<BigRational> =
        (0..=order).map(|k| if k == 0 { BigRational::zero() } else { c.clone() }).collect();
    let mut power = vec![BigRational::zero(); order + 1];
    power[0] = BigRational::one();
    let mut out = vec![BigRational::zero(); order + 1];
    for ak in a {
        for (o, p) in out.iter_mut().zip(&power) {
            *o += ak.clone() * p;
        }
        let mut next = vec![BigRational::zero(); order + 1];
        for (i, pi) in power.iter().enumerate() {
            if pi.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate().take(order + 1 - i) {
                next[i + j] += pi.clone() * wj;
            }
        }
        power = next;
    }
    out
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn to_float(q: &BigRational, prec: u32) -> Float {
    let num = rug::Integer::from_str_radix(&q.numer().to_str_radix(16), 16).unwrap();
    let den = rug::Integer::from_str_radix(&q.denom().to_str_radix(16), 16).unwrap();
    Float::with_val(prec, num) / Float::with_val(prec, den)
}
