//! Elementary functions on `Complex<T>` for any [`Real`] `T`.

use num_complex::Complex;

use crate::scalar::Real;

pub fn abs<T: Real>(z: &Complex<T>) -> T {
    (z.re.clone() * &z.re + z.im.clone() * &z.im).sqrt()
}

pub fn exp<T: Real>(z: &Complex<T>) -> Complex<T> {
    let r = z.re.exp();
    let (s, c) = z.im.sin_cos();
    Complex::new(r.clone() * c, r * s)
}

/// Principal logarithm, argument in (-pi, pi].
pub fn ln<T: Real>(z: &Complex<T>) -> Complex<T> {
    let norm2 = z.re.clone() * &z.re + z.im.clone() * &z.im;
    let half = T::from_f64(0.5).unwrap();
    Complex::new(norm2.ln() * half, z.im.atan2(&z.re))
}

/// `base^z` for a positive real base given through its logarithm.
pub fn pow_from_ln<T: Real>(ln_base: &T, z: &Complex<T>) -> Complex<T> {
    exp(&Complex::new(z.re.clone() * ln_base, z.im.clone() * ln_base))
}

pub fn sin<T: Real>(z: &Complex<T>) -> Complex<T> {
    let (s, c) = z.re.sin_cos();
    let ey = z.im.exp();
    let emy = T::one() / &ey;
    let half = T::from_f64(0.5).unwrap();
    let cosh = (ey.clone() + &emy) * &half;
    let sinh = (ey - emy) * half;
    Complex::new(s * cosh, c * sinh)
}

pub fn scale<T: Real>(z: &Complex<T>, r: &T) -> Complex<T> {
    Complex::new(z.re.clone() * r, z.im.clone() * r)
}

pub fn is_finite<T: Real>(z: &Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Short human-readable form used in error messages.
pub fn describe<T: Real>(z: &Complex<T>) -> String {
    let re = z.re.to_f64();
    let im = z.im.to_f64();
    if im == 0.0 {
        format!("{re}")
    } else {
        format!("{re}{im:+}i")
    }
}
