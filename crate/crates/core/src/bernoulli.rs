//! Exact even-index Bernoulli numbers.
//!
//! Computed from tangent numbers with integer arithmetic only, then cached
//! for the lifetime of the process.

use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

static CACHE: OnceLock<Mutex<Arc<Vec<BigRational>>>> = OnceLock::new();

/// `B_2, B_4, ..., B_{2 count}`.
pub fn even_bernoulli(count: usize) -> Arc<Vec<BigRational>> {
    let cache = CACHE.get_or_init(|| Mutex::new(Arc::new(Vec::new())));
    let mut guard = cache.lock().expect("bernoulli cache poisoned");
    if guard.len() < count {
        *guard = Arc::new(compute(count.max(2 * guard.len())));
    }
    Arc::clone(&guard)
}

fn tangent_numbers(n: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::zero(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
        }
    }
    t
}

fn compute(count: usize) -> Vec<BigRational> {
    let t = tangent_numbers(count);
    (1..=count)
        .map(|k| {
            let four_k = BigInt::one() << (2 * k);
            let den = &four_k * (&four_k - BigInt::one());
            let num = BigInt::from(2 * k) * &t[k];
            let b = BigRational::new(num, den);
            if k % 2 == 0 {
                -b
            } else {
                b
            }
        })
        .collect()
}
