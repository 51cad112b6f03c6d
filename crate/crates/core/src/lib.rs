//! Generalized Li coefficients of the Riemann xi function.
//!
//! The kernels are generic over [`Real`]; the aliases below fix the scalar
//! to the multiprecision [`BigReal`] or to `f64`.

pub mod bernoulli;
pub mod bigreal;
pub mod complex;
pub mod context;
pub mod error;
pub mod li;
pub mod report;
pub mod scalar;
pub mod series;
pub mod special;
pub mod zeros;

pub use bigreal::BigReal;
pub use context::PrecisionContext;
pub use error::{Error, Result};
pub use li::{
    cross_verify, lambda1_identity, li_genfunc, li_zero_sum, li_zero_sums, positivity_scan, tail_estimate,
    CheckStatus, LiParams, LiValue, Route, TolerancePolicy,
};
pub use scalar::Real;
pub use zeros::{find_zeros_up_to, parse_zero_file, refine_table, ZeroTable};

pub type BigComplex = num_complex::Complex<BigReal>;
pub type BigContext = PrecisionContext<BigReal>;
pub type BigLiParams = LiParams<BigReal>;
pub type BigLiValue = LiValue<BigReal>;
pub type BigZeroTable = ZeroTable<BigReal>;
pub type BigVerificationReport = li::VerificationReport<BigReal>;

pub type Context64 = PrecisionContext<f64>;
pub type LiParams64 = LiParams<f64>;
pub type LiValue64 = LiValue<f64>;
pub type ZeroTable64 = ZeroTable<f64>;
