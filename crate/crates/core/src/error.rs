use thiserror::Error;

/// Errors raised by the numerical kernels, the zero-table loader and the
/// coefficient engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("precision too low: {bits} bits requested, at least {min} required")]
    PrecisionTooLow { bits: u32, min: u32 },

    #[error("precision {bits} bits exceeds what the scalar type carries ({max} bits)")]
    PrecisionTooHigh { bits: u32, max: u32 },

    #[error("target tolerance {tol:e} is tighter than the guard-digit limit {limit:e} at {bits} bits")]
    ToleranceTooTight { tol: f64, limit: f64, bits: u32 },

    #[error("invalid tolerance {0}")]
    InvalidTolerance(String),

    #[error("invalid number {0:?}")]
    InvalidNumber(String),

    #[error("{function} has a pole at s = {at}")]
    Pole { function: &'static str, at: String },

    #[error("xi evaluated to a non-positive value {value} at real s = {at}")]
    NonPositiveXi { at: String, value: String },

    #[error("imaginary residue {residue:e} exceeds the allowed {limit:e} in {context}")]
    ImaginaryResidue {
        context: &'static str,
        residue: f64,
        limit: f64,
    },

    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    #[error("series order {have} is below the required order {need}")]
    InsufficientOrder { need: usize, have: usize },

    #[error("logarithm of a series with vanishing constant term")]
    VanishingConstant,

    #[error("logarithm of a real-centred series with non-positive constant term {0}")]
    NonPositiveConstant(String),

    #[error("coefficient extraction did not converge: change {delta:e} at {samples} samples exceeds {tol:e}")]
    NotConverged { delta: f64, tol: f64, samples: usize },

    #[error("expansion point s0 = {s0} outside the supported range [{lo}, {hi}]")]
    CenterOutOfRange { s0: String, lo: f64, hi: f64 },

    #[error("no sign change of Xi(t) on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("zero search height {height} exceeds the configured maximum {max}")]
    HeightTooLarge { height: f64, max: f64 },

    #[error("empty table")]
    EmptyTable,

    #[error("non-monotone ordinates at line {line}: {value} does not exceed {previous}")]
    NonMonotone {
        line: usize,
        value: String,
        previous: String,
    },

    #[error("line {line}: cannot parse {token:?} as an ordinate")]
    BadToken { line: usize, token: String },

    #[error("ordinate must be positive at line {line}")]
    NonPositiveOrdinate { line: usize },

    #[error("tail estimate needs a table reaching height 50, got {gamma_max}")]
    TableTooShort { gamma_max: f64 },

    #[error("n must be at least 1")]
    ZeroOrder,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Bad input (flags, literals, files) rather than a numerical breakdown.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::PrecisionTooLow { .. }
                | Error::PrecisionTooHigh { .. }
                | Error::ToleranceTooTight { .. }
                | Error::InvalidTolerance(_)
                | Error::InvalidNumber(_)
                | Error::CenterOutOfRange { .. }
                | Error::HeightTooLarge { .. }
                | Error::EmptyTable
                | Error::NonMonotone { .. }
                | Error::BadToken { .. }
                | Error::NonPositiveOrdinate { .. }
                | Error::ZeroOrder
                | Error::Io(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
