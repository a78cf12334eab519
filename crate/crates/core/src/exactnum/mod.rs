//! Exact arithmetic in cyclotomic fields and their real quadratic subfields.

mod approx;
mod coef;
mod cyclotomic;
mod field;
mod gauss;
mod matrix;
pub mod nt;
mod quadratic;
mod serial;
mod surd;

pub use approx::{real_sign, to_float, ComplexApprox, MAX_SIGN_PRECISION};
pub use cyclotomic::Cyclotomic;
pub use field::{max_conductor, set_max_conductor, DEFAULT_MAX_CONDUCTOR};
pub use gauss::{gauss_sqrt, quadratic_gauss_sum};
pub use matrix::Matrix;
pub use nt::legendre;
pub use serial::rational_str;
pub use quadratic::{is_algebraic_unit, quad_norm, to_quadratic, QuadraticNumber};
pub use surd::SurdSum;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("invalid conductor {0}")]
    InvalidConductor(u32),
    #[error("conductor {conductor} exceeds the configured cap {cap}")]
    ConductorOverflow { conductor: u64, cap: u32 },
    #[error("conductor {have} is not a multiple of {needed}")]
    ConductorMismatch { needed: u64, have: u32 },
    #[error("{k} is not coprime to the conductor {n}")]
    NotCoprime { k: u64, n: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("sqrt({m}) is not available at conductor {conductor}")]
    SqrtNotInField { m: u64, conductor: u32 },
    #[error("value is not real")]
    NotReal,
    #[error("value does not lie in Q(sqrt({0}))")]
    NotInSubfield(u64),
    #[error("sign undecided after {0} bits")]
    PrecisionExhausted(u64),
    #[error("mismatched quadratic fields sqrt({0}) and sqrt({1})")]
    FieldMismatch(u64, u64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("malformed number: {0}")]
    Parse(String),
}

/// `n/d` as a [`Rational`].
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
