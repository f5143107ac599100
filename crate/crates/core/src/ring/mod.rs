//! Exact integer Laurent polynomials in one variable `A`, their fraction
//! field, and double-precision complex evaluation.

mod laurent;
mod rational;
mod text;
pub(crate) mod upoly;

pub use laurent::LaurentPoly;
pub use rational::RationalFunction;
pub use text::InVar;

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("evaluation at zero of a polynomial with negative exponents")]
    ZeroInput,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// `σ = A + 1 + A^-1`.
pub fn sigma() -> LaurentPoly {
    LaurentPoly::sigma()
}

/// Canonical reduced fraction `num / den`.
pub fn rf_reduce(num: LaurentPoly, den: LaurentPoly) -> Result<RationalFunction, RingError> {
    RationalFunction::new(num, den)
}
