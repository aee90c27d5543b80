//! Exact scalars: polynomials and rational functions in `u, A, B` over the
//! rationals, and the quadratic extension by `√L`.

pub mod poly;
pub mod ratfunc;
pub mod sqrt_ext;

use thiserror::Error;

pub use poly::{poly_gcd, Monomial, MultiPoly, A, B, NVARS, U, VAR_NAMES};
pub use ratfunc::{l_const, q, RatFunc};
pub use sqrt_ext::{d_const, SqrtExt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("element is not invertible")]
    NonInvertible,
    #[error("denominator vanishes identically under the substitution")]
    VanishingDenominator,
}
