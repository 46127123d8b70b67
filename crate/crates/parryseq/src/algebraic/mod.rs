//! Exact real algebraic numbers and arithmetic in Q(beta).
//!
//! [`AlgebraicReal`] couples a squarefree integer polynomial with an isolating
//! rational interval; [`FieldElement`] represents elements of Q(beta) with
//! exact rational coefficients. Nothing in this module uses floating point.
//! `FieldElement` values are immutable and freely shareable; the refinement
//! cache inside `AlgebraicReal` is synchronized, so shared references are
//! thread-safe.

mod field;
mod poly;
mod real;

pub use field::{FieldElement, Sign};
pub use poly::{IntPoly, RatPoly, SturmChain};
pub use real::{isolate_real_roots, AlgebraicReal};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Signed;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraicError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
}

/// Truncated decimal rendering of a rational, `digits` places after the point.
pub(crate) fn decimal_of_rational(x: &BigRational, digits: u32) -> String {
    let neg = x.is_negative();
    let abs = x.abs();
    let scale = BigInt::from(10).pow(digits);
    let scaled = (abs * BigRational::from(scale.clone())).floor().to_integer();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{frac:0>width$}",
            frac = frac_part.to_string(),
            width = digits as usize
        )
    }
}

/// Rational intervals render as `p/q` pairs in lowest terms.
pub fn interval_string(lo: &BigRational, hi: &BigRational) -> String {
    format!("[{lo}, {hi}]")
}
