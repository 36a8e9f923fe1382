//! Exact univariate arithmetic in the formal variable `q`.
//!
//! [`Poly`], [`RationalFunction`] and [`LaurentPoly`] are generic over the
//! coefficient type. The counting code only ever instantiates them with
//! [`BigRational`](num_rational::BigRational) (see the `Q*` aliases at the
//! crate root), but the arithmetic itself only needs a field.

mod laurent;
mod poly;
mod ratfunc;
mod repr;

use std::fmt;
use std::ops::Neg;

use num_traits::Num;
use thiserror::Error;

pub use laurent::{to_laurent, LaurentPoly};
pub use poly::Poly;
pub use ratfunc::RationalFunction;

/// Coefficient types the polynomial containers accept.
///
/// Division is assumed to be exact field division; integer types satisfy the
/// bound but make `div_rem` and `gcd` meaningless.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Num + Neg<Output = Self> {}

impl<T> Scalar for T where T: Clone + PartialEq + fmt::Debug + Num + Neg<Output = T> {}

/// Degree of a polynomial. The zero polynomial has degree `MinusInfinity`,
/// which orders below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,
    #[error("reduced denominator {0} is not a monomial")]
    NotLaurent(String),
    #[error("malformed polynomial encoding: {0}")]
    Decode(String),
}
