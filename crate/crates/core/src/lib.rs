//! Exact counting polynomials for commuting tuples of invertible matrices
//! over finite fields.
//!
//! * [`exactpoly`]: polynomials, rational functions and Laurent polynomials in `q`.
//! * [`typecomb`]: partitions, factorization types and their polynomial counts.
//! * [`engine`]: the counting recursions and the structural checks on their output.
//! * [`fforacle`]: brute-force enumeration over explicit finite fields.
//! * [`groupdiv`]: divisibility experiments on small permutation groups.

pub mod engine;
pub mod exactpoly;
pub mod fforacle;
pub mod groupdiv;
pub mod typecomb;

use num_rational::BigRational;

/// Polynomial over the rationals.
pub type QPoly = exactpoly::Poly<BigRational>;
/// Rational function over the rationals.
pub type QRatFunc = exactpoly::RationalFunction<BigRational>;
/// Laurent polynomial over the rationals.
pub type QLaurent = exactpoly::LaurentPoly<BigRational>;

pub use engine::{CountingEngine, CountingPolynomial, Mode};
pub use exactpoly::{Degree, PolyError};
pub use typecomb::{Partition, TypeOfN};
