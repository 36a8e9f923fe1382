//! Brute-force ground truth over explicit finite fields.
//!
//! Nothing here knows about types or counting formulas: fields are built from
//! a table of moduli, matrices are enumerated, semisimplicity is tested via
//! the minimal polynomial, and tuples are counted by walking centralizers.

mod census;
mod count;
pub mod field;
pub mod fpoly;
pub mod matrix;

use serde::Serialize;
use thiserror::Error;

pub use census::{poly_type_census, CensusRecord};
pub use count::{
    brute_conj_count, brute_hom_count, brute_hom_count_naive, commuting_tuples,
    enumerate_invertible, gl_generators, TupleMode,
};
pub use field::{Elem, FieldSpec};
pub use fpoly::{irreducible_polys, FqPoly};
pub use matrix::{FFMatrix, MatrixSubspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("no field table entry for p = {p}, e = {e} (supported: p in 2,3,5,7 and e <= 3)")]
    UnsupportedField { p: u32, e: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{what} has size {size}, over the budget of {limit}")]
    BudgetExceeded {
        what: String,
        size: u128,
        limit: u128,
    },
    #[error("{0}")]
    InvalidInput(String),
}

/// Enumeration ceilings. `unlimited` lifts all of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest `|GL_n(F_q)|` to enumerate.
    pub max_group: u128,
    /// Largest `q^n` for polynomial censuses.
    pub max_polys: u128,
    /// Largest `(#tuples) * |GL_n|` for orbit sweeps.
    pub max_orbit_work: u128,
    pub unlimited: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_group: 200_000,
            max_polys: 1_000_000,
            max_orbit_work: 50_000_000,
            unlimited: false,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            unlimited: true,
            ..Budget::default()
        }
    }

    fn check(&self, what: impl Into<String>, size: u128, limit: u128) -> Result<(), OracleError> {
        if !self.unlimited && size > limit {
            return Err(OracleError::BudgetExceeded {
                what: what.into(),
                size,
                limit,
            });
        }
        Ok(())
    }
}

/// `|GL_n(F_q)|` computed from the product formula.
pub fn gl_size(n: usize, q: usize) -> u128 {
    let qn = (q as u128).pow(n as u32);
    (0..n).map(|j| qn - (q as u128).pow(j as u32)).product()
}

/// One brute-force count, as emitted to JSON. The count is a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRecord {
    pub n: usize,
    pub q: u64,
    pub k: usize,
    pub mode: String,
    pub count: String,
}

impl CountRecord {
    pub fn new(n: usize, q: u64, k: usize, mode: impl Into<String>, count: u128) -> Self {
        CountRecord {
            n,
            q,
            k,
            mode: mode.into(),
            count: count.to_string(),
        }
    }
}
