//! Divisibility checks on small permutation groups.
//!
//! Groups are generated as full element tables. On top of those sit the
//! Frobenius count `#{x : x^n = 1}`, the `p`-power count on cosets `Hx`, and
//! counts of commuting `k`-tuples with orders prime to a set of primes, with
//! a valuation report comparing those counts to `|G|`.

mod checks;
mod corpus;
mod group;
mod perm;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use checks::{
    coset_p_power_count, coset_triples, divisibility_report, frobenius_count,
    hom_count_profinite_abelian, CosetCheck, CosetTriple, DivisibilityReport, FrobeniusCheck,
    ValuationCheck, HOM_COUNT_LIMIT,
};
pub use corpus::{
    default_corpus, group_suite, matrix_group_perms, parse_corpus, render_corpus, CorpusEntry,
    CosetFailure, CosetSummary, GroupSuiteReport, SuiteConfig, DEFAULT_CORPUS,
};
pub use group::{group_generate, FiniteGroupTable, CLOSURE_LIMIT};
pub use perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group closure exceeded {limit} elements")]
    ClosureBudgetExceeded { limit: usize },
    #[error("group of order {order} is over the counting budget of {limit}")]
    BudgetExceeded { order: usize, limit: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("generator acts on {found} points, expected {expected}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// `Fail` if any input fails, `Pass` otherwise.
    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Self {
        Verdict::from_bool(verdicts.into_iter().all(|v| v != Verdict::Fail))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "n/a",
        })
    }
}

/// A finite set of primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeSet(BTreeSet<u64>);

impl PrimeSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self, GroupError> {
        let set: BTreeSet<u64> = primes.into_iter().collect();
        match set.iter().find(|&&p| !is_prime(p)) {
            Some(&bad) => Err(GroupError::NotPrime(bad)),
            None => Ok(PrimeSet(set)),
        }
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.contains(&p)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for PrimeSet {
    type Err = GroupError;

    /// Comma-separated primes; the empty string is the empty set.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let primes = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| GroupError::Parse(format!("'{t}' is not an integer")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        PrimeSet::new(primes)
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Exponent of `p` in `n`; `n` must be nonzero.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

fn decimal<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}
