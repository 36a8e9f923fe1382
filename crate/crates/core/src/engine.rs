//! Counting polynomials for commuting tuples in `GL_n(F_q)`.
//!
//! Everything is expressed through two memoized weight functions indexed by
//! `(level, r, m)`, where `r` is the size of a block and `m` the exponent of
//! the field extension `F_{q^m}` that block lives over:
//!
//! * `ss_weight`: semisimple tuples of length `level` acting on an
//!   `r`-dimensional `F_{q^m}` space, divided by `|GL_r(q^m)|`;
//! * `mixed_weight`: the same nesting, ending in a pair (semisimple, free)
//!   whose count per semisimple class collapses to a single polynomial.
//!
//! Intermediate values are rational functions; final results are multiplied
//! by `|GL_n(q)|` and certified to be integer polynomials by exact division.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{to_laurent, Degree, PolyError};
use crate::typecomb::{enumerate_types, psi, type_pairs, TypeOfN, TypePairList};
use crate::{QLaurent, QPoly, QRatFunc};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("n must be at least 1")]
    EmptyMatrix,
    #[error("{mode} counts need k >= {min}, got k = {k}")]
    InvalidArity { mode: Mode, k: usize, min: usize },
    #[error("p-rank must be 0 or 1, got {0}")]
    InvalidPrank(u32),
    #[error("(n, k) = ({n}, {k}) exceeds the configured ceiling ({max_n}, {max_k})")]
    DepthLimit {
        n: usize,
        k: usize,
        max_n: usize,
        max_k: usize,
    },
    #[error("result for n={n}, k={k}, mode {mode} is not an integer polynomial: {detail}")]
    IntegralityViolation {
        n: usize,
        k: usize,
        mode: Mode,
        detail: String,
    },
    #[error("degree {degree} is below the lower bound {bound} (n={n}, k={k})")]
    DegreeViolation {
        n: usize,
        k: usize,
        degree: Degree,
        bound: usize,
    },
    #[error("expected a monic polynomial of degree {bound} (n={n}, k={k}), got degree {degree}")]
    MonicViolation {
        n: usize,
        k: usize,
        degree: Degree,
        bound: usize,
    },
    #[error("quotient by |GL_n| is not a Laurent polynomial: {0}")]
    NotLaurent(PolyError),
    #[error("Laurent quotient has a non-integer coefficient: {0}")]
    NonIntegerCoefficient(String),
    #[error("check is not defined for mode {0}")]
    WrongMode(Mode),
    #[error("cache: {0}")]
    Cache(String),
}

/// What a counting polynomial counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    /// Commuting tuples, every entry semisimple.
    #[serde(rename = "ss")]
    AllSemisimple,
    /// Commuting tuples, all but the last entry semisimple.
    #[serde(rename = "mixed")]
    Mixed,
    /// Conjugacy classes of commuting semisimple tuples.
    #[serde(rename = "conj")]
    ConjugacyClasses,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::AllSemisimple => "ss",
            Mode::Mixed => "mixed",
            Mode::ConjugacyClasses => "conj",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ss" => Ok(Mode::AllSemisimple),
            "mixed" => Ok(Mode::Mixed),
            "conj" => Ok(Mode::ConjugacyClasses),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// Memo key of a weight subproblem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CountKey {
    /// Remaining nesting depth.
    pub level: usize,
    /// Block size.
    pub r: usize,
    /// Field-extension exponent: the block is a vector space over `F_{q^m}`.
    pub m: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
enum WeightKind {
    #[serde(rename = "ss")]
    Semisimple,
    #[serde(rename = "mixed")]
    Mixed,
}

/// An integer polynomial `P(q)` with what it counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingPolynomial {
    poly: QPoly,
    n: usize,
    k: usize,
    mode: Mode,
}

impl CountingPolynomial {
    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn degree(&self) -> Degree {
        self.poly.degree()
    }

    pub fn coefficients(&self) -> Vec<BigInt> {
        self.poly
            .integer_coeffs()
            .expect("integrality checked at construction")
    }

    pub fn eval(&self, q: u64) -> BigInt {
        self.poly
            .eval(&BigRational::from_integer(q.into()))
            .to_integer()
    }
}

/// Ceiling on `(n, k)`; `None` disables it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_n: usize,
    pub max_k: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_n: 6, max_k: 6 }
    }
}

struct TypeEntry {
    psi: QPoly,
    pairs: TypePairList,
}

type Memo = HashMap<(WeightKind, CountKey), QRatFunc>;

/// Evaluates the counting recursions. Shareable across threads: the memo is
/// the only mutable state and each key is inserted at most once.
pub struct CountingEngine {
    memo: RwLock<Memo>,
    types: RwLock<HashMap<usize, Arc<Vec<TypeEntry>>>>,
    memoize: bool,
    limits: Option<Limits>,
}

impl Default for CountingEngine {
    fn default() -> Self {
        Self::new()
    }
}

/// `|GL_n(F_q)| = prod_{j<n} (q^n - q^j)`.
pub fn gl_order(n: usize) -> QPoly {
    assert!(n >= 1, "GL_0 is not counted");
    let one = BigRational::one();
    let top = QPoly::monomial(one.clone(), n);
    (0..n)
        .map(|j| &top - &QPoly::monomial(one.clone(), j))
        .product()
}

impl CountingEngine {
    pub fn new() -> Self {
        CountingEngine {
            memo: RwLock::new(HashMap::new()),
            types: RwLock::new(HashMap::new()),
            memoize: true,
            limits: Some(Limits::default()),
        }
    }

    pub fn with_limits(mut self, limits: Option<Limits>) -> Self {
        self.limits = limits;
        self
    }

    /// Recompute every subproblem instead of consulting the memo table.
    pub fn without_memo(mut self) -> Self {
        self.memoize = false;
        self
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    fn types_of(&self, n: usize) -> Arc<Vec<TypeEntry>> {
        if let Some(t) = self.types.read().unwrap().get(&n) {
            return Arc::clone(t);
        }
        let entries: Vec<TypeEntry> = enumerate_types(n)
            .iter()
            .map(|t| TypeEntry {
                psi: psi(t),
                pairs: type_pairs(t),
            })
            .collect();
        let mut w = self.types.write().unwrap();
        Arc::clone(w.entry(n).or_insert_with(|| Arc::new(entries)))
    }

    /// Types of `n` with their polynomial counts.
    pub fn types_with_psi(&self, n: usize) -> Vec<(TypeOfN, QPoly)> {
        enumerate_types(n)
            .into_iter()
            .map(|t| {
                let p = psi(&t);
                (t, p)
            })
            .collect()
    }

    fn memoized(
        &self,
        kind: WeightKind,
        key: CountKey,
        compute: impl FnOnce() -> QRatFunc,
    ) -> QRatFunc {
        if self.memoize {
            if let Some(v) = self.memo.read().unwrap().get(&(kind, key)) {
                return v.clone();
            }
        }
        let value = compute();
        if self.memoize {
            let mut w = self.memo.write().unwrap();
            return w.entry((kind, key)).or_insert(value).clone();
        }
        value
    }

    // sum over types Λ of r: psi_Λ(q^m) * prod_{(i, r')} child(r', m * i)
    fn type_sum(&self, r: usize, m: usize, child: impl Fn(usize, usize) -> QRatFunc) -> QRatFunc {
        self.types_of(r)
            .iter()
            .map(|entry| {
                let weight = QRatFunc::from_poly(entry.psi.compose_monomial(m));
                entry
                    .pairs
                    .iter()
                    .fold(weight, |acc, &(i, rr)| &acc * &child(rr, m * i))
            })
            .sum()
    }

    /// Semisimple weight: `1 / |GL_r(q^m)|` at level 0, otherwise the type
    /// sum of `ss_weight(level - 1, r', m i)` over the pairs `(i, r')`.
    pub fn ss_weight(&self, level: usize, r: usize, m: usize) -> QRatFunc {
        let key = CountKey { level, r, m };
        self.memoized(WeightKind::Semisimple, key, || {
            if level == 0 {
                let order = gl_order(r).compose_monomial(m);
                QRatFunc::new(QPoly::one(), order).expect("group order is nonzero")
            } else {
                self.type_sum(r, m, |rr, mm| self.ss_weight(level - 1, rr, mm))
            }
        })
    }

    /// Mixed weight: `(q^m - 1) q^{m(r-1)}` at level 0, otherwise the same
    /// type sum as [`ss_weight`](Self::ss_weight).
    pub fn mixed_weight(&self, level: usize, r: usize, m: usize) -> QRatFunc {
        let key = CountKey { level, r, m };
        self.memoized(WeightKind::Mixed, key, || {
            if level == 0 {
                let one = BigRational::one();
                let qm = QPoly::monomial(one.clone(), m);
                let leaf = &(&qm - &QPoly::one()) * &QPoly::monomial(one, m * (r - 1));
                QRatFunc::from_poly(leaf)
            } else {
                self.type_sum(r, m, |rr, mm| self.mixed_weight(level - 1, rr, mm))
            }
        })
    }

    fn check_limits(&self, n: usize, k: usize) -> Result<(), EngineError> {
        if n == 0 {
            return Err(EngineError::EmptyMatrix);
        }
        match self.limits {
            Some(l) if n > l.max_n || k > l.max_k => Err(EngineError::DepthLimit {
                n,
                k,
                max_n: l.max_n,
                max_k: l.max_k,
            }),
            _ => Ok(()),
        }
    }

    fn certify(
        &self,
        value: QRatFunc,
        n: usize,
        k: usize,
        mode: Mode,
    ) -> Result<CountingPolynomial, EngineError> {
        let violation = |detail: String| EngineError::IntegralityViolation { n, k, mode, detail };
        let poly = value
            .numerator()
            .div_exact(value.denominator())
            .map_err(|e| violation(format!("{e}; value {value}")))?;
        if poly.integer_coeffs().is_none() {
            return Err(violation(format!("fractional coefficient in {poly}")));
        }
        Ok(CountingPolynomial { poly, n, k, mode })
    }

    /// Ordered `k`-tuples of commuting semisimple elements of `GL_n(F_q)`.
    pub fn count_semisimple_tuples(
        &self,
        n: usize,
        k: usize,
    ) -> Result<CountingPolynomial, EngineError> {
        self.check_limits(n, k)?;
        let value = self.ss_weight(k, n, 1).mul_poly(&gl_order(n));
        self.certify(value, n, k, Mode::AllSemisimple)
    }

    /// Ordered `k`-tuples of commuting elements of `GL_n(F_q)` whose first
    /// `k - 1` entries are semisimple.
    pub fn count_mixed_tuples(
        &self,
        n: usize,
        k: usize,
    ) -> Result<CountingPolynomial, EngineError> {
        self.check_limits(n, k)?;
        if k < 2 {
            return Err(EngineError::InvalidArity {
                mode: Mode::Mixed,
                k,
                min: 2,
            });
        }
        let value = self.mixed_weight(k - 2, n, 1).mul_poly(&gl_order(n));
        self.certify(value, n, k, Mode::Mixed)
    }

    /// Conjugacy classes of commuting semisimple `k`-tuples in `GL_n(F_q)`.
    pub fn count_conjugacy_classes(
        &self,
        n: usize,
        k: usize,
    ) -> Result<CountingPolynomial, EngineError> {
        self.check_limits(n, k)?;
        if k < 1 {
            return Err(EngineError::InvalidArity {
                mode: Mode::ConjugacyClasses,
                k,
                min: 1,
            });
        }
        let value = self.mixed_weight(k - 1, n, 1);
        self.certify(value, n, k, Mode::ConjugacyClasses)
    }

    pub fn count(&self, n: usize, k: usize, mode: Mode) -> Result<CountingPolynomial, EngineError> {
        match mode {
            Mode::AllSemisimple => self.count_semisimple_tuples(n, k),
            Mode::Mixed => self.count_mixed_tuples(n, k),
            Mode::ConjugacyClasses => self.count_conjugacy_classes(n, k),
        }
    }

    /// Homomorphisms from the fundamental group of a `g`-dimensional abelian
    /// variety of p-rank `prank` into `GL_n(F_q)`.
    pub fn hom_count(
        &self,
        n: usize,
        g: usize,
        prank: u32,
    ) -> Result<CountingPolynomial, EngineError> {
        match prank {
            0 => self.count_semisimple_tuples(n, 2 * g),
            1 => self.count_mixed_tuples(n, 2 * g),
            other => Err(EngineError::InvalidPrank(other)),
        }
    }

    pub fn save_cache(&self, path: &Path) -> Result<(), EngineError> {
        let memo = self.memo.read().unwrap();
        let mut entries: Vec<CacheEntry> = memo
            .iter()
            .map(|(&(mode, key), value)| CacheEntry {
                level: key.level,
                r: key.r,
                m: key.m,
                mode,
                value: value.clone(),
            })
            .collect();
        entries.sort_by_key(|e| (e.mode, e.level, e.r, e.m));
        let text = serde_json::to_string(&CacheFile { entries })
            .map_err(|e| EngineError::Cache(e.to_string()))?;
        fs::write(path, text).map_err(|e| EngineError::Cache(format!("{}: {e}", path.display())))
    }

    /// Merges a cache file into the memo table. Missing files are not an error.
    pub fn load_cache(&self, path: &Path) -> Result<usize, EngineError> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(EngineError::Cache(format!("{}: {e}", path.display()))),
        };
        let file: CacheFile =
            serde_json::from_str(&text).map_err(|e| EngineError::Cache(e.to_string()))?;
        let mut memo = self.memo.write().unwrap();
        let count = file.entries.len();
        for e in file.entries {
            let key = CountKey {
                level: e.level,
                r: e.r,
                m: e.m,
            };
            memo.entry((e.mode, key)).or_insert(e.value);
        }
        Ok(count)
    }
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    level: usize,
    r: usize,
    m: usize,
    mode: WeightKind,
    value: QRatFunc,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    entries: Vec<CacheEntry>,
}

/// Outcome of the degree and leading-coefficient checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub n: usize,
    pub k: usize,
    pub degree: Option<usize>,
    /// `n^2 + (k - 1) n`
    pub bound: usize,
    pub meets_bound: bool,
    pub monic: bool,
    /// Whether the bound was enforced (even `k`) or only observed (odd `k`).
    pub enforced: bool,
}

/// Checks `deg P >= n^2 + (k-1) n`, enforced for even `k`, and that `P` is
/// monic of exactly that degree when `k = 2`.
pub fn check_degree_monic(p: &CountingPolynomial) -> Result<DegreeReport, EngineError> {
    if p.mode == Mode::ConjugacyClasses {
        return Err(EngineError::WrongMode(p.mode));
    }
    let (n, k) = (p.n, p.k);
    let bound = n * n + (k.max(1) - 1) * n;
    let degree = p.degree();
    let meets_bound = degree >= Degree::Finite(bound);
    let monic = p.poly.is_monic();
    let enforced = k % 2 == 0 && k > 0;
    if enforced && !meets_bound {
        return Err(EngineError::DegreeViolation {
            n,
            k,
            degree,
            bound,
        });
    }
    if k == 2 && (degree != Degree::Finite(bound) || !monic) {
        return Err(EngineError::MonicViolation {
            n,
            k,
            degree,
            bound,
        });
    }
    Ok(DegreeReport {
        n,
        k,
        degree: degree.finite(),
        bound,
        meets_bound,
        monic,
        enforced,
    })
}

/// `P / |GL_n(q)|` as an integer Laurent polynomial.
pub fn check_laurent_quotient(p: &CountingPolynomial) -> Result<QLaurent, EngineError> {
    if p.mode == Mode::ConjugacyClasses {
        return Err(EngineError::WrongMode(p.mode));
    }
    let l = to_laurent(&p.poly, &gl_order(p.n)).map_err(EngineError::NotLaurent)?;
    if l.integer_coeffs().is_none() {
        return Err(EngineError::NonIntegerCoefficient(l.to_string()));
    }
    Ok(l)
}
