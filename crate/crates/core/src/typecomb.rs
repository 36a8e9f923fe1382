//! Partitions, factorization types, and the number of characteristic
//! polynomials of each type.
//!
//! A type of `n` is a partition `lambda` of `n` (the degrees of the irreducible
//! factors, repeated by multiplicity) together with, for each distinct degree
//! `i`, a partition of the number of times `i` occurs in `lambda` (how those
//! factors group into equal irreducibles).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::QPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("partition parts must be positive and weakly descending: {0:?}")]
    BadPartition(Vec<usize>),
    #[error("refinement of part {part} must partition {expected}, got {got:?}")]
    BadRefinement {
        part: usize,
        expected: usize,
        got: Vec<usize>,
    },
    #[error("refinement given for part {0}, which does not occur in lambda")]
    StrayRefinement(usize),
}

/// Weakly descending sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, TypeError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition(parts))
        } else {
            Err(TypeError::BadPartition(parts))
        }
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(value, multiplicity)` for each distinct part, largest value first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = TypeError;
    fn try_from(v: Vec<usize>) -> Result<Self, TypeError> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (j, p) in self.0.iter().enumerate() {
            if j > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// All partitions of `n`, reverse-lexicographic: `(n)` first, `(1^n)` last.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for first in (1..=rest.min(max)).rev() {
            prefix.push(first);
            go(rest - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// A type of `n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "TypeRepr")]
pub struct TypeOfN {
    lambda: Partition,
    refinements: BTreeMap<usize, Partition>,
}

#[derive(Deserialize)]
struct TypeRepr {
    lambda: Partition,
    refinements: BTreeMap<usize, Partition>,
}

impl TryFrom<TypeRepr> for TypeOfN {
    type Error = TypeError;
    fn try_from(r: TypeRepr) -> Result<Self, TypeError> {
        TypeOfN::new(r.lambda, r.refinements)
    }
}

impl TypeOfN {
    pub fn new(
        lambda: Partition,
        refinements: BTreeMap<usize, Partition>,
    ) -> Result<Self, TypeError> {
        let mults = lambda.multiplicities();
        for &part in refinements.keys() {
            if !mults.iter().any(|&(v, _)| v == part) {
                return Err(TypeError::StrayRefinement(part));
            }
        }
        for &(v, m) in &mults {
            let got = refinements
                .get(&v)
                .map(|p| p.parts().to_vec())
                .unwrap_or_default();
            if got.iter().sum::<usize>() != m {
                return Err(TypeError::BadRefinement {
                    part: v,
                    expected: m,
                    got,
                });
            }
        }
        Ok(TypeOfN {
            lambda,
            refinements,
        })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn refinement(&self, part: usize) -> Option<&Partition> {
        self.refinements.get(&part)
    }

    pub fn refinements(&self) -> &BTreeMap<usize, Partition> {
        &self.refinements
    }

    pub fn weight(&self) -> usize {
        self.lambda.weight()
    }
}

impl fmt::Display for TypeOfN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lambda={}", self.lambda)?;
        for (i, r) in self.refinements.iter().rev() {
            write!(f, " lambda^{i}={r}")?;
        }
        Ok(())
    }
}

/// Every type of `n` exactly once. Order: partitions reverse-lexicographic;
/// within a partition, refinements vary as a nested product with the largest
/// distinct part outermost.
pub fn enumerate_types(n: usize) -> Vec<TypeOfN> {
    let mut out = Vec::new();
    for lambda in enumerate_partitions(n) {
        let mults = lambda.multiplicities();
        let mut partial: Vec<BTreeMap<usize, Partition>> = vec![BTreeMap::new()];
        for &(v, m) in &mults {
            let choices = enumerate_partitions(m);
            partial = partial
                .into_iter()
                .flat_map(|acc| {
                    choices.iter().map(move |c| {
                        let mut next = acc.clone();
                        next.insert(v, c.clone());
                        next
                    })
                })
                .collect();
        }
        out.extend(partial.into_iter().map(|refinements| TypeOfN {
            lambda: lambda.clone(),
            refinements,
        }));
    }
    out
}

/// The `(i, r)` pairs of a type: one entry per part `r` of each `lambda^i`,
/// `i` descending, then `r` descending, repeats kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypePairList(pub Vec<(usize, usize)>);

impl TypePairList {
    pub fn iter(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.0.iter()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&(i, r)| i * r).sum()
    }
}

pub fn type_pairs(t: &TypeOfN) -> TypePairList {
    TypePairList(
        t.refinements
            .iter()
            .rev()
            .flat_map(|(&i, refinement)| refinement.parts().iter().map(move |&r| (i, r)))
            .collect(),
    )
}

pub fn mobius(n: usize) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducible polynomials of degree `i` over `F_q`, as a
/// polynomial in `q`. With `exclude_t`, the polynomial `T` itself is left out
/// of the degree-one count.
pub fn count_irreducibles(i: usize, exclude_t: bool) -> QPoly {
    assert!(i >= 1, "irreducible degree must be positive");
    let mut coeffs = vec![BigRational::from_integer(0.into()); i + 1];
    for k in (1..=i).filter(|k| i.is_multiple_of(*k)) {
        let mu = mobius(k);
        if mu != 0 {
            coeffs[i / k] += BigRational::new(mu.into(), (i as i64).into());
        }
    }
    if exclude_t && i == 1 {
        coeffs[0] -= BigRational::from_integer(1.into());
    }
    QPoly::new(coeffs)
}

/// Product over distinct part values of `(multiplicity)!`.
pub fn aut_factor(p: &Partition) -> u128 {
    p.multiplicities()
        .iter()
        .map(|&(_, m)| (1..=m as u128).product::<u128>())
        .product()
}

/// Number of monic degree-`n` polynomials with nonzero constant term whose
/// factorization has type `t`, as a polynomial in `q`.
pub fn psi(t: &TypeOfN) -> QPoly {
    t.refinements
        .iter()
        .map(|(&i, refinement)| {
            let irreducibles = count_irreducibles(i, true);
            let falling: QPoly = (0..refinement.len())
                .map(|j| &irreducibles - &QPoly::from_integers([j as i64]))
                .product();
            let aut = BigRational::from_integer(BigInt::from(aut_factor(refinement)));
            falling.scale(&(BigRational::from_integer(1.into()) / aut))
        })
        .product()
}
