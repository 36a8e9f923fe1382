use std::collections::BTreeMap;

use serde::Serialize;

use super::field::FieldSpec;
use super::fpoly::{factor_with, irreducibles_up_to, monic_polys};
use super::{Budget, OracleError};
use crate::typecomb::{enumerate_types, Partition, TypeOfN};

/// How many monic polynomials (nonzero constant term) have a given type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    #[serde(rename = "type")]
    pub type_of: TypeOfN,
    pub count: u64,
}

/// Factors every monic degree-`n` polynomial with nonzero constant term by
/// trial division and tallies the resulting types. Every type of `n` appears
/// in the output, in enumeration order, including those with count zero.
pub fn poly_type_census(
    f: &FieldSpec,
    n: usize,
    budget: &Budget,
) -> Result<Vec<CensusRecord>, OracleError> {
    if n == 0 {
        return Err(OracleError::InvalidInput("n must be at least 1".into()));
    }
    budget.check(
        format!("monic polynomials of degree {n} over F_{}", f.order()),
        (f.order() as u128).pow(n as u32),
        budget.max_polys,
    )?;
    let irreducibles = irreducibles_up_to(f, n);
    let mut tally: BTreeMap<TypeOfN, u64> = BTreeMap::new();
    for p in monic_polys(f, n).filter(|p| p.coeffs()[0] != 0) {
        let factors = factor_with(&p, &irreducibles, f);
        // degree -> multiplicities of the distinct factors of that degree
        let mut by_degree: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (g, mult) in &factors {
            by_degree
                .entry(g.degree().unwrap())
                .or_default()
                .push(*mult);
        }
        let mut lambda = Vec::new();
        let mut refinements = BTreeMap::new();
        for (&deg, mults) in by_degree.iter_mut().rev() {
            mults.sort_unstable_by(|a, b| b.cmp(a));
            lambda.extend(std::iter::repeat_n(deg, mults.iter().sum()));
            refinements.insert(deg, Partition::new(mults.clone()).expect("sorted"));
        }
        let t = TypeOfN::new(Partition::new(lambda).expect("sorted"), refinements)
            .expect("factorization yields a valid type");
        *tally.entry(t).or_insert(0) += 1;
    }
    Ok(enumerate_types(n)
        .into_iter()
        .map(|t| {
            let count = tally.get(&t).copied().unwrap_or(0);
            CensusRecord { type_of: t, count }
        })
        .collect())
}
