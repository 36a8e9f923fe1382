use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::group::FiniteGroupTable;
use super::{factorize, is_prime, valuation, GroupError, PrimeSet, Verdict};

/// Default ceiling on `|G|` for tuple counting.
pub const HOM_COUNT_LIMIT: usize = 2_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusCheck {
    pub n: u64,
    /// `#{x : x^n = 1}`
    pub count: u64,
    pub n_divides_order: bool,
    pub divisible: bool,
    /// Only asserted when `n` divides `|G|`.
    pub verdict: Verdict,
}

/// Counts solutions of `x^n = 1` and tests whether `n` divides the count.
pub fn frobenius_count(g: &FiniteGroupTable, n: u64) -> FrobeniusCheck {
    assert!(n > 0, "n must be positive");
    let count = (0..g.order())
        .filter(|&i| n.is_multiple_of(g.element_order(i)))
        .count() as u64;
    let n_divides_order = (g.order() as u64).is_multiple_of(n);
    let divisible = count.is_multiple_of(n);
    let verdict = match (n_divides_order, divisible) {
        (false, _) => Verdict::NotApplicable,
        (true, true) => Verdict::Pass,
        (true, false) => Verdict::Fail,
    };
    FrobeniusCheck {
        n,
        count,
        n_divides_order,
        divisible,
        verdict,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetCheck {
    pub p: u64,
    pub subgroup_order: u64,
    /// `p^r`, the `p`-part of `|H|`.
    pub p_part: u64,
    /// Elements of `Hx` whose order is a power of `p`.
    pub count: u64,
    pub verdict: Verdict,
}

/// Counts the `p`-power-order elements of the coset `Hx`, `H = <h_gens>`,
/// and tests divisibility by the `p`-part of `|H|`.
pub fn coset_p_power_count(
    g: &FiniteGroupTable,
    h_gens: &[usize],
    x: usize,
    p: u64,
) -> Result<CosetCheck, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if let Some(&bad) = h_gens.iter().chain([&x]).find(|&&i| i >= g.order()) {
        return Err(GroupError::PreconditionViolated(format!(
            "element index {bad} outside a group of order {}",
            g.order()
        )));
    }
    if !is_p_power(g.element_order(x), p) {
        return Err(GroupError::PreconditionViolated(format!(
            "{} has order {}, not a power of {p}",
            g.element(x),
            g.element_order(x)
        )));
    }
    let h = g.subgroup(h_gens);
    if !normalizes(g, &h, h_gens, x) {
        return Err(GroupError::PreconditionViolated(format!(
            "{} does not normalize the subgroup",
            g.element(x)
        )));
    }
    let count = h
        .iter()
        .filter(|&&y| is_p_power(g.element_order(g.mul(y, x)), p))
        .count() as u64;
    let p_part = p.pow(valuation(h.len() as u64, p));
    Ok(CosetCheck {
        p,
        subgroup_order: h.len() as u64,
        p_part,
        count,
        verdict: Verdict::from_bool(count.is_multiple_of(p_part)),
    })
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// `x^{-1} h x` lies in `subgroup` for every generator `h`.
fn normalizes(g: &FiniteGroupTable, subgroup: &[usize], h_gens: &[usize], x: usize) -> bool {
    let x_inv = g.inverse(x);
    h_gens
        .iter()
        .all(|&h| subgroup.binary_search(&g.mul(g.mul(x_inv, h), x)).is_ok())
}

/// Input to [`coset_p_power_count`] that satisfies its preconditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTriple {
    pub h_gens: Vec<usize>,
    pub x: usize,
    pub p: u64,
}

/// Every valid triple `(H, x, p)` with `p` dividing `|G|` and `H` generated
/// by at most two elements. Each subgroup appears once, with the first
/// generating pair found.
pub fn coset_triples(g: &FiniteGroupTable) -> Vec<CosetTriple> {
    let mut subgroups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in 0..g.order() {
        for b in a..g.order() {
            let gens = if a == b { vec![a] } else { vec![a, b] };
            let h = g.subgroup(&gens);
            if seen.insert(h.clone()) {
                subgroups.push((gens, h));
            }
        }
    }
    let primes: Vec<u64> = factorize(g.order() as u64)
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    let mut out = Vec::new();
    for (gens, h) in &subgroups {
        for &p in &primes {
            for x in 0..g.order() {
                if is_p_power(g.element_order(x), p) && normalizes(g, h, gens, x) {
                    out.push(CosetTriple {
                        h_gens: gens.clone(),
                        x,
                        p,
                    });
                }
            }
        }
    }
    out
}

/// Ordered `k`-tuples of pairwise-commuting elements whose orders avoid every
/// prime of `s`. Tuples are extended through the common centralizer, and
/// counts are memoized on that centralizer.
pub fn hom_count_profinite_abelian(
    g: &FiniteGroupTable,
    k: usize,
    s: &PrimeSet,
    max_order: Option<usize>,
) -> Result<BigUint, GroupError> {
    if let Some(limit) = max_order {
        if g.order() > limit {
            return Err(GroupError::BudgetExceeded {
                order: g.order(),
                limit,
            });
        }
    }
    let allowed: Vec<usize> = (0..g.order())
        .filter(|&i| s.iter().all(|p| !g.element_order(i).is_multiple_of(p)))
        .collect();
    let m = allowed.len();
    let centralizers: Vec<FixedBitSet> = allowed
        .iter()
        .map(|&a| {
            let mut c = FixedBitSet::with_capacity(m);
            for (j, &b) in allowed.iter().enumerate() {
                c.set(j, g.element(a).commutes_with(g.element(b)));
            }
            c
        })
        .collect();
    let mut memo = HashMap::new();
    let mut all = FixedBitSet::with_capacity(m);
    all.insert_range(..);
    Ok(extend(k, &all, &centralizers, &mut memo))
}

fn extend(
    remaining: usize,
    candidates: &FixedBitSet,
    centralizers: &[FixedBitSet],
    memo: &mut HashMap<(usize, FixedBitSet), BigUint>,
) -> BigUint {
    if remaining == 0 {
        return BigUint::one();
    }
    if remaining == 1 {
        return BigUint::from(candidates.count_ones(..));
    }
    let key = (remaining, candidates.clone());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    for a in candidates.ones() {
        let mut next = candidates.clone();
        next.intersect_with(&centralizers[a]);
        total += extend(remaining - 1, &next, centralizers, memo);
    }
    memo.insert(key, total.clone());
    total
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationCheck {
    pub prime: u64,
    pub in_s: bool,
    pub v_hom: u32,
    pub v_order: u32,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub k: usize,
    pub s: PrimeSet,
    pub group_order: u64,
    #[serde(serialize_with = "super::decimal")]
    pub hom_count: BigUint,
    /// `hom_count / |G|` in lowest terms.
    pub quotient: String,
    pub valuations: Vec<ValuationCheck>,
    pub verdict: Verdict,
}

/// Tests `v_l(#Hom) >= v_l(|G|)` for each prime `l` of `|G|` outside `s`,
/// where `#Hom` counts commuting `k`-tuples with orders prime to `s`.
pub fn divisibility_report(
    g: &FiniteGroupTable,
    k: usize,
    s: &PrimeSet,
    max_order: Option<usize>,
) -> Result<DivisibilityReport, GroupError> {
    let hom = hom_count_profinite_abelian(g, k, s, max_order)?;
    let order = g.order() as u64;
    let valuations: Vec<ValuationCheck> = factorize(order)
        .into_iter()
        .map(|(prime, v_order)| {
            let v_hom = big_valuation(&hom, prime);
            let in_s = s.contains(prime);
            let verdict = if in_s {
                Verdict::NotApplicable
            } else {
                Verdict::from_bool(v_hom >= v_order)
            };
            ValuationCheck {
                prime,
                in_s,
                v_hom,
                v_order,
                verdict,
            }
        })
        .collect();
    let verdict = Verdict::all(valuations.iter().map(|v| v.verdict));
    let d = hom.gcd(&BigUint::from(order));
    let (num, den) = (&hom / &d, BigUint::from(order) / &d);
    let quotient = if den.is_one() {
        num.to_string()
    } else {
        format!("{num}/{den}")
    };
    Ok(DivisibilityReport {
        k,
        s: s.clone(),
        group_order: order,
        hom_count: hom,
        quotient,
        valuations,
        verdict,
    })
}

fn big_valuation(n: &BigUint, p: u64) -> u32 {
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::super::group::{group_generate, CLOSURE_LIMIT};
    use super::super::perm::Perm;
    use super::*;

    fn group(degree: usize, gens: &[&str]) -> FiniteGroupTable {
        let gens: Vec<Perm> = gens
            .iter()
            .map(|g| Perm::parse(degree, g).unwrap())
            .collect();
        group_generate(degree, &gens, CLOSURE_LIMIT).unwrap()
    }

    fn idx(g: &FiniteGroupTable, s: &str) -> usize {
        g.index_of(&Perm::parse(g.degree(), s).unwrap()).unwrap()
    }

    fn primes(ps: &[u64]) -> PrimeSet {
        PrimeSet::new(ps.iter().copied()).unwrap()
    }

    #[test]
    fn frobenius_in_s3() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        assert_eq!(frobenius_count(&s3, 2).count, 4);
        assert_eq!(frobenius_count(&s3, 3).count, 3);
        let full = frobenius_count(&s3, 6);
        assert_eq!((full.count, full.verdict), (6, Verdict::Pass));
        assert_eq!(frobenius_count(&s3, 4).verdict, Verdict::NotApplicable);
    }

    #[test]
    fn coset_examples() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let c = coset_p_power_count(&s3, &[idx(&s3, "(1 2 3)")], idx(&s3, "(1 2)"), 2).unwrap();
        assert_eq!((c.count, c.p_part, c.verdict), (3, 1, Verdict::Pass));

        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let v4 = [idx(&s4, "(1 2)(3 4)"), idx(&s4, "(1 3)(2 4)")];
        let c = coset_p_power_count(&s4, &v4, 0, 2).unwrap();
        assert_eq!((c.count, c.p_part, c.verdict), (4, 4, Verdict::Pass));
        let c = coset_p_power_count(&s4, &v4, idx(&s4, "(1 2)"), 2).unwrap();
        assert_eq!(c.p_part, 4);
        assert_eq!(c.count % 4, 0);
    }

    #[test]
    fn coset_preconditions() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let h = [idx(&s4, "(1 2 3)")];
        assert!(matches!(
            coset_p_power_count(&s4, &h, idx(&s4, "(1 4)"), 2),
            Err(GroupError::PreconditionViolated(_))
        ));
        assert!(matches!(
            coset_p_power_count(&s4, &h, idx(&s4, "(1 2 3)"), 2),
            Err(GroupError::PreconditionViolated(_))
        ));
        assert_eq!(
            coset_p_power_count(&s4, &h, 0, 4).unwrap_err(),
            GroupError::NotPrime(4)
        );
    }

    #[test]
    fn hom_counts_in_s3() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let count = |k, s: &[u64]| {
            hom_count_profinite_abelian(&s3, k, &primes(s), Some(HOM_COUNT_LIMIT)).unwrap()
        };
        assert_eq!(count(1, &[2]), BigUint::from(3u32));
        assert_eq!(count(2, &[2]), BigUint::from(9u32));
        assert_eq!(count(1, &[]), BigUint::from(6u32));
        // commuting pairs in S3: sum of centralizer orders = 6 * #classes
        assert_eq!(count(2, &[]), BigUint::from(18u32));
    }

    #[test]
    fn hom_count_respects_budget() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        assert_eq!(
            hom_count_profinite_abelian(&s3, 2, &PrimeSet::default(), Some(5)).unwrap_err(),
            GroupError::BudgetExceeded { order: 6, limit: 5 }
        );
    }

    #[test]
    fn s3_report() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let r = divisibility_report(&s3, 2, &primes(&[2]), None).unwrap();
        assert_eq!(r.quotient, "3/2");
        assert_eq!(r.verdict, Verdict::Pass);
        let v3 = r.valuations.iter().find(|v| v.prime == 3).unwrap();
        assert_eq!((v3.v_hom, v3.v_order), (2, 1));
    }

    #[test]
    fn cyclic_groups_give_powers() {
        let c6 = group(6, &["(1 2 3 4 5 6)"]);
        for k in 1..=3 {
            let r = divisibility_report(&c6, k, &PrimeSet::default(), None).unwrap();
            assert_eq!(r.hom_count, BigUint::from(6u32.pow(k as u32)));
            assert_eq!(r.verdict, Verdict::Pass);
        }
        assert_eq!(frobenius_count(&c6, 3).count, 3);
    }

    #[test]
    fn triples_are_valid() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let triples = coset_triples(&s3);
        assert!(!triples.is_empty());
        for t in &triples {
            assert!(coset_p_power_count(&s3, &t.h_gens, t.x, t.p).is_ok());
        }
    }
}
