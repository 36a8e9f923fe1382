use std::collections::{HashMap, VecDeque};

use super::perm::Perm;
use super::{factorize, GroupError};

/// Default ceiling on the size of a generated group.
pub const CLOSURE_LIMIT: usize = 10_000;

/// A finite permutation group with every element listed.
///
/// Element 0 is the identity; the rest follow in breadth-first order from
/// the generators, so equal generator lists give equal tables.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    inverses: Vec<usize>,
    orders: Vec<u64>,
}

/// Closes `gens` under composition. All generators must act on `degree`
/// points. Fails once more than `limit` elements have been found.
pub fn group_generate(
    degree: usize,
    gens: &[Perm],
    limit: usize,
) -> Result<FiniteGroupTable, GroupError> {
    if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
        return Err(GroupError::DomainMismatch {
            expected: degree,
            found: bad.degree(),
        });
    }
    let identity = Perm::identity(degree);
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let y = elements[i].then(g);
            if index.contains_key(&y) {
                continue;
            }
            if elements.len() == limit {
                return Err(GroupError::ClosureBudgetExceeded { limit });
            }
            index.insert(y.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(y);
        }
    }
    let inverses = elements.iter().map(|x| index[&x.inverse()]).collect();
    let group_order = elements.len() as u64;
    let primes: Vec<u64> = factorize(group_order).into_iter().map(|(p, _)| p).collect();
    let orders = elements
        .iter()
        .map(|x| element_order(x, group_order, &primes))
        .collect();
    Ok(FiniteGroupTable {
        degree,
        elements,
        index,
        inverses,
        orders,
    })
}

/// Order of `x`, given that it divides `exponent_bound`: start from the
/// bound and strip each prime while the smaller power is still trivial.
fn element_order(x: &Perm, exponent_bound: u64, primes: &[u64]) -> u64 {
    let mut e = exponent_bound;
    for &p in primes {
        while e.is_multiple_of(p) && x.pow(e / p).is_identity() {
            e /= p;
        }
    }
    e
}

impl FiniteGroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &Perm) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].then(&self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.orders[a]
    }

    pub fn is_abelian(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| a.commutes_with(b)))
    }

    /// Sorted element indices of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut found = vec![0];
        let mut cursor = 0;
        while cursor < found.len() {
            let x = found[cursor];
            cursor += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    found.push(y);
                }
            }
        }
        found.sort_unstable();
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perms(degree: usize, gens: &[&str]) -> Vec<Perm> {
        gens.iter()
            .map(|g| Perm::parse(degree, g).unwrap())
            .collect()
    }

    #[test]
    fn small_closures() {
        let s3 = group_generate(3, &perms(3, &["(1 2)", "(1 2 3)"]), CLOSURE_LIMIT).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(s3.element(0).is_identity());
        assert!(!s3.is_abelian());
        let mut orders: Vec<u64> = (0..6).map(|i| s3.element_order(i)).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 3]);
        let c4 = group_generate(4, &perms(4, &["(1 2 3 4)"]), CLOSURE_LIMIT).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.is_abelian());
    }

    #[test]
    fn closure_limit_is_enforced() {
        let gens = perms(5, &["(1 2)", "(1 2 3 4 5)"]);
        assert_eq!(
            group_generate(5, &gens, 100).unwrap_err(),
            GroupError::ClosureBudgetExceeded { limit: 100 }
        );
        assert_eq!(
            group_generate(5, &gens, CLOSURE_LIMIT).unwrap().order(),
            120
        );
    }

    #[test]
    fn generation_is_deterministic() {
        let gens = perms(4, &["(1 2)", "(1 2 3 4)"]);
        let a = group_generate(4, &gens, CLOSURE_LIMIT).unwrap();
        let b = group_generate(4, &gens, CLOSURE_LIMIT).unwrap();
        assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn table_operations_agree_with_perms() {
        let s4 = group_generate(4, &perms(4, &["(1 2)", "(1 2 3 4)"]), CLOSURE_LIMIT).unwrap();
        for a in 0..s4.order() {
            assert_eq!(s4.mul(a, s4.inverse(a)), 0);
            let x = s4.element(a);
            assert!(x.pow(s4.element_order(a)).is_identity());
        }
        let v4 = s4.subgroup(&[
            s4.index_of(&Perm::parse(4, "(1 2)(3 4)").unwrap()).unwrap(),
            s4.index_of(&Perm::parse(4, "(1 3)(2 4)").unwrap()).unwrap(),
        ]);
        assert_eq!(v4.len(), 4);
        assert_eq!(s4.subgroup(&[]), vec![0]);
    }
}
