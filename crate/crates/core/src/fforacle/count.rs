use std::collections::{HashMap, HashSet};

use super::field::FieldSpec;
use super::matrix::{FFMatrix, MatrixSubspace};
use super::{gl_size, Budget, OracleError};

/// Which entries of a tuple must be semisimple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TupleMode {
    AllSemisimple,
    /// Every entry but the last is semisimple; the last is any invertible matrix.
    LastFree,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Class {
    Unknown,
    Singular,
    Invertible,
    Semisimple,
}

/// Lazily filled classification of every matrix in `M_n(F_q)`, indexed by code.
struct Classifier<'a> {
    f: &'a FieldSpec,
    flags: Vec<Class>,
}

impl<'a> Classifier<'a> {
    fn new(n: usize, f: &'a FieldSpec) -> Self {
        let total = (f.order() as u64).pow((n * n) as u32) as usize;
        Classifier {
            f,
            flags: vec![Class::Unknown; total],
        }
    }

    fn class(&mut self, m: &FFMatrix) -> Class {
        let code = m.code(self.f.order()) as usize;
        if self.flags[code] == Class::Unknown {
            self.flags[code] = if !m.is_invertible(self.f) {
                Class::Singular
            } else if m.is_semisimple(self.f) {
                Class::Semisimple
            } else {
                Class::Invertible
            };
        }
        self.flags[code]
    }

    fn allowed(&mut self, m: &FFMatrix, need_semisimple: bool) -> bool {
        match self.class(m) {
            Class::Semisimple => true,
            Class::Invertible => !need_semisimple,
            _ => false,
        }
    }
}

fn needs_semisimple(mode: TupleMode, remaining: usize) -> bool {
    match mode {
        TupleMode::AllSemisimple => true,
        TupleMode::LastFree => remaining > 1,
    }
}

fn check_group_budget(n: usize, f: &FieldSpec, budget: &Budget) -> Result<(), OracleError> {
    budget.check(
        format!("GL_{n}(F_{})", f.order()),
        gl_size(n, f.order()),
        budget.max_group,
    )
}

/// Every invertible `n x n` matrix over `f`, in code order.
pub fn enumerate_invertible<'a>(
    n: usize,
    f: &'a FieldSpec,
    budget: &Budget,
) -> Result<impl Iterator<Item = FFMatrix> + 'a, OracleError> {
    if n == 0 {
        return Err(OracleError::InvalidInput("n must be at least 1".into()));
    }
    check_group_budget(n, f, budget)?;
    let q = f.order();
    let total = (q as u64).pow((n * n) as u32);
    Ok((0..total)
        .map(move |c| FFMatrix::from_code(n, q, c))
        .filter(move |m| m.is_invertible(f)))
}

/// Generators of `GL_n(F_q)`: `diag(w, 1, ..., 1)` for a primitive `w`, and
/// the elementary transvections `I + b E_ij` for `b` in a basis of `F_q / F_p`.
pub fn gl_generators(n: usize, f: &FieldSpec) -> Vec<FFMatrix> {
    let mut diag = FFMatrix::identity(n).entries().to_vec();
    diag[0] = f.primitive_element();
    let mut gens = vec![FFMatrix::new(n, diag)];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for &b in &f.power_basis() {
                let mut e = FFMatrix::identity(n).entries().to_vec();
                e[i * n + j] = b;
                gens.push(FFMatrix::new(n, e));
            }
        }
    }
    gens
}

struct TupleCounter<'a> {
    n: usize,
    f: &'a FieldSpec,
    mode: TupleMode,
    classes: Classifier<'a>,
    memo: HashMap<(usize, MatrixSubspace), u128>,
}

impl TupleCounter<'_> {
    // Number of ways to extend a tuple whose common centralizer is `space`
    // by `remaining` further entries.
    fn extensions(&mut self, remaining: usize, space: &MatrixSubspace) -> u128 {
        if remaining == 0 {
            return 1;
        }
        if let Some(&v) = self.memo.get(&(remaining, space.clone())) {
            return v;
        }
        let need_ss = needs_semisimple(self.mode, remaining);
        let mut total = 0u128;
        for y in space.elements(self.f) {
            if !self.classes.allowed(&y, need_ss) {
                continue;
            }
            total += if remaining == 1 {
                1
            } else {
                let next = space.centralizer_of(&y, self.f);
                self.extensions(remaining - 1, &next)
            };
        }
        self.memo.insert((remaining, space.clone()), total);
        total
    }
}

/// Number of ordered `k`-tuples of pairwise-commuting invertible matrices
/// satisfying `mode`, counted by extending partial tuples through the common
/// centralizer (an `F_q`-subspace of `M_n`), memoized on that subspace.
pub fn brute_hom_count(
    n: usize,
    f: &FieldSpec,
    k: usize,
    mode: TupleMode,
    budget: &Budget,
) -> Result<u128, OracleError> {
    if n == 0 {
        return Err(OracleError::InvalidInput("n must be at least 1".into()));
    }
    check_group_budget(n, f, budget)?;
    let mut counter = TupleCounter {
        n,
        f,
        mode,
        classes: Classifier::new(n, f),
        memo: HashMap::new(),
    };
    let full = MatrixSubspace::full(counter.n);
    Ok(counter.extensions(k, &full))
}

/// Same count by direct pairwise commutation tests over an explicit list of
/// group elements. Quadratic in `|GL_n|`; for cross-checking small cases.
pub fn brute_hom_count_naive(
    n: usize,
    f: &FieldSpec,
    k: usize,
    mode: TupleMode,
    budget: &Budget,
) -> Result<u128, OracleError> {
    let group: Vec<FFMatrix> = enumerate_invertible(n, f, budget)?.collect();
    let semisimple: Vec<bool> = group.iter().map(|m| m.is_semisimple(f)).collect();
    fn go(
        group: &[FFMatrix],
        semisimple: &[bool],
        f: &FieldSpec,
        cands: &[usize],
        remaining: usize,
        mode: TupleMode,
    ) -> u128 {
        if remaining == 0 {
            return 1;
        }
        let need_ss = needs_semisimple(mode, remaining);
        cands
            .iter()
            .filter(|&&i| !need_ss || semisimple[i])
            .map(|&i| {
                let next: Vec<usize> = cands
                    .iter()
                    .copied()
                    .filter(|&j| group[i].commutes_with(&group[j], f))
                    .collect();
                go(group, semisimple, f, &next, remaining - 1, mode)
            })
            .sum()
    }
    let all: Vec<usize> = (0..group.len()).collect();
    Ok(go(&group, &semisimple, f, &all, k, mode))
}

/// All ordered `k`-tuples of pairwise-commuting semisimple invertible
/// matrices, as lists of matrix codes.
pub fn commuting_tuples(
    n: usize,
    f: &FieldSpec,
    k: usize,
    budget: &Budget,
) -> Result<Vec<Vec<u64>>, OracleError> {
    check_group_budget(n, f, budget)?;
    let mut classes = Classifier::new(n, f);
    let mut out = Vec::new();
    fn go(
        space: &MatrixSubspace,
        f: &FieldSpec,
        classes: &mut Classifier<'_>,
        prefix: &mut Vec<u64>,
        remaining: usize,
        out: &mut Vec<Vec<u64>>,
    ) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for y in space.elements(f) {
            if !classes.allowed(&y, true) {
                continue;
            }
            prefix.push(y.code(f.order()));
            let next = space.centralizer_of(&y, f);
            go(&next, f, classes, prefix, remaining - 1, out);
            prefix.pop();
        }
    }
    go(
        &MatrixSubspace::full(n),
        f,
        &mut classes,
        &mut Vec::new(),
        k,
        &mut out,
    );
    Ok(out)
}

/// Orbits of commuting semisimple `k`-tuples under simultaneous conjugation,
/// found by sweeping: each unvisited tuple starts a new orbit and every
/// conjugate of it is marked.
pub fn brute_conj_count(
    n: usize,
    f: &FieldSpec,
    k: usize,
    budget: &Budget,
) -> Result<u128, OracleError> {
    let group: Vec<(FFMatrix, FFMatrix)> = enumerate_invertible(n, f, budget)?
        .map(|g| {
            let inv = g.inverse(f).expect("invertible");
            (g, inv)
        })
        .collect();
    let tuples = commuting_tuples(n, f, k, budget)?;
    budget.check(
        "orbit sweep",
        tuples.len() as u128 * group.len() as u128,
        budget.max_orbit_work,
    )?;
    let q = f.order();
    let mut visited: HashSet<Vec<u64>> = HashSet::with_capacity(tuples.len());
    let mut orbits = 0u128;
    for t in &tuples {
        if visited.contains(t) {
            continue;
        }
        orbits += 1;
        let mats: Vec<FFMatrix> = t.iter().map(|&c| FFMatrix::from_code(n, q, c)).collect();
        for (g, g_inv) in &group {
            let conj: Vec<u64> = mats
                .iter()
                .map(|m| m.conjugate_by(g, g_inv, f).code(q))
                .collect();
            visited.insert(conj);
        }
    }
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    #[test]
    fn group_orders_by_enumeration() {
        let b = Budget::default();
        assert_eq!(enumerate_invertible(2, &field(2), &b).unwrap().count(), 6);
        assert_eq!(enumerate_invertible(2, &field(3), &b).unwrap().count(), 48);
        assert_eq!(enumerate_invertible(3, &field(2), &b).unwrap().count(), 168);
        assert_eq!(gl_size(3, 2), 168);
    }

    #[test]
    fn budget_refusal() {
        let b = Budget::default();
        assert!(matches!(
            brute_hom_count(3, &field(5), 2, TupleMode::AllSemisimple, &b),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn small_tuple_counts() {
        let b = Budget::default();
        let f2 = field(2);
        assert_eq!(
            brute_hom_count(2, &f2, 2, TupleMode::AllSemisimple, &b).unwrap(),
            9
        );
        assert_eq!(
            brute_hom_count(2, &f2, 2, TupleMode::LastFree, &b).unwrap(),
            12
        );
        for q in [2u64, 3, 4, 5, 7] {
            let f = field(q);
            for k in 0..=3u32 {
                let expect = (q as u128 - 1).pow(k);
                assert_eq!(
                    brute_hom_count(1, &f, k as usize, TupleMode::AllSemisimple, &b).unwrap(),
                    expect
                );
            }
        }
    }

    #[test]
    fn centralizer_scan_agrees_with_naive_scan() {
        let b = Budget::default();
        for (n, q) in [(2, 2), (2, 3), (3, 2)] {
            let f = field(q);
            for k in 1..=3 {
                for mode in [TupleMode::AllSemisimple, TupleMode::LastFree] {
                    assert_eq!(
                        brute_hom_count(n, &f, k, mode, &b).unwrap(),
                        brute_hom_count_naive(n, &f, k, mode, &b).unwrap(),
                        "n={n} q={q} k={k} {mode:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn orbit_counts() {
        let b = Budget::default();
        let f2 = field(2);
        assert_eq!(brute_conj_count(2, &f2, 2, &b).unwrap(), 5);
        assert_eq!(brute_conj_count(2, &f2, 1, &b).unwrap(), 2);
        let f5 = field(5);
        assert_eq!(brute_conj_count(1, &f5, 2, &b).unwrap(), 16);
    }

    #[test]
    fn semisimple_iff_order_prime_to_p() {
        let b = Budget::default();
        for q in [2u64, 3] {
            let f = field(q);
            for m in enumerate_invertible(2, &f, &b).unwrap() {
                let order = m.mult_order(&f).unwrap();
                assert_eq!(m.is_semisimple(&f), order % f.p() as usize != 0, "{m:?}");
            }
        }
    }

    #[test]
    fn tuple_set_is_conjugation_invariant() {
        let b = Budget::default();
        let f = field(3);
        let tuples = commuting_tuples(2, &f, 2, &b).unwrap();
        let set: HashSet<Vec<u64>> = tuples.iter().cloned().collect();
        let g = FFMatrix::new(2, vec![1, 2, 1, 0]);
        let g_inv = g.inverse(&f).unwrap();
        let moved: HashSet<Vec<u64>> = tuples
            .iter()
            .map(|t| {
                t.iter()
                    .map(|&c| {
                        FFMatrix::from_code(2, 3, c)
                            .conjugate_by(&g, &g_inv, &f)
                            .code(3)
                    })
                    .collect()
            })
            .collect();
        assert_eq!(set, moved);
        assert_eq!(set.len(), 256);
    }

    #[test]
    fn generators_have_the_right_shape() {
        let f4 = field(4);
        let gens = gl_generators(2, &f4);
        assert_eq!(gens.len(), 1 + 2 * 2);
        assert!(gens.iter().all(|g| g.is_invertible(&f4)));
    }
}
