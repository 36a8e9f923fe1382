use super::field::{Elem, FieldSpec};
use super::fpoly::FqPoly;

/// Square matrix over a [`FieldSpec`], row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFMatrix {
    n: usize,
    entries: Vec<Elem>,
}

impl FFMatrix {
    pub fn new(n: usize, entries: Vec<Elem>) -> Self {
        assert_eq!(entries.len(), n * n, "entry count must be n^2");
        FFMatrix { n, entries }
    }

    pub fn zero(n: usize) -> Self {
        FFMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Companion matrix of a monic polynomial.
    pub fn companion(p: &FqPoly, f: &FieldSpec) -> Self {
        let n = p.degree().expect("nonzero polynomial");
        let mut m = Self::zero(n);
        for i in 1..n {
            m.entries[i * n + i - 1] = 1;
        }
        for i in 0..n {
            m.entries[i * n + n - 1] = f.neg(p.coeffs()[i]);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.n + j]
    }

    /// Base-`q` integer encoding, entry `(0,0)` least significant.
    pub fn code(&self, q: usize) -> u64 {
        self.entries
            .iter()
            .rev()
            .fold(0u64, |acc, &e| acc * q as u64 + e as u64)
    }

    pub fn from_code(n: usize, q: usize, mut code: u64) -> Self {
        let entries = (0..n * n)
            .map(|_| {
                let e = (code % q as u64) as Elem;
                code /= q as u64;
                e
            })
            .collect();
        FFMatrix { n, entries }
    }

    pub fn mul(&self, other: &Self, f: &FieldSpec) -> Self {
        let n = self.n;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = f.add(out[i * n + j], f.mul(a, other.entries[k * n + j]));
                }
            }
        }
        FFMatrix { n, entries: out }
    }

    pub fn commutes_with(&self, other: &Self, f: &FieldSpec) -> bool {
        self.mul(other, f) == other.mul(self, f)
    }

    pub fn rank(&self, f: &FieldSpec) -> usize {
        let rows: Vec<Vec<Elem>> = self.entries.chunks(self.n).map(<[Elem]>::to_vec).collect();
        row_reduce(rows, f).len()
    }

    pub fn is_invertible(&self, f: &FieldSpec) -> bool {
        self.rank(f) == self.n
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self, f: &FieldSpec) -> Option<Self> {
        let n = self.n;
        let mut aug: Vec<Vec<Elem>> = (0..n)
            .map(|i| {
                let mut row = self.entries[i * n..(i + 1) * n].to_vec();
                row.extend((0..n).map(|j| (i == j) as Elem));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| aug[r][col] != 0)?;
            aug.swap(col, pivot);
            let inv = f.inv(aug[col][col]).unwrap();
            for v in aug[col].iter_mut() {
                *v = f.mul(*v, inv);
            }
            for r in 0..n {
                if r != col && aug[r][col] != 0 {
                    let factor = aug[r][col];
                    let pivot_row = aug[col].clone();
                    for (v, &p) in aug[r].iter_mut().zip(&pivot_row) {
                        *v = f.sub(*v, f.mul(factor, p));
                    }
                }
            }
        }
        let entries = aug.into_iter().flat_map(|row| row[n..].to_vec()).collect();
        Some(FFMatrix { n, entries })
    }

    /// Minimal polynomial: the first linear dependency among `I, A, A^2, ...`
    /// viewed as vectors of length `n^2`.
    pub fn min_poly(&self, f: &FieldSpec) -> FqPoly {
        let n2 = self.n * self.n;
        // Each stored row is (power vector | identity tag).
        let mut basis: Vec<(usize, Vec<Elem>, Vec<Elem>)> = Vec::new();
        let mut power = Self::identity(self.n);
        for d in 0..=n2 {
            let mut v = power.entries.clone();
            let mut tag = vec![0; n2 + 1];
            tag[d] = 1;
            for (pc, bv, bt) in &basis {
                let c = v[*pc];
                if c != 0 {
                    for (x, y) in v.iter_mut().zip(bv) {
                        *x = f.sub(*x, f.mul(c, *y));
                    }
                    for (x, y) in tag.iter_mut().zip(bt) {
                        *x = f.sub(*x, f.mul(c, *y));
                    }
                }
            }
            match v.iter().position(|&x| x != 0) {
                None => return FqPoly::new(tag).make_monic(f),
                Some(pc) => {
                    let inv = f.inv(v[pc]).unwrap();
                    for x in v.iter_mut() {
                        *x = f.mul(*x, inv);
                    }
                    for x in tag.iter_mut() {
                        *x = f.mul(*x, inv);
                    }
                    basis.push((pc, v, tag));
                }
            }
            power = power.mul(self, f);
        }
        unreachable!("Cayley-Hamilton bounds the degree by n")
    }

    /// Diagonalizable over the algebraic closure, i.e. squarefree minimal polynomial.
    pub fn is_semisimple(&self, f: &FieldSpec) -> bool {
        self.min_poly(f).is_squarefree(f)
    }

    /// Multiplicative order of an invertible matrix.
    pub fn mult_order(&self, f: &FieldSpec) -> Option<usize> {
        if !self.is_invertible(f) {
            return None;
        }
        let id = Self::identity(self.n);
        let mut x = self.clone();
        let mut k = 1;
        while x != id {
            x = x.mul(self, f);
            k += 1;
        }
        Some(k)
    }

    /// `g * self * g^-1`
    pub fn conjugate_by(&self, g: &Self, g_inv: &Self, f: &FieldSpec) -> Self {
        g.mul(self, f).mul(g_inv, f)
    }
}

/// Row-reduced echelon form; returns the nonzero rows with unit pivots.
pub fn row_reduce(mut rows: Vec<Vec<Elem>>, f: &FieldSpec) -> Vec<Vec<Elem>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = f.inv(rows[rank][col]).unwrap();
        for v in rows[rank].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

/// Basis of `{x : M x = 0}` for the `rows x width` system `M`.
pub fn nullspace(rows: Vec<Vec<Elem>>, width: usize, f: &FieldSpec) -> Vec<Vec<Elem>> {
    let rref = row_reduce(rows, f);
    let pivots: Vec<usize> = rref
        .iter()
        .map(|r| r.iter().position(|&x| x != 0).unwrap())
        .collect();
    (0..width)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; width];
            v[free] = 1;
            for (row, &pc) in rref.iter().zip(&pivots) {
                v[pc] = f.neg(row[free]);
            }
            v
        })
        .collect()
}

/// A subspace of `M_n(F_q)` in canonical (reduced echelon) form, so equal
/// subspaces have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixSubspace {
    n: usize,
    basis: Vec<Vec<Elem>>,
}

impl MatrixSubspace {
    pub fn full(n: usize) -> Self {
        let basis = (0..n * n)
            .map(|i| {
                let mut v = vec![0; n * n];
                v[i] = 1;
                v
            })
            .collect();
        MatrixSubspace { n, basis }
    }

    pub fn spanned_by(n: usize, vectors: Vec<Vec<Elem>>, f: &FieldSpec) -> Self {
        let basis = if vectors.is_empty() {
            vectors
        } else {
            row_reduce(vectors, f)
        };
        MatrixSubspace { n, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of elements, `q^dim`.
    pub fn cardinality(&self, f: &FieldSpec) -> u64 {
        (f.order() as u64).pow(self.dim() as u32)
    }

    /// Every element, in a fixed order.
    pub fn elements<'a>(&'a self, f: &'a FieldSpec) -> impl Iterator<Item = FFMatrix> + 'a {
        let q = f.order() as u64;
        let n2 = self.n * self.n;
        (0..self.cardinality(f)).map(move |mut idx| {
            let mut v = vec![0; n2];
            for b in &self.basis {
                let c = (idx % q) as Elem;
                idx /= q;
                if c != 0 {
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = f.add(*x, f.mul(c, y));
                    }
                }
            }
            FFMatrix::new(self.n, v)
        })
    }

    /// Elements of this subspace commuting with `x`.
    pub fn centralizer_of(&self, x: &FFMatrix, f: &FieldSpec) -> Self {
        let n = self.n;
        let d = self.dim();
        if d == 0 {
            return self.clone();
        }
        // Commutator [x, B_t] for each basis element B_t; solve sum c_t [x, B_t] = 0.
        let comms: Vec<Vec<Elem>> = self
            .basis
            .iter()
            .map(|b| {
                let bm = FFMatrix::new(n, b.clone());
                let xb = x.mul(&bm, f);
                let bx = bm.mul(x, f);
                xb.entries
                    .iter()
                    .zip(&bx.entries)
                    .map(|(&a, &c)| f.sub(a, c))
                    .collect()
            })
            .collect();
        let system: Vec<Vec<Elem>> = (0..n * n)
            .map(|e| comms.iter().map(|c| c[e]).collect())
            .collect();
        let coeff_vectors = nullspace(system, d, f);
        let vectors = coeff_vectors
            .iter()
            .map(|cv| {
                let mut v = vec![0; n * n];
                for (&c, b) in cv.iter().zip(&self.basis) {
                    if c != 0 {
                        for (x, &y) in v.iter_mut().zip(b) {
                            *x = f.add(*x, f.mul(c, y));
                        }
                    }
                }
                v
            })
            .collect();
        Self::spanned_by(n, vectors, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, e: &[Elem]) -> FFMatrix {
        FFMatrix::new(n, e.to_vec())
    }

    #[test]
    fn minimal_polynomials() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(FFMatrix::identity(2).min_poly(&f3), FqPoly::new(vec![2, 1]));
        let p = FqPoly::new(vec![1, 1, 1]);
        let c = FFMatrix::companion(&p, &f2);
        assert_eq!(c.min_poly(&f2), p);
        let jordan = m(2, &[1, 1, 0, 1]);
        // (T - 1)^2 = T^2 - 2T + 1 = T^2 + T + 1 over F_3
        assert_eq!(jordan.min_poly(&f3), FqPoly::new(vec![1, 1, 1]));
    }

    #[test]
    fn semisimplicity_examples() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert!(FFMatrix::identity(2).is_semisimple(&f3));
        assert!(!m(2, &[1, 1, 0, 1]).is_semisimple(&f3));
        let c = FFMatrix::companion(&FqPoly::new(vec![1, 1, 1]), &f2);
        assert!(c.is_semisimple(&f2));
        assert_eq!(c.mult_order(&f2), Some(3));
    }

    #[test]
    fn inverse_and_codes() {
        let f5 = FieldSpec::new(5, 1).unwrap();
        let a = m(2, &[2, 3, 1, 1]);
        let inv = a.inverse(&f5).unwrap();
        assert_eq!(a.mul(&inv, &f5), FFMatrix::identity(2));
        assert_eq!(m(2, &[1, 2, 2, 4]).inverse(&f5), None);
        assert_eq!(FFMatrix::from_code(2, 5, a.code(5)), a);
    }

    #[test]
    fn centralizer_of_regular_element_is_its_polynomial_algebra() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        let x = m(2, &[1, 0, 0, 2]);
        let c = MatrixSubspace::full(2).centralizer_of(&x, &f3);
        assert_eq!(c.dim(), 2);
        assert!(c.elements(&f3).all(|y| y.commutes_with(&x, &f3)));
        let scalar = MatrixSubspace::full(2).centralizer_of(&FFMatrix::identity(2), &f3);
        assert_eq!(scalar, MatrixSubspace::full(2));
    }
}
