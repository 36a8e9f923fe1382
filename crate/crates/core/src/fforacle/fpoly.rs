use super::field::{Elem, FieldSpec};

/// Polynomial over a [`FieldSpec`], ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqPoly(Vec<Elem>);

impl FqPoly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FqPoly(coeffs)
    }

    pub fn zero() -> Self {
        FqPoly(Vec::new())
    }

    pub fn one() -> Self {
        FqPoly(vec![1])
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    pub fn mul(&self, other: &Self, f: &FieldSpec) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self, f: &FieldSpec) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = f.inv(divisor.0[dd]).unwrap();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![0; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + dd], lead_inv);
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.0.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, d));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn make_monic(&self, f: &FieldSpec) -> Self {
        match self.0.last() {
            None => Self::zero(),
            Some(&c) => {
                let inv = f.inv(c).unwrap();
                FqPoly(self.0.iter().map(|&a| f.mul(a, inv)).collect())
            }
        }
    }

    pub fn gcd(a: &Self, b: &Self, f: &FieldSpec) -> Self {
        let mut x = a.make_monic(f);
        let mut y = b.make_monic(f);
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y, f);
            x = y;
            y = r.make_monic(f);
        }
        x
    }

    pub fn derivative(&self, f: &FieldSpec) -> Self {
        let coeffs = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| {
                // i * c by repeated addition, i reduced mod p
                (0..i % f.p() as usize).fold(0, |acc, _| f.add(acc, c))
            })
            .collect();
        Self::new(coeffs)
    }

    /// No repeated irreducible factor: `gcd(P, P') = 1`.
    pub fn is_squarefree(&self, f: &FieldSpec) -> bool {
        FqPoly::gcd(self, &self.derivative(f), f).is_one()
    }
}

/// All monic polynomials of degree `d`, in index order of the low coefficients.
pub fn monic_polys(f: &FieldSpec, d: usize) -> impl Iterator<Item = FqPoly> + '_ {
    let q = f.order();
    let total = q.pow(d as u32);
    (0..total).map(move |idx| {
        let mut coeffs: Vec<Elem> = (0..d)
            .map(|i| ((idx / q.pow(i as u32)) % q) as Elem)
            .collect();
        coeffs.push(1);
        FqPoly(coeffs)
    })
}

/// Monic irreducibles of each degree `1..=max_degree`, by trial division.
pub fn irreducibles_up_to(f: &FieldSpec, max_degree: usize) -> Vec<Vec<FqPoly>> {
    let mut by_degree: Vec<Vec<FqPoly>> = vec![Vec::new(); max_degree + 1];
    for d in 1..=max_degree {
        let found: Vec<FqPoly> = monic_polys(f, d)
            .filter(|cand| {
                (1..=d / 2).all(|dd| {
                    by_degree[dd]
                        .iter()
                        .all(|g| !cand.div_rem(g, f).1.is_zero())
                })
            })
            .collect();
        by_degree[d] = found;
    }
    by_degree
}

/// Monic irreducible polynomials of degree `d`.
pub fn irreducible_polys(f: &FieldSpec, d: usize) -> Vec<FqPoly> {
    irreducibles_up_to(f, d).pop().unwrap_or_default()
}

/// Factors a monic polynomial by trial division against `irreducibles`
/// (indexed by degree). Returns `(factor, multiplicity)` pairs.
pub fn factor_with(
    p: &FqPoly,
    irreducibles: &[Vec<FqPoly>],
    f: &FieldSpec,
) -> Vec<(FqPoly, usize)> {
    let mut rest = p.clone();
    let mut out = Vec::new();
    for g in irreducibles.iter().flatten() {
        let gd = g.degree().unwrap();
        if rest.degree().is_none_or(|d| d < gd) {
            break;
        }
        let mut mult = 0;
        loop {
            let (quot, rem) = rest.div_rem(g, f);
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            mult += 1;
        }
        if mult > 0 {
            out.push((g.clone(), mult));
        }
    }
    assert!(
        rest.is_one(),
        "irreducible table too short to factor polynomial"
    );
    out
}
