use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::poly::write_terms;
use super::{Poly, PolyError, RationalFunction, Scalar};

/// Polynomial in `q` and `q^-1`: `coeffs[i]` multiplies `q^(min_degree + i)`.
///
/// Canonical form trims zeros at both ends; zero is `min_degree = 0` with no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C> {
    min_degree: i64,
    coeffs: Vec<C>,
}

impl<C: Scalar> LaurentPoly<C> {
    pub fn new(min_degree: i64, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        LaurentPoly {
            min_degree: min_degree + lead_zeros as i64,
            coeffs,
        }
    }

    pub fn zero() -> Self {
        LaurentPoly {
            min_degree: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn from_poly(p: &Poly<C>) -> Self {
        Self::new(0, p.coeffs().to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    /// `None` for zero.
    pub fn max_degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_degree + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, d: i64) -> C {
        let idx = d - self.min_degree;
        if idx < 0 {
            return C::zero();
        }
        self.coeffs
            .get(idx as usize)
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// `self * p` as a Laurent polynomial.
    pub fn mul_poly(&self, p: &Poly<C>) -> Self {
        let body = Poly::new(self.coeffs.clone()) * p;
        Self::new(self.min_degree, body.into_coeffs())
    }

    /// Clears negative exponents: returns `(P, s)` with `self = P / q^s`, `s >= 0`.
    pub fn to_poly_over_power(&self) -> (Poly<C>, usize) {
        if self.min_degree >= 0 {
            let p = Poly::new(self.coeffs.clone()).shift(self.min_degree as usize);
            (p, 0)
        } else {
            (Poly::new(self.coeffs.clone()), (-self.min_degree) as usize)
        }
    }
}

impl LaurentPoly<BigRational> {
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

/// Writes `a / b` as a Laurent polynomial, provided the denominator of the
/// reduced fraction is a monomial `q^m`.
pub fn to_laurent<C: Scalar + fmt::Display + Signed>(
    a: &Poly<C>,
    b: &Poly<C>,
) -> Result<LaurentPoly<C>, PolyError> {
    let f = RationalFunction::new(a.clone(), b.clone())?;
    let den = f.denominator();
    let m = den.coeffs().len() - 1;
    if den.lowest_degree() != Some(m) {
        return Err(PolyError::NotLaurent(den.to_string()));
    }
    Ok(LaurentPoly::new(
        -(m as i64),
        f.numerator().coeffs().to_vec(),
    ))
}

impl<C: Scalar + fmt::Display + Signed> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .map(|(i, c)| (self.min_degree + i as i64, c)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Poly<BigRational>;

    fn p(c: &[i64]) -> P {
        P::from_integers(c.iter().copied())
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect()
    }

    #[test]
    fn pair_polynomial_over_gl2() {
        let pair = p(&[1, -2, -1, 4, -1, -2, 1]);
        let gl2 = p(&[0, 1, -1, -1, 1]);
        let l = to_laurent(&pair, &gl2).unwrap();
        assert_eq!(l, LaurentPoly::new(-1, ints(&[1, -1, -1, 1])));
        assert_eq!(l.to_string(), "q^2 - q - 1 + q^-1");
        assert_eq!(l.mul_poly(&gl2), LaurentPoly::from_poly(&pair));
    }

    #[test]
    fn trivial_and_failing_quotients() {
        assert_eq!(
            to_laurent(&p(&[-1, 1]), &p(&[-1, 1])).unwrap(),
            LaurentPoly::new(0, ints(&[1]))
        );
        assert!(matches!(
            to_laurent(&p(&[0, 1]), &p(&[-1, 1])),
            Err(PolyError::NotLaurent(_))
        ));
    }

    #[test]
    fn canonical_trimming() {
        let l = LaurentPoly::new(-3, ints(&[0, 0, 2, 0, 5, 0]));
        assert_eq!(l.min_degree(), -1);
        assert_eq!(l.max_degree(), Some(1));
        assert_eq!(l.coeff(1), BigRational::from_integer(5.into()));
        assert_eq!(
            LaurentPoly::<BigRational>::new(4, ints(&[0, 0])),
            LaurentPoly::zero()
        );
    }
}
