use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_traits::Signed;

use super::{Poly, PolyError, Scalar};

/// Quotient of two polynomials in lowest terms.
///
/// Normal form: `gcd(numerator, denominator) = 1`, the denominator is monic and
/// any scalar content lives in the numerator. Zero is `0 / 1`. Two equal
/// rational functions therefore compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction<C> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Scalar> RationalFunction<C> {
    pub fn new(num: Poly<C>, den: Poly<C>) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<C>, den: Poly<C>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.degree() > Poly::<C>::one().degree() {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        } else {
            (num, den)
        };
        Self::with_monic_den(num, den)
    }

    // Assumes coprime inputs.
    fn with_monic_den(num: Poly<C>, den: Poly<C>) -> Self {
        let lead = den.leading_coeff().expect("nonzero denominator").clone();
        if lead.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = C::one() / lead;
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn numerator(&self) -> &Poly<C> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some` when the denominator is constant.
    pub fn as_poly(&self) -> Option<&Poly<C>> {
        // Monic constant denominator is exactly one.
        (self.den.coeffs().len() == 1).then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::with_monic_den(self.den.clone(), self.num.clone()))
    }

    /// Substitutes `q -> q^m`. Coprimality and monicity survive the
    /// substitution, so no re-reduction is needed.
    pub fn compose_monomial(&self, m: usize) -> Self {
        RationalFunction {
            num: self.num.compose_monomial(m),
            den: self.den.compose_monomial(m),
        }
    }

    pub fn eval(&self, x: &C) -> Result<C, PolyError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn mul_poly(&self, p: &Poly<C>) -> Self {
        self * &Self::from_poly(p.clone())
    }
}

impl<C: Scalar> Add for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn add(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = Poly::gcd(&self.den, &rhs.den);
        let left_cof = self.den.div_exact(&g).expect("gcd divides");
        let right_cof = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &right_cof) + &(&rhs.num * &left_cof);
        let den = &left_cof * &rhs.den;
        RationalFunction::reduce(num, den)
    }
}

impl<C: Scalar> Sub for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn sub(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        let neg = RationalFunction {
            num: -&rhs.num,
            den: rhs.den.clone(),
        };
        self + &neg
    }
}

impl<C: Scalar> Mul for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn mul(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // Cross-cancel before multiplying.
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = rhs.den.div_exact(&g1).expect("gcd divides");
        let c = rhs.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        RationalFunction::with_monic_den(&a * &c, &b * &d)
    }
}

impl<C: Scalar> Div for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    /// # Panics
    /// On division by zero; use [`RationalFunction::inv`] to handle that case.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

macro_rules! forward_owned_binop {
    ($imp:ident, $method:ident) => {
        impl<C: Scalar> $imp for RationalFunction<C> {
            type Output = RationalFunction<C>;
            fn $method(self, rhs: RationalFunction<C>) -> RationalFunction<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Scalar> $imp<&RationalFunction<C>> for RationalFunction<C> {
            type Output = RationalFunction<C>;
            fn $method(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl<C: Scalar> From<Poly<C>> for RationalFunction<C> {
    fn from(p: Poly<C>) -> Self {
        Self::from_poly(p)
    }
}

impl<C: Scalar> std::iter::Sum for RationalFunction<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<C: Scalar> std::iter::Product for RationalFunction<C> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a * b)
    }
}

impl<C: Scalar + fmt::Display + Signed> fmt::Display for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_poly() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({}) / ({})", self.num, self.den),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Poly<BigRational>;
    type R = RationalFunction<BigRational>;

    fn p(c: &[i64]) -> P {
        P::from_integers(c.iter().copied())
    }

    #[test]
    fn normalizes_to_monic_coprime_form() {
        // (2q - 2) / (4q^2 - 4) = (1/2) / (q + 1)
        let f = R::new(p(&[-2, 2]), p(&[-4, 0, 4])).unwrap();
        assert_eq!(f.denominator(), &p(&[1, 1]));
        assert_eq!(
            f.numerator(),
            &P::constant(BigRational::new(1.into(), 2.into()))
        );
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(R::new(p(&[1]), P::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn sum_of_fractions() {
        // 1/(q-1) - 1/q = 1/(q^2 - q)
        let a = R::new(p(&[1]), p(&[-1, 1])).unwrap();
        let b = R::new(p(&[1]), p(&[0, 1])).unwrap();
        let s = &a - &b;
        assert_eq!(s, R::new(p(&[1]), p(&[0, -1, 1])).unwrap());
    }

    #[test]
    fn product_cancels() {
        let a = R::new(p(&[-1, 0, 1]), p(&[0, 1])).unwrap();
        let b = R::new(p(&[0, 0, 3]), p(&[1, 1])).unwrap();
        assert_eq!(&a * &b, R::from_poly(p(&[0, -3, 3])));
        assert_eq!((&a / &a), R::one());
    }

    #[test]
    fn compose_keeps_normal_form() {
        let a = R::new(p(&[1]), p(&[-1, 1])).unwrap();
        let c = a.compose_monomial(3);
        assert_eq!(c, R::new(p(&[1]), p(&[-1, 0, 0, 1])).unwrap());
    }
}
