use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{Degree, PolyError, Scalar};

/// Dense univariate polynomial in `q`, coefficients in ascending degree.
///
/// Canonical form: no trailing zero coefficients, so the zero polynomial has
/// an empty coefficient vector and structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(C::one(), 1)
    }

    /// `c * q^d`
    pub fn monomial(c: C, d: usize) -> Self {
        let mut coeffs = vec![C::zero(); d];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `q^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            len => Degree::Finite(len - 1),
        }
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    /// Index of the lowest nonzero coefficient, `None` for zero.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `q -> q^m`.
    ///
    /// # Panics
    /// If `m == 0`.
    pub fn compose_monomial(&self, m: usize) -> Self {
        assert!(m >= 1, "monomial substitution needs a positive exponent");
        if m == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); (self.coeffs.len() - 1) * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m] = c.clone();
        }
        Poly { coeffs }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Euclidean division: `self = quot * divisor + rem` with `deg rem < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let lead = divisor.leading_coeff().ok_or(PolyError::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![C::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * d.clone();
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Returns `c` with `divisor * c == self`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible)
        }
    }

    /// Divides through by the leading coefficient. Zero stays zero.
    pub fn make_monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => {
                let inv = C::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut x = a.make_monic();
        let mut y = b.make_monic();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y).expect("nonzero divisor");
            x = y;
            y = r.make_monic();
        }
        x
    }
}

impl Poly<BigRational> {
    /// The coefficients as integers, or `None` if any coefficient has a
    /// nontrivial denominator.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn from_integers<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(x.into()))
    }
}

impl<C: Scalar> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

fn add_coeffs<C: Scalar>(a: &[C], b: &[C], negate_b: bool) -> Vec<C> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(C::zero);
            let y = b.get(i).cloned().unwrap_or_else(C::zero);
            if negate_b {
                x - y
            } else {
                x + y
            }
        })
        .collect()
}

impl<C: Scalar> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        Poly::new(add_coeffs(&self.coeffs, &rhs.coeffs, false))
    }
}

impl<C: Scalar> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        Poly::new(add_coeffs(&self.coeffs, &rhs.coeffs, true))
    }
}

impl<C: Scalar> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<C: Scalar> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($imp:ident, $method:ident) => {
        impl<C: Scalar> $imp for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Scalar> $imp<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: &Poly<C>) -> Poly<C> {
                (&self).$method(rhs)
            }
        }
        impl<C: Scalar> $imp<Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<C: Scalar> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Scalar> std::iter::Sum for Poly<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<C: Scalar> std::iter::Product for Poly<C> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a * b)
    }
}

/// Writes terms from `(exponent, coefficient)` pairs in the order given,
/// e.g. `q^6 - 2*q^5 + 1/2*q - 1`. Shared with the Laurent display.
pub(crate) fn write_terms<'a, C, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    C: Scalar + fmt::Display + Signed + 'a,
    I: Iterator<Item = (i64, &'a C)>,
{
    let mut first = true;
    for (exp, c) in terms {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else if c.is_negative() {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        first = false;
        let unit = mag.is_one();
        match exp {
            0 => write!(f, "{mag}")?,
            _ => {
                if !unit {
                    write!(f, "{mag}*")?;
                }
                if exp == 1 {
                    f.write_str("q")?;
                } else {
                    write!(f, "q^{exp}")?;
                }
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl<C: Scalar + fmt::Display + Signed> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .map(|(i, c)| (i as i64, c)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type P = Poly<BigRational>;

    fn p(c: &[i64]) -> P {
        P::from_integers(c.iter().copied())
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn product_of_linear_factors() {
        assert_eq!(&p(&[-1, 1]) * &p(&[-2, 1]), p(&[2, -3, 1]));
    }

    #[test]
    fn adding_zero_is_identity() {
        let a = p(&[3, 0, -5, 7]);
        assert_eq!(&a + &P::zero(), a);
    }

    #[test]
    fn cancellation_gives_empty_coefficients() {
        let a = p(&[-1, 0, 1]);
        let d = &a - &a;
        assert!(d.coeffs().is_empty());
        assert_eq!(d.degree(), Degree::MinusInfinity);
        assert!(Degree::MinusInfinity < Degree::Finite(0));
    }

    #[test]
    fn compose_monomial_examples() {
        assert_eq!(p(&[-1, 1]).compose_monomial(2), p(&[-1, 0, 1]));
        let half = P::new(vec![r(0, 1), r(-1, 2), r(1, 2)]);
        let expect = P::new(vec![
            r(0, 1),
            r(0, 1),
            r(0, 1),
            r(-1, 2),
            r(0, 1),
            r(0, 1),
            r(1, 2),
        ]);
        assert_eq!(half.compose_monomial(3), expect);
        assert_eq!(half.compose_monomial(1), half);
    }

    #[test]
    fn div_exact_cases() {
        assert_eq!(p(&[-1, 0, 1]).div_exact(&p(&[-1, 1])), Ok(p(&[1, 1])));
        assert_eq!(
            p(&[-1, 0, 1]).div_exact(&p(&[0, 1])),
            Err(PolyError::NotDivisible)
        );
        let pair = p(&[1, -2, -1, 4, -1, -2, 1]);
        let gl2 = p(&[0, 1, -1, -1, 1]);
        assert_eq!(pair.div_exact(&gl2), Err(PolyError::NotDivisible));
        assert_eq!(pair.div_exact(&P::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn eval_examples() {
        let pair = p(&[1, -2, -1, 4, -1, -2, 1]);
        assert_eq!(pair.eval_int(2), r(9, 1));
        assert_eq!(pair.eval_int(3), r(256, 1));
        assert_eq!(P::zero().eval(&r(7, 3)), r(0, 1));
    }

    #[test]
    fn gcd_is_monic() {
        let a = &p(&[-1, 1]) * &p(&[2, 0, 3]);
        let b = &p(&[-1, 1]).scale(&r(5, 1)) * &p(&[1, 1]);
        assert_eq!(P::gcd(&a, &b), p(&[-1, 1]));
        assert_eq!(P::gcd(&P::zero(), &P::zero()), P::zero());
    }

    #[test]
    fn display_matches_hand_format() {
        let pair = p(&[1, -2, -1, 4, -1, -2, 1]);
        assert_eq!(
            pair.to_string(),
            "q^6 - 2*q^5 - q^4 + 4*q^3 - q^2 - 2*q + 1"
        );
        let half = P::new(vec![r(0, 1), r(-1, 2), r(1, 2)]);
        assert_eq!(half.to_string(), "1/2*q^2 - 1/2*q");
        assert_eq!(P::zero().to_string(), "0");
    }

    #[test]
    fn works_over_other_scalars() {
        let a: Poly<f64> = Poly::new(vec![-1.0, 1.0]);
        let b: Poly<f64> = Poly::new(vec![-2.0, 1.0]);
        assert_eq!((&a * &b).coeffs(), &[2.0, -3.0, 1.0]);
        assert_eq!((&a * &b).eval(&4.0), 6.0);

        let c: Poly<Ratio<i64>> =
            Poly::new(vec![Ratio::new(1, 2), Ratio::new(0, 1), Ratio::new(3, 1)]);
        let d: Poly<Ratio<i64>> = Poly::new(vec![Ratio::new(1, 1), Ratio::new(1, 1)]);
        let (quot, rem) = (&c * &d).div_rem(&d).unwrap();
        assert_eq!(quot, c);
        assert!(rem.is_zero());
    }
}
