use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::Ring;
use crate::{Error, Result};

/// Element of the fraction field of a ring, kept in lowest terms with a
/// denominator whose leading coefficient is positive.
#[derive(Clone, PartialEq, Eq)]
pub struct Fraction<R: Ring> {
    num: R,
    den: R,
}

impl<R: Ring> Fraction<R> {
    pub fn new(num: R, den: R) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionNotExact);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: R, den: R) -> Self {
        if num.is_zero() {
            return Fraction {
                num,
                den: R::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g).expect("gcd divides");
        let mut den = den.exact_div(&g).expect("gcd divides");
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Fraction { num, den }
    }

    pub fn from_ring(x: R) -> Self {
        Fraction {
            num: x,
            den: R::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_ring(R::zero())
    }

    pub fn one() -> Self {
        Self::from_ring(R::one())
    }

    pub fn numer(&self) -> &R {
        &self.num
    }

    pub fn denom(&self) -> &R {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The ring element, if the denominator is a unit.
    pub fn to_ring(&self) -> Option<R> {
        self.num.exact_div(&self.den).ok()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn render(&self, var: &str) -> String {
        let wrap = |s: String| {
            if s.chars().skip(1).any(|c| c == '+' || c == '-') {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            self.num.render(var)
        } else {
            format!("{}/{}", wrap(self.num.render(var)), wrap(self.den.render(var)))
        }
    }
}

impl<R: Ring> fmt::Debug for Fraction<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.num, self.den)
    }
}

impl<R: Ring> Add for Fraction<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let num = self.num * &rhs.den + rhs.num * &self.den;
        Self::reduced(num, self.den * rhs.den)
    }
}

impl<R: Ring> Sub for Fraction<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Mul for Fraction<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::reduced(self.num * rhs.num, self.den * rhs.den)
    }
}

/// Panics on division by zero, like integer division.
impl<R: Ring> Div for Fraction<R> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip().expect("division by zero")
    }
}

impl<R: Ring> Neg for Fraction<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Fraction {
            num: -self.num,
            den: self.den,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Poly;
    use num_bigint::BigInt;

    fn q(a: i64, b: i64) -> Fraction<BigInt> {
        Fraction::new(BigInt::from(a), BigInt::from(b)).unwrap()
    }

    #[test]
    fn lowest_terms() {
        let f = q(6, -4);
        assert_eq!(f.numer(), &BigInt::from(-3));
        assert_eq!(f.denom(), &BigInt::from(2));
        assert_eq!(f.render(""), "-3/2");
        assert!(Fraction::new(BigInt::from(1), BigInt::from(0)).is_err());
    }

    #[test]
    fn field_arithmetic() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(1, 2) - q(1, 2), q(0, 7));
        assert_eq!(q(2, 3) * q(3, 4), q(1, 2));
        assert_eq!(q(2, 3) / q(4, 9), q(3, 2));
        assert_eq!(q(4, 2).to_ring(), Some(BigInt::from(2)));
        assert_eq!(q(1, 2).to_ring(), None);
    }

    #[test]
    fn polynomial_fractions() {
        let p = |s: &str| Poly::parse(s, Some("n")).unwrap();
        let f = Fraction::new(p("n^2-1"), p("-2n-2")).unwrap();
        assert_eq!(f.numer(), &p("-n+1"));
        assert_eq!(f.denom(), &p("2"));
        assert_eq!(f.render("n"), "(-n+1)/2");
    }
}
