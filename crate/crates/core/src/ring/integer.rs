use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::{Poly, Ring};
use crate::{Error, ParseError, Result};

impl Ring for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }

    fn one() -> Self {
        <BigInt as One>::one()
    }

    fn from_integer(value: BigInt) -> Self {
        value
    }

    fn from_poly(p: &Poly) -> Option<Self> {
        match p.degree() {
            None => Some(<BigInt as Zero>::zero()),
            Some(0) => Some(p.coeffs()[0].clone()),
            Some(_) => None,
        }
    }

    fn to_poly(&self) -> Poly {
        Poly::from_coeffs(vec![self.clone()])
    }

    fn is_zero(&self) -> bool {
        self.sign() == Sign::NoSign
    }

    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }

    fn is_negative(&self) -> bool {
        self.sign() == Sign::Minus
    }

    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if Ring::is_zero(divisor) {
            return Err(Error::DivisionNotExact);
        }
        let (q, r) = self.div_rem(divisor);
        if Ring::is_zero(&r) {
            Ok(q)
        } else {
            Err(Error::DivisionNotExact)
        }
    }

    fn gcd(&self, other: &Self) -> Self {
        num_integer::Integer::gcd(self, other)
    }

    fn weight(&self) -> (usize, BigUint) {
        (0, self.magnitude().clone())
    }

    fn render(&self, _var: &str) -> String {
        self.to_string()
    }

    fn parse(text: &str, _var: Option<&str>) -> Result<Self, ParseError> {
        let t = text.trim();
        let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
        if digits.is_empty() {
            return Err(ParseError::new(1, 1, "expected an integer"));
        }
        if let Some(pos) = digits.find(|c: char| !c.is_ascii_digit()) {
            let col = t.len() - digits.len() + pos + 1;
            return Err(ParseError::new(
                1,
                col,
                format!("unexpected character {:?} in integer", &digits[pos..pos + 1]),
            ));
        }
        t.parse::<BigInt>()
            .map_err(|e| ParseError::new(1, 1, e.to_string()))
    }
}
