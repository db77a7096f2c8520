//! Exact arithmetic in GCD domains.
//!
//! Everything downstream is generic over [`Ring`]. There are two
//! instantiations: [`Integer`] (an alias for [`num_bigint::BigInt`]) and
//! [`Poly`], univariate polynomials with integer coefficients. Polynomial
//! values do not carry their parameter name; the name travels with the
//! matrix or reaction that owns them and is only needed for parsing and
//! rendering.

mod fraction;
mod integer;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};

pub use fraction::Fraction;
pub use poly::Poly;

use crate::{ParseError, Result};

/// Arbitrary-precision signed integers.
pub type Integer = BigInt;

/// Element of an exact GCD domain.
///
/// Normalization conventions: `gcd` of integers is nonnegative, `gcd` of
/// polynomials has a positive leading coefficient, and `gcd(0, 0) = 0`.
pub trait Ring:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_integer(value: BigInt) -> Self;
    /// Embeds a polynomial, if the ring can represent it.
    fn from_poly(p: &Poly) -> Option<Self>;
    fn to_poly(&self) -> Poly;

    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// Sign of the leading coefficient.
    fn is_negative(&self) -> bool;

    /// Quotient `q` with `q * divisor == self`.
    fn exact_div(&self, divisor: &Self) -> Result<Self>;
    fn gcd(&self, other: &Self) -> Self;

    /// Size measure used by "smallest entry" pivoting: degree first, then
    /// the largest absolute coefficient.
    fn weight(&self) -> (usize, BigUint);

    fn render(&self, var: &str) -> String;
    fn parse(text: &str, var: Option<&str>) -> Result<Self, ParseError>;

    fn from_i64(value: i64) -> Self {
        Self::from_integer(BigInt::from(value))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Normalized greatest common divisor.
pub fn gcd<R: Ring>(a: &R, b: &R) -> R {
    a.gcd(b)
}

/// Exact quotient, failing with [`crate::Error::DivisionNotExact`].
pub fn exact_div<R: Ring>(a: &R, b: &R) -> Result<R> {
    a.exact_div(b)
}

/// Least common multiple, normalized like `gcd`.
pub fn lcm<R: Ring>(a: &R, b: &R) -> R {
    if a.is_zero() || b.is_zero() {
        return R::zero();
    }
    let g = a.gcd(b);
    let l = a.exact_div(&g).expect("gcd divides its argument") * b;
    if l.is_negative() {
        -l
    } else {
        l
    }
}

/// Gcd of all entries of a vector (`0` for an empty or zero vector).
pub fn content<R: Ring>(v: &[R]) -> R {
    let mut c = R::zero();
    for x in v {
        if c.is_unit() {
            break;
        }
        c = c.gcd(x);
    }
    c
}

/// Splits `v` into its content and primitive part. The all-zero vector has
/// content `1`.
pub fn content_and_primitive<R: Ring>(v: &[R]) -> (R, Vec<R>) {
    let c = content(v);
    if c.is_zero() {
        return (R::one(), v.to_vec());
    }
    let prim = v
        .iter()
        .map(|x| x.exact_div(&c).expect("content divides every entry"))
        .collect();
    (c, prim)
}
