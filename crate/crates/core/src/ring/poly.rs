use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};

use super::Ring;
use crate::{Error, ParseError, Result};

/// Univariate polynomial with integer coefficients, constant term first.
///
/// The coefficient list never ends in a zero; the zero polynomial has no
/// coefficients at all.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![BigInt::from(c)])
    }

    /// The monomial `c·x^d`.
    pub fn monomial(c: BigInt, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Evaluates at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Number of nonzero monomials.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn scale(&self, k: &BigInt) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    fn shift_scale(&self, k: &BigInt, d: usize) -> Poly {
        let mut coeffs = vec![BigInt::zero(); d];
        coeffs.extend(self.coeffs.iter().map(|c| c * k));
        Poly::from_coeffs(coeffs)
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Poly {
        if self.coeffs.is_empty() {
            return Poly::default();
        }
        let mut c = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        Poly::from_coeffs(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Pseudo-remainder of `self` by `divisor`, up to a nonzero constant.
    fn pseudo_rem(&self, divisor: &Poly) -> Poly {
        let dg = divisor.degree().expect("nonzero divisor");
        let lc = divisor.leading().unwrap();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let lr = r.leading().unwrap().clone();
            r = r.scale(lc) - divisor.shift_scale(&lr, dr - dg);
        }
        r
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        Poly::from_coeffs(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        Poly::from_coeffs(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) - rhs.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &'a Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly::default()
    }

    fn one() -> Self {
        Poly::constant(1)
    }

    fn from_integer(value: BigInt) -> Self {
        Poly::from_coeffs(vec![value])
    }

    fn from_poly(p: &Poly) -> Option<Self> {
        Some(p.clone())
    }

    fn to_poly(&self) -> Poly {
        self.clone()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && num_traits::One::is_one(self.coeffs[0].magnitude())
    }

    fn is_negative(&self) -> bool {
        self.leading().is_some_and(|l| l.is_negative())
    }

    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let dg = divisor.degree().ok_or(Error::DivisionNotExact)?;
        let lc = divisor.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dg)];
        while let Some(dr) = rem.degree() {
            if dr < dg {
                return Err(Error::DivisionNotExact);
            }
            let (q, r) = num_integer::Integer::div_rem(rem.leading().unwrap(), lc);
            if !r.is_zero() {
                return Err(Error::DivisionNotExact);
            }
            rem = rem - divisor.shift_scale(&q, dr - dg);
            quot[dr - dg] = q;
        }
        Ok(Poly::from_coeffs(quot))
    }

    fn gcd(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() {
            return other.primitive_part().scale(&other.content());
        }
        if other.coeffs.is_empty() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut f, mut g) = (self.primitive_part(), other.primitive_part());
        if f.degree() < g.degree() {
            std::mem::swap(&mut f, &mut g);
        }
        while !g.coeffs.is_empty() {
            let r = f.pseudo_rem(&g);
            f = g;
            g = r.primitive_part();
        }
        f.primitive_part().scale(&c)
    }

    fn weight(&self) -> (usize, BigUint) {
        let max = self
            .coeffs
            .iter()
            .map(|c| c.magnitude().clone())
            .max()
            .unwrap_or_default();
        (self.degree().unwrap_or(0), max)
    }

    fn render(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = match d {
                0 => c.to_string(),
                _ => {
                    let power = if d == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{d}")
                    };
                    if c.is_one() {
                        power
                    } else if (-c).is_one() {
                        format!("-{power}")
                    } else {
                        format!("{c}{power}")
                    }
                }
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        out
    }

    fn parse(text: &str, var: Option<&str>) -> Result<Self, ParseError> {
        PolyParser::new(text, var).parse()
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree-then-coefficient order; only used to make collections deterministic.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

struct PolyParser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    var: Option<&'a str>,
    text: &'a str,
}

impl<'a> PolyParser<'a> {
    fn new(text: &'a str, var: Option<&'a str>) -> Self {
        let chars = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        PolyParser {
            chars,
            pos: 0,
            var,
            text,
        }
    }

    fn column(&self) -> usize {
        match self.chars.get(self.pos) {
            Some((i, _)) => self.text[..*i].chars().count() + 1,
            None => self.text.chars().count() + 1,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(1, self.column(), msg)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Some(s.parse().expect("ascii digits"))
    }

    fn eat_var(&mut self) -> bool {
        let Some(var) = self.var else { return false };
        let n = var.chars().count();
        if self.pos + n > self.chars.len() {
            return false;
        }
        let matches = self.chars[self.pos..self.pos + n]
            .iter()
            .map(|&(_, c)| c)
            .eq(var.chars());
        if matches {
            self.pos += n;
        }
        matches
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let coeff = self.digits();
        if coeff.is_some() && self.peek() == Some('*') {
            self.pos += 1;
            if !self.eat_var() {
                return Err(self.err("expected parameter after '*'"));
            }
        } else if !self.eat_var() {
            return match coeff {
                Some(c) => Ok(Poly::from_coeffs(vec![c])),
                None => Err(self.err(match self.var {
                    Some(v) => format!("expected a number or '{v}'"),
                    None => "expected a number".to_string(),
                })),
            };
        }
        let coeff = coeff.unwrap_or_else(BigInt::one);
        let mut degree = 1usize;
        if self.peek() == Some('^') {
            self.pos += 1;
            let d = self.digits().ok_or_else(|| self.err("expected an exponent"))?;
            degree = usize::try_from(d).map_err(|_| self.err("exponent too large"))?;
        }
        Ok(Poly::monomial(coeff, degree))
    }

    fn parse(mut self) -> Result<Poly, ParseError> {
        let mut acc = Poly::default();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some('-') => {
                    self.pos += 1;
                    true
                }
                Some('+') => {
                    self.pos += 1;
                    false
                }
                None if first => return Err(self.err("empty expression")),
                None => break,
                Some(_) if first => false,
                Some(c) => return Err(self.err(format!("unexpected character {c:?}"))),
            };
            let t = self.term()?;
            acc = if negative { acc - t } else { acc + t };
            first = false;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, Some("n")).unwrap()
    }

    #[test]
    fn render_and_parse() {
        for s in ["2n+2", "n", "-3n+1", "0", "-n^2+7", "5", "-1"] {
            assert_eq!(p(s).render("n"), s);
        }
        assert_eq!(p("2 * n + 2"), p("2n+2"));
        assert_eq!(p("n+n"), p("2n"));
        assert_eq!(p("+n"), p("n"));
    }

    #[test]
    fn parse_errors_carry_columns() {
        let e = Poly::parse("2n+x", Some("n")).unwrap_err();
        assert_eq!(e.column, 4);
        assert!(Poly::parse("n", None).is_err());
        assert!(Poly::parse("", Some("n")).is_err());
        assert!(Poly::parse("2n2", Some("n")).is_err());
    }

    #[test]
    fn multi_letter_parameter() {
        let q = Poly::parse("2k1+3", Some("k1")).unwrap();
        assert_eq!(q.render("k1"), "2k1+3");
    }

    #[test]
    fn gcd_over_z_n() {
        assert_eq!(p("2n^2+2n").gcd(&p("4n+4")), p("2n+2"));
        assert_eq!(Poly::default().gcd(&Poly::default()), Poly::default());
        assert_eq!(p("-2n-2").gcd(&Poly::default()), p("2n+2"));
        assert_eq!(p("n^2-1").gcd(&p("n^2+2n+1")), p("n+1"));
        assert_eq!(p("6").gcd(&p("4n+2")), p("2"));
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("2n+2").exact_div(&p("2")).unwrap(), p("n+1"));
        assert_eq!(p("n^2-1").exact_div(&p("n-1")).unwrap(), p("n+1"));
        assert_eq!(p("n^2+1").exact_div(&p("n-1")), Err(Error::DivisionNotExact));
        assert_eq!(p("2n+1").exact_div(&p("2")), Err(Error::DivisionNotExact));
        assert_eq!(p("0").exact_div(&p("n")).unwrap(), p("0"));
    }

    #[test]
    fn units_and_signs() {
        assert!(p("-1").is_unit());
        assert!(!p("n").is_unit());
        assert!(p("-n+5").is_negative());
        assert_eq!(p("n+2").eval(&BigInt::from(3)), BigInt::from(5));
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-6i64..=6, 0..4)
            .prop_map(|v| Poly::from_coeffs(v.into_iter().map(BigInt::from).collect()))
    }

    proptest! {
        #[test]
        fn gcd_scales_with_common_factor(a in small_poly(), b in small_poly(), r in small_poly()) {
            prop_assume!(!r.is_zero());
            let lhs = (a.clone() * &r).gcd(&(b.clone() * &r));
            let rhs = r.clone() * a.gcd(&b);
            // equal up to a unit
            prop_assert!(lhs == rhs || lhs == -rhs);
        }

        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly()) {
            let g = a.gcd(&b);
            if !g.is_zero() {
                prop_assert!(a.exact_div(&g).is_ok());
                prop_assert!(b.exact_div(&g).is_ok());
                prop_assert!(!g.is_negative());
            }
        }

        #[test]
        fn render_parse_round_trip(a in small_poly()) {
            prop_assert_eq!(Poly::parse(&a.render("n"), Some("n")).unwrap(), a);
        }
    }
}
