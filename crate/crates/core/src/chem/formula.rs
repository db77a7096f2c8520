use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::ring::{Poly, Ring};
use crate::ParseError;

/// A compound with its flattened composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    /// The text as written.
    pub source: String,
    /// Element symbol → count. Counts are nonzero; constant unless a
    /// parameter was declared.
    pub composition: BTreeMap<String, Poly>,
    pub charge: BigInt,
}

impl Formula {
    pub fn count(&self, element: &str) -> Poly {
        self.composition.get(element).cloned().unwrap_or_default()
    }
}

/// Parses a complete formula such as `H2SO4`, `SO3^2-`,
/// `[Cr(N2H4CO)6]4[Cr(CN)6]3` or, with parameter `n`, `CnH2n+2`.
pub fn parse_formula(text: &str, param: Option<&str>) -> Result<Formula, ParseError> {
    let mut p = FormulaParser::new(text, param);
    let f = p.formula()?;
    if let Some(c) = p.peek() {
        return Err(p.err(format!("unexpected character {c:?}")));
    }
    Ok(f)
}

/// Parses a formula at the start of `text` and returns it with the number of
/// bytes consumed.
pub(crate) fn parse_formula_prefix(
    text: &str,
    param: Option<&str>,
) -> Result<(Formula, usize), ParseError> {
    let mut p = FormulaParser::new(text, param);
    let f = p.formula()?;
    Ok((f, p.byte_pos()))
}

struct FormulaParser<'a> {
    chars: Vec<char>,
    pos: usize,
    param: Option<&'a str>,
}

type Counts = BTreeMap<String, Poly>;

impl<'a> FormulaParser<'a> {
    fn new(text: &'a str, param: Option<&'a str>) -> Self {
        FormulaParser {
            chars: text.chars().collect(),
            pos: 0,
            param,
        }
    }

    fn byte_pos(&self) -> usize {
        self.chars[..self.pos].iter().map(|c| c.len_utf8()).sum()
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(1, self.pos + 1, msg)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).copied()
    }

    fn at_param(&self) -> bool {
        self.param_at(self.pos)
    }

    fn param_at(&self, pos: usize) -> bool {
        let Some(p) = self.param else { return false };
        let n = p.chars().count();
        pos + n <= self.chars.len() && self.chars[pos..pos + n].iter().copied().eq(p.chars())
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let start = self.pos;
        let counts = self.groups(None)?;
        if counts.is_empty() {
            return Err(self.err("expected an element symbol"));
        }
        let charge = self.charge()?;
        if let Some('.' | '·' | '*') = self.peek() {
            return Err(self.err("hydrate notation is not supported"));
        }
        let source: String = self.chars[start..self.pos].iter().collect();
        Ok(Formula {
            source,
            composition: counts,
            charge,
        })
    }

    /// Sequence of units up to `close` (or the end of the formula).
    fn groups(&mut self, close: Option<char>) -> Result<Counts, ParseError> {
        let mut total = Counts::new();
        loop {
            let unit = match self.peek() {
                Some(c) if c.is_ascii_uppercase() => self.element()?,
                Some(open @ ('(' | '[')) => {
                    if open == '[' && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
                        return Err(self.err("isotope notation is not supported"));
                    }
                    self.pos += 1;
                    let want = if open == '(' { ')' } else { ']' };
                    let inner = self.groups(Some(want))?;
                    if self.peek() != Some(want) {
                        return Err(self.err(format!("expected {want:?}")));
                    }
                    if inner.is_empty() {
                        return Err(self.err("empty group"));
                    }
                    self.pos += 1;
                    inner
                }
                Some(c @ (')' | ']')) if Some(c) != close => {
                    return Err(self.err(format!("unmatched {c:?}")));
                }
                _ => break,
            };
            let k = self.count()?;
            for (el, n) in unit {
                let add = n * &k;
                let slot = total.entry(el).or_default();
                *slot = std::mem::take(slot) + add;
            }
        }
        Ok(total)
    }

    fn element(&mut self) -> Result<Counts, ParseError> {
        let mut sym = String::new();
        sym.push(self.chars[self.pos]);
        self.pos += 1;
        while self.peek().is_some_and(|c| c.is_ascii_lowercase()) && !self.at_param() {
            sym.push(self.chars[self.pos]);
            self.pos += 1;
        }
        Ok(Counts::from([(sym, Poly::constant(1))]))
    }

    /// Optional count after a unit; defaults to 1.
    fn count(&mut self) -> Result<Poly, ParseError> {
        let start = self.pos;
        let value = if self.peek() == Some('{') {
            self.pos += 1;
            let open = self.pos;
            while self.peek().is_some_and(|c| c != '}') {
                self.pos += 1;
            }
            if self.peek() != Some('}') {
                return Err(self.err("expected '}'"));
            }
            let inner: String = self.chars[open..self.pos].iter().collect();
            self.pos += 1;
            Poly::parse(&inner, self.param).map_err(|e| ParseError::new(1, open + e.column, e.message))?
        } else if self.peek().is_some_and(|c| c.is_ascii_digit()) || self.at_param() {
            self.bare_count()?
        } else {
            return Ok(Poly::constant(1));
        };
        if value.is_zero() {
            self.pos = start;
            return Err(self.err("count must be nonzero"));
        }
        if value.coeffs().iter().any(|c| c < &BigInt::zero()) && value.degree() == Some(0) {
            self.pos = start;
            return Err(self.err("count must be positive"));
        }
        Ok(value)
    }

    /// Digits and parameter occurrences joined by `+`/`-`, e.g. `2n+2`. The
    /// sign only continues the count when followed by a digit or the
    /// parameter, and only if a parameter is declared.
    fn bare_count(&mut self) -> Result<Poly, ParseError> {
        let start = self.pos;
        loop {
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.at_param() {
                self.pos += self.param.map_or(0, |p| p.chars().count());
            }
            let continues = self.param.is_some()
                && matches!(self.peek(), Some('+' | '-'))
                && (self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) || self.param_at(self.pos + 1));
            if !continues {
                break;
            }
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        Poly::parse(&text, self.param).map_err(|e| ParseError::new(1, start + e.column, e.message))
    }

    fn charge(&mut self) -> Result<BigInt, ParseError> {
        if self.peek() != Some('^') {
            return Ok(BigInt::zero());
        }
        self.pos += 1;
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let magnitude: BigInt = if self.pos == start {
            BigInt::one()
        } else {
            let s: String = self.chars[start..self.pos].iter().collect();
            s.parse().expect("digits")
        };
        if magnitude.is_zero() {
            return Err(self.err("charge must be nonzero"));
        }
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Ok(magnitude)
            }
            Some('-') => {
                self.pos += 1;
                Ok(-magnitude)
            }
            _ => Err(self.err("expected '+' or '-' after '^'")),
        }
    }
}

impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.source)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(f: &Formula, var: &str) -> Vec<(String, String)> {
        f.composition
            .iter()
            .map(|(k, v)| (k.clone(), v.render(var)))
            .collect()
    }

    fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
        v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn simple_formulas() {
        let f = parse_formula("H2SO4", None).unwrap();
        assert_eq!(counts(&f, ""), pairs(&[("H", "2"), ("O", "4"), ("S", "1")]));
        assert_eq!(f.charge, BigInt::zero());
        let f = parse_formula("SO3^2-", None).unwrap();
        assert_eq!(counts(&f, ""), pairs(&[("O", "3"), ("S", "1")]));
        assert_eq!(f.charge, BigInt::from(-2));
        let f = parse_formula("OH^-", None).unwrap();
        assert_eq!(f.charge, BigInt::from(-1));
        let f = parse_formula("Fe^3+", None).unwrap();
        assert_eq!(f.charge, BigInt::from(3));
    }

    #[test]
    fn nested_groups_flatten() {
        let f = parse_formula("[Cr(N2H4CO)6]4[Cr(CN)6]3", None).unwrap();
        assert_eq!(
            counts(&f, ""),
            pairs(&[("C", "42"), ("Cr", "7"), ("H", "96"), ("N", "66"), ("O", "24")])
        );
        let f = parse_formula("Ca3(PO4)2", None).unwrap();
        assert_eq!(counts(&f, ""), pairs(&[("Ca", "3"), ("O", "8"), ("P", "2")]));
    }

    #[test]
    fn parametric_counts() {
        let f = parse_formula("CnH2n+2", Some("n")).unwrap();
        assert_eq!(counts(&f, "n"), pairs(&[("C", "n"), ("H", "2n+2")]));
        let f = parse_formula("C{n^2}H{2n}", Some("n")).unwrap();
        assert_eq!(counts(&f, "n"), pairs(&[("C", "n^2"), ("H", "2n")]));
        // without a parameter, Cn is an element symbol
        let f = parse_formula("Cn", None).unwrap();
        assert_eq!(counts(&f, ""), pairs(&[("Cn", "1")]));
    }

    #[test]
    fn prefix_stops_at_separators() {
        let (f, used) = parse_formula_prefix("CnH2n+2 + H2O", Some("n")).unwrap();
        assert_eq!(f.source, "CnH2n+2");
        assert_eq!(used, 7);
        let (f, used) = parse_formula_prefix("H2+O2", None).unwrap();
        assert_eq!((f.source.as_str(), used), ("H2", 2));
        let (f, _) = parse_formula_prefix("OH^-->X", None).unwrap();
        assert_eq!(f.charge, BigInt::from(-1));
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_formula("H2O0", None).unwrap_err();
        assert_eq!(e.column, 4);
        let e = parse_formula("CuSO4.5H2O", None).unwrap_err();
        assert_eq!(e.column, 6);
        assert!(e.message.contains("hydrate"));
        assert!(parse_formula("[13C]O2", None).unwrap_err().message.contains("isotope"));
        assert!(parse_formula("(OH", None).is_err());
        assert!(parse_formula("OH)", None).is_err());
        assert!(parse_formula("h2o", None).is_err());
        assert!(parse_formula("", None).is_err());
        assert!(parse_formula("SO4^2", None).is_err());
        assert!(parse_formula("()", None).is_err());
    }
}
