use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::formula::{parse_formula_prefix, Formula};
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::{Error, ParseError, Result};

/// Name of the pseudo-atom row holding electric charge.
pub const CHARGE: &str = "charge";

/// Compounds of a reaction, in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reaction {
    pub left: Vec<Formula>,
    /// Empty when the input had no arrow.
    pub right: Vec<Formula>,
    pub has_arrow: bool,
    pub parameter: Option<String>,
    /// Row order of the adjacency matrix.
    pub atoms: Vec<String>,
    /// Leading coefficients as written, one per compound.
    pub given: Vec<Option<BigInt>>,
}

impl Reaction {
    /// Parses `side (-> | = | →) side` or a bare `+`-separated compound list.
    pub fn parse(text: &str, parameter: Option<&str>) -> Result<Self, ParseError> {
        let mut s = Scanner { text, pos: 0 };
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut given = Vec::new();
        let mut given_right = Vec::new();
        s.side(parameter, &mut left, &mut given)?;
        s.skip_ws();
        let has_arrow = s.arrow();
        if has_arrow {
            s.side(parameter, &mut right, &mut given_right)?;
        }
        s.skip_ws();
        if s.pos < text.len() {
            return Err(s.err(if has_arrow {
                "expected '+' or end of input"
            } else {
                "expected '+', '->' or end of input"
            }));
        }
        given.extend(given_right);
        let mut r = Reaction {
            left,
            right,
            has_arrow,
            parameter: parameter.map(str::to_string),
            atoms: Vec::new(),
            given,
        };
        r.atoms = r.default_atoms();
        Ok(r)
    }

    pub fn compounds(&self) -> impl Iterator<Item = &Formula> {
        self.left.iter().chain(&self.right)
    }

    pub fn len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn elements(&self) -> BTreeSet<String> {
        self.compounds()
            .flat_map(|f| f.composition.keys().cloned())
            .collect()
    }

    fn charged(&self) -> bool {
        self.compounds().any(|f| !f.charge.is_zero())
    }

    fn default_atoms(&self) -> Vec<String> {
        let mut atoms: Vec<String> = self.elements().into_iter().collect();
        if self.charged() {
            atoms.push(CHARGE.to_string());
        }
        atoms
    }

    /// Puts the listed atoms first; the rest follow in default order.
    pub fn set_atom_order(&mut self, order: &[String]) -> Result<()> {
        let known = self.default_atoms();
        let mut atoms = Vec::new();
        for a in order {
            if !known.contains(a) {
                return Err(Error::InvalidArgument(format!("unknown atom {a:?} in atom order")));
            }
            if !atoms.contains(a) {
                atoms.push(a.clone());
            }
        }
        atoms.extend(known.into_iter().filter(|a| !order.contains(a)));
        self.atoms = atoms;
        Ok(())
    }

    /// Atom-by-compound counts, charge as the last row when present.
    pub fn adjacency<R: Ring>(&self) -> Result<Matrix<R>> {
        let compounds: Vec<&Formula> = self.compounds().collect();
        let mut rows = Vec::with_capacity(self.atoms.len());
        for atom in &self.atoms {
            let row = compounds
                .iter()
                .map(|f| {
                    if atom == CHARGE {
                        Ok(R::from_integer(f.charge.clone()))
                    } else {
                        R::from_poly(&f.count(atom)).ok_or_else(|| {
                            Error::InconsistentParameter(format!(
                                "{} has a parametric count but no parameter is in use",
                                f.source
                            ))
                        })
                    }
                })
                .collect::<Result<Vec<R>>>()?;
            rows.push(row);
        }
        Ok(Matrix::from_fn(self.atoms.len(), compounds.len(), |i, j| {
            rows[i][j].clone()
        }))
    }
}

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl Scanner<'_> {
    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn err(&self, msg: &str) -> ParseError {
        ParseError::new(1, self.column(), msg)
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn arrow(&mut self) -> bool {
        for a in ["->", "→", "="] {
            if self.rest().starts_with(a) {
                self.pos += a.len();
                return true;
            }
        }
        false
    }

    fn term(
        &mut self,
        param: Option<&str>,
        out: &mut Vec<Formula>,
        given: &mut Vec<Option<BigInt>>,
    ) -> Result<(), ParseError> {
        self.skip_ws();
        let digits = self.rest().len() - self.rest().trim_start_matches(|c: char| c.is_ascii_digit()).len();
        let coeff = if digits > 0 {
            let c: BigInt = self.rest()[..digits].parse().expect("digits");
            self.pos += digits;
            self.skip_ws();
            if c.is_zero() {
                return Err(self.err("coefficient must be positive"));
            }
            Some(c)
        } else {
            None
        };
        let col = self.column();
        let (f, used) = parse_formula_prefix(self.rest(), param).map_err(|e| e.offset(0, col - 1))?;
        self.pos += used;
        out.push(f);
        given.push(coeff);
        Ok(())
    }

    fn side(
        &mut self,
        param: Option<&str>,
        out: &mut Vec<Formula>,
        given: &mut Vec<Option<BigInt>>,
    ) -> Result<(), ParseError> {
        self.term(param, out, given)?;
        loop {
            self.skip_ws();
            if !self.rest().starts_with('+') {
                return Ok(());
            }
            self.pos += 1;
            self.term(param, out, given)?;
        }
    }
}
