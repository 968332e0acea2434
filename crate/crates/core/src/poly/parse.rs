//! The polynomial text grammar:
//!
//! ```text
//! poly     := term (('+'|'-') term)*
//! term     := coeff ('*' monomial)? | monomial
//! monomial := var ('^' int)? ('*' var ('^' int)?)*
//! var      := [xwXuv][0-9]+
//! ```
//!
//! A leading sign is accepted, coefficients may be fractions `a/b`, and
//! whitespace between tokens is ignored.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Form, Group, Monomial, Poly, Space, VarKind};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};

/// One parsed term: a coefficient and `(kind, index, exponent, offset)`
/// variable powers.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedTerm {
    pub coeff: Rational,
    pub vars: Vec<(VarKind, usize, u32, usize)>,
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("validated digits"))
    }

    fn small_int(&mut self, what: &str) -> Result<u32> {
        let at = self.pos;
        let n = self.digits()?;
        u32::try_from(&n).map_err(|_| Error::Parse { pos: at, msg: format!("{what} too large") })
    }

    fn var(&mut self) -> Result<(VarKind, usize, u32, usize)> {
        self.skip_ws();
        let at = self.pos;
        let Some(kind) = self.s.get(self.pos).and_then(|&c| VarKind::from_letter(c as char)) else {
            return self.err("expected a variable");
        };
        self.pos += 1;
        if !self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            return self.err("expected a variable index");
        }
        let idx = self.small_int("variable index")? as usize;
        let mut e = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            e = self.small_int("exponent")?;
        }
        Ok((kind, idx, e, at))
    }

    fn monomial(&mut self, out: &mut Vec<(VarKind, usize, u32, usize)>) -> Result<()> {
        out.push(self.var()?);
        while self.peek() == Some(b'*') {
            self.pos += 1;
            out.push(self.var()?);
        }
        Ok(())
    }

    fn term(&mut self, negative: bool) -> Result<ParsedTerm> {
        let mut vars = Vec::new();
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                let mut d = BigInt::from(1u8);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    d = self.digits()?;
                    if d.is_zero() {
                        return Err(Error::Parse { pos: at, msg: "zero denominator".into() });
                    }
                }
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.monomial(&mut vars)?;
                }
                Rational::new(n, d)
            }
            Some(c) if VarKind::from_letter(c as char).is_some() => {
                self.monomial(&mut vars)?;
                Rational::one()
            }
            Some(_) => return self.err("expected a coefficient or a variable"),
            None => return self.err("unexpected end of input"),
        };
        Ok(ParsedTerm { coeff: if negative { -coeff } else { coeff }, vars })
    }
}

/// Parses text into terms without interpreting the variables.
pub fn parse_terms(text: &str) -> Result<Vec<ParsedTerm>> {
    let mut lx = Lexer { s: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut negative = match lx.peek() {
        Some(b'-') => {
            lx.pos += 1;
            true
        }
        Some(b'+') => {
            lx.pos += 1;
            false
        }
        _ => false,
    };
    loop {
        terms.push(lx.term(negative)?);
        match lx.peek() {
            None => break,
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(_) => return lx.err("expected '+', '-' or end of input"),
        }
        lx.pos += 1;
    }
    Ok(terms)
}

fn build_poly(terms: &[ParsedTerm], space: &Space) -> Result<Poly<Rational>> {
    let mut poly = Poly::zero(space.nvars());
    for t in terms {
        let mut m = Monomial::one();
        for &(kind, idx, e, at) in &t.vars {
            let Some(i) = space.locate(kind, idx) else {
                return Err(Error::Parse {
                    pos: at,
                    msg: format!("variable {}{} is not in the expected space", kind.letter(), idx),
                });
            };
            let total = m.exp(i) + e;
            if total > u8::MAX as u32 {
                return Err(Error::Parse { pos: at, msg: "exponent too large".into() });
            }
            m.set_exp(i, total);
        }
        poly.add_term(m, t.coeff.clone());
    }
    Ok(poly)
}

/// Parses a form over a known space, inferring its degree. The zero
/// polynomial is rejected because it carries no degree.
pub fn parse_form(text: &str, space: &Space) -> Result<Form<Rational>> {
    let poly = build_poly(&parse_terms(text)?, space)?;
    if poly.is_zero() {
        return Err(Error::Parse { pos: 0, msg: "zero polynomial has no degree".into() });
    }
    Form::from_poly(space.clone(), poly).map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })
}

/// Parses a form of a prescribed degree; the zero polynomial is accepted.
pub fn parse_form_of_degree(text: &str, space: &Space, degree: &[u32]) -> Result<Form<Rational>> {
    let poly = build_poly(&parse_terms(text)?, space)?;
    Form::new(space.clone(), degree.to_vec(), poly).map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })
}

/// Parses a form and infers its space: one group per variable letter, in
/// the order x, u, w, v, X, sized by the largest index used.
pub fn parse_form_auto(text: &str) -> Result<Form<Rational>> {
    let terms = parse_terms(text)?;
    let order = [VarKind::Primal, VarKind::Primal2, VarKind::Dual, VarKind::Dual2, VarKind::Lift];
    let mut groups = Vec::new();
    for kind in order {
        let dim = terms
            .iter()
            .flat_map(|t| t.vars.iter())
            .filter(|v| v.0 == kind)
            .map(|v| v.1 + 1)
            .max();
        if let Some(dim) = dim {
            groups.push(Group { kind, dim });
        }
    }
    if groups.is_empty() {
        groups.push(Group { kind: VarKind::Primal, dim: 1 });
    }
    if groups.iter().map(|g| g.dim).sum::<usize>() > super::MAX_VARS {
        return Err(Error::Parse { pos: 0, msg: "too many variables".into() });
    }
    parse_form(text, &Space::new(groups))
}
