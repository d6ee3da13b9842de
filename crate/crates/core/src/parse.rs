//! Text grammar for polynomials and Laurent entries.
//!
//! A polynomial is a sum of terms joined by `+`/`-`; a term is a `*`-product of
//! factors, each either a coefficient (`7`, `3/4`) or a power `x<i>` / `x<i>^e`.
//! Whitespace is insignificant. Laurent entries use the variable `t` and allow
//! negative exponents (`t^-3`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::poly::{Monomial, Poly};

struct Cursor<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            src,
            chars: src.char_indices().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let offset = self
            .chars
            .get(self.pos)
            .map(|c| c.0)
            .unwrap_or(self.src.len());
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before
            .rsplit('\n')
            .next()
            .map(|l| l.chars().count())
            .unwrap_or(0)
            + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Digits only; no sign, no whitespace inside.
    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        Ok(s.parse().expect("digits parse as an integer"))
    }

    fn exponent(&mut self, allow_negative: bool) -> Result<i64> {
        let neg = if self.peek() == Some('-') {
            if !allow_negative {
                return Err(self.error("negative exponents are not allowed here"));
            }
            self.bump();
            true
        } else {
            false
        };
        let n = self.number()?;
        let v: i64 = n
            .try_into()
            .map_err(|_| self.error("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }
}

enum Factor {
    Coeff(BigRational),
    Var(usize, i64),
}

fn parse_factor(cur: &mut Cursor, var_letter: char, allow_negative: bool) -> Result<Factor> {
    match cur.peek() {
        Some(c) if c.is_ascii_digit() => {
            let num = cur.number()?;
            if cur.peek() == Some('/') {
                cur.bump();
                let den = cur.number()?;
                if den.is_zero() {
                    return Err(cur.error("zero denominator"));
                }
                Ok(Factor::Coeff(BigRational::new(num, den)))
            } else {
                Ok(Factor::Coeff(BigRational::from_integer(num)))
            }
        }
        Some(c) if c == var_letter => {
            cur.bump();
            let idx = if var_letter == 't' {
                0
            } else {
                let n = cur.number()?;
                usize::try_from(n).map_err(|_| cur.error("variable index out of range"))?
            };
            let e = if cur.peek() == Some('^') {
                cur.bump();
                cur.exponent(allow_negative)?
            } else {
                1
            };
            Ok(Factor::Var(idx, e))
        }
        Some(c) => Err(cur.error(format!("unexpected character {c:?}"))),
        None => Err(cur.error("unexpected end of input")),
    }
}

/// Parsed terms before the variable count is fixed: (coefficient, [(var, exp)]).
type RawTerm = (BigRational, Vec<(usize, i64)>);

fn parse_terms(src: &str, var_letter: char, allow_negative: bool) -> Result<Vec<RawTerm>> {
    let mut cur = Cursor::new(src);
    let mut terms = Vec::new();
    if cur.peek().is_none() {
        return Err(cur.error("empty polynomial"));
    }
    let mut first = true;
    loop {
        let mut sign = BigRational::one();
        match cur.peek() {
            Some('+') if !first => {
                cur.bump();
            }
            Some('-') => {
                cur.bump();
                sign = -sign;
            }
            _ if first => {}
            None => break,
            Some(c) => return Err(cur.error(format!("expected '+' or '-', found {c:?}"))),
        }
        first = false;
        let mut coeff = sign;
        let mut vars = Vec::new();
        loop {
            match parse_factor(&mut cur, var_letter, allow_negative)? {
                Factor::Coeff(q) => coeff *= q,
                Factor::Var(i, e) => vars.push((i, e)),
            }
            if cur.peek() == Some('*') {
                cur.bump();
            } else {
                break;
            }
        }
        terms.push((coeff, vars));
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(terms)
}

/// Parse a polynomial in the variables `x0..x{nvars-1}`.
pub fn parse_poly(src: &str, nvars: usize, field: &Field) -> Result<Poly> {
    let terms = parse_terms(src, 'x', false)?;
    build_poly(terms, nvars, field)
}

/// Parse a polynomial, taking the variable count from the largest index used
/// (at least `min_vars`).
pub fn parse_poly_infer(src: &str, min_vars: usize, field: &Field) -> Result<Poly> {
    let terms = parse_terms(src, 'x', false)?;
    let n = terms
        .iter()
        .flat_map(|(_, v)| v.iter().map(|(i, _)| i + 1))
        .max()
        .unwrap_or(0)
        .max(min_vars)
        .max(1);
    build_poly(terms, n, field)
}

fn build_poly(terms: Vec<RawTerm>, nvars: usize, field: &Field) -> Result<Poly> {
    let mut p = Poly::zero(nvars, field.clone());
    for (c, vars) in terms {
        let mut e = vec![0u32; nvars];
        for (i, k) in vars {
            if i >= nvars {
                return Err(Error::Parse {
                    line: 1,
                    column: 1,
                    message: format!("variable x{i} out of range for {nvars} variables"),
                });
            }
            e[i] += k as u32;
        }
        p.add_term(Monomial(e), field.from_rational(&c)?);
    }
    Ok(p)
}

/// A Laurent polynomial in `t`: exponent -> coefficient, zero entries removed.
pub fn parse_laurent(src: &str, field: &Field) -> Result<Vec<(i64, FieldElem)>> {
    let terms = parse_terms(src, 't', true)?;
    let mut acc: std::collections::BTreeMap<i64, FieldElem> = Default::default();
    for (c, vars) in terms {
        let e: i64 = vars.iter().map(|(_, k)| k).sum();
        let v = field.from_rational(&c)?;
        let entry = acc.entry(e).or_insert_with(|| field.zero());
        *entry = &*entry + &v;
    }
    Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}
