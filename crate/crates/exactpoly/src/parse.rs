//! Recursive-descent expression parser.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' natural)?
//! base   := name | integer | '(' expr ')' | '-' base
//! ```
//!
//! `a/b` rational literals fall out of the `term` rule. Evaluation happens
//! during the parse, into any [`Coeff`] ring chosen by the caller.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeff::Coeff;
use crate::error::{PolyError, Result};
use crate::poly::{MultiPoly, PolyCtx};
use crate::ratfun::{FnField, RatFun};
use crate::scalar::{BaseField, Scalar};

struct Parser<'a, C: Coeff, F: Fn(&str) -> Option<C>> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a C::Ctx,
    base: &'a BaseField,
    resolve: F,
}

impl<C: Coeff, F: Fn(&str) -> Option<C>> Parser<'_, C, F> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(PolyError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<C> {
        let mut acc = if self.eat(b'-') { self.term()?.neg() } else { self.term()? };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<C> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.factor()?);
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.factor()?;
                if d.is_zero() {
                    return Err(PolyError::DivisionByZero);
                }
                match d.inv() {
                    Some(inv) => acc = acc.mul(&inv),
                    None => {
                        return Err(PolyError::NotPolynomial(format!(
                            "division by a non-constant at position {at}"
                        )))
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<C> {
        let b = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected a natural-number exponent");
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let e: u64 = text.parse().map_err(|_| PolyError::Syntax { pos: start, msg: "exponent too large".into() })?;
            Ok(b.pow(e))
        } else {
            Ok(b)
        }
    }

    fn base(&mut self) -> Result<C> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(v)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.base()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = text.parse().unwrap();
                let s = Scalar::from_rational(self.base, &BigRational::from_integer(n))?;
                Ok(C::from_scalar(self.ctx, &s))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                (self.resolve)(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` into any coefficient ring; `resolve` maps identifiers to
/// ring elements and integer literals are embedded from `base`.
pub fn parse_with<C: Coeff>(
    text: &str,
    ctx: &C::Ctx,
    base: &BaseField,
    resolve: impl Fn(&str) -> Option<C>,
) -> Result<C> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ctx, base, resolve };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(v)
}

fn generator_constant(base: &BaseField, name: &str) -> Option<Scalar> {
    match base {
        BaseField::Number(nf) if nf.generator() == name => Some(Scalar::generator(nf)),
        _ => None,
    }
}

pub fn parse_scalar(text: &str, base: &BaseField) -> Result<Scalar> {
    parse_with(text, base, base, |name| generator_constant(base, name))
}

pub fn parse_poly(text: &str, ctx: &PolyCtx<Scalar>) -> Result<MultiPoly<Scalar>> {
    parse_with(text, ctx, &ctx.coeff, |name| match ctx.var_index(name) {
        Some(i) => Some(MultiPoly::var(ctx, i)),
        None => generator_constant(&ctx.coeff, name).map(|c| MultiPoly::constant(ctx, c)),
    })
}

pub fn parse_ratfun(text: &str, field: &Arc<FnField>) -> Result<RatFun> {
    parse_with(text, field, field.base(), |name| match field.poly.var_index(name) {
        Some(i) => Some(RatFun::var(field, i)),
        None => generator_constant(field.base(), name).map(|c| RatFun::constant(field, c)),
    })
}

/// Polynomials in `ctx.vars` whose coefficients are rational functions in
/// the coefficient field's variables.
pub fn parse_poly_over(text: &str, ctx: &PolyCtx<RatFun>) -> Result<MultiPoly<RatFun>> {
    let field = &ctx.coeff;
    parse_with(text, ctx, field.base(), |name| {
        if let Some(i) = ctx.var_index(name) {
            return Some(MultiPoly::var(ctx, i));
        }
        if let Some(i) = field.poly.var_index(name) {
            return Some(MultiPoly::constant(ctx, RatFun::var(field, i)));
        }
        generator_constant(field.base(), name).map(|c| MultiPoly::constant(ctx, RatFun::constant(field, c)))
    })
}
