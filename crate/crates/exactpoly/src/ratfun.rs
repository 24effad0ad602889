//! Rational functions `A(x_1, ..., x_m)` over a base field, kept in
//! canonical form: gcd-reduced, denominator monic under degree-reverse-lex.

use std::fmt;
use std::sync::Arc;

use crate::coeff::Coeff;
use crate::error::{PolyError, Result};
use crate::gcd::gcd;
use crate::monomial::MonomialOrder;
use crate::poly::{MultiPoly, PolyCtx};
use crate::scalar::{BaseField, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct FnField {
    pub poly: PolyCtx<Scalar>,
}

impl FnField {
    pub fn new(base: BaseField, vars: Vec<String>) -> Arc<Self> {
        Arc::new(FnField { poly: PolyCtx::new(base, vars) })
    }

    pub fn base(&self) -> &BaseField {
        &self.poly.coeff
    }

    pub fn vars(&self) -> &[String] {
        &self.poly.vars
    }
}

#[derive(Clone, Debug)]
pub struct RatFun {
    field: Arc<FnField>,
    num: MultiPoly<Scalar>,
    den: MultiPoly<Scalar>,
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl RatFun {
    pub fn from_poly(field: &Arc<FnField>, p: MultiPoly<Scalar>) -> Self {
        let den = MultiPoly::one(&field.poly);
        RatFun { field: field.clone(), num: p, den }
    }

    pub fn new(field: &Arc<FnField>, num: MultiPoly<Scalar>, den: MultiPoly<Scalar>) -> Result<Self> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::normalized(field, num, den))
    }

    fn normalized(field: &Arc<FnField>, num: MultiPoly<Scalar>, den: MultiPoly<Scalar>) -> Self {
        let order = MonomialOrder::DegRevLex;
        if num.is_zero() {
            return RatFun::from_poly(field, num);
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        let lc = den.leading_term(&order).unwrap().1.inv().unwrap();
        if lc.is_one() {
            RatFun { field: field.clone(), num, den }
        } else {
            RatFun { field: field.clone(), num: num.scale(&lc), den: den.scale(&lc) }
        }
    }

    pub fn constant(field: &Arc<FnField>, c: Scalar) -> Self {
        RatFun::from_poly(field, MultiPoly::constant(&field.poly, c))
    }

    pub fn var(field: &Arc<FnField>, i: usize) -> Self {
        RatFun::from_poly(field, MultiPoly::var(&field.poly, i))
    }

    pub fn field(&self) -> &Arc<FnField> {
        &self.field
    }

    pub fn numer(&self) -> &MultiPoly<Scalar> {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly<Scalar> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Base-field value of a constant function.
    pub fn constant_value(&self) -> Option<Scalar> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.constant_value()?.mul(&self.den.constant_value()?.inv()?))
        } else {
            None
        }
    }

    pub fn derivative(&self, i: usize) -> Self {
        if self.is_polynomial() {
            return RatFun::from_poly(&self.field, self.num.derivative(i));
        }
        let n = &(&self.num.derivative(i) * &self.den) - &(&self.num * &self.den.derivative(i));
        RatFun::normalized(&self.field, n, &self.den * &self.den)
    }

    /// Substitutes base-field values; `None` when the denominator vanishes.
    pub fn eval(&self, point: &[Scalar]) -> Option<Scalar> {
        let d = self.den.eval(point);
        Some(self.num.eval(point).mul(&d.inv()?))
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<RatFun> {
        let inv = Coeff::inv(rhs).ok_or(PolyError::DivisionByZero)?;
        Ok(Coeff::mul(self, &inv))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        if self.num.is_compound() {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let simple = self.den.num_terms() == 1
            && self.den.terms().all(|(m, c)| c.is_one() && m.0.iter().filter(|e| **e > 0).count() <= 1);
        if !simple {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl Coeff for RatFun {
    type Ctx = Arc<FnField>;

    fn ctx(&self) -> Arc<FnField> {
        self.field.clone()
    }
    fn zero(ctx: &Arc<FnField>) -> Self {
        RatFun::from_poly(ctx, MultiPoly::zero(&ctx.poly))
    }
    fn one(ctx: &Arc<FnField>) -> Self {
        RatFun::from_poly(ctx, MultiPoly::one(&ctx.poly))
    }
    fn from_scalar(ctx: &Arc<FnField>, s: &Scalar) -> Self {
        RatFun::constant(ctx, Scalar::from_scalar(ctx.base(), s))
    }
    fn characteristic(ctx: &Arc<FnField>) -> u64 {
        ctx.base().characteristic()
    }
    fn from_i64(ctx: &Arc<FnField>, n: i64) -> Self {
        RatFun::constant(ctx, Scalar::from_int(ctx.base(), n))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        Coeff::is_one(&self.num) && self.is_polynomial()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFun::from_poly(&self.field, &self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RatFun::normalized(&self.field, &self.num + &rhs.num, self.den.clone());
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::normalized(&self.field, n, &self.den * &rhs.den)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Coeff::add(self, &Coeff::neg(rhs))
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFun::from_poly(&self.field, &self.num * &rhs.num);
        }
        if self.is_zero() || rhs.is_zero() {
            return Coeff::zero(&self.field);
        }
        RatFun::normalized(&self.field, &self.num * &rhs.num, &self.den * &rhs.den)
    }
    fn neg(&self) -> Self {
        RatFun { field: self.field.clone(), num: -&self.num, den: self.den.clone() }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFun::normalized(&self.field, self.den.clone(), self.num.clone()))
    }
    fn mul_scalar(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Coeff::zero(&self.field);
        }
        let c = Scalar::from_scalar(self.field.base(), s);
        RatFun { field: self.field.clone(), num: self.num.scale(&c), den: self.den.clone() }
    }
    fn is_negative(&self) -> bool {
        self.num.num_terms() == 1 && Coeff::is_negative(&self.num)
    }
    fn is_compound(&self) -> bool {
        !self.is_polynomial() || self.num.is_compound()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ratfun;

    #[test]
    fn canonical_form_cancels_and_normalizes() {
        let f = FnField::new(BaseField::Rational, vec!["x".into(), "y".into()]);
        let a = parse_ratfun("(x^2 - y^2)/(2*x + 2*y)", &f).unwrap();
        assert_eq!(a, parse_ratfun("x/2 - y/2", &f).unwrap());
        assert!(a.is_polynomial());
        let b = parse_ratfun("1/x + 1/y", &f).unwrap();
        assert_eq!(b.to_string(), "(x + y)/(x*y)");
        assert_eq!(b.sub(&b).to_string(), "0");
    }

    #[test]
    fn quotient_rule() {
        let f = FnField::new(BaseField::Rational, vec!["x".into()]);
        let a = parse_ratfun("1/x", &f).unwrap();
        assert_eq!(a.derivative(0), parse_ratfun("-1/x^2", &f).unwrap());
    }
}
