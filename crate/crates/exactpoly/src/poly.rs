//! Sparse multivariate polynomials over a [`Coeff`] ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::coeff::Coeff;
use crate::monomial::{Monomial, MonomialOrder};
use crate::scalar::Scalar;

/// Coefficient context plus the ambient variable list.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyCtx<C: Coeff> {
    pub coeff: C::Ctx,
    pub vars: Arc<Vec<String>>,
}

impl<C: Coeff> PolyCtx<C> {
    pub fn new(coeff: C::Ctx, vars: Vec<String>) -> Self {
        PolyCtx { coeff, vars: Arc::new(vars) }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

#[derive(Clone, Debug)]
pub struct MultiPoly<C: Coeff> {
    ctx: PolyCtx<C>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> PartialEq for MultiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.vars == other.ctx.vars && self.terms == other.terms
    }
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(ctx: &PolyCtx<C>) -> Self {
        MultiPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &PolyCtx<C>) -> Self {
        Self::constant(ctx, C::one(&ctx.coeff))
    }

    pub fn constant(ctx: &PolyCtx<C>, c: C) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.nvars()), c);
        }
        p
    }

    pub fn var(ctx: &PolyCtx<C>, i: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.nvars(), i, 1), C::one(&ctx.coeff))
    }

    pub fn monomial(ctx: &PolyCtx<C>, m: Monomial, c: C) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(ctx: &PolyCtx<C>, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn poly_ctx(&self) -> &PolyCtx<C> {
        &self.ctx
    }

    pub fn coeff_ctx(&self) -> &C::Ctx {
        &self.ctx.coeff
    }

    pub fn vars(&self) -> &[String] {
        &self.ctx.vars
    }

    pub fn nvars(&self) -> usize {
        self.ctx.nvars()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff_of(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(|| C::zero(&self.ctx.coeff))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<C> {
        if self.is_zero() {
            return Some(C::zero(&self.ctx.coeff));
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.nvars());
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &C)> {
        match order {
            MonomialOrder::Lex => self.terms.iter().next_back(),
            _ => self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0)),
        }
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        let mut p = Self::zero(&self.ctx);
        for (m, a) in &self.terms {
            p.add_term(m.clone(), a.mul(c));
        }
        p
    }

    pub fn mul_term(&self, mono: &Monomial, c: &C) -> Self {
        let mut p = Self::zero(&self.ctx);
        if c.is_zero() {
            return p;
        }
        for (m, a) in &self.terms {
            p.add_term(m.mul(mono), a.mul(c));
        }
        p
    }

    /// Divides by the leading coefficient under `order`; zero stays zero.
    pub fn make_monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_term(order).and_then(|(_, c)| c.inv()) {
            Some(li) => self.scale(&li),
            None => self.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            p.add_term(m2, c.mul(&C::from_i64(&self.ctx.coeff, e as i64)));
        }
        p
    }

    /// Applies `f` to every coefficient; monomials are kept verbatim.
    pub fn map_coeffs<D: Coeff>(&self, ctx: &PolyCtx<D>, mut f: impl FnMut(&C) -> D) -> MultiPoly<D> {
        let mut p = MultiPoly::zero(ctx);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), f(c));
        }
        p
    }

    pub fn try_map_coeffs<D: Coeff, E>(
        &self,
        ctx: &PolyCtx<D>,
        mut f: impl FnMut(&C) -> Result<D, E>,
    ) -> Result<MultiPoly<D>, E> {
        let mut p = MultiPoly::zero(ctx);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), f(c)?);
        }
        Ok(p)
    }

    /// Moves the polynomial into another variable list; `map[i]` is the
    /// new index of old variable `i`.
    pub fn reindex(&self, ctx: &PolyCtx<C>, map: &[usize]) -> Self {
        let n = ctx.nvars();
        let mut p = Self::zero(ctx);
        for (m, c) in &self.terms {
            let mut e = vec![0; n];
            for (i, x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    /// Evaluates in any ring given by `add`, `mul` and the images of the
    /// coefficients and of the variables.
    pub fn eval_with<T: Clone>(
        &self,
        one: &T,
        vals: &[T],
        mut coeff: impl FnMut(&C) -> T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
    ) -> Option<T> {
        let mut powers: Vec<Vec<T>> = vec![vec![one.clone()]; vals.len()];
        let mut acc: Option<T> = None;
        for (m, c) in &self.terms {
            let mut t = coeff(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = mul(powers[i].last().unwrap(), &vals[i]);
                    powers[i].push(next);
                }
                t = mul(&t, &powers[i][e as usize]);
            }
            acc = Some(match acc {
                Some(a) => add(&a, &t),
                None => t,
            });
        }
        acc
    }

    pub fn eval(&self, point: &[C]) -> C {
        let one = C::one(&self.ctx.coeff);
        self.eval_with(&one, point, |c| c.clone(), |a, b| a.add(b), |a, b| a.mul(b))
            .unwrap_or_else(|| C::zero(&self.ctx.coeff))
    }

    /// Substitutes polynomials (over a possibly different variable list) for
    /// every variable.
    pub fn compose(&self, target: &PolyCtx<C>, images: &[MultiPoly<C>]) -> MultiPoly<C> {
        let one = MultiPoly::one(target);
        self.eval_with(&one, images, |c| MultiPoly::constant(target, c.clone()), |a, b| a + b, |a, b| a * b)
            .unwrap_or_else(|| MultiPoly::zero(target))
    }

    pub fn substitute(&self, i: usize, value: &MultiPoly<C>) -> Self {
        let images: Vec<MultiPoly<C>> =
            (0..self.nvars()).map(|j| if j == i { value.clone() } else { Self::var(&self.ctx, j) }).collect();
        self.compose(&self.ctx, &images)
    }

    /// Univariate view in variable `i`: coefficient of `x_i^k` at index `k`.
    pub fn coefficients_in(&self, i: usize) -> Vec<MultiPoly<C>> {
        let d = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(&self.ctx); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            let mut m2 = m.clone();
            m2.0[i] = 0;
            out[k].add_term(m2, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(ctx: &PolyCtx<C>, i: usize, coeffs: &[MultiPoly<C>]) -> Self {
        let mut p = Self::zero(ctx);
        for (k, q) in coeffs.iter().enumerate() {
            for (m, c) in q.terms() {
                let mut m2 = m.clone();
                m2.0[i] += k as u32;
                p.add_term(m2, c.clone());
            }
        }
        p
    }

    /// Multivariate division by a list of divisors; returns the remainder.
    pub fn reduce(&self, divisors: &[MultiPoly<C>], order: &MonomialOrder) -> MultiPoly<C> {
        self.divide(divisors, order).1
    }

    pub fn divide(&self, divisors: &[MultiPoly<C>], order: &MonomialOrder) -> (Vec<MultiPoly<C>>, MultiPoly<C>) {
        let leads: Vec<(Monomial, C)> = divisors
            .iter()
            .map(|d| {
                let (m, c) = d.leading_term(order).expect("division by zero polynomial");
                (m.clone(), c.inv().expect("leading coefficient not invertible"))
            })
            .collect();
        let mut quots = vec![Self::zero(&self.ctx); divisors.len()];
        let mut rem = Self::zero(&self.ctx);
        let mut p = self.clone();
        while let Some((m, c)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
            let hit = leads.iter().position(|(lm, _)| lm.divides(&m));
            match hit {
                Some(k) => {
                    let q = leads[k].0.quotient_of(&m);
                    let qc = c.mul(&leads[k].1);
                    p = &p - &divisors[k].mul_term(&q, &qc);
                    quots[k].add_term(q, qc);
                }
                None => {
                    p.terms.remove(&m);
                    rem.add_term(m, c);
                }
            }
        }
        (quots, rem)
    }

    /// Exact quotient `self / d`, `None` when `d` does not divide.
    pub fn div_exact(&self, d: &MultiPoly<C>) -> Option<MultiPoly<C>> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.divide(std::slice::from_ref(d), &MonomialOrder::Lex);
        r.is_zero().then(|| q.into_iter().next().unwrap())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, vars: &[String]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{}", vars[i])?;
        } else {
            write!(f, "{}^{}", vars[i], e)?;
        }
    }
    Ok(())
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.sorted_terms(&MonomialOrder::DegRevLex).into_iter().enumerate() {
            let neg = c.is_negative();
            let a = if neg { c.neg() } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                if a.is_compound() {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
            } else {
                if !a.is_one() {
                    if a.is_compound() {
                        write!(f, "({a})*")?;
                    } else {
                        write!(f, "{a}*")?;
                    }
                }
                write_monomial(f, m, &self.ctx.vars)?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> Coeff for MultiPoly<C> {
    type Ctx = PolyCtx<C>;

    fn ctx(&self) -> PolyCtx<C> {
        self.ctx.clone()
    }
    fn zero(ctx: &PolyCtx<C>) -> Self {
        MultiPoly::zero(ctx)
    }
    fn one(ctx: &PolyCtx<C>) -> Self {
        MultiPoly::one(ctx)
    }
    fn from_scalar(ctx: &PolyCtx<C>, s: &Scalar) -> Self {
        MultiPoly::constant(ctx, C::from_scalar(&ctx.coeff, s))
    }
    fn characteristic(ctx: &PolyCtx<C>) -> u64 {
        C::characteristic(&ctx.coeff)
    }
    fn from_i64(ctx: &PolyCtx<C>, n: i64) -> Self {
        MultiPoly::constant(ctx, C::from_i64(&ctx.coeff, n))
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.is_constant() && self.terms.values().next().unwrap().is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if self.is_constant() && !self.is_zero() {
            Some(MultiPoly::constant(&self.ctx, self.constant_value()?.inv()?))
        } else {
            None
        }
    }
    fn mul_scalar(&self, s: &Scalar) -> Self {
        self.scale(&C::from_scalar(&self.ctx.coeff, s))
    }
    fn is_negative(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().is_negative()
    }
    fn is_compound(&self) -> bool {
        self.terms.len() > 1 || self.terms.values().any(|c| c.is_compound())
    }
}

impl<C: Coeff> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl<C: Coeff> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }
}

impl<C: Coeff> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        let mut out = MultiPoly::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BaseField;

    fn ctx() -> PolyCtx<Scalar> {
        PolyCtx::new(BaseField::Rational, vec!["x".into(), "y".into()])
    }

    #[test]
    fn prints_in_grevlex_order() {
        let c = ctx();
        let x = MultiPoly::var(&c, 0);
        let y = MultiPoly::var(&c, 1);
        let three = MultiPoly::constant(&c, Scalar::from_int(&c.coeff, 3));
        let p = &(&y - &(&x * &x)) + &(&three * &(&x * &y));
        assert_eq!(p.to_string(), "-x^2 + 3*x*y + y");
        assert_eq!((&x - &x).to_string(), "0");
    }

    #[test]
    fn division_remainder_and_quotient() {
        let c = ctx();
        let x = MultiPoly::var(&c, 0);
        let one = MultiPoly::one(&c);
        let p = &(&x * &x) - &one;
        let d = &x - &one;
        let q = p.div_exact(&d).unwrap();
        assert_eq!(q, &x + &one);
        assert!(p.div_exact(&x).is_none());
    }

    #[test]
    fn derivative_and_substitution() {
        let c = ctx();
        let x = MultiPoly::var(&c, 0);
        let y = MultiPoly::var(&c, 1);
        let p = &x.pow(3) * &y;
        assert_eq!(p.derivative(0).to_string(), "3*x^2*y");
        assert_eq!(p.substitute(1, &x).to_string(), "x^4");
    }
}
