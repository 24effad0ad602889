//! Dense univariate arithmetic over any [`Coeff`] field, coefficient vectors
//! stored low degree first.
//!
//! This is the reduction kernel shared by number fields, simple algebraic
//! extensions of function fields, and the monogenic algebra constructors in
//! the algebra layer.

use crate::coeff::Coeff;

pub fn trim<C: Coeff>(v: &mut Vec<C>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Degree of a trimmed vector, `None` for the zero polynomial.
pub fn degree<C: Coeff>(v: &[C]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

pub fn add<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => out.push(x.add(y)),
            (Some(x), None) => out.push(x.clone()),
            (None, Some(y)) => out.push(y.clone()),
            (None, None) => unreachable!(),
        }
    }
    trim(&mut out);
    out
}

pub fn sub<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => out.push(x.sub(y)),
            (Some(x), None) => out.push(x.clone()),
            (None, Some(y)) => out.push(y.neg()),
            (None, None) => unreachable!(),
        }
    }
    trim(&mut out);
    out
}

pub fn mul<C: Coeff>(a: &[C], b: &[C], ctx: &C::Ctx) -> Vec<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C::zero(ctx); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(&mut out);
    out
}

pub fn scale<C: Coeff>(a: &[C], c: &C) -> Vec<C> {
    let mut out: Vec<C> = a.iter().map(|x| x.mul(c)).collect();
    trim(&mut out);
    out
}

/// Division with remainder; the divisor's leading coefficient must be a unit.
pub fn divrem<C: Coeff>(a: &[C], b: &[C]) -> Option<(Vec<C>, Vec<C>)> {
    let db = degree(b)?;
    let lead_inv = b[db].inv()?;
    let mut r: Vec<C> = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return Some((Vec::new(), r));
    }
    let ctx = lead_inv.ctx();
    let mut q = vec![C::zero(&ctx); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr].mul(&lead_inv);
        let shift = dr - db;
        for (i, bi) in b.iter().enumerate().take(db + 1) {
            if !bi.is_zero() {
                r[shift + i] = r[shift + i].sub(&c.mul(bi));
            }
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    Some((q, r))
}

/// Reduces `a` modulo a monic `modulus`, returning exactly `deg(modulus)`
/// coordinates.
pub fn reduce_monic<C: Coeff>(a: &[C], modulus: &[C], ctx: &C::Ctx) -> Vec<C> {
    let d = modulus.len() - 1;
    let mut r: Vec<C> = a.to_vec();
    for top in (d..r.len()).rev() {
        let c = r[top].clone();
        if c.is_zero() {
            continue;
        }
        let shift = top - d;
        for (i, mi) in modulus.iter().enumerate().take(d) {
            if !mi.is_zero() {
                r[shift + i] = r[shift + i].sub(&c.mul(mi));
            }
        }
        r[top] = C::zero(ctx);
    }
    r.truncate(d);
    while r.len() < d {
        r.push(C::zero(ctx));
    }
    r
}

pub fn mul_mod<C: Coeff>(a: &[C], b: &[C], modulus: &[C], ctx: &C::Ctx) -> Vec<C> {
    let prod = mul(a, b, ctx);
    reduce_monic(&prod, modulus, ctx)
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn xgcd<C: Coeff>(a: &[C], b: &[C], ctx: &C::Ctx) -> (Vec<C>, Vec<C>, Vec<C>) {
    let mut r0: Vec<C> = a.to_vec();
    let mut r1: Vec<C> = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0 = vec![C::one(ctx)];
    let mut s1: Vec<C> = Vec::new();
    let mut t0: Vec<C> = Vec::new();
    let mut t1 = vec![C::one(ctx)];
    while !r1.is_empty() {
        let Some((q, r)) = divrem(&r0, &r1) else {
            break;
        };
        let s2 = sub(&s0, &mul(&q, &s1, ctx));
        let t2 = sub(&t0, &mul(&q, &t1, ctx));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if let Some(d) = degree(&r0) {
        if let Some(li) = r0[d].inv() {
            return (scale(&r0, &li), scale(&s0, &li), scale(&t0, &li));
        }
    }
    (r0, s0, t0)
}

/// Inverse of `a` modulo a monic `modulus`, `None` when they share a factor.
pub fn inv_mod<C: Coeff>(a: &[C], modulus: &[C], ctx: &C::Ctx) -> Option<Vec<C>> {
    let (g, s, _) = xgcd(a, modulus, ctx);
    if g.len() == 1 && g[0].is_one() {
        Some(reduce_monic(&s, modulus, ctx))
    } else {
        None
    }
}

pub fn derivative<C: Coeff>(a: &[C], ctx: &C::Ctx) -> Vec<C> {
    let mut out: Vec<C> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul(&C::from_i64(ctx, i as i64)))
        .collect();
    trim(&mut out);
    out
}

pub fn eval<C: Coeff>(a: &[C], x: &C, ctx: &C::Ctx) -> C {
    let mut acc = C::zero(ctx);
    for c in a.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}
