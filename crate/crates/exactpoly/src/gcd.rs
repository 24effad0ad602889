//! Multivariate gcd over a field: recursive content extraction plus a
//! primitive polynomial remainder sequence in the main variable.

use crate::coeff::Coeff;
use crate::monomial::MonomialOrder;
use crate::poly::MultiPoly;

fn main_var<C: Coeff>(a: &MultiPoly<C>, b: &MultiPoly<C>) -> Option<usize> {
    (0..a.nvars()).rev().find(|&i| a.uses_var(i) || b.uses_var(i))
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x_v`.
fn content<C: Coeff>(p: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    let mut g = MultiPoly::zero(p.poly_ctx());
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

fn primitive_part<C: Coeff>(p: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    let c = content(p, v);
    if c.is_constant() {
        return p.clone();
    }
    p.div_exact(&c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` in variable `x_v`.
fn prem<C: Coeff>(a: &MultiPoly<C>, b: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    let bc = b.coefficients_in(v);
    let db = bc.len() - 1;
    let lb = bc[db].clone();
    let ctx = a.poly_ctx().clone();
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let rc = r.coefficients_in(v);
        let dr = rc.len() - 1;
        if dr < db {
            return r;
        }
        let lr = &rc[dr];
        let shift = crate::monomial::Monomial::var(ctx.nvars(), v, (dr - db) as u32);
        let one = C::one(&ctx.coeff);
        r = &(&r * &lb) - &(&b.mul_term(&shift, &one) * lr);
    }
}

/// Greatest common divisor, normalized monic under degree-reverse-lex;
/// `gcd(0, 0) = 0`.
pub fn gcd<C: Coeff>(a: &MultiPoly<C>, b: &MultiPoly<C>) -> MultiPoly<C> {
    let order = MonomialOrder::DegRevLex;
    if a.is_zero() {
        return b.make_monic(&order);
    }
    if b.is_zero() {
        return a.make_monic(&order);
    }
    let Some(v) = main_var(a, b) else {
        return MultiPoly::one(a.poly_ctx());
    };
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.poly_ctx());
    }
    if !a.uses_var(v) {
        return gcd(a, &content(b, v));
    }
    if !b.uses_var(v) {
        return gcd(&content(a, v), b);
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let cg = gcd(&ca, &cb);
    let mut p = if ca.is_constant() { a.clone() } else { a.div_exact(&ca).unwrap() };
    let mut q = if cb.is_constant() { b.clone() } else { b.div_exact(&cb).unwrap() };
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let r = prem(&p, &q, v);
        p = q;
        q = if r.is_zero() || !r.uses_var(v) { r } else { primitive_part(&r, v) };
        if !q.is_zero() && !q.uses_var(v) {
            // a nonzero remainder free of x_v means the primitive parts are coprime
            return cg.make_monic(&order);
        }
    }
    let g = primitive_part(&p, v);
    (&g * &cg).make_monic(&order)
}
