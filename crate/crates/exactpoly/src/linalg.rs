//! Dense exact linear algebra over any [`Coeff`] field.

use crate::coeff::Coeff;
use crate::error::{PolyError, Result};
use crate::gcd::gcd;
use crate::poly::MultiPoly;
use crate::ratfun::RatFun;
use crate::scalar::Scalar;

pub type Matrix<C> = Vec<Vec<C>>;

/// Reduced row echelon form; returns the matrix and its pivot columns.
pub fn rref<C: Coeff>(m: &[Vec<C>]) -> (Matrix<C>, Vec<usize>) {
    let mut a: Matrix<C> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero field element is invertible");
        if !inv.is_one() {
            for x in a[r].iter_mut() {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<C: Coeff>(m: &[Vec<C>]) -> usize {
    rref(m).1.len()
}

/// Basis of `{ v : m v = 0 }`, one vector per free column.
pub fn kernel<C: Coeff>(m: &[Vec<C>], ncols: usize, ctx: &C::Ctx) -> Vec<Vec<C>> {
    let (a, pivots) = rref(m);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![C::zero(ctx); ncols];
        v[free] = C::one(ctx);
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = a[r][free].neg();
        }
        out.push(v);
    }
    out
}

/// Some solution of `m x = b`, `None` if inconsistent.
pub fn solve<C: Coeff>(m: &[Vec<C>], b: &[C], ctx: &C::Ctx) -> Option<Vec<C>> {
    let ncols = m.first().map_or(0, |r| r.len());
    let aug: Matrix<C> = m.iter().zip(b).map(|(row, x)| {
        let mut r = row.clone();
        r.push(x.clone());
        r
    }).collect();
    let (a, pivots) = rref(&aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![C::zero(ctx); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = a[r][ncols].clone();
    }
    Some(x)
}

pub fn inverse<C: Coeff>(m: &[Vec<C>], ctx: &C::Ctx) -> Option<Matrix<C>> {
    let n = m.len();
    let aug: Matrix<C> = m.iter().enumerate().map(|(i, row)| {
        let mut r = row.clone();
        r.extend((0..n).map(|j| if i == j { C::one(ctx) } else { C::zero(ctx) }));
        r
    }).collect();
    let (a, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det<C: Coeff>(m: &[Vec<C>], ctx: &C::Ctx) -> C {
    let mut a: Matrix<C> = m.to_vec();
    let n = a.len();
    let mut d = C::one(ctx);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return C::zero(ctx);
        };
        if p != c {
            a.swap(p, c);
            d = d.neg();
        }
        d = d.mul(&a[c][c]);
        let inv = a[c][c].inv().unwrap();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv);
            for j in c..n {
                let v = a[i][j].sub(&f.mul(&a[c][j]));
                a[i][j] = v;
            }
        }
    }
    d
}

pub fn mat_mul<C: Coeff>(a: &[Vec<C>], b: &[Vec<C>], ctx: &C::Ctx) -> Matrix<C> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = C::zero(ctx);
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s = s.add(&row[k].mul(&b[k][j]));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<C: Coeff>(a: &[Vec<C>], v: &[C], ctx: &C::Ctx) -> Vec<C> {
    a.iter()
        .map(|row| {
            let mut s = C::zero(ctx);
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    s = s.add(&x.mul(y));
                }
            }
            s
        })
        .collect()
}

pub fn transpose<C: Clone>(a: &[Vec<C>]) -> Vec<Vec<C>> {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Fraction-free (Bareiss) rank of a polynomial matrix.
pub fn bareiss_rank(m: &[Vec<MultiPoly<Scalar>>]) -> usize {
    let mut a: Matrix<MultiPoly<Scalar>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let Some(ctx) = a.first().and_then(|r| r.first()).map(|p| p.poly_ctx().clone()) else {
        return 0;
    };
    let mut prev = MultiPoly::one(&ctx);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &(&a[r][c] * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][c] = MultiPoly::zero(&ctx);
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Rank of the Jacobian `(∂f_i/∂x_j)` over the function field, which equals
/// the transcendence degree of the field generated by the `f_i` in
/// characteristic 0.
pub fn jacobian_rank(fns: &[RatFun]) -> Result<usize> {
    let Some(first) = fns.first() else {
        return Ok(0);
    };
    let field = first.field().clone();
    let ch = field.base().characteristic();
    if ch != 0 {
        return Err(PolyError::RequiresCharZero(ch));
    }
    let n = field.vars().len();
    let mut rows = Vec::new();
    for f in fns {
        let derivs: Vec<RatFun> = (0..n).map(|j| f.derivative(j)).collect();
        // clear denominators with their lcm
        let mut l = MultiPoly::one(&field.poly);
        for d in &derivs {
            let g = gcd(&l, d.denom());
            l = &l * &d.denom().div_exact(&g).unwrap();
        }
        let row: Vec<MultiPoly<Scalar>> =
            derivs.iter().map(|d| &d.numer().clone() * &l.div_exact(d.denom()).unwrap()).collect();
        if row.iter().any(|p| !p.is_zero()) {
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(0);
    }
    // specializing can only lower the rank, so reaching the maximum at a
    // point settles it exactly
    let full = rows.len().min(n);
    for attempt in 0..3i64 {
        let point: Vec<Scalar> =
            (0..n).map(|j| Scalar::from_int(field.base(), 3 + 7 * attempt + 11 * j as i64 + (j * j) as i64)).collect();
        let vals: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|p| p.eval(&point)).collect()).collect();
        if rank(&vals) == full {
            return Ok(full);
        }
    }
    Ok(bareiss_rank(&rows))
}
