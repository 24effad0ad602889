#![allow(dead_code)]

use std::sync::Arc;

use dring_core::dring::{make_dring, DRing};
use dring_core::AlgebraScheme;
use exactpoly::scalar::parse_rational;
use exactpoly::{BaseField, Coeff, FnField, NumberField, RatFun, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q() -> BaseField {
    BaseField::Rational
}

pub fn f2() -> BaseField {
    BaseField::Prime(2)
}

pub fn s(b: &BaseField, n: i64) -> Scalar {
    Scalar::from_int(b, n)
}

pub fn sqrt2_field() -> BaseField {
    let m = ["-2", "0", "1"].iter().map(|c| parse_rational(c).unwrap()).collect();
    BaseField::Number(Arc::new(NumberField::new("r", m).unwrap()))
}

pub fn field(b: &BaseField, vars: &[&str]) -> Arc<FnField> {
    FnField::new(b.clone(), vars.iter().map(|v| v.to_string()).collect())
}

/// A random polynomial of total degree at most `deg` with small coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, f: &Arc<FnField>, deg: u32) -> RatFun {
    let n = f.vars().len();
    let mut acc = RatFun::zero(f);
    let terms = rng.gen_range(1..=4);
    for _ in 0..terms {
        let c = rng.gen_range(-3i64..=3);
        if c == 0 {
            continue;
        }
        let mut t = RatFun::from_i64(f, c);
        let d = rng.gen_range(0..=deg);
        for _ in 0..d {
            if n == 0 {
                break;
            }
            t = t.mul(&RatFun::var(f, rng.gen_range(0..n)));
        }
        acc = acc.add(&t);
    }
    acc
}

/// Random generator images with coordinate 0 equal to the generator.
pub fn random_dring(rng: &mut ChaCha8Rng, alg: &Arc<AlgebraScheme>, f: &Arc<FnField>, deg: u32) -> DRing {
    let n = f.vars().len();
    let images = (0..n)
        .map(|i| {
            let mut img = vec![RatFun::var(f, i)];
            for _ in 1..alg.rank() {
                img.push(random_poly(rng, f, deg));
            }
            img
        })
        .collect();
    make_dring(alg.clone(), f.clone(), images).unwrap()
}

/// Gaussian elimination over the function field: is `v` a combination of
/// the columns?
pub fn in_column_span(cols: &[Vec<RatFun>], v: &[RatFun]) -> bool {
    let rows = v.len();
    // augmented matrix, one row per coordinate
    let mut m: Vec<Vec<RatFun>> = (0..rows)
        .map(|r| {
            let mut row: Vec<RatFun> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(v[r].clone());
            row
        })
        .collect();
    let ncols = cols.len();
    let mut pivot_row = 0;
    for c in 0..ncols {
        let Some(p) = (pivot_row..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let inv = m[pivot_row][c].inv().unwrap();
        for x in m[pivot_row].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][c].is_zero() {
                let factor = m[r][c].clone();
                for k in 0..=ncols {
                    let sub = factor.mul(&m[pivot_row][k]);
                    m[r][k] = m[r][k].sub(&sub);
                }
            }
        }
        pivot_row += 1;
    }
    // consistent iff no row reads 0 = nonzero
    m.iter().all(|row| row[..ncols].iter().any(|x| !x.is_zero()) || row[ncols].is_zero())
}
