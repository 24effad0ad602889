//! Splitting `𝒟(A)` into local artinian factors `B_0 × ... × B_t`: the
//! nilradical, primitive idempotents, residue polynomials, the maps
//! `θ_i, ρ_i, π_i`, the associated operators `α_{ij}` and their splitting
//! over a field containing the roots of `P_i`, and Newton-Hensel lifting.

use std::cmp::Ordering;

use exactpoly::linalg;
use exactpoly::{BaseField, Coeff, Scalar};

use crate::algebra::{AlgebraElement, AlgebraScheme};
use crate::error::{DError, Result};
use crate::factor::{self, UPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct LocalFactor {
    pub idempotent: Vec<Scalar>,
    /// Basis of `B_i = e_i 𝒟(A)` in `𝒟(A)` coordinates.
    pub basis: Vec<Vec<Scalar>>,
    /// Monic `P_i` with `B_i / 𝔪_i ≅ A[x]/(P_i)`.
    pub residue_poly: UPoly,
    /// The element of `B_i` whose residue is `x`.
    pub generator: Vec<Scalar>,
    /// `θ_i : 𝒟(A) → B_i`, `dim B_i × ℓ`.
    pub theta: Vec<Vec<Scalar>>,
    /// `ρ_i : B_i → A[x]/(P_i)`, `d_i × dim B_i`.
    pub rho: Vec<Vec<Scalar>>,
    /// `π_i = ρ_i θ_i`, `d_i × ℓ`.
    pub pi: Vec<Vec<Scalar>>,
    pub nil_rank: usize,
}

impl LocalFactor {
    pub fn degree(&self) -> usize {
        self.residue_poly.len() - 1
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Residue coordinates of an element of `𝒟(R)` over any coefficient ring.
    pub fn residue<T: Coeff>(&self, coords: &[T], ctx: &T::Ctx) -> Vec<T> {
        self.pi
            .iter()
            .map(|row| {
                let mut s = T::zero(ctx);
                for (c, r) in coords.iter().zip(row) {
                    if !r.is_zero() && !c.is_zero() {
                        s = s.add(&c.mul_scalar(r));
                    }
                }
                s
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct LocalDecomposition {
    pub algebra: AlgebraScheme,
    pub nilradical: Vec<Vec<Scalar>>,
    /// Factor 0 is the one on which `π` is nonzero.
    pub factors: Vec<LocalFactor>,
    /// Every residue field equals the base field.
    pub assumption_ii: bool,
    /// Positive characteristic: computed, but not needed by the theory.
    pub experimental: bool,
}

impl LocalDecomposition {
    /// `t`, the number of factors besides `B_0`.
    pub fn t(&self) -> usize {
        self.factors.len() - 1
    }
}

/// Associated operator rows `α_{ij}` per factor, as functionals on
/// `(∂_0, ..., ∂_{ℓ-1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct AssociatedOperators {
    pub alpha: Vec<Vec<Vec<Scalar>>>,
}

impl AssociatedOperators {
    pub fn degree(&self, i: usize) -> usize {
        self.alpha[i].len()
    }
}

fn unit_vec(base: &BaseField, l: usize, i: usize) -> Vec<Scalar> {
    (0..l).map(|k| Scalar::from_int(base, (k == i) as i64)).collect()
}

/// Basis of the nilradical. In characteristic 0 this is the kernel of the
/// trace form; over `F_p` it is the kernel of `v ↦ v^(p^k)` with
/// `p^k ≥ ℓ`, which is linear because Frobenius is.
pub fn nilradical(alg: &AlgebraScheme) -> Vec<Vec<Scalar>> {
    let l = alg.rank();
    let base = alg.base();
    let p = alg.characteristic();
    if p == 0 {
        let trace = |v: &[Scalar]| -> Scalar {
            let m = alg.mult_matrix(v, base);
            let mut s = Scalar::from_int(base, 0);
            for (i, row) in m.iter().enumerate() {
                s = s.add(&row[i]);
            }
            s
        };
        let mut form = vec![vec![Scalar::from_int(base, 0); l]; l];
        for i in 0..l {
            for j in i..l {
                let prod = alg.mul_coords(&unit_vec(base, l, i), &unit_vec(base, l, j), base);
                let t = trace(&prod);
                form[i][j] = t.clone();
                form[j][i] = t;
            }
        }
        linalg::kernel(&form, l, base)
    } else {
        let mut e = 1u64;
        while (e as u128) < l as u128 {
            e *= p;
        }
        let cols: Vec<Vec<Scalar>> = (0..l).map(|j| pow_coords(alg, &unit_vec(base, l, j), e)).collect();
        linalg::kernel(&linalg::transpose(&cols), l, base)
    }
}

fn pow_coords(alg: &AlgebraScheme, v: &[Scalar], mut e: u64) -> Vec<Scalar> {
    let base = alg.base();
    let mut acc: Vec<Scalar> = alg.unit().to_vec();
    let mut b = v.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = alg.mul_coords(&acc, &b, base);
        }
        e >>= 1;
        if e > 0 {
            b = alg.mul_coords(&b, &b, base);
        }
    }
    acc
}

/// Span rank of a list of vectors.
fn span_rank(vs: &[Vec<Scalar>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    linalg::rank(vs)
}

struct Block {
    idem: Vec<Scalar>,
    resolved: Option<(UPoly, Vec<Scalar>)>,
}

/// Minimal polynomial of `a` inside the algebra `f 𝒟` (unit `f`), monic.
fn min_poly(alg: &AlgebraScheme, a: &[Scalar], f: &[Scalar]) -> UPoly {
    let base = alg.base();
    let mut powers: Vec<Vec<Scalar>> = vec![f.to_vec()];
    loop {
        let next = alg.mul_coords(powers.last().unwrap(), a, base);
        let cols = linalg::transpose(&powers);
        if let Some(c) = linalg::solve(&cols, &next, base) {
            let mut m: UPoly = c.iter().map(|x| x.neg()).collect();
            m.push(Scalar::from_int(base, 1));
            return m;
        }
        powers.push(next);
    }
}

fn eval_at(alg: &AlgebraScheme, poly: &[Scalar], a: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
    let base = alg.base();
    let mut acc = vec![Scalar::from_int(base, 0); alg.rank()];
    for c in poly.iter().rev() {
        acc = alg.mul_coords(&acc, a, base);
        for (x, y) in acc.iter_mut().zip(f) {
            *x = x.add(&c.mul(y));
        }
    }
    acc
}

fn factor_with_hints(mu: &[Scalar], base: &BaseField, hints: &[Vec<(UPoly, u32)>]) -> Result<Vec<(UPoly, u32)>> {
    let target = factor::monic(mu);
    for h in hints {
        if let Ok(v) = factor::verify_hints(&target, h, base) {
            return Ok(v);
        }
    }
    factor::factor(&target, base)
}

/// Candidate elements of a block, in the order they are tried as residue
/// generators: the block unit, the block components of the basis vectors,
/// then fixed pseudo-random combinations.
fn candidates(alg: &AlgebraScheme, f: &[Scalar], round: usize) -> Vec<Vec<Scalar>> {
    let base = alg.base();
    let l = alg.rank();
    let mut out = vec![f.to_vec()];
    for k in 0..l {
        out.push(alg.mul_coords(f, &unit_vec(base, l, k), base));
    }
    let mut state = 0x2545_f491_u64 ^ round as u64;
    for _ in 0..32 {
        let v: Vec<Scalar> = (0..l)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                Scalar::from_int(base, ((state >> 33) % 11) as i64 - 5)
            })
            .collect();
        out.push(alg.mul_coords(f, &v, base));
    }
    out
}

pub fn local_decomposition(alg: &AlgebraScheme) -> Result<LocalDecomposition> {
    local_decomposition_with_hints(alg, &[])
}

/// `hints`: asserted factorizations, used whenever one of them matches a
/// minimal polynomial that has to be factored.
pub fn local_decomposition_with_hints(alg: &AlgebraScheme, hints: &[Vec<(UPoly, u32)>]) -> Result<LocalDecomposition> {
    if !alg.is_normalized() {
        return Err(DError::NotNormalized);
    }
    let report = alg.validate();
    if !report.is_valid() {
        return Err(DError::InvalidAlgebra(report.violations[0].to_string()));
    }
    let base = alg.base().clone();
    let l = alg.rank();
    let nil = nilradical(alg);
    let mut blocks = vec![Block { idem: alg.unit().to_vec(), resolved: None }];
    let mut round = 0;
    while blocks.iter().any(|b| b.resolved.is_none()) {
        round += 1;
        if round > 4 * l + 8 {
            return Err(DError::Precondition("could not separate the local factors".into()));
        }
        let mut next = Vec::new();
        for b in blocks {
            if b.resolved.is_some() {
                next.push(b);
                continue;
            }
            let f = &b.idem;
            let dim: usize = span_rank(&(0..l).map(|k| alg.mul_coords(f, &unit_vec(&base, l, k), &base)).collect::<Vec<_>>());
            let nil_dim = span_rank(&nil.iter().map(|n| alg.mul_coords(f, n, &base)).collect::<Vec<_>>());
            let mut outcome = None;
            for a in candidates(alg, f, round) {
                let mu = min_poly(alg, &a, f);
                let fs = factor_with_hints(&mu, &base, hints)?;
                if fs.len() > 1 {
                    let mut idems = Vec::new();
                    for (q, m) in &fs {
                        let mut qm = vec![Scalar::from_int(&base, 1)];
                        for _ in 0..*m {
                            qm = exactpoly::kernel::mul(&qm, q, &base);
                        }
                        let (r, _) = exactpoly::kernel::divrem(&mu, &qm).unwrap();
                        let (_, _, t) = exactpoly::kernel::xgcd(&qm, &r, &base);
                        let e = exactpoly::kernel::divrem(&exactpoly::kernel::mul(&t, &r, &base), &mu).unwrap().1;
                        idems.push(eval_at(alg, &e, &a, f));
                    }
                    outcome = Some(Err(idems));
                    break;
                }
                let q = &fs[0].0;
                if q.len() - 1 == dim - nil_dim {
                    outcome = Some(Ok((q.clone(), a)));
                    break;
                }
            }
            match outcome {
                Some(Ok(res)) => next.push(Block { idem: b.idem, resolved: Some(res) }),
                Some(Err(idems)) => next.extend(idems.into_iter().map(|idem| Block { idem, resolved: None })),
                None => next.push(b),
            }
        }
        blocks = next;
    }

    let mut factors = Vec::new();
    for b in blocks {
        let (p, gen) = b.resolved.unwrap();
        factors.push(build_factor(alg, &nil, b.idem, p, gen));
    }
    let pi_of = |f: &LocalFactor| alg.project(&f.idempotent, &base);
    factors.sort_by(|a, b| {
        let (pa, pb) = (pi_of(a).is_zero(), pi_of(b).is_zero());
        pa.cmp(&pb)
            .then(a.degree().cmp(&b.degree()))
            .then_with(|| factor::cmp_poly(&a.residue_poly, &b.residue_poly))
            .then_with(|| cmp_vec(&b.idempotent, &a.idempotent))
    });
    let assumption_ii = factors.iter().all(|f| f.degree() == 1);
    Ok(LocalDecomposition {
        algebra: alg.clone(),
        nilradical: nil,
        factors,
        assumption_ii,
        experimental: alg.characteristic() != 0,
    })
}

fn cmp_vec(a: &[Scalar], b: &[Scalar]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = factor::cmp_scalar(x, y);
        if o.is_ne() {
            return o;
        }
    }
    Ordering::Equal
}

fn build_factor(alg: &AlgebraScheme, nil: &[Vec<Scalar>], idem: Vec<Scalar>, p: UPoly, gen: Vec<Scalar>) -> LocalFactor {
    let base = alg.base();
    let l = alg.rank();
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for k in 0..l {
        let v = alg.mul_coords(&idem, &unit_vec(base, l, k), base);
        let mut trial = basis.clone();
        trial.push(v.clone());
        if span_rank(&trial) > basis.len() {
            basis = trial;
        }
    }
    let bcols = linalg::transpose(&basis);
    let theta_cols: Vec<Vec<Scalar>> = (0..l)
        .map(|k| {
            let v = alg.mul_coords(&idem, &unit_vec(base, l, k), base);
            linalg::solve(&bcols, &v, base).unwrap()
        })
        .collect();
    let theta = linalg::transpose(&theta_cols);
    // residue basis 1, a, ..., a^{d-1} followed by the block nilradical
    let d = p.len() - 1;
    let mut cols: Vec<Vec<Scalar>> = vec![idem.clone()];
    for _ in 1..d {
        let n = alg.mul_coords(cols.last().unwrap(), &gen, base);
        cols.push(n);
    }
    let mut block_nil: Vec<Vec<Scalar>> = Vec::new();
    for n in nil {
        let v = alg.mul_coords(&idem, n, base);
        let mut trial = block_nil.clone();
        trial.push(v.clone());
        if span_rank(&trial) > block_nil.len() {
            block_nil = trial;
        }
    }
    let nil_rank = block_nil.len();
    cols.extend(block_nil);
    let m = linalg::transpose(&cols);
    let rho_cols: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|b| linalg::solve(&m, b, base).unwrap()[..d].to_vec())
        .collect();
    let rho = linalg::transpose(&rho_cols);
    let pi = linalg::mat_mul(&rho, &theta, base);
    LocalFactor { idempotent: idem, basis, residue_poly: p, generator: gen, theta, rho, pi, nil_rank }
}

/// `α_{ij}`: row `j` of `π_i`, so that `σ_i(a) = Σ_j α_{ij}(a) x^j`.
pub fn associated_operators(dec: &LocalDecomposition) -> AssociatedOperators {
    AssociatedOperators { alpha: dec.factors.iter().map(|f| f.pi.clone()).collect() }
}

/// `σ_{ik} = Σ_j b_{ik}^j α_{ij}` for the supplied roots `b_{ik}` of `P_i`,
/// which must be distinct, lie in one field and number `d_i`.
pub fn splitting_endomorphisms(
    ops: &AssociatedOperators,
    dec: &LocalDecomposition,
    i: usize,
    roots: &[Scalar],
) -> Result<Vec<Vec<Scalar>>> {
    let f = dec.factors.get(i).ok_or(DError::IndexOutOfRange { index: i, rank: dec.factors.len() })?;
    let d = f.degree();
    if roots.len() != d {
        return Err(DError::Precondition(format!("factor {i} needs {d} roots, got {}", roots.len())));
    }
    let Some(k) = roots.first().map(|r| r.field()) else {
        return Ok(Vec::new());
    };
    let p: Vec<Scalar> = f.residue_poly.iter().map(|c| c.convert(&k)).collect::<std::result::Result<_, _>>()?;
    for (n, r) in roots.iter().enumerate() {
        if r.field() != k {
            return Err(DError::Precondition("roots live in different fields".into()));
        }
        if !factor::eval_in(&p, r, &k).is_zero() {
            return Err(DError::Precondition(format!("{r} is not a root of P_{i}")));
        }
        if roots[..n].contains(r) {
            return Err(DError::Precondition(format!("root {r} repeated")));
        }
    }
    let alpha = &ops.alpha[i];
    let l = dec.algebra.rank();
    Ok(roots
        .iter()
        .map(|b| {
            let mut row = vec![Scalar::from_int(&k, 0); l];
            let mut bj = Scalar::from_int(&k, 1);
            for a in alpha {
                for (x, c) in row.iter_mut().zip(a) {
                    *x = x.add(&bj.mul(&c.convert(&k).unwrap()));
                }
                bj = bj.mul(b);
            }
            row
        })
        .collect())
}

fn eval_poly_elem<T: Coeff>(poly: &[AlgebraElement<T>], x: &AlgebraElement<T>) -> AlgebraElement<T> {
    let ctx = x.ctx();
    let mut acc = AlgebraElement::zero(x.algebra(), &ctx);
    for c in poly.iter().rev() {
        acc = acc.mul(x).unwrap().add(c).unwrap();
    }
    acc
}

fn derivative_elem<T: Coeff>(poly: &[AlgebraElement<T>]) -> Vec<AlgebraElement<T>> {
    poly.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&T::from_i64(&c.ctx(), i as i64)))
        .collect()
}

/// Newton iteration `b ← b - P(b)/P'(b)` for a polynomial with coefficients
/// in `𝒟(R)`, starting from `c` with `P(c)` nilpotent and `P'(c)` a unit.
/// Exact after at most `⌈log2 ℓ⌉ + 1` steps.
pub fn hensel_lift<T: Coeff>(poly: &[AlgebraElement<T>], c: &AlgebraElement<T>) -> Result<AlgebraElement<T>> {
    let l = c.algebra().rank();
    let steps = (usize::BITS - l.leading_zeros()) as usize + 1;
    let dp = derivative_elem(poly);
    let mut b = c.clone();
    if eval_poly_elem(&dp, &b).inv().is_none() {
        return Err(DError::DerivativeNotUnit);
    }
    for _ in 0..=steps {
        let v = eval_poly_elem(poly, &b);
        if v.is_zero() {
            return Ok(b);
        }
        let d = eval_poly_elem(&dp, &b).inv().ok_or(DError::DerivativeNotUnit)?;
        b = b.sub(&v.mul(&d)?)?;
    }
    Err(DError::NoConvergence(steps + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use std::sync::Arc;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(&BaseField::Rational, n)
    }

    #[test]
    fn nilradicals() {
        let b = BaseField::Rational;
        assert_eq!(nilradical(&catalog::dual(&b)), vec![vec![q(0), q(1)]]);
        assert!(nilradical(&catalog::pair(&b)).is_empty());
        assert!(nilradical(&catalog::sqrt2_product(&b)).is_empty());
        assert_eq!(nilradical(&catalog::truncated(&b, 2)).len(), 2);
        let f2 = BaseField::prime(2).unwrap();
        assert_eq!(nilradical(&catalog::truncated(&f2, 3)).len(), 3);
        assert!(nilradical(&catalog::pair(&f2)).is_empty());
    }

    #[test]
    fn pair_and_sqrt2() {
        let b = BaseField::Rational;
        let d = local_decomposition(&catalog::pair(&b)).unwrap();
        assert_eq!(d.t(), 1);
        assert!(d.assumption_ii);
        assert_eq!(d.factors[1].residue_poly, vec![q(-1), q(1)]);
        assert_eq!(d.factors[1].pi, vec![vec![q(0), q(1)]]);
        assert_eq!(d.factors[0].pi, vec![vec![q(1), q(0)]]);

        let d = local_decomposition(&catalog::sqrt2_product(&b)).unwrap();
        assert_eq!(d.t(), 1);
        assert!(!d.assumption_ii);
        assert_eq!(d.factors[1].residue_poly, vec![q(-2), q(0), q(1)]);
        let ops = associated_operators(&d);
        assert_eq!(ops.alpha[1], vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
    }

    #[test]
    fn local_algebra_has_one_factor() {
        let d = local_decomposition(&catalog::truncated(&BaseField::Rational, 2)).unwrap();
        assert_eq!(d.t(), 0);
        assert_eq!(d.factors[0].nil_rank, 2);
    }

    #[test]
    fn pair_squared_splits_completely() {
        let b = BaseField::Rational;
        let p = catalog::pair(&b);
        let pp = p.compose(&p).unwrap().algebra;
        let d = local_decomposition(&pp).unwrap();
        assert_eq!(d.factors.len(), 4);
        let mut sum = vec![q(0); 4];
        for f in &d.factors {
            assert_eq!(pp.mul_coords(&f.idempotent, &f.idempotent, &b), f.idempotent);
            sum = sum.iter().zip(&f.idempotent).map(|(a, c)| a.add(c)).collect();
        }
        assert_eq!(sum, pp.unit());
    }

    #[test]
    fn newton_in_truncated() {
        let b = BaseField::Rational;
        let alg = Arc::new(catalog::truncated(&b, 2));
        let e = |v: Vec<i64>| AlgebraElement::new(&alg, v.into_iter().map(q).collect()).unwrap();
        let poly = vec![e(vec![-4, -1, 0]), e(vec![0, 0, 0]), e(vec![1, 0, 0])];
        let root = hensel_lift(&poly, &e(vec![2, 0, 0])).unwrap();
        let expect = vec![q(2), Scalar::parse(&b, "1/4").unwrap(), Scalar::parse(&b, "-1/64").unwrap()];
        assert_eq!(root.coords(), expect.as_slice());
    }
}
