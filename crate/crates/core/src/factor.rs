//! Univariate factorization over `F_p` (Cantor-Zassenhaus) and over `Q`
//! (squarefree decomposition, modular factorization, Hensel lifting and
//! subset recombination). Polynomials are dense, lowest degree first.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use exactpoly::kernel;
use exactpoly::{BaseField, Coeff, Scalar};

use crate::error::{DError, Result};

pub type UPoly = Vec<Scalar>;

/// Degree above which factorization over `Q` requires hints.
pub const DEGREE_BUDGET: usize = 24;

fn trimmed(mut v: UPoly) -> UPoly {
    kernel::trim(&mut v);
    v
}

fn deg(a: &[Scalar]) -> usize {
    kernel::degree(a).unwrap_or(0)
}

pub fn monic(a: &[Scalar]) -> UPoly {
    let a = trimmed(a.to_vec());
    match a.last() {
        Some(l) if !l.is_one() => kernel::scale(&a, &l.inv().unwrap()),
        _ => a,
    }
}

fn is_one_poly(a: &[Scalar]) -> bool {
    a.len() == 1 && a[0].is_one()
}

fn gcd(a: &[Scalar], b: &[Scalar], base: &BaseField) -> UPoly {
    let (g, _, _) = kernel::xgcd(a, b, base);
    monic(&g)
}

fn div_exact(a: &[Scalar], b: &[Scalar]) -> UPoly {
    let (q, r) = kernel::divrem(a, b).unwrap();
    debug_assert!(r.is_empty());
    q
}

fn rem(a: &[Scalar], b: &[Scalar]) -> UPoly {
    kernel::divrem(a, b).unwrap().1
}

/// Lexicographic comparison of coefficient lists from the constant term up.
pub fn cmp_poly(a: &[Scalar], b: &[Scalar]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            let o = cmp_scalar(x, y);
            if o.is_ne() {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    })
}

pub fn cmp_scalar(x: &Scalar, y: &Scalar) -> std::cmp::Ordering {
    match (x, y) {
        (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
        (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) => a.cmp(b),
        (Scalar::Number(a), Scalar::Number(b)) => a.coords().cmp(b.coords()),
        _ => x.to_string().cmp(&y.to_string()),
    }
}

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// coefficients.
pub fn factor(f: &[Scalar], base: &BaseField) -> Result<Vec<(UPoly, u32)>> {
    let f = monic(f);
    if f.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    match base {
        BaseField::Prime(p) => {
            for (g, m) in squarefree_p(&f, *p, base) {
                for h in factor_squarefree_fp(&g, *p, base)? {
                    out.push((h, m));
                }
            }
        }
        BaseField::Rational => {
            for (g, m) in squarefree_char0(&f, base) {
                for h in factor_squarefree_q(&g)? {
                    out.push((h, m));
                }
            }
        }
        BaseField::Number(nf) => {
            if deg(&f) == 1 {
                out.push((f, 1));
            } else {
                out = factor_number_field_rational(&f, base, nf.degree())?;
            }
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

// A polynomial with rational coefficients is factored over Q first. A
// Q-irreducible factor of degree d stays irreducible over K when
// gcd(d, [K:Q]) = 1, since [K(β):Q] is then divisible by d·[K:Q].
fn factor_number_field_rational(f: &[Scalar], base: &BaseField, n: usize) -> Result<Vec<(UPoly, u32)>> {
    let need_hints = || DError::Precondition("factorization over a number field needs factor hints".into());
    let q = BaseField::Rational;
    let fq: UPoly = f.iter().map(|c| c.convert(&q)).collect::<std::result::Result<_, _>>().map_err(|_| need_hints())?;
    let mut out = Vec::new();
    for (h, m) in factor(&fq, &q)? {
        if deg(&h).gcd(&n) != 1 {
            return Err(need_hints());
        }
        let hk = h.iter().map(|c| c.convert(base)).collect::<std::result::Result<_, _>>()?;
        out.push((hk, m));
    }
    Ok(out)
}

/// Checks user-asserted factors: monic-normalized product equals `f` and the
/// distinct factors are pairwise coprime.
pub fn verify_hints(f: &[Scalar], hints: &[(UPoly, u32)], base: &BaseField) -> Result<Vec<(UPoly, u32)>> {
    let target = monic(f);
    let mut prod = vec![Scalar::from_int(base, 1)];
    let hints: Vec<(UPoly, u32)> = hints.iter().map(|(h, m)| (monic(h), *m)).collect();
    for (h, m) in &hints {
        if h.len() <= 1 {
            return Err(DError::BadHints("constant factor".into()));
        }
        for _ in 0..*m {
            prod = kernel::mul(&prod, h, base);
        }
    }
    if prod != target {
        return Err(DError::BadHints("product of the factors differs from the polynomial".into()));
    }
    for i in 0..hints.len() {
        for j in i + 1..hints.len() {
            if !is_one_poly(&gcd(&hints[i].0, &hints[j].0, base)) {
                return Err(DError::BadHints("factors are not pairwise coprime".into()));
            }
        }
    }
    Ok(hints)
}

fn squarefree_char0(f: &[Scalar], base: &BaseField) -> Vec<(UPoly, u32)> {
    // Yun's algorithm
    let df = kernel::derivative(f, base);
    let a0 = gcd(f, &df, base);
    let mut b = div_exact(f, &a0);
    let c = div_exact(&df, &a0);
    let mut d = kernel::sub(&c, &kernel::derivative(&b, base));
    let mut out = Vec::new();
    let mut i = 1;
    while !is_one_poly(&b) {
        let a = gcd(&b, &d, base);
        b = div_exact(&b, &a);
        let c = div_exact(&d, &a);
        d = kernel::sub(&c, &kernel::derivative(&b, base));
        if !is_one_poly(&a) {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn pth_root(f: &[Scalar], p: u64) -> UPoly {
    f.iter().step_by(p as usize).cloned().collect()
}

fn squarefree_p(f: &[Scalar], p: u64, base: &BaseField) -> Vec<(UPoly, u32)> {
    let mut out = Vec::new();
    let df = kernel::derivative(f, base);
    if df.is_empty() {
        for (g, m) in squarefree_p(&pth_root(f, p), p, base) {
            out.push((g, m * p as u32));
        }
        return out;
    }
    let mut c = gcd(f, &df, base);
    let mut w = div_exact(f, &c);
    let mut i = 1;
    while !is_one_poly(&w) {
        let y = gcd(&w, &c, base);
        let z = div_exact(&w, &y);
        if !is_one_poly(&z) {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = div_exact(&c, &w);
    }
    if !is_one_poly(&c) {
        for (g, m) in squarefree_p(&pth_root(&c, p), p, base) {
            out.push((g, m * p as u32));
        }
    }
    out
}

fn powmod(a: &[Scalar], e: &BigUint, f: &[Scalar], base: &BaseField) -> UPoly {
    let mut acc = vec![Scalar::from_int(base, 1)];
    let a = rem(a, f);
    for i in (0..e.bits()).rev() {
        acc = rem(&kernel::mul(&acc, &acc, base), f);
        if e.bit(i) {
            acc = rem(&kernel::mul(&acc, &a, base), f);
        }
    }
    acc
}

fn x_poly(base: &BaseField) -> UPoly {
    vec![Scalar::from_int(base, 0), Scalar::from_int(base, 1)]
}

/// Squarefree monic `f` over `F_p` into monic irreducibles.
fn factor_squarefree_fp(f: &[Scalar], p: u64, base: &BaseField) -> Result<Vec<UPoly>> {
    let mut out = Vec::new();
    // distinct-degree split
    let mut rest = f.to_vec();
    let mut h = x_poly(base);
    let mut i = 1;
    let pb = BigUint::from(p);
    while deg(&rest) >= 2 * i {
        h = powmod(&h, &pb, &rest, base);
        let g = gcd(&rest, &kernel::sub(&h, &x_poly(base)), base);
        if !is_one_poly(&g) {
            equal_degree(&g, i, p, base, &mut out, &mut 0x9e37_79b9_7f4a_7c15);
            rest = div_exact(&rest, &g);
            h = rem(&h, &rest);
        }
        i += 1;
    }
    if deg(&rest) >= 1 {
        out.push(rest);
    }
    Ok(out)
}

fn next_rand(state: &mut u64) -> u64 {
    // xorshift64*
    *state ^= *state >> 12;
    *state ^= *state << 25;
    *state ^= *state >> 27;
    state.wrapping_mul(0x2545_f491_4f6c_dd1d)
}

fn equal_degree(f: &[Scalar], d: usize, p: u64, base: &BaseField, out: &mut Vec<UPoly>, seed: &mut u64) {
    let n = deg(f);
    if n == d {
        out.push(f.to_vec());
        return;
    }
    loop {
        let a: UPoly = trimmed((0..n).map(|_| Scalar::from_int(base, (next_rand(seed) % p) as i64)).collect());
        if a.len() <= 1 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = rem(&kernel::mul(&t, &t, base), f);
                acc = kernel::add(&acc, &t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            kernel::sub(&powmod(&a, &e, f, base), &[Scalar::from_int(base, 1)])
        };
        let g = gcd(f, &b, base);
        if deg(&g) > 0 && deg(&g) < n {
            let h = div_exact(f, &g);
            equal_degree(&g, d, p, base, out, seed);
            equal_degree(&h, d, p, base, out, seed);
            return;
        }
    }
}

// ---- integer polynomials for the rational case ----

type ZPoly = Vec<BigInt>;

fn ztrim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    ztrim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()).collect())
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    ztrim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect())
}

fn to_fp(a: &[BigInt], base: &BaseField) -> UPoly {
    let p = BigInt::from(base.characteristic());
    trimmed(a.iter().map(|c| Scalar::from_int(base, c.mod_floor(&p).to_i64().unwrap())).collect())
}

fn from_fp(a: &[Scalar]) -> ZPoly {
    a.iter()
        .map(|c| match c {
            Scalar::Modular { value, .. } => BigInt::from(*value),
            _ => unreachable!(),
        })
        .collect()
}

/// Primitive integer polynomial with positive leading coefficient.
fn primitive_int(f: &[Scalar]) -> ZPoly {
    let qs: Vec<BigRational> = f.iter().map(|c| c.as_rational().unwrap().clone()).collect();
    let mut l = BigInt::one();
    for q in &qs {
        l = l.lcm(q.denom());
    }
    let ints: ZPoly = qs.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect();
    primitive_part(&ints)
}

fn primitive_part(a: &[BigInt]) -> ZPoly {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return a.to_vec();
    }
    if a.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    ztrim(a.iter().map(|c| c / &g).collect())
}

fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for top in (db..r.len()).rev() {
        if r[top].is_zero() {
            continue;
        }
        let (c, m) = r[top].div_mod_floor(&b[db]);
        if !m.is_zero() {
            return None;
        }
        for (i, bi) in b.iter().enumerate() {
            r[top - db + i] -= &c * bi;
        }
        q[top - db] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(ztrim(q))
    } else {
        None
    }
}

/// One linear Hensel step loop: lifts `g ≡ u w (mod p)` with `u` monic to
/// `g ≡ u w (mod p^k)`, keeping `lc(w) = lc(g)`.
fn hensel_pair(g: &[BigInt], u: ZPoly, w: ZPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let base = BaseField::Prime(p);
    let (_, s, t) = kernel::xgcd(&to_fp(&u, &base), &to_fp(&w, &base), &base);
    let pb = BigInt::from(p);
    let (mut u, mut w) = (u, w);
    let mut pj = pb.clone();
    for _ in 1..k {
        let diff = zsub(g, &zmul(&u, &w));
        let e: ZPoly = diff.iter().map(|c| {
            debug_assert!((c % &pj).is_zero());
            c / &pj
        }).collect();
        let e = to_fp(&e, &base);
        let te = kernel::mul(&t, &e, &base);
        let (q, du) = kernel::divrem(&te, &to_fp(&u, &base)).unwrap();
        let dw = kernel::add(&kernel::mul(&s, &e, &base), &kernel::mul(&q, &to_fp(&w, &base), &base));
        let scale = |v: &[Scalar]| -> ZPoly { from_fp(v).into_iter().map(|c| c * &pj).collect() };
        u = zadd(&u, &scale(&du));
        w = zadd(&w, &scale(&dw));
        pj *= &pb;
        u = zmod(&u, &pj);
        let lc = w.last().cloned().unwrap();
        let n = w.len();
        w = zmod(&w, &pj);
        w.resize(n, BigInt::zero());
        w[n - 1] = lc;
    }
    (u, w)
}

fn factor_squarefree_q(f: &[Scalar]) -> Result<Vec<UPoly>> {
    let n = deg(f);
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    if n > DEGREE_BUDGET {
        return Err(DError::FactorBudget(n));
    }
    let g = primitive_int(f);
    let lc = g.last().unwrap().clone();
    // pick a prime keeping g squarefree
    let mut p = 3u64;
    let base = loop {
        if exactpoly::BaseField::prime(p).is_ok() && !(&lc % BigInt::from(p)).is_zero() {
            let b = BaseField::Prime(p);
            let gp = to_fp(&g, &b);
            if deg(&gp) == n && is_one_poly(&gcd(&gp, &kernel::derivative(&gp, &b), &b)) {
                break b;
            }
        }
        p += 2;
    };
    let gp = monic(&to_fp(&g, &base));
    let mut modular = factor_squarefree_fp(&gp, p, &base)?;
    if modular.len() == 1 {
        return Ok(vec![monic(f)]);
    }
    modular.sort_by(|a, b| cmp_poly(a, b));
    // coefficient bound for any factor of lc*g
    let norm: BigInt = g.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2) * (BigInt::one() << n) * norm * lc.abs();
    let mut k = 1u32;
    let mut m = BigInt::from(p);
    while m <= bound {
        m *= p;
        k += 1;
    }
    // lift the factorization one factor at a time
    let mut lifted: Vec<ZPoly> = Vec::new();
    let mut cur = g.clone();
    let rest_count = modular.len();
    for (i, fi) in modular.iter().enumerate() {
        if i + 1 == rest_count {
            // what is left is lc times the last factor
            let inv = lc.modinv(&m).unwrap();
            lifted.push(zmod(&cur.iter().map(|c| c * &inv).collect::<Vec<_>>(), &m));
            break;
        }
        let u = from_fp(fi);
        let mut w = to_fp(&cur, &base);
        w = div_exact(&w, fi);
        let mut wz = from_fp(&w);
        let nw = wz.len();
        wz[nw - 1] = lc.clone();
        let (u, w) = hensel_pair(&cur, u, wz, p, k);
        lifted.push(u);
        cur = w;
    }
    // recombination
    let half = &m / 2;
    let sym = |v: ZPoly| -> ZPoly {
        ztrim(v.into_iter().map(|c| {
            let c = c.mod_floor(&m);
            if c > half { c - &m } else { c }
        }).collect())
    };
    let mut remaining: Vec<ZPoly> = lifted;
    let mut gcur = g;
    let mut found: Vec<ZPoly> = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        let idx: Vec<usize> = (0..remaining.len()).collect();
        for subset in combinations(&idx, s) {
            let lcg = gcur.last().unwrap().clone();
            let mut cand = vec![lcg];
            for &i in &subset {
                cand = zmod(&zmul(&cand, &remaining[i]), &m);
            }
            let cand = primitive_part(&sym(cand));
            if let Some(q) = zdiv_exact(&gcur, &cand) {
                found.push(cand);
                gcur = primitive_part(&q);
                remaining = remaining.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, v)| v).collect();
                continue 'outer;
            }
        }
        s += 1;
    }
    if gcur.len() > 1 {
        found.push(gcur);
    }
    Ok(found
        .into_iter()
        .map(|z| monic(&z.iter().map(|c| Scalar::Rational(BigRational::from_integer(c.clone()))).collect::<Vec<_>>()))
        .collect())
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Evaluates a univariate polynomial with base coefficients in any ring.
pub fn eval_in<T: Coeff>(f: &[Scalar], x: &T, ctx: &T::Ctx) -> T {
    let mut acc = T::zero(ctx);
    for c in f.iter().rev() {
        acc = acc.mul(x).add(&T::from_scalar(ctx, c));
    }
    acc
}

/// Polynomial from a string in one variable.
pub fn parse_upoly(text: &str, var: &str, base: &BaseField) -> Result<UPoly> {
    let ctx = exactpoly::PolyCtx::new(base.clone(), vec![var.to_string()]);
    let p = exactpoly::parse_poly(text, &ctx)?;
    Ok(to_dense(&p))
}

pub fn to_dense(p: &exactpoly::MultiPoly<Scalar>) -> UPoly {
    let base = p.coeff_ctx().clone();
    let d = p.total_degree().unwrap_or(0) as usize;
    let mut v = vec![Scalar::from_int(&base, 0); d + 1];
    for (m, c) in p.terms() {
        v[m.0[0] as usize] = c.clone();
    }
    trimmed(v)
}

pub fn format_upoly(f: &[Scalar], var: &str) -> String {
    let base = f.first().map(|c| c.field()).unwrap_or(BaseField::Rational);
    let ctx = exactpoly::PolyCtx::new(base, vec![var.to_string()]);
    let terms = f
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (exactpoly::Monomial(vec![i as u32]), c.clone()));
    exactpoly::MultiPoly::from_terms(&ctx, terms).to_string()
}
