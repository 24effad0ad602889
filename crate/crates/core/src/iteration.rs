//! The iterated system: `𝒟^{(n)}`, the subalgebras `𝒟_n` spanned by
//! zero-dropping classes, truncations `f_n`, the maps `E_n`, and the
//! p-th power machinery in positive characteristic.

use std::collections::HashMap;
use std::sync::Arc;

use exactpoly::linalg::{mat_vec, rank, solve};
use exactpoly::{BaseField, Coeff, FnField, RatFun, Scalar};

use crate::algebra::{AlgebraElement, AlgebraScheme};
use crate::decomposition::nilradical;
use crate::dring::{make_dring, DRing};
use crate::error::{DError, Result};

pub const DEFAULT_RANK_CAP: usize = 4096;

/// Zero-free words over `{1, ..., ℓ-1}`.
pub type IndexWord = Vec<usize>;

#[derive(Clone, Debug)]
pub struct IteratedAlgebra {
    pub base: Arc<AlgebraScheme>,
    pub n: usize,
    /// `𝒟^{(n)}`; flat index `Σ t_k ℓ^{k-1}` for the tuple `(t_1, ..., t_n)`.
    pub full: Arc<AlgebraScheme>,
    /// `L_n` by length, then lexicographically.
    pub words: Vec<IndexWord>,
    /// `𝒟_n` with basis `ε_w`, `w ∈ L_n`.
    pub dn: Arc<AlgebraScheme>,
    /// Class of each full basis tuple, as an index into `words`.
    pub class_of: Vec<usize>,
    /// `f_n : 𝒟_n → 𝒟_{n-1}` as a `|L_{n-1}| × |L_n|` matrix (empty for `n = 0`).
    pub truncation: Vec<Vec<Scalar>>,
}

fn digits(mut idx: usize, l: usize, n: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let d = idx % l;
            idx /= l;
            d
        })
        .collect()
}

fn drop_zeros(t: &[usize]) -> IndexWord {
    t.iter().copied().filter(|&x| x != 0).collect()
}

/// `L_n` in the fixed enumeration order.
pub fn index_words(l: usize, n: usize) -> Vec<IndexWord> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<IndexWord> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for a in 1..l {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn format_index_word(w: &[usize]) -> String {
    if w.is_empty() {
        return "ε".into();
    }
    let parts: Vec<String> = w.iter().map(|i| i.to_string()).collect();
    format!("ε({})", parts.join(","))
}

fn rank_cap() -> usize {
    std::env::var("DRINGKIT_RANK_CAP").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_RANK_CAP)
}

impl IteratedAlgebra {
    pub fn l(&self) -> usize {
        self.base.rank()
    }

    pub fn dn_rank(&self) -> usize {
        self.words.len()
    }

    /// Column `ε_w` of the embedding `𝒟_n ↪ 𝒟^{(n)}`.
    pub fn embed<T: Clone>(&self, coords: &[T]) -> Vec<T> {
        self.class_of.iter().map(|&c| coords[c].clone()).collect()
    }

    /// Reads a full vector back into `𝒟_n`; `None` when it is not constant
    /// on classes.
    pub fn restrict<T: Coeff>(&self, full: &[T], ctx: &T::Ctx) -> Option<Vec<T>> {
        let mut out: Vec<Option<T>> = vec![None; self.words.len()];
        for (t, v) in full.iter().enumerate() {
            let c = self.class_of[t];
            match &out[c] {
                None => out[c] = Some(v.clone()),
                Some(old) if old == v => {}
                Some(_) => return None,
            }
        }
        Some(out.into_iter().map(|v| v.unwrap_or_else(|| T::zero(ctx))).collect())
    }

    pub fn word_index(&self, w: &[usize]) -> Option<usize> {
        self.words.iter().position(|x| x == w)
    }
}

fn level(base: &Arc<AlgebraScheme>, n: usize, full: Arc<AlgebraScheme>, f_full: Option<(&IteratedAlgebra, Vec<Vec<Scalar>>)>) -> Result<IteratedAlgebra> {
    let l = base.rank();
    let words = index_words(l, n);
    let pos: HashMap<&IndexWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let class_of: Vec<usize> = (0..full.rank()).map(|t| pos[&drop_zeros(&digits(t, l, n))]).collect();
    let field = base.base().clone();
    let zero = Scalar::from_int(&field, 0);
    let one = Scalar::from_int(&field, 1);
    let proto = IteratedAlgebra {
        base: base.clone(),
        n,
        full: full.clone(),
        words: words.clone(),
        dn: full.clone(),
        class_of,
        truncation: Vec::new(),
    };
    let basis: Vec<Vec<Scalar>> = (0..words.len())
        .map(|w| {
            let mut e = vec![zero.clone(); words.len()];
            e[w] = one.clone();
            proto.embed(&e)
        })
        .collect();
    let closed = || DError::Hypothesis(format!("𝒟_{n} is not closed in 𝒟^({n})"));
    let mut triples = Vec::new();
    for i in 0..words.len() {
        for j in i..words.len() {
            let prod = full.mul_coords(&basis[i], &basis[j], &field);
            let r = proto.restrict(&prod, &field).ok_or_else(closed)?;
            for (k, c) in r.into_iter().enumerate() {
                if !c.is_zero() {
                    triples.push((i, j, k, c));
                }
            }
        }
    }
    let unit = proto.restrict(full.unit(), &field).ok_or_else(closed)?;
    let pi: Vec<Scalar> = basis
        .iter()
        .map(|b| b.iter().zip(full.pi()).fold(zero.clone(), |acc, (x, y)| acc.add(&x.mul(y))))
        .collect();
    let labels = words.iter().map(|w| format_index_word(w)).collect();
    let dn = Arc::new(AlgebraScheme::new(field.clone(), labels, &triples, unit, Some(pi))?);
    let truncation = match f_full {
        None => Vec::new(),
        Some((prev, f)) => {
            let mut cols = Vec::new();
            for b in &basis {
                let img = mat_vec(&f, b, &field);
                cols.push(prev.restrict(&img, &field).ok_or_else(|| DError::Hypothesis(format!("f_{n} leaves 𝒟_{}", n - 1)))?);
            }
            (0..prev.words.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
        }
    };
    Ok(IteratedAlgebra { dn, truncation, ..proto })
}

/// Levels `0..=n` of the iteration.
pub fn iteration_tower(base: &Arc<AlgebraScheme>, n: usize) -> Result<Vec<IteratedAlgebra>> {
    if !base.is_normalized() {
        return Err(DError::NotNormalized);
    }
    let cap = rank_cap();
    let l = base.rank();
    match l.checked_pow(n as u32) {
        Some(r) if r <= cap => {}
        _ => return Err(DError::RankBudget { rank: l.saturating_pow(n as u32), cap }),
    }
    let mut out: Vec<IteratedAlgebra> = Vec::new();
    let trivial = Arc::new(AlgebraScheme::trivial(base.base()));
    out.push(level(base, 0, trivial, None)?);
    for k in 1..=n {
        let prev = out.last().unwrap();
        let comp = prev.full.compose(base)?;
        let lev = level(base, k, Arc::new(comp.algebra), Some((prev, comp.f)))?;
        out.push(lev);
    }
    Ok(out)
}

pub fn iterate_algebra(base: &Arc<AlgebraScheme>, n: usize) -> Result<IteratedAlgebra> {
    Ok(iteration_tower(base, n)?.pop().unwrap())
}

/// `∂_w(a)` for every word of `L_n`, in `words` order. The rightmost letter
/// is applied first.
pub fn en_expand(d: &DRing, f: &RatFun, words: &[IndexWord]) -> Result<Vec<RatFun>> {
    let mut vals: HashMap<IndexWord, RatFun> = HashMap::new();
    vals.insert(Vec::new(), f.clone());
    let max = words.iter().map(|w| w.len()).max().unwrap_or(0);
    let mut layer: Vec<IndexWord> = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            let img = d.apply_e(&vals[w])?;
            for k in 1..d.rank() {
                let mut v = vec![k];
                v.extend_from_slice(w);
                vals.insert(v.clone(), img.coords()[k].clone());
                next.push(v);
            }
        }
        layer = next;
    }
    Ok(words.iter().map(|w| vals[w].clone()).collect())
}

/// `E_n(f)` as an element of `𝒟_n`.
pub fn en(d: &DRing, it: &IteratedAlgebra, f: &RatFun) -> Result<AlgebraElement<RatFun>> {
    if d.algebra() != &it.base && **d.algebra() != *it.base {
        return Err(DError::ParentMismatch);
    }
    AlgebraElement::new(&it.dn, en_expand(d, f, &it.words)?)
}

#[derive(Clone, Debug, Default)]
pub struct IterativityReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl IterativityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn show(v: &[RatFun]) -> String {
    let s: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("({})", s.join(", "))
}

/// Evaluates `(i) E_0 = id`, `(ii) f_{k} ∘ ... ∘ f_{m+n} ∘ E_{m+n} = E_k` for
/// every `k ≤ m+n`, and `(iii) E_{m+n} = 𝒟_m(E_n) ∘ E_m` on each sample.
pub fn check_iterativity(d: &DRing, tower: &[IteratedAlgebra], m: usize, n: usize, samples: &[RatFun]) -> Result<IterativityReport> {
    let top = m + n;
    if tower.len() <= top {
        return Err(DError::Precondition(format!("tower has {} levels, need {}", tower.len(), top + 1)));
    }
    let field = d.field().clone();
    let lift = |row: &[Scalar]| -> Vec<RatFun> { row.iter().map(|s| RatFun::constant(&field, s.clone())).collect() };
    let l = d.rank();
    let mut rep = IterativityReport::default();
    for f in samples {
        let ens: Vec<Vec<RatFun>> =
            tower[..=top].iter().map(|it| en_expand(d, f, &it.words)).collect::<Result<_>>()?;
        // (i)
        rep.checked += 1;
        if ens[0] != vec![f.clone()] {
            rep.violations.push(format!("(i) E_0({f}) = {}", show(&ens[0])));
        }
        // (ii)
        let mut cur = ens[top].clone();
        for k in (0..top).rev() {
            let mat: Vec<Vec<RatFun>> = tower[k + 1].truncation.iter().map(|r| lift(r)).collect();
            cur = mat_vec(&mat, &cur, &field);
            rep.checked += 1;
            if cur != ens[k] {
                rep.violations.push(format!("(ii) f({top}->{k}) E_{top}({f}) = {} but E_{k}({f}) = {}", show(&cur), show(&ens[k])));
            }
        }
        // (iii): 𝒟^{(m+n)} = 𝒟^{(n)} ⊗ 𝒟^{(m)}, inner positions first
        let (inner, outer, big) = (&tower[n], &tower[m], &tower[top]);
        let lhs = big.embed(&ens[top]);
        let inner_rank = l.pow(n as u32);
        let mut cache: HashMap<usize, Vec<RatFun>> = HashMap::new();
        let mut rhs = Vec::with_capacity(lhs.len());
        for idx in 0..big.full.rank() {
            let (s, t) = (idx % inner_rank, idx / inner_rank);
            let w = outer.class_of[t];
            if !cache.contains_key(&w) {
                cache.insert(w, en_expand(d, &ens[m][w], &inner.words)?);
            }
            rhs.push(cache[&w][inner.class_of[s]].clone());
        }
        rep.checked += 1;
        if lhs != rhs {
            rep.violations.push(format!("(iii) m={m} n={n} f={f}: {} vs {}", show(&lhs), show(&rhs)));
        }
    }
    Ok(rep)
}

/// The span of `{ b^p : b a basis vector }` as a list of vectors.
pub fn frobenius_span(alg: &AlgebraScheme) -> Result<Vec<Vec<Scalar>>> {
    let p = alg.characteristic();
    if p == 0 {
        return Err(DError::Precondition("p-th powers need positive characteristic".into()));
    }
    let field = alg.base().clone();
    let zero = Scalar::from_int(&field, 0);
    let mut out = Vec::new();
    for i in 0..alg.rank() {
        let mut b = vec![zero.clone(); alg.rank()];
        b[i] = Scalar::from_int(&field, 1);
        let mut acc = alg.unit().to_vec();
        for _ in 0..p {
            acc = alg.mul_coords(&acc, &b, &field);
        }
        out.push(acc);
    }
    Ok(out)
}

/// Does `v` lie in the span of the p-th powers of the basis over the
/// coefficient field? Equivalently, is `v` a p-th power over the algebraic
/// closure.
pub fn pth_power_membership(v: &[RatFun], alg: &AlgebraScheme) -> Result<bool> {
    let span = frobenius_span(alg)?;
    let field = v.first().map(|c| c.field().clone()).ok_or(DError::RankMismatch { expected: alg.rank(), got: 0 })?;
    // columns are the b^p
    let m: Vec<Vec<RatFun>> = (0..alg.rank())
        .map(|r| span.iter().map(|col| RatFun::constant(&field, col[r].clone())).collect())
        .collect();
    Ok(solve(&m, v, &field).is_some())
}

#[derive(Clone, Debug)]
pub struct CharpLevel {
    pub n: usize,
    pub en: Vec<RatFun>,
    /// Whether `E_n(x_1)` minus the closed form vanishes (only for `n < m`).
    pub residual_zero: Option<bool>,
    pub member: bool,
}

#[derive(Clone, Debug)]
pub struct CharpReport {
    pub p: u64,
    pub m: usize,
    pub epsilon: Vec<Scalar>,
    pub eta: Vec<Scalar>,
    pub words: Vec<Vec<IndexWord>>,
    pub levels: Vec<CharpLevel>,
}

impl CharpReport {
    pub fn pattern(&self) -> Vec<bool> {
        self.levels.iter().map(|l| l.member).collect()
    }

    pub fn residuals_vanish(&self) -> bool {
        self.levels.iter().all(|l| l.residual_zero != Some(false))
    }
}

/// A nilpotent outside the span of p-th powers: the last nilradical basis
/// vector (in reduced echelon form) not already in that span.
pub fn select_eta(alg: &AlgebraScheme) -> Result<Vec<Scalar>> {
    let span = frobenius_span(alg)?;
    let nil = nilradical(alg);
    let r0 = rank(&span);
    for v in nil.iter().rev() {
        let mut m = span.clone();
        m.push(v.clone());
        if rank(&m) > r0 {
            return Ok(v.clone());
        }
    }
    Err(DError::Hypothesis("every nilpotent is a p-th power".into()))
}

/// The structure `e(x_i) = x_i + x_{i+1} ε^p` (`i < m`), `e(x_m) = x_m + η`
/// on `F_p(x_1, ..., x_m)`.
pub fn charp_dring(alg: &Arc<AlgebraScheme>, epsilon: &[Scalar], eta: &[Scalar], m: usize) -> Result<DRing> {
    let field_base = alg.base().clone();
    let p = alg.characteristic();
    let eps_p = {
        let mut acc = alg.unit().to_vec();
        for _ in 0..p {
            acc = alg.mul_coords(&acc, epsilon, &field_base);
        }
        acc
    };
    let vars: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    let field = FnField::new(field_base, vars);
    let mut images = Vec::new();
    for i in 0..m {
        let xi = RatFun::var(&field, i);
        let (nxt, nil) = if i + 1 < m { (RatFun::var(&field, i + 1), &eps_p) } else { (RatFun::one(&field), &eta.to_vec()) };
        let img: Vec<RatFun> = alg
            .unit()
            .iter()
            .zip(nil)
            .map(|(u, c)| {
                let a = xi.mul(&RatFun::constant(&field, u.clone()));
                a.add(&nxt.mul(&RatFun::constant(&field, c.clone())))
            })
            .collect();
        images.push(img);
    }
    make_dring(alg.clone(), field, images)
}

pub fn charp_demo(alg: &Arc<AlgebraScheme>, epsilon: &[Scalar], m: usize) -> Result<CharpReport> {
    let p = alg.characteristic();
    let base = alg.base().clone();
    if p == 0 {
        return Err(DError::Precondition("the demo needs positive characteristic".into()));
    }
    if epsilon.len() != alg.rank() {
        return Err(DError::RankMismatch { expected: alg.rank(), got: epsilon.len() });
    }
    let pw = |v: &[Scalar], e: u64| {
        let mut acc = alg.unit().to_vec();
        for _ in 0..e {
            acc = alg.mul_coords(&acc, v, &base);
        }
        acc
    };
    if pw(epsilon, p).iter().all(|c| c.is_zero()) {
        return Err(DError::Hypothesis("ε^p = 0".into()));
    }
    if !pw(epsilon, alg.rank() as u64).iter().all(|c| c.is_zero()) {
        return Err(DError::Hypothesis("ε is not nilpotent".into()));
    }
    let eta = select_eta(alg)?;
    let d = charp_dring(alg, epsilon, &eta, m)?;
    let tower = iteration_tower(alg, m)?;
    let field = d.field().clone();
    let x1 = RatFun::var(&field, 0);
    let mut levels = Vec::new();
    for (n, it) in tower.iter().enumerate() {
        let coords = en_expand(&d, &x1, &it.words)?;
        let residual_zero = if n < m { Some(closed_form(it, epsilon, p, &field)? == it.embed(&coords)) } else { None };
        let member = pth_power_membership(&coords, &it.dn)?;
        levels.push(CharpLevel { n, en: coords, residual_zero, member });
    }
    Ok(CharpReport {
        p,
        m,
        epsilon: epsilon.to_vec(),
        eta,
        words: tower.iter().map(|t| t.words.clone()).collect(),
        levels,
    })
}

/// `Σ_j x_{j+1} Σ_{|τ| = j} b_τ^p` in `𝒟^{(n)}` coordinates, with
/// `b_τ = ⊗_i ε^{τ(i)}`.
fn closed_form(it: &IteratedAlgebra, epsilon: &[Scalar], p: u64, field: &Arc<FnField>) -> Result<Vec<RatFun>> {
    let base: &BaseField = it.base.base();
    let l = it.l();
    let n = it.n;
    let mut acc = vec![RatFun::zero(field); it.full.rank()];
    for mask in 0usize..(1 << n) {
        let j = mask.count_ones() as usize;
        let mut b = vec![Scalar::from_int(base, 1)];
        let mut width = 1;
        for k in 0..n {
            let v: &[Scalar] = if mask >> k & 1 == 1 { epsilon } else { it.base.unit() };
            let mut nb = vec![Scalar::from_int(base, 0); width * l];
            for (a, x) in b.iter().enumerate() {
                for (c, y) in v.iter().enumerate() {
                    nb[a + c * width] = x.mul(y);
                }
            }
            b = nb;
            width *= l;
        }
        let mut bp = it.full.unit().to_vec();
        for _ in 0..p {
            bp = it.full.mul_coords(&bp, &b, base);
        }
        let x = RatFun::var(field, j);
        for (a, c) in acc.iter_mut().zip(&bp) {
            *a = a.add(&x.mul(&RatFun::constant(field, c.clone())));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::dring::parse_dring;

    #[test]
    fn dual_iterates_to_truncated() {
        let b = BaseField::Rational;
        let it = iterate_algebra(&Arc::new(catalog::dual(&b)), 2).unwrap();
        assert_eq!(it.full.rank(), 4);
        assert_eq!(it.dn_rank(), 3);
        // ε_(1)^2 = 2 ε_(1,1) matches η^2 under η ↦ ε_(1), η^2/2 ↦ ε_(1,1)
        let e1 = it.dn.product_of_basis(1, 1);
        assert_eq!(e1, &[(2, Scalar::from_int(&b, 2))]);
        assert!(it.dn.validate().violations.is_empty());
    }

    #[test]
    fn word_counts() {
        for l in 1..=4usize {
            for n in 0..=4usize {
                let expect: usize = (0..=n).map(|k| (l - 1).pow(k as u32)).sum();
                assert_eq!(index_words(l, n).len(), expect);
            }
        }
    }

    #[test]
    fn en_of_a_derivation() {
        let d = parse_dring(Arc::new(catalog::dual(&BaseField::Rational)), &["x"], &[vec!["x", "1"]]).unwrap();
        let it = iterate_algebra(d.algebra(), 2).unwrap();
        let e = en(&d, &it, &d.parse("x^3").unwrap()).unwrap();
        let want: Vec<RatFun> = ["x^3", "3*x^2", "6*x"].iter().map(|s| d.parse(s).unwrap()).collect();
        assert_eq!(e.coords(), &want[..]);
    }

    #[test]
    fn dual_numbers_square_test() {
        let f2 = BaseField::Prime(2);
        let alg = catalog::dual(&f2);
        let field = FnField::new(f2.clone(), vec![]);
        let eta = vec![RatFun::zero(&field), RatFun::one(&field)];
        assert!(!pth_power_membership(&eta, &alg).unwrap());
        let one = vec![RatFun::one(&field), RatFun::zero(&field)];
        assert!(pth_power_membership(&one, &alg).unwrap());
    }
}
