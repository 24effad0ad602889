//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer–Möller pair update, plus ideal-level queries built on it.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::coeff::Coeff;
use crate::error::{PolyError, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{MultiPoly, PolyCtx};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

static BUDGET: AtomicU64 = AtomicU64::new(DEFAULT_BUDGET);

/// Sets the reduction-step budget used by calls that do not pass one.
pub fn set_default_budget(steps: u64) {
    BUDGET.store(steps, AtomicOrdering::Relaxed);
}

pub fn default_budget() -> u64 {
    BUDGET.load(AtomicOrdering::Relaxed)
}

/// Terms sorted ascending, so the leading term sits at the end.
type Terms<C> = Vec<(Monomial, C)>;

fn to_terms<C: Coeff>(p: &MultiPoly<C>, order: &MonomialOrder) -> Terms<C> {
    let mut v: Terms<C> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    v.sort_by(|a, b| order.cmp(&a.0, &b.0));
    v
}

fn from_terms<C: Coeff>(ctx: &PolyCtx<C>, t: Terms<C>) -> MultiPoly<C> {
    MultiPoly::from_terms(ctx, t)
}

fn monic<C: Coeff>(t: &mut Terms<C>) {
    if let Some((_, lc)) = t.last() {
        if !lc.is_one() {
            let li = lc.inv().expect("leading coefficient not invertible");
            for (_, c) in t.iter_mut() {
                *c = c.mul(&li);
            }
        }
    }
}

/// `a - c * m * b`, both ascending.
fn sub_scaled<C: Coeff>(a: &[(Monomial, C)], b: &[(Monomial, C)], m: &Monomial, c: &C, order: &MonomialOrder) -> Terms<C> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |k: usize| b[k].0.mul(m);
    let mut bj = if b.is_empty() { None } else { Some(shifted(0)) };
    while i < a.len() || j < b.len() {
        match (a.get(i), bj.as_ref()) {
            (Some((ma, ca)), Some(mb)) => match order.cmp(ma, mb) {
                Ordering::Less => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((mb.clone(), b[j].1.mul(c).neg()));
                    j += 1;
                    bj = (j < b.len()).then(|| shifted(j));
                }
                Ordering::Equal => {
                    let v = ca.sub(&b[j].1.mul(c));
                    if !v.is_zero() {
                        out.push((ma.clone(), v));
                    }
                    i += 1;
                    j += 1;
                    bj = (j < b.len()).then(|| shifted(j));
                }
            },
            (Some((ma, ca)), None) => {
                out.push((ma.clone(), ca.clone()));
                i += 1;
            }
            (None, Some(mb)) => {
                out.push((mb.clone(), b[j].1.mul(c).neg()));
                j += 1;
                bj = (j < b.len()).then(|| shifted(j));
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

struct Reducer<'a, C: Coeff> {
    order: &'a MonomialOrder,
    steps: u64,
    budget: u64,
    _c: std::marker::PhantomData<C>,
}

impl<C: Coeff> Reducer<'_, C> {
    /// Full reduction of `p` by monic divisors.
    fn reduce(&mut self, mut p: Terms<C>, divisors: &[&Terms<C>]) -> Result<Terms<C>> {
        let mut rem: Terms<C> = Vec::new();
        while let Some((lm, lc)) = p.last().cloned() {
            let hit = divisors.iter().find(|g| g.last().unwrap().0.divides(&lm));
            match hit {
                Some(g) => {
                    self.steps += 1;
                    if self.steps > self.budget {
                        return Err(PolyError::BudgetExceeded { budget: self.budget });
                    }
                    let q = g.last().unwrap().0.quotient_of(&lm);
                    p.pop();
                    let tail = &g[..g.len() - 1];
                    p = sub_scaled(&p, tail, &q, &lc, self.order);
                }
                None => {
                    p.pop();
                    rem.push((lm, lc));
                }
            }
        }
        rem.reverse();
        Ok(rem)
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn lm<C: Coeff>(t: &Terms<C>) -> &Monomial {
    &t.last().unwrap().0
}

/// Reduced Gröbner basis (monic, sorted by descending leading monomial).
pub fn groebner_basis<C: Coeff>(
    ctx: &PolyCtx<C>,
    gens: &[MultiPoly<C>],
    order: &MonomialOrder,
    budget: u64,
) -> Result<Vec<MultiPoly<C>>> {
    let mut red = Reducer::<C> { order, steps: 0, budget, _c: std::marker::PhantomData };
    let mut polys: Vec<Terms<C>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<Terms<C>> = gens.iter().filter(|g| !g.is_zero()).map(|g| to_terms(g, order)).collect();
    inputs.sort_by(|a, b| order.cmp(lm(a), lm(b)));
    let mut queue: Vec<Terms<C>> = inputs;
    queue.reverse();

    loop {
        let h = if let Some(g) = queue.pop() {
            let divs: Vec<&Terms<C>> = active.iter().map(|&k| &polys[k]).collect();
            red.reduce(g, &divs)?
        } else {
            // normal strategy: smallest lcm first
            let Some(best) = (0..pairs.len()).min_by(|&a, &b| {
                order.cmp(&pairs[a].lcm, &pairs[b].lcm).then((pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            }) else {
                break;
            };
            let pr = pairs.swap_remove(best);
            let (f, g) = (&polys[pr.i], &polys[pr.j]);
            let mf = lm(f).quotient_of(&pr.lcm);
            let mg = lm(g).quotient_of(&pr.lcm);
            let one = C::one(&ctx.coeff);
            let zero: Terms<C> = Vec::new();
            let a = sub_scaled(&zero, &f[..f.len() - 1], &mf, &one.neg(), order);
            let s = sub_scaled(&a, &g[..g.len() - 1], &mg, &one, order);
            let divs: Vec<&Terms<C>> = active.iter().map(|&k| &polys[k]).collect();
            red.reduce(s, &divs)?
        };
        if h.is_empty() {
            continue;
        }
        let mut h = h;
        monic(&mut h);
        if lm(&h).is_one() {
            return Ok(vec![MultiPoly::one(ctx)]);
        }
        let hi = polys.len();
        polys.push(h);
        update(&polys, &mut active, &mut pairs, hi);
    }

    // minimalize, then interreduce tails
    let mut basis: Vec<usize> = active.clone();
    basis.retain(|&k| !active.iter().any(|&o| o != k && lm(&polys[o]).divides(lm(&polys[k])) && (lm(&polys[o]) != lm(&polys[k]) || o < k)));
    let mut out = Vec::new();
    for &k in &basis {
        let others: Vec<&Terms<C>> = basis.iter().filter(|&&o| o != k).map(|&o| &polys[o]).collect();
        let lead = polys[k].last().unwrap().clone();
        let tail = polys[k][..polys[k].len() - 1].to_vec();
        let mut r = red.reduce(tail, &others)?;
        r.push(lead);
        out.push(r);
    }
    out.sort_by(|a, b| order.cmp(lm(b), lm(a)));
    Ok(out.into_iter().map(|t| from_terms(ctx, t)).collect())
}

fn update<C: Coeff>(polys: &[Terms<C>], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = lm(&polys[h]).clone();
    let mut cands: Vec<(usize, Monomial, bool)> =
        active.iter().map(|&g| (g, lh.lcm(lm(&polys[g])), lh.coprime(lm(&polys[g])))).collect();
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    while let Some((g, l, cop)) = cands.pop() {
        let dominated = cands.iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(&l));
        if cop || !dominated {
            kept.push((g, l, cop));
        }
    }
    pairs.retain(|p| {
        let l1 = lh.lcm(lm(&polys[p.i]));
        let l2 = lh.lcm(lm(&polys[p.j]));
        !(lh.divides(&p.lcm) && l1 != p.lcm && l2 != p.lcm)
    });
    for (g, l, cop) in kept {
        if !cop {
            pairs.push(Pair { i: g.min(h), j: g.max(h), lcm: l });
        }
    }
    active.retain(|&g| !lh.divides(lm(&polys[g])));
    active.push(h);
}

/// Normal form of `f` modulo a Gröbner basis.
pub fn normal_form<C: Coeff>(f: &MultiPoly<C>, basis: &[MultiPoly<C>], order: &MonomialOrder) -> Result<MultiPoly<C>> {
    let mut red = Reducer::<C> { order, steps: 0, budget: default_budget(), _c: std::marker::PhantomData };
    let divs: Vec<Terms<C>> = basis.iter().map(|b| {
        let mut t = to_terms(b, order);
        monic(&mut t);
        t
    }).collect();
    let refs: Vec<&Terms<C>> = divs.iter().collect();
    let r = red.reduce(to_terms(f, order), &refs)?;
    Ok(from_terms(f.poly_ctx(), r))
}

/// An ideal of a polynomial ring, optionally carrying a reduced Gröbner
/// basis for one monomial order.
#[derive(Clone, Debug)]
pub struct Ideal<C: Coeff> {
    ctx: PolyCtx<C>,
    gens: Vec<MultiPoly<C>>,
    basis: Option<(MonomialOrder, Vec<MultiPoly<C>>)>,
}

impl<C: Coeff> Ideal<C> {
    pub fn new(ctx: &PolyCtx<C>, gens: Vec<MultiPoly<C>>) -> Self {
        Ideal { ctx: ctx.clone(), gens, basis: None }
    }

    pub fn ctx(&self) -> &PolyCtx<C> {
        &self.ctx
    }

    pub fn gens(&self) -> &[MultiPoly<C>] {
        &self.gens
    }

    pub fn cached_basis(&self) -> Option<(&MonomialOrder, &[MultiPoly<C>])> {
        self.basis.as_ref().map(|(o, b)| (o, b.as_slice()))
    }

    pub fn groebner(&self, order: &MonomialOrder) -> Result<Ideal<C>> {
        self.groebner_with_budget(order, default_budget())
    }

    pub fn groebner_with_budget(&self, order: &MonomialOrder, budget: u64) -> Result<Ideal<C>> {
        if let Some((o, _)) = &self.basis {
            if o == order {
                return Ok(self.clone());
            }
        }
        let b = groebner_basis(&self.ctx, &self.gens, order, budget)?;
        Ok(Ideal { ctx: self.ctx.clone(), gens: self.gens.clone(), basis: Some((order.clone(), b)) })
    }

    /// The reduced basis, computing a degree-reverse-lex one if none is cached.
    pub fn basis(&self) -> Result<(MonomialOrder, Vec<MultiPoly<C>>)> {
        match &self.basis {
            Some((o, b)) => Ok((o.clone(), b.clone())),
            None => {
                let o = MonomialOrder::DegRevLex;
                let b = groebner_basis(&self.ctx, &self.gens, &o, default_budget())?;
                Ok((o, b))
            }
        }
    }

    pub fn normal_form(&self, f: &MultiPoly<C>) -> Result<MultiPoly<C>> {
        let (o, b) = self.basis()?;
        normal_form(f, &b, &o)
    }

    pub fn contains(&self, f: &MultiPoly<C>) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal<C>) -> Result<bool> {
        let (o, b) = self.basis()?;
        for g in &other.gens {
            if !normal_form(g, &b, &o)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        let (_, b) = self.basis()?;
        Ok(b.len() == 1 && b[0].is_constant() && !b[0].is_zero())
    }

    /// Equality of ideals via reduced bases under degree-reverse-lex.
    pub fn same_ideal(&self, other: &Ideal<C>) -> Result<bool> {
        let o = MonomialOrder::DegRevLex;
        let a = groebner_basis(&self.ctx, &self.gens, &o, default_budget())?;
        let b = groebner_basis(&other.ctx, &other.gens, &o, default_budget())?;
        Ok(a == b)
    }

    /// `I ∩ k[kept]`, returned as an ideal over the kept variables (in their
    /// original relative order) with its basis cached.
    pub fn eliminate(&self, drop: &[&str]) -> Result<Ideal<C>> {
        let n = self.ctx.nvars();
        let mut idx = Vec::new();
        for d in drop {
            idx.push(self.ctx.var_index(d).ok_or_else(|| PolyError::UnknownVariable(d.to_string()))?);
        }
        let order = MonomialOrder::eliminating(n, &idx);
        let b = groebner_basis(&self.ctx, &self.gens, &order, default_budget())?;
        let kept: Vec<usize> = (0..n).filter(|i| !idx.contains(i)).collect();
        let kctx = PolyCtx::new(self.ctx.coeff.clone(), kept.iter().map(|&i| self.ctx.vars[i].clone()).collect());
        let mut map = vec![0usize; n];
        for (new, &old) in kept.iter().enumerate() {
            map[old] = new;
        }
        let gens: Vec<MultiPoly<C>> = b
            .into_iter()
            .filter(|g| idx.iter().all(|&i| !g.uses_var(i)))
            .map(|g| g.reindex(&kctx, &map))
            .collect();
        // the restriction of the block basis is a Gröbner basis for the
        // restricted grevlex order; re-reduce it to get the reduced basis
        let ideal = Ideal::new(&kctx, gens);
        ideal.groebner(&MonomialOrder::DegRevLex)
    }

    /// Rabinowitsch test: `f ∈ √I` iff `1 ∈ I + ⟨1 - z f⟩`.
    pub fn radical_contains(&self, f: &MultiPoly<C>) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        let mut vars: Vec<String> = self.ctx.vars.to_vec();
        let mut z = String::from("rabinowitsch_z");
        while vars.contains(&z) {
            z.push('_');
        }
        vars.push(z);
        let n = self.ctx.nvars();
        let big = PolyCtx::new(self.ctx.coeff.clone(), vars);
        let map: Vec<usize> = (0..n).collect();
        let mut gens: Vec<MultiPoly<C>> = self.gens.iter().map(|g| g.reindex(&big, &map)).collect();
        let fz = &f.reindex(&big, &map) * &MultiPoly::var(&big, n);
        gens.push(&MultiPoly::one(&big) - &fz);
        Ideal::new(&big, gens).is_unit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::scalar::{BaseField, Scalar};

    fn ctx(vars: &[&str]) -> PolyCtx<Scalar> {
        PolyCtx::new(BaseField::Rational, vars.iter().map(|s| s.to_string()).collect())
    }

    fn ideal(c: &PolyCtx<Scalar>, gens: &[&str]) -> Ideal<Scalar> {
        Ideal::new(c, gens.iter().map(|g| parse_poly(g, c).unwrap()).collect())
    }

    fn basis_strings(i: &Ideal<Scalar>, o: &MonomialOrder) -> Vec<String> {
        let g = i.groebner(o).unwrap();
        g.cached_basis().unwrap().1.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn small_bases() {
        let c = ctx(&["x", "y"]);
        assert_eq!(basis_strings(&ideal(&c, &["x", "y"]), &MonomialOrder::Lex), ["x", "y"]);
        assert_eq!(basis_strings(&ideal(&c, &["y - x^2", "y"]), &MonomialOrder::Lex), ["x^2", "y"]);
        assert_eq!(basis_strings(&ideal(&c, &["x^2 - 1", "x - 1"]), &MonomialOrder::DegRevLex), ["x - 1"]);
    }

    #[test]
    fn elimination() {
        let c = ctx(&["x", "y"]);
        assert!(ideal(&c, &["y - x^2"]).eliminate(&["x"]).unwrap().gens().is_empty());
        let e = ideal(&c, &["y - x^2", "x"]).eliminate(&["x"]).unwrap();
        assert_eq!(e.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(), ["y"]);
        let c3 = ctx(&["t", "x", "y"]);
        let e = ideal(&c3, &["x - t", "y - t^2"]).eliminate(&["t"]).unwrap();
        assert_eq!(e.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(), ["x^2 - y"]);
    }

    #[test]
    fn radical_membership() {
        let c = ctx(&["x"]);
        let i = ideal(&c, &["x^2"]);
        assert!(i.radical_contains(&parse_poly("x", &c).unwrap()).unwrap());
        assert!(!i.radical_contains(&parse_poly("x + 1", &c).unwrap()).unwrap());
        assert!(i.radical_contains(&parse_poly("0", &c).unwrap()).unwrap());
        assert!(!i.contains(&parse_poly("x", &c).unwrap()).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let c = ctx(&["x", "y", "z"]);
        let i = ideal(&c, &["x^3 - y*z", "y^3 - x*z", "z^3 - x*y"]);
        assert!(matches!(
            i.groebner_with_budget(&MonomialOrder::Lex, 3),
            Err(PolyError::BudgetExceeded { budget: 3 })
        ));
    }
}
