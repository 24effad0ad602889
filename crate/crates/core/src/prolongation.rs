//! Prolongations `τX`, twists `X^σ`, the projections `π̂_i`, density of
//! their images, algebraic jets, operator words and `dim_D` sequences.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use exactpoly::linalg::rref;
use exactpoly::{parse_poly_over, Coeff, FnField, Ideal, Monomial, MultiPoly, PolyCtx, RatFun, Scalar};

use crate::decomposition::LocalDecomposition;
use crate::dring::DRing;
use crate::error::{DError, Result};

pub type Poly = MultiPoly<RatFun>;

/// An affine variety over the function field of a D-ring, given by
/// generators. `prime` is an assertion by the caller, never checked.
#[derive(Clone, Debug)]
pub struct Variety {
    pub ctx: PolyCtx<RatFun>,
    pub ideal: Ideal<RatFun>,
    pub prime: bool,
}

impl Variety {
    pub fn new(ctx: PolyCtx<RatFun>, gens: Vec<Poly>, prime: bool) -> Self {
        let ideal = Ideal::new(&ctx, gens);
        Variety { ctx, ideal, prime }
    }

    pub fn parse(field: &Arc<FnField>, vars: &[&str], gens: &[&str], prime: bool) -> Result<Self> {
        let ctx = PolyCtx::new(field.clone(), vars.iter().map(|v| v.to_string()).collect());
        let gens = gens.iter().map(|g| parse_poly_over(g, &ctx)).collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Variety::new(ctx, gens, prime))
    }

    pub fn field(&self) -> &Arc<FnField> {
        &self.ctx.coeff
    }

    pub fn vars(&self) -> &[String] {
        &self.ctx.vars
    }

    pub fn gens(&self) -> &[Poly] {
        self.ideal.gens()
    }

    pub fn parse_poly(&self, text: &str) -> Result<Poly> {
        Ok(parse_poly_over(text, &self.ctx)?)
    }
}

/// Names of the prolonged coordinates, block by block: every `x^{(0)}`, then
/// every `x^{(1)}`, and so on.
pub fn prolonged_vars(vars: &[String], rank: usize) -> Vec<String> {
    (0..rank).flat_map(|j| vars.iter().map(move |v| format!("{v}_{j}"))).collect()
}

#[derive(Clone, Debug)]
pub struct Prolongation {
    pub variety: Variety,
    /// For each generator of `I`, its `ℓ` components `P^{(0)}, ..., P^{(ℓ-1)}`.
    pub components: Vec<Vec<Poly>>,
}

fn constant_poly(ctx: &PolyCtx<RatFun>, s: &Scalar) -> Poly {
    MultiPoly::constant(ctx, RatFun::constant(&ctx.coeff, s.clone()))
}

/// `τ(X, 𝒟, e)`: expands `P^e(Σ_j x^{(j)} ε_j)` for every generator.
pub fn prolong(x: &Variety, d: &DRing) -> Result<Prolongation> {
    let alg = d.algebra();
    let l = alg.rank();
    let n = x.ctx.nvars();
    let pctx = PolyCtx::new(x.field().clone(), prolonged_vars(x.vars(), l));
    let unit: Vec<Poly> = alg.unit().iter().map(|s| constant_poly(&pctx, s)).collect();
    let sums: Vec<Vec<Poly>> =
        (0..n).map(|k| (0..l).map(|j| MultiPoly::var(&pctx, j * n + k)).collect()).collect();
    let mut powers: HashMap<(usize, u32), Vec<Poly>> = HashMap::new();
    let mut components = Vec::new();
    for g in x.gens() {
        let mut acc = vec![MultiPoly::zero(&pctx); l];
        for (mono, c) in g.terms() {
            let ec = d.apply_e(c)?;
            let mut term: Vec<Poly> =
                ec.coords().iter().map(|r| MultiPoly::constant(&pctx, r.clone())).collect();
            for (k, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers
                    .entry((k, e))
                    .or_insert_with(|| {
                        let mut p = unit.clone();
                        for _ in 0..e {
                            p = alg.mul_coords(&p, &sums[k], &pctx);
                        }
                        p
                    })
                    .clone();
                term = alg.mul_coords(&term, &pw, &pctx);
            }
            for (a, t) in acc.iter_mut().zip(&term) {
                *a = &*a + t;
            }
        }
        components.push(acc);
    }
    let gens = components.iter().flatten().filter(|p| !p.is_zero()).cloned().collect();
    Ok(Prolongation { variety: Variety::new(pctx, gens, x.prime), components })
}

/// Applies a field map to every coefficient of the generators.
pub fn twist_with(x: &Variety, mut sigma: impl FnMut(&RatFun) -> Result<RatFun>) -> Result<Variety> {
    let gens = x
        .gens()
        .iter()
        .map(|g| g.try_map_coeffs(&x.ctx, &mut sigma))
        .collect::<Result<Vec<_>>>()?;
    Ok(Variety::new(x.ctx.clone(), gens, x.prime))
}

/// `σ_i = π_i ∘ e` for a factor with residue field equal to the base.
pub fn sigma(d: &DRing, dec: &LocalDecomposition, i: usize, r: &RatFun) -> Result<RatFun> {
    let f = factor_of_degree_one(dec, i)?;
    let img = d.apply_e(r)?;
    Ok(f.residue(img.coords(), d.field()).swap_remove(0))
}

pub fn twist(x: &Variety, d: &DRing, dec: &LocalDecomposition, i: usize) -> Result<Variety> {
    twist_with(x, |c| sigma(d, dec, i, c))
}

fn factor_of_degree_one(dec: &LocalDecomposition, i: usize) -> Result<&crate::decomposition::LocalFactor> {
    let f = dec.factors.get(i).ok_or(DError::IndexOutOfRange { index: i, rank: dec.factors.len() })?;
    if f.degree() != 1 {
        return Err(DError::Precondition(format!(
            "factor {i} has residue degree {}; split it with chosen roots first",
            f.degree()
        )));
    }
    Ok(f)
}

/// The linear form of `π̂_i`: `x ↦ Σ_j row[j] x^{(j)}`.
pub fn pi_hat_row(dec: &LocalDecomposition, i: usize) -> Result<Vec<Scalar>> {
    Ok(factor_of_degree_one(dec, i)?.pi[0].clone())
}

/// Images of the original coordinates under the linear form `row`.
pub fn pi_hat_apply(row: &[Scalar], n: usize, pctx: &PolyCtx<RatFun>) -> Vec<Poly> {
    (0..n)
        .map(|k| {
            let mut acc = MultiPoly::zero(pctx);
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &MultiPoly::var(pctx, j * n + k).scale(&RatFun::constant(&pctx.coeff, c.clone()));
                }
            }
            acc
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub label: String,
    pub dense: bool,
    /// Membership was tested in the radical because primality was not asserted.
    pub up_to_radical: bool,
    /// Basis of the ideal of the closure of the image.
    pub eliminated: Vec<Poly>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, if self.dense { "dense" } else { "not dense" })?;
        if self.up_to_radical {
            write!(f, " (up to radical)")?;
        }
        let basis: Vec<String> = self.eliminated.iter().map(|g| g.to_string()).collect();
        write!(f, "; image ideal <{}>", basis.join(", "))
    }
}

/// Is `π̂(Y)` Zariski dense in `target`? `Y` lives in prolonged coordinates
/// over `target`'s variables and must be contained in `target`'s twist
/// (the caller's responsibility here; `dominance_check` verifies it).
pub fn dominance_for_row(y: &Variety, target: &Variety, row: &[Scalar], label: &str) -> Result<Verdict> {
    let n = target.ctx.nvars();
    if y.ctx.nvars() != n * row.len() {
        return Err(DError::RankMismatch { expected: n * row.len(), got: y.ctx.nvars() });
    }
    let mut names: Vec<String> = y.vars().to_vec();
    let ws: Vec<String> = (0..n).map(|k| format!("@w{k}")).collect();
    names.extend(ws.iter().cloned());
    let big = PolyCtx::new(y.field().clone(), names);
    let embed: Vec<usize> = (0..y.ctx.nvars()).collect();
    let mut gens: Vec<Poly> = y.gens().iter().map(|g| g.reindex(&big, &embed)).collect();
    for (k, img) in pi_hat_apply(row, n, &big).into_iter().enumerate() {
        gens.push(&MultiPoly::var(&big, y.ctx.nvars() + k) - &img);
    }
    let drop: Vec<&str> = y.vars().iter().map(String::as_str).collect();
    let elim = Ideal::new(&big, gens).eliminate(&drop)?;
    let ident: Vec<usize> = (0..n).collect();
    let eliminated: Vec<Poly> = elim
        .cached_basis()
        .map(|(_, b)| b.to_vec())
        .unwrap_or_default()
        .iter()
        .map(|g| g.reindex(&target.ctx, &ident))
        .collect();
    let mut dense = true;
    for g in &eliminated {
        let member = if target.prime { target.ideal.contains(g)? } else { target.ideal.radical_contains(g)? };
        if !member {
            dense = false;
            break;
        }
    }
    Ok(Verdict { label: label.to_string(), dense, up_to_radical: !target.prime, eliminated })
}

/// Density of `π̂_i(Y)` in `X^{σ_i}` for every factor of the decomposition.
pub fn dominance_check(y: &Variety, x: &Variety, d: &DRing, dec: &LocalDecomposition) -> Result<Vec<Verdict>> {
    let tau = prolong(x, d)?;
    if y.vars() != tau.variety.vars() {
        return Err(DError::Precondition(format!(
            "Y must use the prolonged coordinates {}",
            tau.variety.vars().join(", ")
        )));
    }
    for g in tau.variety.gens() {
        if !y.ideal.contains(g)? {
            return Err(DError::Precondition(format!("Y is not inside the prolongation: {g} is not in I(Y)")));
        }
    }
    let mut out = Vec::new();
    for i in 0..dec.factors.len() {
        let row = pi_hat_row(dec, i)?;
        let target = twist(x, d, dec, i)?;
        let target = Variety { prime: target.prime && y.prime, ..target };
        out.push(dominance_for_row(y, &target, &row, &format!("factor {i}"))?);
    }
    Ok(out)
}

/// The order-`m` algebraic jet space of `X` at `p` as linear forms in jet
/// coordinates `v_μ`, one for each monomial `μ` with `1 ≤ deg μ ≤ m`.
#[derive(Clone, Debug)]
pub struct JetIdeal {
    pub monomials: Vec<Monomial>,
    pub ideal: Ideal<RatFun>,
}

fn monomials_up_to(n: usize, lo: u32, hi: u32) -> Vec<Monomial> {
    fn rec(n: usize, k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == n - 1 {
            cur[k] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[k] = e;
            rec(n, k + 1, left - e, cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if lo == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    for deg in lo..=hi {
        rec(n, 0, deg, &mut vec![0; n], &mut out);
    }
    out
}

pub fn jet_var_name(vars: &[String], mu: &Monomial) -> String {
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(&mu.0) {
        for _ in 0..e {
            parts.push(v.as_str());
        }
    }
    format!("v_{}", parts.join("_"))
}

pub fn jet_ideal(x: &Variety, p: &[RatFun], m: u32) -> Result<JetIdeal> {
    let field = x.field();
    if field.base().characteristic() != 0 {
        return Err(DError::Precondition("jet ideals are computed in characteristic 0".into()));
    }
    let n = x.ctx.nvars();
    if p.len() != n {
        return Err(DError::RankMismatch { expected: n, got: p.len() });
    }
    let shift: Vec<Poly> =
        (0..n).map(|k| &MultiPoly::var(&x.ctx, k) + &MultiPoly::constant(&x.ctx, p[k].clone())).collect();
    let monomials = monomials_up_to(n, 1, m);
    let col: HashMap<&Monomial, usize> = monomials.iter().enumerate().map(|(i, mu)| (mu, i)).collect();
    let multipliers = if m == 0 { Vec::new() } else { monomials_up_to(n, 0, m - 1) };
    let zero = RatFun::zero(field);
    let mut rows = Vec::new();
    for g in x.gens() {
        let local = g.compose(&x.ctx, &shift);
        if !local.coeff_of(&Monomial::one(n)).is_zero() {
            return Err(DError::Precondition(format!("the point is not on X: {g} does not vanish")));
        }
        for mult in &multipliers {
            let q = local.mul_term(mult, &RatFun::one(field));
            let mut row = vec![zero.clone(); monomials.len()];
            for (mu, c) in q.terms() {
                if let Some(&i) = col.get(mu) {
                    row[i] = c.clone();
                }
            }
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    let jctx = PolyCtx::new(field.clone(), monomials.iter().map(|mu| jet_var_name(x.vars(), mu)).collect());
    let (red, pivots) = rref(&rows);
    let gens = red
        .into_iter()
        .take(pivots.len())
        .map(|row| {
            let mut f = MultiPoly::zero(&jctx);
            for (i, c) in row.into_iter().enumerate() {
                if !c.is_zero() {
                    f.add_term(Monomial::var(monomials.len(), i, 1), c);
                }
            }
            f
        })
        .collect();
    Ok(JetIdeal { ideal: Ideal::new(&jctx, gens), monomials })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Op(usize),
    SigmaInv(usize),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Op(k) => write!(f, "∂{k}"),
            Letter::SigmaInv(i) => write!(f, "σ{i}⁻¹"),
        }
    }
}

pub type Word = Vec<Letter>;

pub fn format_word(w: &[Letter]) -> String {
    if w.is_empty() {
        return "ε".into();
    }
    w.iter().map(|l| l.to_string()).collect()
}

/// `∂_1, ..., ∂_{ℓ-1}`.
pub fn xi_alphabet(rank: usize) -> Vec<Letter> {
    (1..rank).map(Letter::Op).collect()
}

/// The operators together with inverses of the endomorphisms `σ_1, ..., σ_{t-1}`.
pub fn theta_alphabet(rank: usize, t: usize) -> Vec<Letter> {
    let mut a = xi_alphabet(rank);
    a.extend((1..t).map(Letter::SigmaInv));
    a
}

/// All words of length at most `r`, by length and then lexicographically
/// in alphabet order.
pub fn enumerate_words(r: usize, alphabet: &[Letter]) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &layer {
            for &a in alphabet {
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

/// `θ(a)`, applying the rightmost letter first.
pub fn evaluate_word(d: &DRing, w: &[Letter], a: &RatFun) -> Result<RatFun> {
    let mut v = a.clone();
    for l in w.iter().rev() {
        match *l {
            Letter::Op(k) => v = d.apply_operator(k, &v)?,
            Letter::SigmaInv(_) => {
                return Err(DError::Precondition("inverse endomorphisms are not computable here".into()))
            }
        }
    }
    Ok(v)
}

/// Transcendence degrees of `(θ a : θ ∈ Ξ_r)` for `r = 0..=r_max`.
pub fn dim_sequence(d: &DRing, a: &[RatFun], r_max: usize) -> Result<Vec<usize>> {
    if d.algebra().characteristic() != 0 {
        return Err(DError::Precondition("dim sequences are computed in characteristic 0".into()));
    }
    let l = d.rank();
    let mut all: Vec<RatFun> = a.to_vec();
    let mut layer: Vec<RatFun> = a.to_vec();
    let bound = d.field().vars().len();
    let mut out = vec![exactpoly::linalg::jacobian_rank(&all)?];
    for _ in 0..r_max {
        // the transcendence degree cannot exceed the number of variables
        if out.last() == Some(&bound) {
            out.push(bound);
            continue;
        }
        let mut next = Vec::new();
        for v in &layer {
            let img = d.apply_e(v)?;
            next.extend(img.coords()[1..l].iter().cloned());
        }
        all.extend(next.iter().cloned());
        layer = next;
        out.push(exactpoly::linalg::jacobian_rank(&all)?);
    }
    Ok(out)
}
