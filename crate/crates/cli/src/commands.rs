use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use dring_core::catalog;
use dring_core::decomposition::{associated_operators, local_decomposition, splitting_endomorphisms};
use dring_core::dring::DRing;
use dring_core::factor::format_upoly;
use dring_core::iteration::{
    charp_demo, check_iterativity, en, en_expand, format_index_word, frobenius_span, iterate_algebra, iteration_tower,
};
use dring_core::leibniz::{leibniz_identities, op_name};
use dring_core::prolongation::{
    dim_sequence, dominance_check, enumerate_words, format_word, jet_ideal, jet_var_name, prolong, theta_alphabet, twist,
};
use dring_core::AlgebraScheme;
use exactpoly::linalg::solve;
use exactpoly::{parse_scalar, BaseField, Coeff, FnField, RatFun, Scalar};

use crate::report::{combination, matrix, strings, tuple, Report};
use crate::spec::{
    base_field, build_variety, load_algebra, load_dring, load_variety_spec, parse_list, variety_spec, AlgebraSpec,
    FieldSpec,
};
use crate::{Cli, Cmd};

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.cmd {
        Cmd::CheckAlgebra { algebra } => check_algebra(algebra),
        Cmd::Normalize { algebra, out } => normalize(algebra, out.as_deref()),
        Cmd::Product { algebra, other, fibred, tensor, compose: _, out } => {
            product(algebra, other, *fibred, *tensor, out.as_deref())
        }
        Cmd::Leibniz { algebra, names } => leibniz(algebra, names),
        Cmd::MakeDring { dring } => make_dring(dring),
        Cmd::Apply { dring, expr, op, e: _ } => apply(dring, expr, *op),
        Cmd::Decompose { algebra } => decompose(algebra),
        Cmd::SplitEndos { algebra, factor, gen, minpoly, roots } => split_endos(algebra, *factor, gen, minpoly, roots),
        Cmd::Prolong { dring, variety, out } => prolong_cmd(dring, variety, out.as_deref()),
        Cmd::Nabla { dring, point, variety } => nabla(dring, point, variety.as_deref()),
        Cmd::Twist { dring, variety, factor } => twist_cmd(dring, variety, *factor),
        Cmd::Dominance { dring, variety, sub } => dominance(dring, variety, sub),
        Cmd::Jet { variety, point, order, dring } => jet(variety, point, *order, dring.as_deref()),
        Cmd::Words { rank, length, factors } => words(*rank, *length, *factors),
        Cmd::Dims { dring, elements, length } => dims(dring, elements, *length),
        Cmd::Iterate { algebra, n, out } => iterate(algebra, *n, out.as_deref()),
        Cmd::En { dring, n, expr } => en_cmd(dring, *n, expr),
        Cmd::Iterativity { dring, m, n, expr, samples, degree } => {
            iterativity(dring, *m, *n, expr, *samples, *degree, cli.seed)
        }
        Cmd::PthRoot { dring, expr, n } => pth_root(dring, expr, *n),
        Cmd::CharpDemo { p, length, m, epsilon } => charp(*p, *length, *m, epsilon.as_deref()),
    }
}

fn write_json(path: Option<&Path>, v: &impl Serialize) -> Result<()> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(v)?;
        fs::write(p, text + "\n").with_context(|| format!("{}: cannot write", p.display()))?;
    }
    Ok(())
}

fn describe_algebra(rep: &mut Report, alg: &AlgebraScheme) {
    rep.line(format!("rank {} over {}", alg.rank(), field_name(alg.base())));
    rep.line(format!("basis {}", tuple(alg.labels())));
    for (i, j, k, c) in alg.triples() {
        let lab = alg.labels();
        rep.line(format!("  {} · {} -> {c} {}", lab[i], lab[j], lab[k]));
    }
    rep.line(format!("unit {}", tuple(alg.unit())));
    rep.line(format!("pi {}", tuple(alg.pi())));
    rep.set("algebra", AlgebraSpec::from_algebra(alg));
}

fn field_name(b: &BaseField) -> String {
    match b {
        BaseField::Rational => "Q".into(),
        BaseField::Prime(p) => format!("F_{p}"),
        BaseField::Number(nf) => {
            let m: Vec<Scalar> = nf.modulus().iter().map(|c| Scalar::Rational(c.clone())).collect();
            format!("Q({}) with {} = 0", nf.generator(), format_upoly(&m, nf.generator()))
        }
    }
}

fn check_algebra(path: &str) -> Result<Report> {
    let alg = load_algebra(path)?;
    let v = alg.validate();
    let mut rep = Report::new("check-algebra");
    rep.line(format!("rank {} over {}", alg.rank(), field_name(alg.base())));
    rep.line(format!("valid: {}", v.is_valid()));
    rep.line(format!("normalized: {}", v.normalized));
    for x in &v.violations {
        rep.line(format!("violation: {x}"));
    }
    rep.set("rank", alg.rank());
    rep.set("valid", v.is_valid());
    rep.set("normalized", v.normalized);
    rep.set("violations", strings(&v.violations));
    rep.negative = !v.is_valid();
    Ok(rep)
}

fn normalize(path: &str, out: Option<&Path>) -> Result<Report> {
    let alg = load_algebra(path)?;
    let (n, m) = alg.normalize_basis()?;
    let mut rep = Report::new("normalize");
    describe_algebra(&mut rep, &n);
    rep.line("new basis in old coordinates:");
    for (a, lab) in n.labels().iter().enumerate() {
        let col: Vec<Scalar> = m.iter().map(|r| r[a].clone()).collect();
        rep.line(format!("  {lab} = {}", tuple(&col)));
    }
    // columns are the new basis vectors
    rep.set("change_of_basis", matrix(&m));
    write_json(out, &AlgebraSpec::from_algebra(&n))?;
    Ok(rep)
}

fn product(a: &str, b: &str, fibred: bool, tensor: bool, out: Option<&Path>) -> Result<Report> {
    let (x, y) = (load_algebra(a)?, load_algebra(b)?);
    let mut rep = Report::new("product");
    let alg = if fibred {
        rep.set("kind", "fibred");
        x.fibred_product(&y)?
    } else if tensor {
        rep.set("kind", "tensor");
        x.tensor_product(&y)?
    } else {
        rep.set("kind", "compose");
        let c = x.compose(&y)?;
        rep.set("f", matrix(&c.f));
        rep.set("s", matrix(&c.s));
        c.algebra
    };
    describe_algebra(&mut rep, &alg);
    write_json(out, &AlgebraSpec::from_algebra(&alg))?;
    Ok(rep)
}

fn leibniz(path: &str, names: &[String]) -> Result<Report> {
    let alg = load_algebra(path)?;
    if !names.is_empty() && names.len() + 1 != alg.rank() {
        bail!("--names needs {} names, got {}", alg.rank() - 1, names.len());
    }
    let name = |k: usize| if names.is_empty() { op_name(k) } else { names[k - 1].clone() };
    let ids = leibniz_identities(&alg)?;
    let mut rep = Report::new("leibniz");
    let mut rules = Vec::new();
    for id in &ids {
        let r = id.render(&name);
        rep.line(r.clone());
        rules.push(json!({ "k": id.k, "rule": r, "unit": id.unit.to_string() }));
    }
    for id in ids.iter().filter(|id| !id.unit.is_zero()) {
        rep.line(id.render_unit(&name));
    }
    rep.set("rules", rules);
    Ok(rep)
}

fn make_dring(path: &str) -> Result<Report> {
    let d = load_dring(path)?;
    let mut rep = Report::new("make-dring");
    rep.line(format!("algebra of rank {} over {}", d.rank(), field_name(d.algebra().base())));
    let unit = d.e_scalar(&Scalar::from_int(d.algebra().base(), 1));
    for k in 1..d.rank() {
        rep.line(format!("∂{k}(1) = {}", unit.coords()[k]));
    }
    let mut gens = serde_json::Map::new();
    for (v, img) in d.field().vars().iter().zip(d.gen_images()) {
        rep.line(format!("e({v}) = {}", tuple(img.coords())));
        gens.insert(v.clone(), json!(strings(img.coords())));
    }
    rep.set("vars", d.field().vars());
    rep.set("e", gens);
    rep.set("unit_values", strings(unit.coords()));
    Ok(rep)
}

fn apply(path: &str, expr: &str, op: Option<usize>) -> Result<Report> {
    let d = load_dring(path)?;
    let f = d.parse(expr).with_context(|| format!("cannot parse {expr:?}"))?;
    let mut rep = Report::new("apply");
    rep.set("expr", expr);
    match op {
        Some(k) => {
            let v = d.apply_operator(k, &f)?;
            rep.line(format!("∂{k}({expr}) = {v}"));
            rep.set("op", k);
            rep.set("value", v.to_string());
        }
        None => {
            let img = d.apply_e(&f)?;
            rep.line(format!("e({expr}) = {}", tuple(img.coords())));
            rep.set("value", strings(img.coords()));
        }
    }
    Ok(rep)
}

fn decompose(path: &str) -> Result<Report> {
    let alg = load_algebra(path)?;
    let dec = local_decomposition(&alg)?;
    let ops = associated_operators(&dec);
    let mut rep = Report::new("decompose");
    rep.line(format!("t = {}", dec.t()));
    rep.line(format!("assumption_4_1_ii = {}", dec.assumption_ii));
    rep.line(format!("nilradical dimension {}", dec.nilradical.len()));
    if dec.experimental {
        rep.line("note: positive characteristic, computed experimentally");
    }
    let mut factors = Vec::new();
    for (i, f) in dec.factors.iter().enumerate() {
        let p = format_upoly(&f.residue_poly, "x");
        rep.line(format!("factor {i}: dimension {}, nilpotent rank {}, P_{i} = {p}", f.rank(), f.nil_rank));
        rep.line(format!("  idempotent {}", tuple(&f.idempotent)));
        let alphas: Vec<String> = ops.alpha[i].iter().map(|r| combination(r)).collect();
        for (j, a) in alphas.iter().enumerate() {
            rep.line(format!("  α_{i}{j} = {a}"));
        }
        factors.push(json!({
            "idempotent": strings(&f.idempotent),
            "dimension": f.rank(),
            "nil_rank": f.nil_rank,
            "residue_poly": strings(&f.residue_poly),
            "residue_poly_text": p,
            "alpha": matrix(&ops.alpha[i]),
            "alpha_text": alphas,
        }));
    }
    rep.set("t", dec.t());
    rep.set("assumption_4_1_ii", dec.assumption_ii);
    rep.set("experimental", dec.experimental);
    rep.set("nilradical", matrix(&dec.nilradical));
    rep.set("factors", factors);
    Ok(rep)
}

fn split_endos(path: &str, i: usize, gen: &str, minpoly: &str, roots: &str) -> Result<Report> {
    let alg = load_algebra(path)?;
    let k = base_field(0, Some(&FieldSpec { gen: gen.into(), minpoly: minpoly.into() }))?;
    let roots: Vec<Scalar> = roots
        .split(',')
        .map(|r| parse_scalar(r.trim(), &k).with_context(|| format!("cannot parse root {r:?}")))
        .collect::<Result<_>>()?;
    let dec = local_decomposition(&alg)?;
    let rows = splitting_endomorphisms(&associated_operators(&dec), &dec, i, &roots)?;
    let mut rep = Report::new("split-endos");
    rep.line(format!("factor {i} over {}", field_name(&k)));
    let mut texts = Vec::new();
    for (n, (r, row)) in roots.iter().zip(&rows).enumerate() {
        let c = combination(row);
        rep.line(format!("σ_{i}{} = {c}   (root {r})", n + 1));
        texts.push(c);
    }
    rep.set("factor", i);
    rep.set("roots", strings(&roots));
    rep.set("rows", matrix(&rows));
    rep.set("rows_text", texts);
    Ok(rep)
}

fn variety_for(d: &DRing, path: &str) -> Result<dring_core::prolongation::Variety> {
    build_variety(&load_variety_spec(path)?, d.field(), path)
}

fn prolong_cmd(dring: &str, variety: &str, out: Option<&Path>) -> Result<Report> {
    let d = load_dring(dring)?;
    let x = variety_for(&d, variety)?;
    let tau = prolong(&x, &d)?;
    let mut rep = Report::new("prolong");
    rep.line(format!("vars {}", tau.variety.vars().join(", ")));
    for g in tau.variety.gens() {
        rep.line(format!("{g} = 0"));
    }
    // a prolongation need not be irreducible
    let mut spec = variety_spec(&tau.variety);
    spec.prime = false;
    rep.set("variety", &spec);
    write_json(out, &spec)?;
    Ok(rep)
}

fn nabla(dring: &str, point: &str, variety: Option<&str>) -> Result<Report> {
    let d = load_dring(dring)?;
    let pt = parse_list(&d, point)?;
    let nab = d.nabla(&pt)?;
    let mut rep = Report::new("nabla");
    rep.line(format!("∇ = {}", tuple(&nab)));
    rep.set("nabla", strings(&nab));
    if let Some(v) = variety {
        let x = variety_for(&d, v)?;
        if pt.len() != x.vars().len() {
            bail!("point has {} coordinates, the variety {}", pt.len(), x.vars().len());
        }
        let on_x = x.gens().iter().all(|g| g.eval(&pt).is_zero());
        let tau = prolong(&x, &d)?;
        let on_tau = tau.variety.gens().iter().all(|g| g.eval(&nab).is_zero());
        rep.line(format!("point on X: {on_x}"));
        rep.line(format!("∇ on τX: {on_tau}"));
        rep.set("on_variety", on_x);
        rep.set("on_prolongation", on_tau);
        rep.negative = !(on_x && on_tau);
    }
    Ok(rep)
}

fn twist_cmd(dring: &str, variety: &str, i: usize) -> Result<Report> {
    let d = load_dring(dring)?;
    let x = variety_for(&d, variety)?;
    let dec = local_decomposition(d.algebra())?;
    let tw = twist(&x, &d, &dec, i)?;
    let mut rep = Report::new("twist");
    rep.line(format!("twist by σ_{i}"));
    for g in tw.gens() {
        rep.line(format!("{g} = 0"));
    }
    rep.set("factor", i);
    rep.set("variety", variety_spec(&tw));
    Ok(rep)
}

fn dominance(dring: &str, variety: &str, sub: &str) -> Result<Report> {
    let d = load_dring(dring)?;
    let x = variety_for(&d, variety)?;
    let y = variety_for(&d, sub)?;
    let dec = local_decomposition(d.algebra())?;
    let verdicts = dominance_check(&y, &x, &d, &dec)?;
    let mut rep = Report::new("dominance");
    let mut out = Vec::new();
    for v in &verdicts {
        rep.line(v.to_string());
        out.push(json!({
            "label": v.label,
            "dense": v.dense,
            "up_to_radical": v.up_to_radical,
            "eliminated": strings(&v.eliminated),
        }));
    }
    let all = verdicts.iter().all(|v| v.dense);
    rep.line(format!("dominant: {all}"));
    rep.set("verdicts", out);
    rep.set("dominant", all);
    rep.negative = !all;
    Ok(rep)
}

fn jet(variety: &str, point: &str, order: u32, dring: Option<&str>) -> Result<Report> {
    let spec = load_variety_spec(variety)?;
    let field = match dring {
        Some(p) => load_dring(p)?.field().clone(),
        None => FnField::new(BaseField::Rational, Vec::new()),
    };
    let x = build_variety(&spec, &field, variety)?;
    let pt: Vec<RatFun> = point
        .split(',')
        .map(|s| exactpoly::parse_ratfun(s.trim(), &field).with_context(|| format!("cannot parse {s:?}")))
        .collect::<Result<_>>()?;
    let j = jet_ideal(&x, &pt, order)?;
    let names: Vec<String> = j.monomials.iter().map(|m| jet_var_name(x.vars(), m)).collect();
    let mut rep = Report::new("jet");
    rep.line(format!("coordinates {}", names.join(", ")));
    let forms: Vec<String> = j.ideal.gens().iter().map(|g| g.to_string()).collect();
    for f in &forms {
        rep.line(format!("{f} = 0"));
    }
    rep.line(format!("dimension {}", names.len() - forms.len()));
    rep.set("coordinates", &names);
    rep.set("forms", &forms);
    rep.set("dimension", names.len() - forms.len());
    Ok(rep)
}

fn words(rank: usize, length: usize, factors: usize) -> Result<Report> {
    if rank == 0 {
        bail!("rank must be positive");
    }
    let ws = enumerate_words(length, &theta_alphabet(rank, factors));
    let texts: Vec<String> = ws.iter().map(|w| format_word(w)).collect();
    let mut rep = Report::new("words");
    rep.line(format!("{} words", texts.len()));
    for t in &texts {
        rep.line(t.clone());
    }
    rep.set("count", texts.len());
    rep.set("words", texts);
    Ok(rep)
}

fn dims(dring: &str, elements: &str, length: usize) -> Result<Report> {
    let d = load_dring(dring)?;
    let a = parse_list(&d, elements)?;
    let seq = dim_sequence(&d, &a, length)?;
    let mut rep = Report::new("dims");
    rep.line(format!("dim sequence {}", tuple(&seq)));
    rep.set("dims", seq);
    Ok(rep)
}

fn iterate(path: &str, n: usize, out: Option<&Path>) -> Result<Report> {
    let alg = Arc::new(load_algebra(path)?);
    let it = iterate_algebra(&alg, n)?;
    let words: Vec<String> = it.words.iter().map(|w| format_index_word(w)).collect();
    let mut rep = Report::new("iterate");
    rep.line(format!("level {n}: full rank {}, |L_{n}| = {}", it.full.rank(), it.dn_rank()));
    rep.line(format!("words {}", words.join(" ")));
    for (i, j, k, c) in it.dn.triples() {
        rep.line(format!("  {}*{} -> {c} {}", words[i], words[j], words[k]));
    }
    if n > 0 {
        rep.line(format!("truncation to level {}:", n - 1));
        for row in &it.truncation {
            rep.line(format!("  {}", tuple(row)));
        }
    }
    let spec = AlgebraSpec::from_algebra(&it.dn);
    rep.set("words", &words);
    rep.set("full_rank", it.full.rank());
    rep.set("algebra", &spec);
    rep.set("truncation", matrix(&it.truncation));
    write_json(out, &spec)?;
    Ok(rep)
}

fn en_cmd(dring: &str, n: usize, expr: &str) -> Result<Report> {
    let d = load_dring(dring)?;
    let f = d.parse(expr).with_context(|| format!("cannot parse {expr:?}"))?;
    let it = iterate_algebra(d.algebra(), n)?;
    let e = en(&d, &it, &f)?;
    let mut rep = Report::new("En");
    let mut coords = serde_json::Map::new();
    for (w, c) in it.words.iter().zip(e.coords()) {
        let name = format_index_word(w);
        rep.line(format!("{name}: {c}"));
        coords.insert(name, json!(c.to_string()));
    }
    rep.set("n", n);
    rep.set("words", it.words.iter().map(|w| format_index_word(w)).collect::<Vec<_>>());
    rep.set("coords", strings(e.coords()));
    Ok(rep)
}

fn random_poly(rng: &mut ChaCha8Rng, f: &Arc<FnField>, deg: u32) -> RatFun {
    let n = f.vars().len();
    let mut acc = RatFun::zero(f);
    for _ in 0..rng.gen_range(1..=4) {
        let mut t = RatFun::from_i64(f, rng.gen_range(-3i64..=3));
        for _ in 0..rng.gen_range(0..=deg) {
            if n > 0 {
                t = t.mul(&RatFun::var(f, rng.gen_range(0..n)));
            }
        }
        acc = acc.add(&t);
    }
    acc
}

fn iterativity(dring: &str, m: usize, n: usize, exprs: &[String], count: usize, degree: u32, seed: u64) -> Result<Report> {
    let d = load_dring(dring)?;
    let tower = iteration_tower(d.algebra(), m + n)?;
    let samples: Vec<RatFun> = if exprs.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| random_poly(&mut rng, d.field(), degree)).collect()
    } else {
        exprs.iter().map(|e| d.parse(e).with_context(|| format!("cannot parse {e:?}"))).collect::<Result<_>>()?
    };
    let r = check_iterativity(&d, &tower, m, n, &samples)?;
    let mut rep = Report::new("iterativity");
    rep.line(format!("m = {m}, n = {n}, {} samples, seed {seed}", samples.len()));
    rep.line(format!("{} identities checked, {} violations", r.checked, r.violations.len()));
    for v in &r.violations {
        rep.line(v.clone());
    }
    rep.line(format!("iterative: {}", r.passed()));
    rep.set("samples", strings(&samples));
    rep.set("checked", r.checked);
    rep.set("violations", &r.violations);
    rep.set("iterative", r.passed());
    rep.negative = !r.passed();
    Ok(rep)
}

fn pth_root(dring: &str, expr: &str, n: usize) -> Result<Report> {
    let d = load_dring(dring)?;
    let p = d.algebra().characteristic();
    if p == 0 {
        bail!("p-th powers need positive characteristic");
    }
    let f = d.parse(expr).with_context(|| format!("cannot parse {expr:?}"))?;
    let it = iterate_algebra(d.algebra(), n)?;
    let v = en_expand(&d, &f, &it.words)?;
    let span = frobenius_span(&it.dn)?;
    let field = d.field();
    let mat: Vec<Vec<RatFun>> = (0..it.dn_rank())
        .map(|r| span.iter().map(|col| RatFun::constant(field, col[r].clone())).collect())
        .collect();
    let sol = solve(&mat, &v, field);
    let mut rep = Report::new("pth-root");
    rep.line(format!("E_{n}({expr}) = {}", tuple(&v)));
    rep.line(format!("member: {}", sol.is_some()));
    if let Some(c) = &sol {
        // the root is Σ c_i^(1/p) ε_w
        rep.line(format!("E_{n}({expr}) = Σ c_w ε_w^{p} with c = {}", tuple(c)));
        rep.set("coefficients", strings(c));
    }
    rep.set("p", p);
    rep.set("n", n);
    rep.set("en", strings(&v));
    rep.set("member", sol.is_some());
    rep.negative = sol.is_none();
    Ok(rep)
}

fn charp(p: u64, length: usize, m: usize, epsilon: Option<&str>) -> Result<Report> {
    let base = base_field(p, None)?;
    if p == 0 {
        bail!("--p must be a prime");
    }
    let alg = Arc::new(catalog::truncated(&base, length));
    let eps: Vec<Scalar> = match epsilon {
        Some(t) => t.split(',').map(|c| parse_scalar(c.trim(), &base).map_err(|e| anyhow!("{e}"))).collect::<Result<_>>()?,
        None => (0..=length).map(|i| Scalar::from_int(&base, (i == 1) as i64)).collect(),
    };
    let r = charp_demo(&alg, &eps, m)?;
    let mut rep = Report::new("charp-demo");
    rep.line(format!("p = {p}, m = {m}, algebra F_{p}[η]/(η^{})", length + 1));
    rep.line(format!("ε = {}, η = {}", tuple(&r.epsilon), tuple(&r.eta)));
    let mut levels = Vec::new();
    for (lv, words) in r.levels.iter().zip(&r.words) {
        let names: Vec<String> = words.iter().map(|w| format_index_word(w)).collect();
        let residual = match lv.residual_zero {
            Some(true) => "residual 0",
            Some(false) => "residual NONZERO",
            None => "no closed form",
        };
        rep.line(format!("n = {}: member {}, {residual}", lv.n, lv.member));
        for (w, c) in names.iter().zip(&lv.en) {
            rep.line(format!("  {w}: {c}"));
        }
        levels.push(json!({
            "n": lv.n,
            "member": lv.member,
            "residual_zero": lv.residual_zero,
            "words": names,
            "en": strings(&lv.en),
        }));
    }
    let pattern: Vec<String> = r.pattern().iter().map(|b| b.to_string()).collect();
    rep.line(format!("membership pattern: {}", pattern.join(",")));
    rep.set("p", p);
    rep.set("m", m);
    rep.set("epsilon", strings(&r.epsilon));
    rep.set("eta", strings(&r.eta));
    rep.set("levels", levels);
    rep.set("pattern", r.pattern());
    rep.set("residuals_vanish", r.residuals_vanish());
    rep.negative = !r.residuals_vanish();
    Ok(rep)
}
