//! The acceptance suite: one line per criterion, each checked at its
//! stated tolerance (exact) and runtime bound.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use dring_core::catalog;
use dring_core::decomposition::{associated_operators, hensel_lift, local_decomposition, nilradical, splitting_endomorphisms};
use dring_core::dring::{parse_dring, prime_dring, DRing};
use dring_core::iteration::{charp_demo, check_iterativity, en, en_expand, frobenius_span, iteration_tower};
use dring_core::leibniz::parse_rule;
use dring_core::prolongation::{dim_sequence, dominance_check, prolong, Variety};
use dring_core::{leibniz_identities, AlgebraElement, AlgebraScheme};
use exactpoly::{parse_poly_over, BaseField, Coeff, Ideal, RatFun, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

// 1 ----------------------------------------------------------------------

fn expect_rules(alg: &AlgebraScheme, ops: &[(&str, usize)], consts: &[(&str, Scalar)], texts: &[&str], units: &[i64]) -> Check {
    let b = alg.base().clone();
    let ids = ok(leibniz_identities(alg))?;
    ensure!(ids.len() == texts.len(), "expected {} identities, got {}", texts.len(), ids.len());
    for ((id, text), unit) in ids.iter().zip(texts).zip(units) {
        let want = ok(parse_rule(text, &b, ops, consts))?;
        ensure!(id.rule() == want, "{} differs from `{text}`", id);
        let numbered: Vec<(String, usize)> = (1..alg.rank()).map(|k| (format!("∂{k}"), k)).collect();
        let numbered: Vec<(&str, usize)> = numbered.iter().map(|(n, k)| (n.as_str(), *k)).collect();
        let round = ok(parse_rule(&id.to_string(), &b, &numbered, &[]))?;
        ensure!(round == want, "printed form `{id}` does not reparse to `{text}`");
        ensure!(id.unit == s(&b, *unit), "unit value of ∂{} is {}", id.k, id.unit);
    }
    Ok(())
}

fn truncated_text(i: usize) -> String {
    let f = |v: &str, r: usize| if r == 0 { v.to_string() } else { format!("∂{r}({v})") };
    let terms: Vec<String> = (0..=i).map(|r| format!("{}*{}", f("x", r), f("y", i - r))).collect();
    format!("∂{i}(x*y) = {}", terms.join(" + "))
}

fn criterion_1() -> Check {
    let b = q();
    expect_rules(&catalog::dual(&b), &[("∂", 1)], &[], &["∂(x*y) = x*∂(y) + ∂(x)*y"], &[0])?;
    for n in [2usize, 3] {
        let texts: Vec<String> = (1..=n).map(truncated_text).collect();
        let texts: Vec<&str> = texts.iter().map(String::as_str).collect();
        let names: Vec<String> = (1..=n).map(|k| format!("∂{k}")).collect();
        let ops: Vec<(&str, usize)> = names.iter().enumerate().map(|(k, s)| (s.as_str(), k + 1)).collect();
        expect_rules(&catalog::truncated(&b, n), &ops, &[], &texts, &vec![0; n])?;
    }
    expect_rules(&catalog::pair(&b), &[("σ", 1)], &[], &["σ(x*y) = σ(x)*σ(y)"], &[1])?;
    for c in [3i64, 0, -7] {
        expect_rules(
            &catalog::twisted(&b, s(&b, c)),
            &[("D", 1)],
            &[("c", s(&b, c))],
            &["D(x*y) = x*D(y) + D(x)*y + D(x)*D(y)*c"],
            &[0],
        )?;
    }
    expect_rules(
        &catalog::endo_derivation(&b),
        &[("σ", 1), ("δ", 2)],
        &[],
        &["σ(x*y) = σ(x)*σ(y)", "δ(x*y) = σ(x)*δ(y) + δ(x)*σ(y)"],
        &[1, 0],
    )?;
    expect_rules(
        &catalog::double_dual(&b),
        &[("∂1", 1), ("∂2", 2), ("∂3", 3)],
        &[],
        &[
            "∂1(x*y) = x*∂1(y) + ∂1(x)*y",
            "∂2(x*y) = x*∂2(y) + ∂2(x)*y",
            "∂3(x*y) = x*∂3(y) + y*∂3(x) + ∂1(x)*∂2(y) + ∂2(x)*∂1(y)",
        ],
        &[0, 0, 0],
    )
}

// 2 ----------------------------------------------------------------------

fn criterion_2() -> Check {
    let b = q();
    let alg = catalog::sqrt2_product(&b);
    let dec = ok(local_decomposition(&alg))?;
    ensure!(dec.t() == 1, "t = {}", dec.t());
    ensure!(dec.factors[1].residue_poly == vec![s(&b, -2), s(&b, 0), s(&b, 1)], "P_1 = {:?}", dec.factors[1].residue_poly);
    ensure!(!dec.assumption_ii, "residue field reported as the base");
    let ops = associated_operators(&dec);
    let d1 = vec![s(&b, 0), s(&b, 1), s(&b, 0)];
    let d2 = vec![s(&b, 0), s(&b, 0), s(&b, 1)];
    ensure!(ops.alpha[1] == vec![d1, d2], "alpha_1 = {:?}", ops.alpha[1]);

    let k = sqrt2_field();
    let BaseField::Number(nf) = &k else { unreachable!() };
    let r = Scalar::generator(nf);
    let sig = ok(splitting_endomorphisms(&ops, &dec, 1, &[r.clone(), r.neg()]))?;
    let want = vec![vec![s(&k, 0), s(&k, 1), r.clone()], vec![s(&k, 0), s(&k, 1), r.neg()]];
    ensure!(sig == want, "split rows {:?}", sig);

    // oracle: each row is a ring homomorphism on the algebra over Q(√2)
    let alg_k = catalog::sqrt2_product(&k);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let apply = |row: &[Scalar], v: &[Scalar]| row.iter().zip(v).fold(s(&k, 0), |a, (x, y)| a.add(&x.mul(y)));
    for row in &sig {
        ensure!(apply(row, alg_k.unit()).is_one(), "σ(1) ≠ 1");
        for _ in 0..20 {
            let mut rand_vec = || -> Vec<Scalar> {
                (0..3).map(|_| s(&k, rng.gen_range(-5..=5)).add(&r.mul(&s(&k, rng.gen_range(-5..=5))))).collect()
            };
            let (u, v) = (rand_vec(), rand_vec());
            let uv = alg_k.mul_coords(&u, &v, &k);
            ensure!(apply(row, &uv) == apply(row, &u).mul(&apply(row, &v)), "σ is not multiplicative");
        }
    }
    Ok(())
}

// 3 ----------------------------------------------------------------------

fn prolongation_case(d: &DRing, expected: &[&str], rng: &mut ChaCha8Rng) -> Check {
    let x = ok(Variety::parse(d.field(), &["x", "y"], &["y - x^2"], true))?;
    let tau = ok(prolong(&x, d))?;
    let ctx = tau.variety.ctx.clone();
    let want: Vec<_> = expected.iter().map(|g| parse_poly_over(g, &ctx).unwrap()).collect();
    ensure!(ok(tau.variety.ideal.same_ideal(&Ideal::new(&ctx, want)))?, "prolongation ideal differs: {:?}", tau.variety.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>());
    if d.field().vars().is_empty() {
        return Ok(());
    }
    let f = d.field();
    for _ in 0..100 {
        // a = (u, u^2) lies on X for any u
        let mut u = random_poly(rng, f, 3);
        if rng.gen_bool(0.5) {
            let shift = RatFun::from_i64(f, rng.gen_range(1..9));
            u = u.add(&RatFun::one(f).checked_div(&RatFun::var(f, 0).add(&shift)).unwrap());
        }
        let point = [u.clone(), u.mul(&u)];
        let nab = ok(d.nabla(&point))?;
        ensure!(nab[..2] == point, "π̂_0 ∘ ∇ is not the identity");
        for g in tau.variety.gens() {
            ensure!(g.eval(&nab).is_zero(), "{g} does not vanish at ∇({u}, ...)");
        }
    }
    Ok(())
}

fn criterion_3() -> Check {
    let b = q();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let dual = ["y_0 - x_0^2", "y_1 - 2*x_0*x_1"];
    let pair = ["y_0 - x_0^2", "y_1 - x_1^2"];
    prolongation_case(&ok(prime_dring(Arc::new(catalog::dual(&b))))?, &dual, &mut rng)?;
    prolongation_case(&ok(prime_dring(Arc::new(catalog::pair(&b))))?, &pair, &mut rng)?;
    prolongation_case(&ok(parse_dring(Arc::new(catalog::dual(&b)), &["t"], &[vec!["t", "1"]]))?, &dual, &mut rng)?;
    prolongation_case(&ok(parse_dring(Arc::new(catalog::pair(&b)), &["t"], &[vec!["t", "t^2 + 1"]]))?, &pair, &mut rng)
}

// 4 ----------------------------------------------------------------------

fn verdicts(y_vars: &[&str], y_gens: &[&str], x_vars: &[&str], x_gens: &[&str], alg: AlgebraScheme) -> std::result::Result<Vec<bool>, String> {
    let d = ok(prime_dring(Arc::new(alg)))?;
    let dec = ok(local_decomposition(d.algebra()))?;
    let x = ok(Variety::parse(d.field(), x_vars, x_gens, true))?;
    let y = ok(Variety::parse(d.field(), y_vars, y_gens, true))?;
    Ok(ok(dominance_check(&y, &x, &d, &dec))?.iter().map(|v| v.dense).collect())
}

fn criterion_4() -> Check {
    let b = q();
    let v = verdicts(&["y_0", "y_1"], &["y_1 - y_0^2"], &["y"], &[], catalog::pair(&b))?;
    ensure!(v == [true, true], "squaring graph: {v:?}");
    let v = verdicts(&["y_0", "y_1"], &["y_1"], &["y"], &[], catalog::pair(&b))?;
    ensure!(v == [true, false], "y_1 = 0: {v:?}");
    let full = ["y_0 - x_0^2", "y_1 - x_1^2"];
    let v = verdicts(&["x_0", "y_0", "x_1", "y_1"], &full, &["x", "y"], &["y - x^2"], catalog::pair(&b))?;
    ensure!(v == [true, true], "full prolongation (pair): {v:?}");
    let full = ["y_0 - x_0^2", "y_1 - 2*x_0*x_1"];
    let v = verdicts(&["x_0", "y_0", "x_1", "y_1"], &full, &["x", "y"], &["y - x^2"], catalog::dual(&b))?;
    ensure!(v == [true], "full prolongation (dual): {v:?}");
    Ok(())
}

// 5 ----------------------------------------------------------------------

fn iterativity_algebras() -> Vec<AlgebraScheme> {
    let (q, f2) = (q(), f2());
    vec![
        catalog::dual(&q),
        catalog::truncated(&q, 2),
        catalog::pair(&q),
        catalog::twisted(&q, s(&q, 2)),
        catalog::endo_derivation(&q),
        catalog::sqrt2_product(&q),
        catalog::dual(&f2),
        catalog::truncated(&f2, 2),
        catalog::pair(&f2),
        catalog::twisted(&f2, s(&f2, 1)),
        catalog::endo_derivation(&f2),
    ]
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pairs: Vec<(usize, usize)> = (0..=4).flat_map(|k| (0..=k).map(move |m| (m, k - m))).collect();
    for alg in iterativity_algebras() {
        let alg = Arc::new(alg);
        let f = field(alg.base(), &["x"]);
        let d = random_dring(&mut rng, &alg, &f, 2);
        let tower = ok(iteration_tower(&alg, 4))?;
        let x = RatFun::var(&f, 0);
        let mut gens_en: Vec<Option<AlgebraElement<RatFun>>> = vec![None; 5];
        for trial in 0..100 {
            let (m, n) = pairs[trial % pairs.len()];
            let sample = random_poly(&mut rng, &f, 3);
            let rep = ok(check_iterativity(&d, &tower, m, n, std::slice::from_ref(&sample)))?;
            ensure!(rep.passed(), "{} over {}: {}", alg.labels().join(","), alg.base(), rep.violations.join("; "));
            // oracle: E_N is a ring map, so E_N(f) = f(E_N(x)) in 𝒟_N
            let top = m + n;
            let it = &tower[top];
            let ex = match &gens_en[top] {
                Some(e) => e.clone(),
                None => {
                    let e = ok(en(&d, it, &x))?;
                    gens_en[top] = Some(e.clone());
                    e
                }
            };
            let num = sample.numer();
            let via_hom = num
                .eval_with(
                    &AlgebraElement::one(&it.dn, &f),
                    std::slice::from_ref(&ex),
                    |c| AlgebraElement::from_base(&it.dn, &RatFun::constant(&f, c.clone())),
                    |a, b| a.add(b).unwrap(),
                    |a, b| a.mul(b).unwrap(),
                )
                .unwrap_or_else(|| AlgebraElement::zero(&it.dn, &f));
            let direct = ok(en_expand(&d, &sample, &it.words))?;
            ensure!(via_hom.coords() == &direct[..], "E_{top} is not multiplicative on {sample}");
        }
    }
    Ok(())
}

// 6 ----------------------------------------------------------------------

fn criterion_6() -> Check {
    let b = f2();
    let alg = Arc::new(catalog::truncated(&b, 3));
    let eps = vec![s(&b, 0), s(&b, 1), s(&b, 0), s(&b, 0)];
    for m in [2usize, 3] {
        let rep = ok(charp_demo(&alg, &eps, m))?;
        ensure!(rep.eta == vec![s(&b, 0), s(&b, 0), s(&b, 0), s(&b, 1)], "η = {:?}", rep.eta);
        ensure!(rep.residuals_vanish(), "closed form residual nonzero for m = {m}");
        let want: Vec<bool> = (0..=m).map(|n| n < m).collect();
        ensure!(rep.pattern() == want, "m = {m}: pattern {:?}", rep.pattern());
        // oracle: Gaussian elimination against the p-th powers of the basis
        let tower = ok(iteration_tower(&alg, m))?;
        for (lvl, it) in rep.levels.iter().zip(&tower) {
            let f = lvl.en[0].field().clone();
            let cols: Vec<Vec<RatFun>> = ok(frobenius_span(&it.dn))?
                .into_iter()
                .map(|c| c.into_iter().map(|x| RatFun::constant(&f, x)).collect())
                .collect();
            ensure!(in_column_span(&cols, &lvl.en) == (lvl.n < m), "oracle disagrees at m = {m}, n = {}", lvl.n);
        }
    }
    Ok(())
}

// 7 ----------------------------------------------------------------------

struct Structure {
    d: DRing,
    /// Builds a random constant of the structure.
    constant: fn(&mut ChaCha8Rng, &DRing) -> RatFun,
}

fn poly_in(rng: &mut ChaCha8Rng, d: &DRing, basis: &[RatFun]) -> RatFun {
    let f = d.field();
    let mut acc = RatFun::from_i64(f, rng.gen_range(-3..=3));
    for _ in 0..3 {
        let mut t = RatFun::from_i64(f, rng.gen_range(-3..=3));
        for _ in 0..rng.gen_range(1..=2) {
            t = t.mul(&basis[rng.gen_range(0..basis.len())]);
        }
        acc = acc.add(&t);
    }
    acc
}

fn structures() -> Vec<Structure> {
    let (q, f2) = (q(), f2());
    let y_only: fn(&mut ChaCha8Rng, &DRing) -> RatFun = |rng, d| poly_in(rng, d, &[RatFun::var(d.field(), 1)]);
    vec![
        Structure { d: parse_dring(Arc::new(catalog::dual(&q)), &["x", "y"], &[vec!["x", "1"], vec!["y", "0"]]).unwrap(), constant: y_only },
        Structure {
            d: parse_dring(Arc::new(catalog::pair(&q)), &["x", "y"], &[vec!["x", "y"], vec!["y", "x"]]).unwrap(),
            constant: |rng, d| {
                let f = d.field();
                let (x, y) = (RatFun::var(f, 0), RatFun::var(f, 1));
                poly_in(rng, d, &[x.add(&y), x.mul(&y)])
            },
        },
        Structure {
            d: parse_dring(Arc::new(catalog::endo_derivation(&q)), &["x", "y"], &[vec!["x", "x", "1"], vec!["y", "y", "0"]]).unwrap(),
            constant: y_only,
        },
        Structure {
            d: parse_dring(Arc::new(catalog::truncated(&f2, 2)), &["x", "y"], &[vec!["x", "1", "0"], vec!["y", "0", "0"]]).unwrap(),
            constant: y_only,
        },
    ]
}

fn criterion_7() -> Check {
    let seed = 7_2024u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let structs = structures();
    let towers: Vec<_> = structs.iter().map(|st| iteration_tower(st.d.algebra(), 3).unwrap()).collect();
    for trial in 0..500 {
        let which = trial % structs.len();
        let (st, tower) = (&structs[which], &towers[which]);
        let d = &st.d;
        let f = d.field();
        let a = random_poly(&mut rng, f, 3);
        let mut b = random_poly(&mut rng, f, 3);
        if trial % 3 == 0 {
            let den = RatFun::var(f, 0).add(&RatFun::from_i64(f, rng.gen_range(1..5)));
            b = b.checked_div(&den).unwrap();
        }
        let (ea, eb) = (ok(d.apply_e(&a))?, ok(d.apply_e(&b))?);
        ensure!(ok(d.apply_e(&a.mul(&b)))? == ok(ea.mul(&eb))?, "trial {trial} (seed {seed}): e(ab) ≠ e(a)e(b)");
        ensure!(ok(d.apply_e(&a.add(&b)))? == ok(ea.add(&eb))?, "trial {trial} (seed {seed}): e(a+b) ≠ e(a)+e(b)");
        ensure!(ea.project() == a && eb.project() == b, "trial {trial} (seed {seed}): π∘e ≠ id");
        let (c1, c2) = ((st.constant)(&mut rng, d), (st.constant)(&mut rng, d));
        ensure!(ok(d.is_constant(&c1))? && ok(d.is_constant(&c2))?, "trial {trial}: generated constant is not constant");
        ensure!(ok(d.is_constant(&c1.add(&c2)))? && ok(d.is_constant(&c1.mul(&c2)))?, "trial {trial}: constants not closed");
        let it = &tower[trial % tower.len()];
        ensure!(ok(en(d, it, &c1))? == AlgebraElement::from_base(&it.dn, &c1), "trial {trial}: E_n(c) ≠ s_n(c)");
    }
    Ok(())
}

// 8 ----------------------------------------------------------------------

fn hensel_case(alg: AlgebraScheme, poly: &[Vec<i64>], start: &[i64], want: &[Scalar]) -> Check {
    let b = alg.base().clone();
    let alg = Arc::new(alg);
    let el = |v: &[Scalar]| AlgebraElement::new(&alg, v.to_vec()).unwrap();
    let ints = |v: &[i64]| v.iter().map(|n| s(&b, *n)).collect::<Vec<_>>();
    let coeffs: Vec<AlgebraElement<Scalar>> = poly.iter().map(|c| el(&ints(c))).collect();
    let eval = |x: &AlgebraElement<Scalar>| {
        let mut acc = AlgebraElement::zero(&alg, &b);
        for c in coeffs.iter().rev() {
            acc = acc.mul(x).unwrap().add(c).unwrap();
        }
        acc
    };
    let root = ok(hensel_lift(&coeffs, &el(&ints(start))))?;
    ensure!(root.coords() == want, "lift {root} instead of {:?}", want);
    ensure!(eval(&root).is_zero(), "P(b) ≠ 0");
    for n in nilradical(&alg) {
        ensure!(!eval(&root.add(&el(&n)).unwrap()).is_zero(), "perturbed root still a root");
    }
    Ok(())
}

fn criterion_8() -> Check {
    let b = q();
    let r = |t: &str| Scalar::parse(&b, t).unwrap();
    // x^2 - (1 + 2η) from 1
    hensel_case(catalog::dual(&b), &[vec![-1, -2], vec![0, 0], vec![1, 0]], &[1, 0], &[r("1"), r("1")])?;
    // x^2 - x from each residue idempotent
    hensel_case(catalog::dual(&b), &[vec![0, 0], vec![-1, 0], vec![1, 0]], &[1, 0], &[r("1"), r("0")])?;
    hensel_case(catalog::dual(&b), &[vec![0, 0], vec![-1, 0], vec![1, 0]], &[0, 0], &[r("0"), r("0")])?;
    // x^2 - (4 + η) from 2
    hensel_case(
        catalog::truncated(&b, 2),
        &[vec![-4, -1, 0], vec![0, 0, 0], vec![1, 0, 0]],
        &[2, 0, 0],
        &[r("2"), r("1/4"), r("-1/64")],
    )
}

// 9 ----------------------------------------------------------------------

fn criterion_9() -> Check {
    let b = q();
    let d = ok(parse_dring(Arc::new(catalog::dual(&b)), &["x"], &[vec!["x", "1"]]))?;
    let seq = ok(dim_sequence(&d, &[ok(d.parse("x"))?], 4))?;
    ensure!(seq == [1, 1, 1, 1, 1], "d/dx: {seq:?}");
    let d = ok(parse_dring(Arc::new(catalog::pair(&b)), &["x"], &[vec!["x", "x^2"]]))?;
    let seq = ok(dim_sequence(&d, &[ok(d.parse("x"))?], 4))?;
    ensure!(seq == [1, 1, 1, 1, 1], "σ(x) = x^2: {seq:?}");
    let d = ok(parse_dring(Arc::new(catalog::dual(&b)), &["x1", "x2"], &[vec!["x1", "x2"], vec!["x2", "x1"]]))?;
    let seq = ok(dim_sequence(&d, &[ok(d.parse("x1"))?], 4))?;
    ensure!(seq == [1, 2, 2, 2, 2], "free e(x1) = (x1, x2): {seq:?}");

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let algs = [catalog::dual(&b), catalog::pair(&b), catalog::truncated(&b, 2), catalog::endo_derivation(&b)];
    for trial in 0..50 {
        let alg = Arc::new(algs[trial % algs.len()].clone());
        let f = field(&b, &["x1", "x2", "x3"]);
        let d = random_dring(&mut rng, &alg, &f, 2);
        let a = [random_poly(&mut rng, &f, 2)];
        let r_max = if alg.rank() == 2 { 4 } else { 2 };
        let seq = ok(dim_sequence(&d, &a, r_max))?;
        let mut words = 0;
        for (r, w) in seq.windows(2).enumerate() {
            ensure!(w[0] <= w[1], "trial {trial}: not monotone {seq:?}");
            words += (alg.rank() - 1).pow(r as u32);
            ensure!(w[0] <= words.min(3), "trial {trial}: rank exceeds bound {seq:?}");
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check, u64); 9] = [
        ("leibniz catalog", criterion_1, 1),
        ("ex 4.2 decomposition and splitting", criterion_2, 1),
        ("prolongation golden ideals and ∇", criterion_3, 5),
        ("dominance verdicts", criterion_4, 10),
        ("iterativity suite", criterion_5, 60),
        ("characteristic p demo", criterion_6, 30),
        ("homomorphism and constants", criterion_7, 30),
        ("hensel lifting", criterion_8, 1),
        ("dim sequences", criterion_9, 30),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let res = match res {
            Ok(()) if took > Duration::from_secs(*limit) => Err(format!("took {took:.2?}, limit {limit} s")),
            r => r,
        };
        match res {
            Ok(()) => println!("criterion {}: PASS  {name} ({took:.2?}, limit {limit} s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({took:.2?}): {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
