mod common;

use std::sync::Arc;

use common::*;
use dring_core::catalog;
use dring_core::decomposition::{associated_operators, local_decomposition, splitting_endomorphisms};
use dring_core::dring::{parse_dring, prime_dring};
use dring_core::prolongation::*;
use exactpoly::{parse_poly_over, Coeff, Ideal, PolyCtx, RatFun, Scalar};

fn ideal(ctx: &PolyCtx<RatFun>, gens: &[&str]) -> Ideal<RatFun> {
    Ideal::new(ctx, gens.iter().map(|g| parse_poly_over(g, ctx).unwrap()).collect())
}

#[test]
fn jets_at_the_origin_of_a_parabola() {
    let d = prime_dring(Arc::new(catalog::dual(&q()))).unwrap();
    let x = Variety::parse(d.field(), &["x", "y"], &["y - x^2"], true).unwrap();
    let zero = RatFun::zero(d.field());
    let j = jet_ideal(&x, &[zero.clone(), zero], 2).unwrap();
    let names: Vec<&str> = j.ideal.ctx().vars.iter().map(String::as_str).collect();
    assert_eq!(names, ["v_x", "v_y", "v_x_x", "v_x_y", "v_y_y"]);
    // y - x^2 itself, times x, times y
    let want = ideal(j.ideal.ctx(), &["v_y - v_x_x", "v_x_y", "v_y_y"]);
    assert!(j.ideal.same_ideal(&want).unwrap());
}

#[test]
fn jets_of_affine_space_are_free() {
    let d = prime_dring(Arc::new(catalog::dual(&q()))).unwrap();
    let x = Variety::parse(d.field(), &["x", "y"], &[], true).unwrap();
    let p = [RatFun::from_i64(d.field(), 3), RatFun::from_i64(d.field(), -1)];
    assert!(jet_ideal(&x, &p, 3).unwrap().ideal.gens().is_empty());
}

#[test]
fn first_order_jets_are_the_tangent_space() {
    let d = prime_dring(Arc::new(catalog::dual(&q()))).unwrap();
    let x = Variety::parse(d.field(), &["x", "y", "z"], &["x^2 + y^2 - z^2", "z - 5"], true).unwrap();
    let p: Vec<RatFun> = [3, 4, 5].iter().map(|n| RatFun::from_i64(d.field(), *n)).collect();
    let j = jet_ideal(&x, &p, 1).unwrap();
    // gradient rows (6, 8, -10) and (0, 0, 1)
    let want = ideal(j.ideal.ctx(), &["6*v_x + 8*v_y - 10*v_z", "v_z"]);
    assert!(j.ideal.same_ideal(&want).unwrap());
    let off = [RatFun::from_i64(d.field(), 1), p[1].clone(), p[2].clone()];
    assert!(jet_ideal(&x, &off, 1).is_err());
}

#[test]
fn twisting_by_conjugation() {
    let k = sqrt2_field();
    let d = prime_dring(Arc::new(catalog::pair(&k))).unwrap();
    let r = d.parse("r").unwrap();
    let d = d.with_base_image(vec![r.clone(), r.neg()]).unwrap();
    let dec = local_decomposition(d.algebra()).unwrap();
    let x = Variety::parse(d.field(), &["x", "y"], &["y - r*x"], true).unwrap();
    let tw = twist(&x, &d, &dec, 1).unwrap();
    assert_eq!(tw.gens()[0], x.parse_poly("y + r*x").unwrap());
    let same = twist(&x, &d, &dec, 0).unwrap();
    assert_eq!(same.gens(), x.gens());
    // rational coefficients are fixed by every σ
    let x = Variety::parse(d.field(), &["x", "y"], &["y - 3*x^2"], true).unwrap();
    assert_eq!(twist(&x, &d, &dec, 1).unwrap().gens(), x.gens());
}

#[test]
fn pi_hat_forms() {
    let b = q();
    let dec = local_decomposition(&catalog::dual(&b)).unwrap();
    assert_eq!(pi_hat_row(&dec, 0).unwrap(), vec![s(&b, 1), s(&b, 0)]);
    let dec = local_decomposition(&catalog::pair(&b)).unwrap();
    assert_eq!(pi_hat_row(&dec, 1).unwrap(), vec![s(&b, 0), s(&b, 1)]);

    // the split factor of the √2 algebra over Q(√2)
    let dec = local_decomposition(&catalog::sqrt2_product(&b)).unwrap();
    assert!(pi_hat_row(&dec, 1).is_err());
    let k = sqrt2_field();
    let r = Scalar::parse(&k, "0").unwrap().add(&exactpoly::parse_scalar("r", &k).unwrap());
    let rows = splitting_endomorphisms(&associated_operators(&dec), &dec, 1, &[r.clone(), r.neg()]).unwrap();
    let d = prime_dring(Arc::new(catalog::sqrt2_product(&k))).unwrap();
    let pctx = PolyCtx::new(d.field().clone(), prolonged_vars(&["x".to_string()], 3));
    let img = pi_hat_apply(&rows[0], 1, &pctx);
    assert_eq!(img[0], parse_poly_over("x_1 + r*x_2", &pctx).unwrap());
}

#[test]
fn prolongation_respects_fibred_products() {
    // dual ×_S pair: one derivation and one endomorphism
    let b = q();
    let fib = catalog::dual(&b).fibred_product(&catalog::pair(&b)).unwrap();
    let d = prime_dring(Arc::new(fib)).unwrap();
    let x = Variety::parse(d.field(), &["x", "y"], &["y - x^2"], true).unwrap();
    let tau = prolong(&x, &d).unwrap();
    let want = ideal(&tau.variety.ctx, &["y_0 - x_0^2", "y_1 - 2*x_0*x_1", "y_2 - x_2^2"]);
    assert!(tau.variety.ideal.same_ideal(&want).unwrap());
}

#[test]
fn prolongation_of_a_curve_with_function_coefficients() {
    // coefficients move under e: V(y - t x) under d/dt
    let d = parse_dring(Arc::new(catalog::dual(&q())), &["t"], &[vec!["t", "1"]]).unwrap();
    let x = Variety::parse(d.field(), &["x", "y"], &["y - t*x"], true).unwrap();
    let tau = prolong(&x, &d).unwrap();
    let want = ideal(&tau.variety.ctx, &["y_0 - t*x_0", "y_1 - t*x_1 - x_0"]);
    assert!(tau.variety.ideal.same_ideal(&want).unwrap());
    let u = d.parse("t^3 + 1/t").unwrap();
    let nab = d.nabla(&[u.clone(), d.parse("t").unwrap().mul(&u)]).unwrap();
    for g in tau.variety.gens() {
        assert!(g.eval(&nab).is_zero());
    }
}

#[test]
fn containment_is_checked() {
    let d = prime_dring(Arc::new(catalog::pair(&q()))).unwrap();
    let dec = local_decomposition(d.algebra()).unwrap();
    let x = Variety::parse(d.field(), &["x", "y"], &["y - x^2"], true).unwrap();
    let y = Variety::parse(d.field(), &["x_0", "y_0", "x_1", "y_1"], &["y_0 - x_0^2"], true).unwrap();
    assert!(dominance_check(&y, &x, &d, &dec).is_err());
}

#[test]
fn unasserted_primality_uses_the_radical() {
    let d = prime_dring(Arc::new(catalog::pair(&q()))).unwrap();
    let dec = local_decomposition(d.algebra()).unwrap();
    let x = Variety::parse(d.field(), &["y"], &["y^2"], false).unwrap();
    let y = Variety::parse(d.field(), &["y_0", "y_1"], &["y_0", "y_1"], false).unwrap();
    let v = dominance_check(&y, &x, &d, &dec).unwrap();
    assert!(v.iter().all(|v| v.dense && v.up_to_radical));
}

#[test]
fn theta_words_extend_xi_words() {
    let theta = enumerate_words(2, &theta_alphabet(3, 2));
    // alphabet ∂1, ∂2, σ1⁻¹
    assert_eq!(theta.len(), 1 + 3 + 9);
    assert_eq!(format_word(&theta[3]), "σ1⁻¹");
    let d = prime_dring(Arc::new(catalog::pair(&q()))).unwrap();
    assert!(evaluate_word(&d, &theta[3], &d.parse("2").unwrap()).is_err());
}
