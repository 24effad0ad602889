mod common;

use std::sync::Arc;

use common::*;
use dring_core::catalog;
use dring_core::decomposition::local_decomposition;
use dring_core::iteration::*;
use dring_core::{AlgebraScheme, DError};
use exactpoly::{BaseField, Coeff, RatFun, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn unit_vec(b: &BaseField, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![s(b, 0); n];
    v[i] = s(b, 1);
    v
}

fn digits(mut t: usize, l: usize, n: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let d = t % l;
            t /= l;
            d
        })
        .collect()
}

/// Product of two basis tuples computed position by position from the
/// base structure constants.
fn tuple_product(base: &AlgebraScheme, n: usize, t: usize, u: usize) -> Vec<Scalar> {
    let b = base.base();
    let l = base.rank();
    let (a, c) = (digits(t, l, n), digits(u, l, n));
    let mut acc: Vec<(usize, Scalar)> = vec![(0, s(b, 1))];
    let mut stride = 1;
    for k in 0..n {
        let mut next = Vec::new();
        for (idx, coef) in &acc {
            for m in 0..l {
                let sc = base.structure_constant(a[k], c[k], m);
                if !sc.is_zero() {
                    next.push((idx + m * stride, coef.mul(&sc)));
                }
            }
        }
        acc = next;
        stride *= l;
    }
    let mut out = vec![s(b, 0); l.pow(n as u32)];
    for (idx, c) in acc {
        out[idx] = out[idx].add(&c);
    }
    out
}

#[test]
fn full_algebra_is_the_tensor_power() {
    for base in [catalog::dual(&q()), catalog::pair(&q()), catalog::twisted(&q(), s(&q(), 3)), catalog::endo_derivation(&f2())] {
        let base = Arc::new(base);
        let b = base.base().clone();
        for it in iteration_tower(&base, 3).unwrap() {
            let r = it.full.rank();
            for t in 0..r {
                for u in 0..r {
                    let got = it.full.mul_coords(&unit_vec(&b, r, t), &unit_vec(&b, r, u), &b);
                    assert_eq!(got, tuple_product(&base, it.n, t, u));
                }
            }
        }
    }
}

#[test]
fn level_zero_is_the_base_ring() {
    let it = iterate_algebra(&Arc::new(catalog::truncated(&q(), 3)), 0).unwrap();
    assert_eq!(it.dn_rank(), 1);
    assert_eq!(it.words, vec![Vec::<usize>::new()]);
    assert_eq!(it.dn.unit(), &[s(&q(), 1)]);
}

#[test]
fn iterated_dual_numbers_are_truncated() {
    // ε_(1) ↦ η, ε_(1,1) ↦ η^2 / 2
    let b = q();
    let it = iterate_algebra(&Arc::new(catalog::dual(&b)), 2).unwrap();
    let tr = catalog::truncated(&b, 2);
    let e1 = it.word_index(&[1]).unwrap();
    let e11 = it.word_index(&[1, 1]).unwrap();
    let phi = |v: &[Scalar]| {
        let mut out = vec![s(&b, 0); 3];
        out[0] = v[0].clone();
        out[e1] = v[1].clone();
        out[e11] = v[2].mul(&s(&b, 2));
        out
    };
    for i in 0..3 {
        for j in 0..3 {
            let (x, y) = (unit_vec(&b, 3, i), unit_vec(&b, 3, j));
            assert_eq!(phi(&tr.mul_coords(&x, &y, &b)), it.dn.mul_coords(&phi(&x), &phi(&y), &b));
        }
    }
}

#[test]
fn iterated_pair_is_split() {
    let it = iterate_algebra(&Arc::new(catalog::pair(&q())), 2).unwrap();
    assert_eq!(it.dn_rank(), 3);
    let dec = local_decomposition(&it.dn).unwrap();
    assert_eq!(dec.factors.len(), 3);
    assert!(dec.factors.iter().all(|f| f.degree() == 1 && f.nil_rank == 0));
}

#[test]
fn truncations_are_ring_maps() {
    for base in [catalog::truncated(&q(), 2), catalog::endo_derivation(&q()), catalog::twisted(&f2(), s(&f2(), 1))] {
        let base = Arc::new(base);
        let b = base.base().clone();
        let tower = iteration_tower(&base, 3).unwrap();
        for k in 1..tower.len() {
            let (hi, lo) = (&tower[k], &tower[k - 1]);
            let f = |v: &[Scalar]| -> Vec<Scalar> {
                hi.truncation.iter().map(|row| row.iter().zip(v).fold(s(&b, 0), |a, (x, y)| a.add(&x.mul(y)))).collect()
            };
            assert_eq!(f(hi.dn.unit()), lo.dn.unit());
            let r = hi.dn_rank();
            for i in 0..r {
                for j in 0..r {
                    let (x, y) = (unit_vec(&b, r, i), unit_vec(&b, r, j));
                    assert_eq!(f(&hi.dn.mul_coords(&x, &y, &b)), lo.dn.mul_coords(&f(&x), &f(&y), &b));
                }
            }
        }
    }
}

#[test]
fn class_sums_split_across_positions() {
    // ε_w = Σ_{uv = w} ε_u ⊗ ε_v with the inner n positions first
    let base = Arc::new(catalog::endo_derivation(&q()));
    let b = q();
    let tower = iteration_tower(&base, 3).unwrap();
    for (m, n) in [(1, 1), (1, 2), (2, 1)] {
        let (inner, outer, big) = (&tower[n], &tower[m], &tower[m + n]);
        for (wi, w) in big.words.iter().enumerate() {
            let lhs = big.embed(&unit_vec(&b, big.dn_rank(), wi));
            let mut rhs = vec![s(&b, 0); big.full.rank()];
            for (vi, v) in outer.words.iter().enumerate() {
                for (ui, u) in inner.words.iter().enumerate() {
                    if [u.as_slice(), v.as_slice()].concat() != *w {
                        continue;
                    }
                    let ev = outer.embed(&unit_vec(&b, outer.dn_rank(), vi));
                    let eu = inner.embed(&unit_vec(&b, inner.dn_rank(), ui));
                    for (t, x) in ev.iter().enumerate() {
                        for (s_, y) in eu.iter().enumerate() {
                            let idx = s_ + t * inner.full.rank();
                            rhs[idx] = rhs[idx].add(&x.mul(y));
                        }
                    }
                }
            }
            assert_eq!(lhs, rhs, "{w:?}");
        }
    }
}

#[test]
fn en_matches_repeated_operators() {
    let alg = Arc::new(catalog::truncated(&q(), 2));
    let d = dring_core::dring::parse_dring(alg.clone(), &["x"], &[vec!["x", "x^2", "1"]]).unwrap();
    let it = iterate_algebra(&alg, 2).unwrap();
    let f = d.parse("x^3").unwrap();
    let e = en(&d, &it, &f).unwrap();
    let i21 = it.word_index(&[2, 1]).unwrap();
    // ∂2(∂1(x^3)) with ∂1(x^3) = 3x^4
    let inner = d.apply_operator(1, &f).unwrap();
    assert_eq!(inner, d.parse("3*x^4").unwrap());
    assert_eq!(e.coords()[i21], d.apply_operator(2, &inner).unwrap());
}

#[test]
fn iterativity_of_random_structures() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let alg = Arc::new(catalog::endo_derivation(&q()));
    let f = field(&q(), &["x"]);
    let d = random_dring(&mut rng, &alg, &f, 2);
    let tower = iteration_tower(&alg, 3).unwrap();
    let samples: Vec<RatFun> = (0..3).map(|_| random_poly(&mut rng, &f, 2)).collect();
    let rep = check_iterativity(&d, &tower, 1, 2, &samples).unwrap();
    assert!(rep.passed(), "{:?}", rep.violations);
    assert!(rep.checked > 0);
    assert!(check_iterativity(&d, &tower[..2], 1, 2, &samples).is_err());
}

#[test]
fn frobenius_is_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (p, alg) in [(2, catalog::truncated(&f2(), 3)), (3, catalog::truncated(&BaseField::Prime(3), 4))] {
        let b = alg.base().clone();
        let pw = |v: &[Scalar]| {
            let mut acc = alg.unit().to_vec();
            for _ in 0..p {
                acc = alg.mul_coords(&acc, v, &b);
            }
            acc
        };
        for _ in 0..20 {
            let x: Vec<Scalar> = (0..alg.rank()).map(|_| s(&b, rand::Rng::gen_range(&mut rng, 0..p as i64))).collect();
            let y: Vec<Scalar> = (0..alg.rank()).map(|_| s(&b, rand::Rng::gen_range(&mut rng, 0..p as i64))).collect();
            let sum: Vec<Scalar> = x.iter().zip(&y).map(|(a, c)| a.add(c)).collect();
            let rhs: Vec<Scalar> = pw(&x).iter().zip(pw(&y)).map(|(a, c)| a.add(&c)).collect();
            assert_eq!(pw(&sum), rhs);
        }
    }
}

#[test]
fn images_of_pth_powers_are_pth_powers() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let b = BaseField::Prime(3);
    let alg = Arc::new(catalog::truncated(&b, 4));
    let f = field(&b, &["x", "y"]);
    let d = random_dring(&mut rng, &alg, &f, 2);
    let span = frobenius_span(&alg).unwrap();
    let cols: Vec<Vec<RatFun>> = span.iter().map(|c| c.iter().map(|x| RatFun::constant(&f, x.clone())).collect()).collect();
    for _ in 0..5 {
        let a = random_poly(&mut rng, &f, 2);
        let a3 = a.mul(&a).mul(&a);
        let img = d.apply_e(&a3).unwrap();
        assert!(in_column_span(&cols, img.coords()));
        assert!(pth_power_membership(img.coords(), &alg).unwrap());
    }
    // x itself is moved by the nilpotent part unless that is a cube
    let x = RatFun::var(&f, 0);
    let img = d.apply_e(&x).unwrap();
    assert_eq!(in_column_span(&cols, img.coords()), pth_power_membership(img.coords(), &alg).unwrap());
}

#[test]
fn charp_demo_in_characteristic_three() {
    let b = BaseField::Prime(3);
    let alg = Arc::new(catalog::truncated(&b, 5));
    let eps = unit_vec(&b, 6, 1);
    let rep = charp_demo(&alg, &eps, 2).unwrap();
    assert!(rep.residuals_vanish());
    assert_eq!(rep.pattern(), vec![true, true, false]);
    // η is outside the cubes, which span 1 and η^3
    assert_eq!(rep.eta, unit_vec(&b, 6, 5));
}

#[test]
fn charp_demo_hypotheses() {
    let b = BaseField::Prime(3);
    let alg = Arc::new(catalog::truncated(&b, 2));
    let eta = unit_vec(&b, 3, 1);
    assert!(matches!(charp_demo(&alg, &eta, 2), Err(DError::Hypothesis(_))));
    let alg = Arc::new(catalog::pair(&b));
    assert!(matches!(charp_demo(&alg, &unit_vec(&b, 2, 1), 2), Err(DError::Hypothesis(_))));
    let alg = Arc::new(catalog::dual(&q()));
    assert!(charp_demo(&alg, &unit_vec(&q(), 2, 1), 2).is_err());
}

#[test]
fn rank_cap_is_enforced() {
    let alg = Arc::new(catalog::double_dual(&q()));
    assert!(matches!(iteration_tower(&alg, 7), Err(DError::RankBudget { .. })));
    let lit = Arc::new(catalog::endo_derivation_literal(&q()));
    assert!(matches!(iteration_tower(&lit, 1), Err(DError::NotNormalized)));
}
