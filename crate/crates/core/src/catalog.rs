//! The standard algebras: dual numbers, truncated polynomial algebras,
//! the pair algebra, the twisted algebra with parameter `c`, and the
//! worked examples built from them.

use exactpoly::{BaseField, Scalar};

use crate::algebra::AlgebraScheme;

fn s(base: &BaseField, n: i64) -> Scalar {
    Scalar::from_int(base, n)
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|n| n.to_string()).collect()
}

pub fn trivial(base: &BaseField) -> AlgebraScheme {
    AlgebraScheme::trivial(base)
}

/// `R[η]/(η^2)` with basis `(1, η)`.
pub fn dual(base: &BaseField) -> AlgebraScheme {
    truncated(base, 1)
}

/// `R[η]/(η^{n+1})` with basis `(1, η, ..., η^n)`.
pub fn truncated(base: &BaseField, n: usize) -> AlgebraScheme {
    let mut triples = Vec::new();
    for i in 0..=n {
        for j in i..=n {
            if i + j <= n {
                triples.push((i, j, i + j, s(base, 1)));
            }
        }
    }
    let names: Vec<String> = (0..=n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "η".to_string(),
            _ => format!("η^{i}"),
        })
        .collect();
    let mut unit = vec![s(base, 0); n + 1];
    unit[0] = s(base, 1);
    AlgebraScheme::new(base.clone(), names, &triples, unit, None).unwrap()
}

/// `R × R` with the standard basis; `π` is the first coordinate.
pub fn pair(base: &BaseField) -> AlgebraScheme {
    let triples = vec![(0, 0, 0, s(base, 1)), (1, 1, 1, s(base, 1))];
    AlgebraScheme::new(base.clone(), labels(&["(1,0)", "(0,1)"]), &triples, vec![s(base, 1), s(base, 1)], None)
        .unwrap()
}

/// `R^2` with `(x1,y1)(x2,y2) = (x1 x2, x1 y2 + y1 x2 + y1 y2 c)`.
pub fn twisted(base: &BaseField, c: Scalar) -> AlgebraScheme {
    let mut triples = vec![(0, 0, 0, s(base, 1)), (0, 1, 1, s(base, 1))];
    if !c.is_zero() {
        triples.push((1, 1, 1, c));
    }
    AlgebraScheme::new(base.clone(), labels(&["1", "ε"]), &triples, vec![s(base, 1), s(base, 0)], None).unwrap()
}

/// `R × R[η]/(η^2)` in the normalized basis `(1,0), (0,1), (0,η)`: an
/// endomorphism `∂1` and a `∂1`-twisted derivation `∂2`.
pub fn endo_derivation(base: &BaseField) -> AlgebraScheme {
    let triples = vec![(0, 0, 0, s(base, 1)), (1, 1, 1, s(base, 1)), (1, 2, 2, s(base, 1))];
    AlgebraScheme::new(
        base.clone(),
        labels(&["(1,0)", "(0,1)", "(0,η)"]),
        &triples,
        vec![s(base, 1), s(base, 1), s(base, 0)],
        None,
    )
    .unwrap()
}

/// The same algebra in the basis `u0 = (1,0), u1 = (0,1), u2 = (1,η)`,
/// with `π` the first factor. Here `π(u2) = 1`, so this basis is not
/// normalized; [`AlgebraScheme::normalize_basis`] recovers
/// [`endo_derivation`].
pub fn endo_derivation_literal(base: &BaseField) -> AlgebraScheme {
    // u0 u2 = (1,0); u1 u2 = (0,η) = u2 - u0; u2^2 = (1,0) = u0
    let triples = vec![
        (0, 0, 0, s(base, 1)),
        (0, 2, 0, s(base, 1)),
        (1, 1, 1, s(base, 1)),
        (1, 2, 2, s(base, 1)),
        (1, 2, 0, s(base, -1)),
        (2, 2, 0, s(base, 1)),
    ];
    AlgebraScheme::new(
        base.clone(),
        labels(&["(1,0)", "(0,1)", "(1,η)"]),
        &triples,
        vec![s(base, 1), s(base, 1), s(base, 0)],
        Some(vec![s(base, 1), s(base, 0), s(base, 1)]),
    )
    .unwrap()
}

/// `R[η1,η2]/(η1^2, η2^2)` with basis `1, η1, η2, η1η2`.
pub fn double_dual(base: &BaseField) -> AlgebraScheme {
    let d = dual(base);
    d.tensor_product(&d).unwrap().with_labels(labels(&["1", "η1", "η2", "η1η2"]))
}

/// `Q × Q[x]/(x^2 - 2)` with basis `(1,0), (0,1), (0,x)`.
pub fn sqrt2_product(base: &BaseField) -> AlgebraScheme {
    let triples = vec![
        (0, 0, 0, s(base, 1)),
        (1, 1, 1, s(base, 1)),
        (1, 2, 2, s(base, 1)),
        (2, 2, 1, s(base, 2)),
    ];
    AlgebraScheme::new(
        base.clone(),
        labels(&["(1,0)", "(0,1)", "(0,x)"]),
        &triples,
        vec![s(base, 1), s(base, 1), s(base, 0)],
        None,
    )
    .unwrap()
}

/// Catalog lookup by name, used by the command line and golden tests.
pub fn by_name(name: &str, base: &BaseField) -> Option<AlgebraScheme> {
    if let Some(n) = name.strip_prefix("truncated") {
        return n.parse().ok().filter(|n| *n >= 1).map(|n| truncated(base, n));
    }
    if let Some(c) = name.strip_prefix("twisted:") {
        return Scalar::parse(base, c).ok().map(|c| twisted(base, c));
    }
    Some(match name {
        "trivial" => trivial(base),
        "dual" => dual(base),
        "pair" => pair(base),
        "endo-derivation" => endo_derivation(base),
        "endo-derivation-literal" => endo_derivation_literal(base),
        "double-dual" => double_dual(base),
        "sqrt2-product" => sqrt2_product(base),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_valid() {
        for base in [BaseField::Rational, BaseField::prime(2).unwrap(), BaseField::prime(3).unwrap()] {
            let mut algs = vec![
                trivial(&base),
                dual(&base),
                truncated(&base, 2),
                truncated(&base, 3),
                pair(&base),
                twisted(&base, s(&base, 1)),
                endo_derivation(&base),
                double_dual(&base),
                sqrt2_product(&base),
            ];
            algs.push(endo_derivation_literal(&base));
            for a in &algs {
                let r = a.validate();
                assert!(r.is_valid(), "{a}: {:?}", r.violations);
            }
        }
    }

    #[test]
    fn literal_basis_normalizes_to_endo_derivation() {
        let base = BaseField::Rational;
        let lit = endo_derivation_literal(&base);
        assert!(!lit.validate().normalized);
        let (n, _) = lit.normalize_basis().unwrap();
        let target = endo_derivation(&base);
        assert_eq!(n.triples(), target.triples());
        assert_eq!(n.unit(), target.unit());
        assert!(n.is_normalized());
    }
}
