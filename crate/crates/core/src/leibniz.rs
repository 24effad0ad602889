//! The generalized Leibniz rules `∂_k(xy) = Σ a_{i,j,k} ∂_i(x) ∂_j(y)` and
//! `∂_k(1) = c_k` forced by multiplicativity of `e`, plus a small parser for
//! hand-written rules so they can be compared structurally.

use std::collections::BTreeMap;
use std::fmt;

use exactpoly::{BaseField, Coeff, Scalar};

use crate::algebra::AlgebraScheme;
use crate::error::{DError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LeibnizIdentity {
    pub k: usize,
    /// `(a_{i,j,k}, i, j)` sorted by `(i, j)`, zeros omitted.
    pub terms: Vec<(Scalar, usize, usize)>,
    pub unit: Scalar,
}

/// A rule reduced to its coefficient table, the form used for comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub k: usize,
    pub terms: BTreeMap<(usize, usize), Scalar>,
}

pub fn op_name(k: usize) -> String {
    format!("∂{k}")
}

fn apply_name(names: &dyn Fn(usize) -> String, i: usize, arg: &str) -> String {
    if i == 0 {
        arg.to_string()
    } else {
        format!("{}({arg})", names(i))
    }
}

impl LeibnizIdentity {
    pub fn render(&self, names: &dyn Fn(usize) -> String) -> String {
        let mut rhs = String::new();
        for (n, (c, i, j)) in self.terms.iter().enumerate() {
            let (neg, mag) = if Coeff::is_negative(c) { (true, c.neg()) } else { (false, c.clone()) };
            if n == 0 {
                if neg {
                    rhs.push('-');
                }
            } else {
                rhs.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                rhs.push_str(&format!("{mag}*"));
            }
            rhs.push_str(&apply_name(names, *i, "x"));
            rhs.push('*');
            rhs.push_str(&apply_name(names, *j, "y"));
        }
        if rhs.is_empty() {
            rhs.push('0');
        }
        format!("{}(x*y) = {rhs}", names(self.k))
    }

    pub fn render_unit(&self, names: &dyn Fn(usize) -> String) -> String {
        format!("{}(1) = {}", names(self.k), self.unit)
    }

    pub fn rule(&self) -> Rule {
        Rule { k: self.k, terms: self.terms.iter().map(|(c, i, j)| ((*i, *j), c.clone())).collect() }
    }
}

impl fmt::Display for LeibnizIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&op_name))
    }
}

/// One identity for each `k = 1, ..., ℓ-1`.
pub fn leibniz_identities(alg: &AlgebraScheme) -> Result<Vec<LeibnizIdentity>> {
    if !alg.is_normalized() {
        return Err(DError::NotNormalized);
    }
    let l = alg.rank();
    let mut out = Vec::new();
    for k in 1..l {
        let mut terms = Vec::new();
        for i in 0..l {
            for j in 0..l {
                let c = alg.structure_constant(i, j, k);
                if !c.is_zero() {
                    terms.push((c, i, j));
                }
            }
        }
        out.push(LeibnizIdentity { k, terms, unit: alg.unit()[k].clone() });
    }
    Ok(out)
}

/// Setting `y = 1` in every rule must give back `∂_k(x)`; this holds exactly
/// when the unit law does.
pub fn unit_consistent(alg: &AlgebraScheme) -> bool {
    let l = alg.rank();
    (0..l).all(|k| {
        (0..l).all(|i| {
            let mut s = alg.zero_scalar();
            for j in 0..l {
                s = s.add(&alg.structure_constant(i, j, k).mul(&alg.unit()[j]));
            }
            if i == k { s.is_one() } else { s.is_zero() }
        })
    })
}

/// Splits at top-level occurrences of `sep`, keeping the separators.
fn split_top(text: &str, seps: &[char]) -> Vec<(Option<char>, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut sign = None;
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && seps.contains(&ch) {
            out.push((sign, std::mem::take(&mut cur)));
            sign = Some(ch);
        } else {
            cur.push(ch);
        }
    }
    out.push((sign, cur));
    out
}

/// Parses a rule such as `D(x*y) = x*D(y) + D(x)*y + c*D(x)*D(y)`.
///
/// Every product needs an explicit `*`. `ops` maps operator names to
/// indices; `consts` gives values for named constants. Factors of a term may
/// come in any order.
pub fn parse_rule(text: &str, base: &BaseField, ops: &[(&str, usize)], consts: &[(&str, Scalar)]) -> Result<Rule> {
    let bad = |m: &str| DError::Precondition(format!("cannot parse rule `{text}`: {m}"));
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (lhs, rhs) = cleaned.split_once('=').ok_or_else(|| bad("missing `=`"))?;
    let op_index = |name: &str| ops.iter().find(|(n, _)| *n == name).map(|(_, i)| *i);
    let lhs_name = lhs.strip_suffix("(x*y)").ok_or_else(|| bad("left side must be OP(x*y)"))?;
    let k = op_index(lhs_name).ok_or_else(|| bad("unknown operator on the left"))?;
    let mut terms: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    for (sign, term) in split_top(rhs, &['+', '-']) {
        if term.is_empty() {
            if sign.is_none() {
                continue;
            }
            return Err(bad("empty term"));
        }
        if term == "0" {
            continue;
        }
        let mut coef = Scalar::from_int(base, if sign == Some('-') { -1 } else { 1 });
        let (mut xi, mut yj) = (None, None);
        for (_, f) in split_top(&term, &['*']) {
            let slot = if f == "x" || f == "y" {
                Some((f.clone(), 0))
            } else if let Some(open) = f.find('(') {
                let name = &f[..open];
                let arg = f[open + 1..].strip_suffix(')').ok_or_else(|| bad("unbalanced parentheses"))?;
                let i = op_index(name).ok_or_else(|| bad(&format!("unknown operator `{name}`")))?;
                Some((arg.to_string(), i))
            } else {
                None
            };
            match slot {
                Some((arg, i)) if arg == "x" && xi.is_none() => xi = Some(i),
                Some((arg, i)) if arg == "y" && yj.is_none() => yj = Some(i),
                Some(_) => return Err(bad(&format!("bad factor `{f}`"))),
                None => {
                    let v = match consts.iter().find(|(n, _)| *n == f) {
                        Some((_, v)) => v.clone(),
                        None => Scalar::parse(base, &f).map_err(|_| bad(&format!("unknown factor `{f}`")))?,
                    };
                    coef = coef.mul(&v);
                }
            }
        }
        let (Some(i), Some(j)) = (xi, yj) else {
            return Err(bad(&format!("term `{term}` needs one x factor and one y factor")));
        };
        let e = terms.entry((i, j)).or_insert_with(|| Scalar::from_int(base, 0));
        *e = e.add(&coef);
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(Rule { k, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn dual_rule_text() {
        let ids = leibniz_identities(&catalog::dual(&BaseField::Rational)).unwrap();
        assert_eq!(ids.len(), 1);
        assert_eq!(ids[0].to_string(), "∂1(x*y) = x*∂1(y) + ∂1(x)*y");
        assert_eq!(ids[0].render_unit(&op_name), "∂1(1) = 0");
    }

    #[test]
    fn parsed_rule_matches_regardless_of_order() {
        let b = BaseField::Rational;
        let c = Scalar::from_int(&b, 5);
        let id = &leibniz_identities(&catalog::twisted(&b, c.clone())).unwrap()[0];
        let r = parse_rule("D(x*y) = x*D(y) + D(x)*y + D(x)*D(y)*c", &b, &[("D", 1)], &[("c", c)]).unwrap();
        assert_eq!(id.rule(), r);
        let printed = parse_rule(&id.to_string(), &b, &[("∂1", 1)], &[]).unwrap();
        assert_eq!(printed, r);
    }

    #[test]
    fn unit_consistency_on_catalog() {
        for a in [catalog::dual(&BaseField::Rational), catalog::pair(&BaseField::Rational), catalog::sqrt2_product(&BaseField::Rational)] {
            assert!(unit_consistent(&a));
        }
    }
}
