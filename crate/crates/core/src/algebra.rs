//! Finite free algebras over a base field, presented by structure
//! constants with respect to a basis `ε_0, ..., ε_{ℓ-1}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use exactpoly::linalg;
use exactpoly::{BaseField, Coeff, Scalar};

use crate::error::{DError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraScheme {
    base: BaseField,
    labels: Vec<String>,
    /// `ε_i ε_j = Σ_k a_{i,j,k} ε_k`, keyed by `(i, j)` with `i <= j`.
    mul: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
    /// Triples `(i, j, k)` with `i > j` whose supplied constant disagreed with
    /// the canonical `(j, i, k)` entry.
    asymmetric: Vec<(usize, usize, usize)>,
    unit: Vec<Scalar>,
    pi: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Commutativity { i: usize, j: usize, k: usize },
    Associativity { i: usize, j: usize, k: usize, n: usize },
    UnitLaw { i: usize },
    ProjectionUnit,
    ProjectionHom { i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Commutativity { i, j, k } => write!(f, "commutativity: a[{i},{j},{k}] != a[{j},{i},{k}]"),
            Violation::Associativity { i, j, k, n } => {
                write!(f, "associativity: coordinate {n} of (e{i}*e{j})*e{k} != e{i}*(e{j}*e{k})")
            }
            Violation::UnitLaw { i } => write!(f, "unit law: unit*e{i} != e{i}"),
            Violation::ProjectionUnit => write!(f, "projection: pi(unit) != 1"),
            Violation::ProjectionHom { i, j } => write!(f, "projection: pi(e{i}*e{j}) != pi(e{i})*pi(e{j})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Whether the projection row is `(1, 0, ..., 0)`.
    pub normalized: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The composite `𝒟2 ∘ 𝒟1` together with its structure maps.
#[derive(Clone, Debug)]
pub struct Composition {
    pub algebra: AlgebraScheme,
    /// `f`: applies the outer projection, `ℓ1 × ℓ1ℓ2`.
    pub f: Vec<Vec<Scalar>>,
    /// `s`: the outer structure map `u ↦ u·1`, `ℓ1ℓ2 × ℓ1`.
    pub s: Vec<Vec<Scalar>>,
}

impl AlgebraScheme {
    /// Builds a scheme from `(i, j, k, a_{i,j,k})` triples. Supplying one of
    /// `(i, j, k)` and `(j, i, k)` is enough; conflicting pairs are kept as
    /// commutativity violations. `pi` defaults to the first coordinate.
    pub fn new(
        base: BaseField,
        labels: Vec<String>,
        triples: &[(usize, usize, usize, Scalar)],
        unit: Vec<Scalar>,
        pi: Option<Vec<Scalar>>,
    ) -> Result<Self> {
        let l = labels.len();
        if l == 0 {
            return Err(DError::InvalidAlgebra("rank must be positive".into()));
        }
        if unit.len() != l {
            return Err(DError::RankMismatch { expected: l, got: unit.len() });
        }
        let pi = pi.unwrap_or_else(|| {
            (0..l).map(|k| Scalar::from_int(&base, (k == 0) as i64)).collect()
        });
        if pi.len() != l {
            return Err(DError::RankMismatch { expected: l, got: pi.len() });
        }
        let mut dense: HashMap<(usize, usize, usize), Scalar> = HashMap::new();
        for (i, j, k, c) in triples {
            if *i >= l || *j >= l || *k >= l {
                return Err(DError::IndexOutOfRange { index: *i.max(j).max(k), rank: l });
            }
            let c = c.convert(&base)?;
            if let Some(old) = dense.get(&(*i, *j, *k)) {
                if old != &c {
                    return Err(DError::InvalidAlgebra(format!("conflicting values for a[{i},{j},{k}]")));
                }
            }
            dense.insert((*i, *j, *k), c);
        }
        let mut mul: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
        let mut asymmetric = Vec::new();
        let zero = Scalar::from_int(&base, 0);
        for (&(i, j, k), c) in &dense {
            let (a, b) = (i.min(j), i.max(j));
            if i > j {
                let canon = dense.get(&(j, i, k)).unwrap_or(c);
                if canon != c {
                    asymmetric.push((i, j, k));
                }
                if dense.contains_key(&(j, i, k)) {
                    continue;
                }
            }
            if c != &zero {
                mul.entry((a, b)).or_default().insert(k, c.clone());
            }
        }
        // a supplied (j,i,k) with only a zero canonical partner
        for (&(i, j, k), c) in &dense {
            if i < j && c == &zero {
                if let Some(other) = dense.get(&(j, i, k)) {
                    if other != &zero {
                        asymmetric.push((j, i, k));
                    }
                }
            }
        }
        asymmetric.sort();
        asymmetric.dedup();
        let mul = mul.into_iter().map(|(key, m)| (key, m.into_iter().collect())).collect();
        let unit = unit.into_iter().map(|c| c.convert(&base)).collect::<std::result::Result<_, _>>()?;
        let pi = pi.into_iter().map(|c| c.convert(&base)).collect::<std::result::Result<_, _>>()?;
        Ok(AlgebraScheme { base, labels, mul, asymmetric, unit, pi })
    }

    pub fn trivial(base: &BaseField) -> Self {
        let one = Scalar::from_int(base, 1);
        AlgebraScheme::new(base.clone(), vec!["1".into()], &[(0, 0, 0, one.clone())], vec![one], None).unwrap()
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.rank());
        self.labels = labels;
        self
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn pi(&self) -> &[Scalar] {
        &self.pi
    }

    pub fn zero_scalar(&self) -> Scalar {
        Scalar::from_int(&self.base, 0)
    }

    /// `ε_i ε_j` as a sparse list of `(k, a_{i,j,k})`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        self.mul.get(&(i.min(j), i.max(j))).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.product_of_basis(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.zero_scalar())
    }

    /// All nonzero `(i, j, k, a)` with `i <= j`, sorted.
    pub fn triples(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (&(i, j), list) in &self.mul {
            for (k, c) in list {
                out.push((i, j, *k, c.clone()));
            }
        }
        out
    }

    pub fn num_entries(&self) -> usize {
        self.mul.len()
    }

    pub fn is_normalized(&self) -> bool {
        self.pi.iter().enumerate().all(|(k, c)| if k == 0 { c.is_one() } else { c.is_zero() })
    }

    /// Coordinates of `a * b` for coordinates over any coefficient ring.
    pub fn mul_coords<T: Coeff>(&self, a: &[T], b: &[T], ctx: &T::Ctx) -> Vec<T> {
        let l = self.rank();
        let mut out = vec![T::zero(ctx); l];
        let nza: Vec<usize> = (0..l).filter(|&i| !a[i].is_zero()).collect();
        let nzb: Vec<usize> = (0..l).filter(|&i| !b[i].is_zero()).collect();
        if nza.len() * nzb.len() <= 2 * self.mul.len() {
            for &i in &nza {
                for &j in &nzb {
                    let list = self.product_of_basis(i, j);
                    if list.is_empty() {
                        continue;
                    }
                    let t = a[i].mul(&b[j]);
                    for (k, c) in list {
                        out[*k] = out[*k].add(&t.mul_scalar(c));
                    }
                }
            }
        } else {
            for (&(i, j), list) in &self.mul {
                let t = if i == j {
                    if a[i].is_zero() || b[i].is_zero() {
                        continue;
                    }
                    a[i].mul(&b[i])
                } else {
                    let mut t = T::zero(ctx);
                    if !a[i].is_zero() && !b[j].is_zero() {
                        t = a[i].mul(&b[j]);
                    }
                    if !a[j].is_zero() && !b[i].is_zero() {
                        t = t.add(&a[j].mul(&b[i]));
                    }
                    if t.is_zero() {
                        continue;
                    }
                    t
                };
                for (k, c) in list {
                    out[*k] = out[*k].add(&t.mul_scalar(c));
                }
            }
        }
        out
    }

    fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        (0..self.rank()).map(|k| Scalar::from_int(&self.base, (k == i) as i64)).collect()
    }

    /// `π` applied to coordinates.
    pub fn project<T: Coeff>(&self, coords: &[T], ctx: &T::Ctx) -> T {
        let mut s = T::zero(ctx);
        for (c, p) in coords.iter().zip(&self.pi) {
            if !p.is_zero() && !c.is_zero() {
                s = s.add(&c.mul_scalar(p));
            }
        }
        s
    }

    /// Matrix of multiplication by `x` (columns = images of basis vectors).
    pub fn mult_matrix<T: Coeff>(&self, x: &[T], ctx: &T::Ctx) -> Vec<Vec<T>> {
        let l = self.rank();
        let cols: Vec<Vec<T>> = (0..l)
            .map(|j| {
                let e: Vec<T> = (0..l).map(|k| if k == j { T::one(ctx) } else { T::zero(ctx) }).collect();
                self.mul_coords(x, &e, ctx)
            })
            .collect();
        linalg::transpose(&cols)
    }

    /// Inverse of `x` over a coefficient field, `None` for non-units.
    pub fn inverse_coords<T: Coeff>(&self, x: &[T], ctx: &T::Ctx) -> Option<Vec<T>> {
        let m = self.mult_matrix(x, ctx);
        let unit: Vec<T> = self.unit.iter().map(|c| T::from_scalar(ctx, c)).collect();
        let v = linalg::solve(&m, &unit, ctx)?;
        // solve returns some solution; it is the inverse only if m is invertible
        (linalg::rank(&m) == self.rank()).then_some(v)
    }

    pub fn validate(&self) -> ValidationReport {
        let l = self.rank();
        let b = &self.base;
        let mut violations: Vec<Violation> = self
            .asymmetric
            .iter()
            .map(|&(i, j, k)| Violation::Commutativity { i, j, k })
            .collect();
        let basis: Vec<Vec<Scalar>> = (0..l).map(|i| self.basis_vec(i)).collect();
        let prods: Vec<Vec<Vec<Scalar>>> =
            (0..l).map(|i| (0..l).map(|j| self.mul_coords(&basis[i], &basis[j], b)).collect()).collect();
        for i in 0..l {
            for j in 0..l {
                for k in 0..l {
                    let lhs = self.mul_coords(&prods[i][j], &basis[k], b);
                    let rhs = self.mul_coords(&basis[i], &prods[j][k], b);
                    for n in 0..l {
                        if lhs[n] != rhs[n] {
                            violations.push(Violation::Associativity { i, j, k, n });
                        }
                    }
                }
            }
        }
        for i in 0..l {
            if self.mul_coords(&self.unit, &basis[i], b) != basis[i] {
                violations.push(Violation::UnitLaw { i });
            }
        }
        if !self.project(&self.unit, b).is_one() {
            violations.push(Violation::ProjectionUnit);
        }
        for i in 0..l {
            for j in i..l {
                let lhs = self.project(&prods[i][j], b);
                let rhs = self.pi[i].mul(&self.pi[j]);
                if lhs != rhs {
                    violations.push(Violation::ProjectionHom { i, j });
                }
            }
        }
        ValidationReport { violations, normalized: self.is_normalized() }
    }

    /// Re-expresses the algebra in the basis given by the columns of `m`
    /// (new basis vectors in old coordinates).
    pub fn change_basis(&self, m: &[Vec<Scalar>], labels: Vec<String>) -> Result<AlgebraScheme> {
        let l = self.rank();
        let b = &self.base;
        let minv = linalg::inverse(m, b).ok_or_else(|| DError::InvalidAlgebra("change of basis is singular".into()))?;
        let cols: Vec<Vec<Scalar>> = (0..l).map(|a| m.iter().map(|row| row[a].clone()).collect()).collect();
        let mut triples = Vec::new();
        for a in 0..l {
            for c in a..l {
                let prod = self.mul_coords(&cols[a], &cols[c], b);
                let coords = linalg::mat_vec(&minv, &prod, b);
                for (k, v) in coords.into_iter().enumerate() {
                    if !v.is_zero() {
                        triples.push((a, c, k, v));
                    }
                }
            }
        }
        let unit = linalg::mat_vec(&minv, &self.unit, b);
        let pi: Vec<Scalar> = (0..l).map(|a| self.project(&cols[a], b)).collect();
        AlgebraScheme::new(b.clone(), labels, &triples, unit, Some(pi))
    }

    /// Change of basis making `π` the first coordinate: `ε_0' = ε_r/π(ε_r)`
    /// for the first `r` with `π(ε_r) ≠ 0`, and `ε_k' = ε_k - π(ε_k) ε_0'`
    /// for the remaining indices in order. Returns the new scheme and the
    /// matrix whose columns are the new basis in old coordinates.
    pub fn normalize_basis(&self) -> Result<(AlgebraScheme, Vec<Vec<Scalar>>)> {
        let report = self.validate();
        if report.violations.iter().any(|v| matches!(v, Violation::ProjectionHom { .. } | Violation::ProjectionUnit)) {
            return Err(DError::InvalidAlgebra("projection is not an algebra homomorphism".into()));
        }
        let l = self.rank();
        let r = (0..l)
            .find(|&k| !self.pi[k].is_zero())
            .ok_or_else(|| DError::InvalidAlgebra("projection is not surjective".into()))?;
        let inv = self.pi[r].inv().unwrap();
        let v0: Vec<Scalar> = self.basis_vec(r).iter().map(|c| c.mul(&inv)).collect();
        let mut cols = vec![v0.clone()];
        let mut labels = vec![if inv.is_one() { self.labels[r].clone() } else { format!("{inv}*{}", self.labels[r]) }];
        for k in (0..l).filter(|&k| k != r) {
            let p = &self.pi[k];
            let col: Vec<Scalar> = self.basis_vec(k).iter().zip(&v0).map(|(e, v)| e.sub(&p.mul(v))).collect();
            cols.push(col);
            labels.push(if p.is_zero() {
                self.labels[k].clone()
            } else if p.is_one() {
                format!("{} - {}", self.labels[k], labels[0])
            } else {
                format!("{} - {}*{}", self.labels[k], p, labels[0])
            });
        }
        let m = linalg::transpose(&cols);
        Ok((self.change_basis(&m, labels)?, m))
    }

    fn check_pair(&self, other: &AlgebraScheme) -> Result<()> {
        if self.base != other.base {
            return Err(DError::BaseMismatch(format!("{} vs {}", self.base, other.base)));
        }
        if !self.is_normalized() || !other.is_normalized() {
            return Err(DError::NotNormalized);
        }
        Ok(())
    }

    /// `𝒟 ×_𝕊 𝒟'`: the `ε_0` coordinates are identified, so the rank is
    /// `ℓ1 + ℓ2 - 1`. Index layout: shared `ε_0`, then `ε_1..` of `self`,
    /// then `ε'_1..` of `other`.
    pub fn fibred_product(&self, other: &AlgebraScheme) -> Result<AlgebraScheme> {
        self.check_pair(other)?;
        let l1 = self.rank();
        let l2 = other.rank();
        let map1 = |i: usize| i;
        let map2 = |j: usize| if j == 0 { 0 } else { l1 + j - 1 };
        let mut acc: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        let mut put = |i: usize, j: usize, k: usize, c: &Scalar| {
            let key = (i.min(j), i.max(j), k);
            let e = acc.entry(key).or_insert_with(|| self.zero_scalar());
            *e = e.add(c);
        };
        for (i, j, k, c) in self.triples() {
            // a[0,0,0] is shared; count it once
            if (i, j, k) == (0, 0, 0) {
                continue;
            }
            put(map1(i), map1(j), map1(k), &c);
        }
        for (i, j, k, c) in other.triples() {
            if (i, j, k) == (0, 0, 0) {
                continue;
            }
            put(map2(i), map2(j), map2(k), &c);
        }
        put(0, 0, 0, &Scalar::from_int(&self.base, 1));
        let triples: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((i, j, k), c)| (i, j, k, c)).collect();
        let mut unit = vec![self.zero_scalar(); l1 + l2 - 1];
        for k in 0..l1 {
            unit[map1(k)] = self.unit[k].clone();
        }
        for k in 1..l2 {
            unit[map2(k)] = other.unit[k].clone();
        }
        let mut labels = vec![format!("({},{})", self.labels[0], other.labels[0])];
        labels.extend(self.labels[1..].iter().map(|s| format!("({s},0)")));
        labels.extend(other.labels[1..].iter().map(|s| format!("(0,{s})")));
        AlgebraScheme::new(self.base.clone(), labels, &triples, unit, None)
    }

    /// `𝒟 ⊗_𝕊 𝒟'` with `ε_i ⊗ ε'_j` at index `i + j ℓ1`.
    pub fn tensor_product(&self, other: &AlgebraScheme) -> Result<AlgebraScheme> {
        self.check_pair(other)?;
        Ok(self.tensor_unchecked(other))
    }

    fn tensor_unchecked(&self, other: &AlgebraScheme) -> AlgebraScheme {
        let l1 = self.rank();
        let l2 = other.rank();
        let idx = |i: usize, j: usize| i + j * l1;
        let mut acc: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        let full1 = self.full_table();
        let full2 = other.full_table();
        for (i, k, m, c1) in &full1 {
            for (j, l, n, c2) in &full2 {
                let (a, b) = (idx(*i, *j), idx(*k, *l));
                if a > b {
                    continue;
                }
                let e = acc.entry((a, b, idx(*m, *n))).or_insert_with(|| self.zero_scalar());
                *e = e.add(&c1.mul(c2));
            }
        }
        let triples: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((i, j, k), c)| (i, j, k, c)).collect();
        let mut unit = vec![self.zero_scalar(); l1 * l2];
        let mut pi = vec![self.zero_scalar(); l1 * l2];
        let mut labels = vec![String::new(); l1 * l2];
        for i in 0..l1 {
            for j in 0..l2 {
                unit[idx(i, j)] = self.unit[i].mul(&other.unit[j]);
                pi[idx(i, j)] = self.pi[i].mul(&other.pi[j]);
                labels[idx(i, j)] = format!("{}⊗{}", self.labels[i], other.labels[j]);
            }
        }
        AlgebraScheme::new(self.base.clone(), labels, &triples, unit, Some(pi)).unwrap()
    }

    /// Every `(i, j, k, a)` including the mirrored `i > j` entries.
    fn full_table(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (i, j, k, c) in self.triples() {
            out.push((i, j, k, c.clone()));
            if i != j {
                out.push((j, i, k, c));
            }
        }
        out
    }

    /// `outer ∘ self`: the outer algebra evaluated on `self`-coordinates.
    /// Flat index `i + j ℓ1` with `i` the inner (self) index.
    pub fn compose(&self, outer: &AlgebraScheme) -> Result<Composition> {
        self.check_pair(outer)?;
        let l1 = self.rank();
        let l2 = outer.rank();
        let algebra = self.tensor_unchecked(outer);
        let zero = self.zero_scalar();
        let mut f = vec![vec![zero.clone(); l1 * l2]; l1];
        let mut s = vec![vec![zero; l1]; l1 * l2];
        for i in 0..l1 {
            for j in 0..l2 {
                f[i][i + j * l1] = outer.pi[j].clone();
                s[i + j * l1][i] = outer.unit[j].clone();
            }
        }
        Ok(Composition { algebra, f, s })
    }
}

impl fmt::Display for AlgebraScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra of rank {} over {}", self.rank(), self.base)?;
        writeln!(f, "basis: {}", self.labels.join(", "))?;
        for (i, j, k, c) in self.triples() {
            writeln!(f, "  a[{i},{j},{k}] = {c}")?;
        }
        let u: Vec<String> = self.unit.iter().map(|c| c.to_string()).collect();
        let p: Vec<String> = self.pi.iter().map(|c| c.to_string()).collect();
        writeln!(f, "unit: ({})", u.join(", "))?;
        write!(f, "pi: ({})", p.join(", "))
    }
}

/// An element of `𝒟(R) = R ⊗ 𝒟(A)` in basis coordinates.
#[derive(Clone, Debug)]
pub struct AlgebraElement<T: Coeff> {
    alg: Arc<AlgebraScheme>,
    coords: Vec<T>,
}

impl<T: Coeff> PartialEq for AlgebraElement<T> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg) && self.coords == other.coords
    }
}

impl<T: Coeff> AlgebraElement<T> {
    pub fn new(alg: &Arc<AlgebraScheme>, coords: Vec<T>) -> Result<Self> {
        if coords.len() != alg.rank() {
            return Err(DError::RankMismatch { expected: alg.rank(), got: coords.len() });
        }
        Ok(AlgebraElement { alg: alg.clone(), coords })
    }

    pub fn zero(alg: &Arc<AlgebraScheme>, ctx: &T::Ctx) -> Self {
        AlgebraElement { alg: alg.clone(), coords: vec![T::zero(ctx); alg.rank()] }
    }

    pub fn one(alg: &Arc<AlgebraScheme>, ctx: &T::Ctx) -> Self {
        Self::from_base(alg, &T::one(ctx))
    }

    /// The structure map `s`: `r ↦ r · 1`.
    pub fn from_base(alg: &Arc<AlgebraScheme>, r: &T) -> Self {
        let coords = alg.unit().iter().map(|c| r.mul_scalar(c)).collect();
        AlgebraElement { alg: alg.clone(), coords }
    }

    pub fn basis(alg: &Arc<AlgebraScheme>, i: usize, ctx: &T::Ctx) -> Self {
        let coords = (0..alg.rank()).map(|k| if k == i { T::one(ctx) } else { T::zero(ctx) }).collect();
        AlgebraElement { alg: alg.clone(), coords }
    }

    pub fn algebra(&self) -> &Arc<AlgebraScheme> {
        &self.alg
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn ctx(&self) -> T::Ctx {
        self.coords[0].ctx()
    }

    fn same_parent(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg {
            Ok(())
        } else {
            Err(DError::ParentMismatch)
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_parent(other)?;
        let coords = self.alg.mul_coords(&self.coords, &other.coords, &self.ctx());
        Ok(AlgebraElement { alg: self.alg.clone(), coords })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_parent(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a.add(b)).collect();
        Ok(AlgebraElement { alg: self.alg.clone(), coords })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_parent(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a.sub(b)).collect();
        Ok(AlgebraElement { alg: self.alg.clone(), coords })
    }

    pub fn neg(&self) -> Self {
        AlgebraElement { alg: self.alg.clone(), coords: self.coords.iter().map(|a| a.neg()).collect() }
    }

    pub fn scale(&self, r: &T) -> Self {
        AlgebraElement { alg: self.alg.clone(), coords: self.coords.iter().map(|a| a.mul(r)).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let ctx = self.ctx();
        let mut acc = Self::one(&self.alg, &ctx);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn inv(&self) -> Option<Self> {
        let coords = self.alg.inverse_coords(&self.coords, &self.ctx())?;
        Some(AlgebraElement { alg: self.alg.clone(), coords })
    }

    /// `π` of the element.
    pub fn project(&self) -> T {
        self.alg.project(&self.coords, &self.ctx())
    }

    pub fn map<U: Coeff>(&self, f: impl FnMut(&T) -> U) -> AlgebraElement<U> {
        AlgebraElement { alg: self.alg.clone(), coords: self.coords.iter().map(f).collect() }
    }
}

impl<T: Coeff> fmt::Display for AlgebraElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}
