//! JSON input formats: algebra, D-ring and variety specs.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use dring_core::catalog;
use dring_core::dring::{make_dring, DRing};
use dring_core::factor::{format_upoly, parse_upoly};
use dring_core::prolongation::Variety;
use dring_core::AlgebraScheme;
use exactpoly::{parse_ratfun, parse_scalar, BaseField, FnField, NumberField, RatFun, Scalar};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FieldSpec {
    pub gen: String,
    pub minpoly: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MulEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(rename = "char", default)]
    pub characteristic: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub basis: Vec<String>,
    pub mul: Vec<MulEntry>,
    pub unit: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Vec<String>>,
}

/// Either a path (relative to the referencing file) or an inline spec.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(AlgebraSpec),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DRingSpec {
    pub algebra: AlgebraRef,
    #[serde(default)]
    pub vars: Vec<String>,
    #[serde(default)]
    pub e: BTreeMap<String, Vec<String>>,
    /// Image of the number-field generator, when the base has one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_image: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct VarietySpec {
    pub vars: Vec<String>,
    pub gens: Vec<String>,
    #[serde(default)]
    pub prime: bool,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("{}: cannot read file", path.display()))?;
    // serde's message already ends with the line and column
    serde_json::from_str(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

pub fn base_field(characteristic: u64, field: Option<&FieldSpec>) -> Result<BaseField> {
    match (characteristic, field) {
        (0, None) => Ok(BaseField::Rational),
        (0, Some(f)) => {
            let m = parse_upoly(&f.minpoly, &f.gen, &BaseField::Rational)?;
            let m = m.iter().map(|c| c.as_rational().cloned().unwrap()).collect();
            Ok(BaseField::Number(Arc::new(NumberField::new(f.gen.clone(), m)?)))
        }
        (p, None) => Ok(BaseField::prime(p)?),
        (_, Some(_)) => bail!("number fields need characteristic 0"),
    }
}

fn field_spec(base: &BaseField) -> Option<FieldSpec> {
    match base {
        BaseField::Number(nf) => {
            let gen = nf.generator().to_string();
            let m: Vec<Scalar> = nf.modulus().iter().map(|c| Scalar::Rational(c.clone())).collect();
            Some(FieldSpec { minpoly: format_upoly(&m, &gen), gen })
        }
        _ => None,
    }
}

fn scalars(base: &BaseField, texts: &[String], what: &str) -> Result<Vec<Scalar>> {
    texts
        .iter()
        .enumerate()
        .map(|(n, t)| parse_scalar(t, base).with_context(|| format!("{what}[{n}] = {t:?}")))
        .collect()
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<AlgebraScheme> {
        let base = base_field(self.characteristic, self.field.as_ref())?;
        let mut triples = Vec::new();
        for (n, m) in self.mul.iter().enumerate() {
            let c = parse_scalar(&m.c, &base).with_context(|| format!("mul[{n}].c = {:?}", m.c))?;
            triples.push((m.i, m.j, m.k, c));
        }
        let unit = scalars(&base, &self.unit, "unit")?;
        let pi = self.pi.as_ref().map(|p| scalars(&base, p, "pi")).transpose()?;
        Ok(AlgebraScheme::new(base, self.basis.clone(), &triples, unit, pi)?)
    }

    pub fn from_algebra(alg: &AlgebraScheme) -> Self {
        let show = |v: &[Scalar]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let normalized = alg.is_normalized();
        AlgebraSpec {
            characteristic: alg.characteristic(),
            field: field_spec(alg.base()),
            basis: alg.labels().to_vec(),
            mul: alg.triples().into_iter().map(|(i, j, k, c)| MulEntry { i, j, k, c: c.to_string() }).collect(),
            unit: show(alg.unit()),
            pi: (!normalized).then(|| show(alg.pi())),
        }
    }
}

/// `catalog:NAME` or `catalog:NAME@p` selects a built-in algebra; anything
/// else is a path to an algebra spec.
pub fn load_algebra(arg: &str) -> Result<AlgebraScheme> {
    if let Some(rest) = arg.strip_prefix("catalog:") {
        let (name, p) = match rest.rsplit_once('@') {
            Some((n, p)) => (n, p.parse::<u64>().with_context(|| format!("bad characteristic in {arg:?}"))?),
            None => (rest, 0),
        };
        let base = base_field(p, None)?;
        return catalog::by_name(name, &base).ok_or_else(|| anyhow!("unknown catalog algebra {name:?}"));
    }
    let path = Path::new(arg);
    let spec: AlgebraSpec = read_json(path)?;
    spec.build().with_context(|| path.display().to_string())
}

fn resolve(r: &AlgebraRef, dir: &Path) -> Result<AlgebraScheme> {
    match r {
        AlgebraRef::Inline(s) => s.build(),
        AlgebraRef::Path(p) if p.starts_with("catalog:") => load_algebra(p),
        AlgebraRef::Path(p) => {
            let full: PathBuf = dir.join(p);
            load_algebra(full.to_str().ok_or_else(|| anyhow!("non-UTF-8 path"))?)
        }
    }
}

pub fn load_dring(path: &str) -> Result<DRing> {
    let p = Path::new(path);
    let spec: DRingSpec = read_json(p)?;
    let dir = p.parent().unwrap_or(Path::new("."));
    let alg = Arc::new(resolve(&spec.algebra, dir).with_context(|| format!("{path}: algebra"))?);
    let field = FnField::new(alg.base().clone(), spec.vars.clone());
    let parse_row = |row: &[String], what: &str| -> Result<Vec<RatFun>> {
        row.iter()
            .enumerate()
            .map(|(n, t)| parse_ratfun(t, &field).with_context(|| format!("{path}: {what}[{n}] = {t:?}")))
            .collect()
    };
    if let Some(extra) = spec.e.keys().find(|k| !spec.vars.contains(k)) {
        bail!("{path}: e.{extra} names an undeclared variable");
    }
    let mut images = Vec::new();
    for v in &spec.vars {
        let row = spec.e.get(v).ok_or_else(|| anyhow!("{path}: e.{v} is missing"))?;
        images.push(parse_row(row, &format!("e.{v}"))?);
    }
    let mut d = make_dring(alg, field.clone(), images).with_context(|| path.to_string())?;
    if let Some(img) = &spec.base_image {
        let img = parse_row(img, "base_image")?;
        d = d.with_base_image(img).with_context(|| path.to_string())?;
    }
    Ok(d)
}

pub fn load_variety_spec(path: &str) -> Result<VarietySpec> {
    read_json(Path::new(path))
}

pub fn build_variety(spec: &VarietySpec, field: &Arc<FnField>, path: &str) -> Result<Variety> {
    let vars: Vec<&str> = spec.vars.iter().map(String::as_str).collect();
    let gens: Vec<&str> = spec.gens.iter().map(String::as_str).collect();
    Variety::parse(field, &vars, &gens, spec.prime).with_context(|| format!("{path}: gens"))
}

pub fn variety_spec(x: &Variety) -> VarietySpec {
    VarietySpec { vars: x.vars().to_vec(), gens: x.gens().iter().map(|g| g.to_string()).collect(), prime: x.prime }
}

/// Comma-separated expressions in the D-ring's function field.
pub fn parse_list(d: &DRing, text: &str) -> Result<Vec<RatFun>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| d.parse(s).with_context(|| format!("cannot parse {s:?}")))
        .collect()
}
