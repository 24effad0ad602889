//! D-ring structures on function fields `A(x_1, ..., x_m)`: `e` is fixed by
//! the images of the generators and extended as a ring homomorphism.

use std::sync::Arc;

use exactpoly::{parse_ratfun, parse_with, AlgExt, BaseField, Coeff, ExtCtx, FnField, RatFun, Scalar};

use crate::algebra::{AlgebraElement, AlgebraScheme};
use crate::decomposition::{self, hensel_lift, LocalDecomposition};
use crate::error::{DError, Result};

#[derive(Clone, Debug)]
pub struct DRing {
    alg: Arc<AlgebraScheme>,
    field: Arc<FnField>,
    gens: Vec<AlgebraElement<RatFun>>,
    /// `e` of the number-field generator; `None` means the prime structure.
    base_gen: Option<AlgebraElement<RatFun>>,
}

/// `e : R → 𝒟(R)` for `R = A(x̄)` given on generators.
pub fn make_dring(alg: Arc<AlgebraScheme>, field: Arc<FnField>, gen_images: Vec<Vec<RatFun>>) -> Result<DRing> {
    if !alg.is_normalized() {
        return Err(DError::NotNormalized);
    }
    if field.base() != alg.base() {
        return Err(DError::BaseMismatch(format!("{} vs {}", field.base(), alg.base())));
    }
    let n = field.vars().len();
    if gen_images.len() != n {
        return Err(DError::RankMismatch { expected: n, got: gen_images.len() });
    }
    let mut gens = Vec::new();
    for (i, img) in gen_images.into_iter().enumerate() {
        let el = AlgebraElement::new(&alg, img)?;
        if el.coords()[0] != RatFun::var(&field, i) {
            return Err(DError::Coordinate0 { var: field.vars()[i].clone() });
        }
        gens.push(el);
    }
    Ok(DRing { alg, field, gens, base_gen: None })
}

/// Parses generator images, one list of coordinate strings per variable.
pub fn parse_dring(alg: Arc<AlgebraScheme>, vars: &[&str], images: &[Vec<&str>]) -> Result<DRing> {
    let field = FnField::new(alg.base().clone(), vars.iter().map(|v| v.to_string()).collect());
    let imgs = images
        .iter()
        .map(|row| row.iter().map(|s| parse_ratfun(s, &field)).collect::<std::result::Result<Vec<_>, _>>())
        .collect::<std::result::Result<Vec<_>, _>>()?;
    make_dring(alg, field, imgs)
}

/// The unique structure on the base field: `e = s`, so `∂_i(a) = a c_i`.
pub fn prime_dring(alg: Arc<AlgebraScheme>) -> Result<DRing> {
    let field = FnField::new(alg.base().clone(), Vec::new());
    make_dring(alg, field, Vec::new())
}

impl DRing {
    /// Sets `e` on the generator of a number-field base. Coordinate 0 must
    /// be the generator itself.
    pub fn with_base_image(mut self, image: Vec<RatFun>) -> Result<Self> {
        let Some(name) = self.field.base().generator_name().map(str::to_string) else {
            return Err(DError::Precondition("base field has no generator".into()));
        };
        let BaseField::Number(nf) = self.field.base() else { unreachable!() };
        let el = AlgebraElement::new(&self.alg, image)?;
        if el.coords()[0] != RatFun::constant(&self.field, Scalar::generator(nf)) {
            return Err(DError::Coordinate0 { var: name });
        }
        self.base_gen = Some(el);
        Ok(self)
    }

    pub fn algebra(&self) -> &Arc<AlgebraScheme> {
        &self.alg
    }

    pub fn field(&self) -> &Arc<FnField> {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.alg.rank()
    }

    pub fn gen_images(&self) -> &[AlgebraElement<RatFun>] {
        &self.gens
    }

    pub fn parse(&self, text: &str) -> Result<RatFun> {
        Ok(parse_ratfun(text, &self.field)?)
    }

    /// `s(r) = r · 1`.
    pub fn structure_map(&self, r: &RatFun) -> AlgebraElement<RatFun> {
        AlgebraElement::from_base(&self.alg, r)
    }

    pub fn e_scalar(&self, c: &Scalar) -> AlgebraElement<RatFun> {
        match (&self.base_gen, c) {
            (Some(g), Scalar::Number(el)) => {
                let mut acc = AlgebraElement::zero(&self.alg, &self.field);
                let mut pw = AlgebraElement::one(&self.alg, &self.field);
                for q in el.coords() {
                    let cq = RatFun::constant(&self.field, Scalar::from_rational(self.field.base(), q).unwrap());
                    acc = acc.add(&pw.scale(&cq)).unwrap();
                    pw = pw.mul(g).unwrap();
                }
                acc
            }
            _ => self.structure_map(&RatFun::constant(&self.field, c.clone())),
        }
    }

    /// `e` on a polynomial in the generators.
    pub fn apply_e_poly(&self, p: &exactpoly::MultiPoly<Scalar>) -> AlgebraElement<RatFun> {
        let one = AlgebraElement::one(&self.alg, &self.field);
        p.eval_with(&one, &self.gens, |c| self.e_scalar(c), |a, b| a.add(b).unwrap(), |a, b| a.mul(b).unwrap())
            .unwrap_or_else(|| AlgebraElement::zero(&self.alg, &self.field))
    }

    pub fn apply_e(&self, f: &RatFun) -> Result<AlgebraElement<RatFun>> {
        let num = self.apply_e_poly(f.numer());
        if f.is_polynomial() {
            return Ok(num);
        }
        let den = self.apply_e_poly(f.denom());
        match den.inv() {
            Some(inv) => num.mul(&inv),
            None => Err(self.non_unit(f.denom(), &den)),
        }
    }

    fn non_unit(&self, d: &exactpoly::MultiPoly<Scalar>, image: &AlgebraElement<RatFun>) -> DError {
        let factor = match decomposition::local_decomposition(&self.alg) {
            Ok(dec) => dec
                .factors
                .iter()
                .position(|f| f.residue(image.coords(), &self.field).iter().all(|c| c.is_zero()))
                .map(|i| format!("its image under local projection {i}"))
                .unwrap_or_else(|| "a local projection".into()),
            Err(_) => "a local projection".into(),
        };
        DError::NonUnit { element: d.to_string(), factor }
    }

    pub fn apply_operator(&self, k: usize, f: &RatFun) -> Result<RatFun> {
        if k >= self.rank() {
            return Err(DError::IndexOutOfRange { index: k, rank: self.rank() });
        }
        Ok(self.apply_e(f)?.coords()[k].clone())
    }

    /// `e(x) = s(x)`.
    pub fn is_constant(&self, f: &RatFun) -> Result<bool> {
        Ok(self.apply_e(f)? == self.structure_map(f))
    }

    /// `∇(a) = (a, ∂_1 a, ..., ∂_{ℓ-1} a)`, laid out block by block:
    /// all `∂_0` values, then all `∂_1` values, and so on.
    pub fn nabla(&self, point: &[RatFun]) -> Result<Vec<RatFun>> {
        let images = point.iter().map(|a| self.apply_e(a)).collect::<Result<Vec<_>>>()?;
        let mut out = Vec::new();
        for j in 0..self.rank() {
            for img in &images {
                out.push(img.coords()[j].clone());
            }
        }
        Ok(out)
    }
}

/// A structure extended to `F[z]/(P)` for an algebraic element `z`.
#[derive(Clone, Debug)]
pub struct AlgebraicExtension {
    pub dring: DRing,
    pub ext: Arc<ExtCtx<RatFun>>,
    /// `e(z)`.
    pub ez: AlgebraElement<AlgExt<RatFun>>,
}

impl AlgebraicExtension {
    pub fn parse(&self, text: &str) -> Result<AlgExt<RatFun>> {
        let f = &self.dring.field;
        Ok(parse_with(text, &self.ext, f.base(), |name| {
            if name == self.ext.name {
                return Some(AlgExt::generator(&self.ext));
            }
            let v = parse_ratfun(name, f).ok()?;
            Some(AlgExt::from_base(&self.ext, v))
        })?)
    }

    fn lift(&self, el: &AlgebraElement<RatFun>) -> AlgebraElement<AlgExt<RatFun>> {
        el.map(|c| AlgExt::from_base(&self.ext, c.clone()))
    }

    pub fn apply_e(&self, u: &AlgExt<RatFun>) -> Result<AlgebraElement<AlgExt<RatFun>>> {
        let alg = self.dring.algebra();
        let mut acc = AlgebraElement::zero(alg, &self.ext);
        let mut pw = AlgebraElement::one(alg, &self.ext);
        for c in u.coords() {
            acc = acc.add(&self.lift(&self.dring.apply_e(c)?).mul(&pw)?)?;
            pw = pw.mul(&self.ez)?;
        }
        Ok(acc)
    }

    pub fn apply_operator(&self, k: usize, u: &AlgExt<RatFun>) -> Result<AlgExt<RatFun>> {
        let r = self.dring.rank();
        if k >= r {
            return Err(DError::IndexOutOfRange { index: k, rank: r });
        }
        Ok(self.apply_e(u)?.coords()[k].clone())
    }
}

/// Extends `d` to `F[z]/(P)` for monic irreducible `P` (coefficients low to
/// high). `roots[i-1]` is the chosen root of `P^{σ_i}` in `F[z]/(P)` for each
/// factor `i ≥ 1`; the root for factor 0 is `z`. Every factor must have
/// residue field equal to the base.
pub fn extend_dring_algebraic(d: &DRing, minpoly: &[RatFun], zname: &str, roots: &[&str]) -> Result<AlgebraicExtension> {
    if d.alg.characteristic() != 0 {
        return Err(DError::Precondition("algebraic extension requires characteristic 0".into()));
    }
    if minpoly.last().map(|c| c.is_one()) != Some(true) || minpoly.len() < 2 {
        return Err(DError::Precondition("minimal polynomial must be monic of positive degree".into()));
    }
    let ext = ExtCtx::new(d.field.clone(), zname, minpoly.to_vec())
        .ok_or_else(|| DError::Precondition("invalid minimal polynomial".into()))?;
    let dec: LocalDecomposition = decomposition::local_decomposition(&d.alg)?;
    if !dec.assumption_ii {
        return Err(DError::Precondition("every residue field must be the base field".into()));
    }
    if roots.len() != dec.t() {
        return Err(DError::Precondition(format!("expected {} root choices, got {}", dec.t(), roots.len())));
    }
    let mut out = AlgebraicExtension {
        dring: d.clone(),
        ext: ext.clone(),
        ez: AlgebraElement::zero(&d.alg, &ext),
    };
    let coeffs: Vec<AlgebraElement<AlgExt<RatFun>>> =
        minpoly.iter().map(|c| d.apply_e(c).map(|e| out.lift(&e))).collect::<Result<_>>()?;
    let mut c = AlgebraElement::zero(&d.alg, &ext);
    for (i, f) in dec.factors.iter().enumerate() {
        let ci = if i == 0 { AlgExt::generator(&ext) } else { out.parse(roots[i - 1])? };
        // P^{σ_i}(c_i) must vanish
        let mut val = AlgExt::zero(&ext);
        let mut pw = AlgExt::one(&ext);
        for coef in &coeffs {
            val = val.add(&f.residue(coef.coords(), &ext)[0].mul(&pw));
            pw = pw.mul(&ci);
        }
        if !val.is_zero() {
            return Err(DError::Precondition(format!("{ci} is not a root of the twisted polynomial for factor {i}")));
        }
        let idem = AlgebraElement::new(&d.alg, f.idempotent.iter().map(|s| AlgExt::from_scalar(&ext, s)).collect())?;
        c = c.add(&idem.scale(&ci))?;
    }
    out.ez = hensel_lift(&coeffs, &c)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn alg(a: AlgebraScheme) -> Arc<AlgebraScheme> {
        Arc::new(a)
    }

    #[test]
    fn derivation_on_qx() {
        let d = parse_dring(alg(catalog::dual(&BaseField::Rational)), &["x"], &[vec!["x", "1"]]).unwrap();
        let f = d.parse("x^2").unwrap();
        assert_eq!(d.apply_e(&f).unwrap().coords(), &[f.clone(), d.parse("2*x").unwrap()]);
        let g = d.parse("1/x").unwrap();
        assert_eq!(d.apply_operator(1, &g).unwrap(), d.parse("-1/x^2").unwrap());
        assert!(!d.is_constant(&d.parse("x").unwrap()).unwrap());
        assert!(d.is_constant(&d.parse("7").unwrap()).unwrap());
    }

    #[test]
    fn endomorphism_on_qx() {
        let d = parse_dring(alg(catalog::pair(&BaseField::Rational)), &["x"], &[vec!["x", "x^2"]]).unwrap();
        assert_eq!(d.apply_operator(1, &d.parse("x^3").unwrap()).unwrap(), d.parse("x^6").unwrap());
        assert_eq!(d.apply_operator(1, &d.parse("x + 1").unwrap()).unwrap(), d.parse("x^2 + 1").unwrap());
        // σ(1/x) = 1/x^2, fine; 1/(x - x) is not a function
        assert_eq!(d.apply_operator(1, &d.parse("1/x").unwrap()).unwrap(), d.parse("1/x^2").unwrap());
    }

    #[test]
    fn non_unit_denominator_is_reported() {
        // σ(x) = 0 sends the denominator x to a non-unit
        let d = parse_dring(alg(catalog::pair(&BaseField::Rational)), &["x"], &[vec!["x", "0"]]).unwrap();
        let err = d.apply_e(&d.parse("1/x").unwrap()).unwrap_err();
        assert!(matches!(&err, DError::NonUnit { factor, .. } if factor.contains("projection 1")), "{err}");
    }

    #[test]
    fn coordinate_zero_is_checked() {
        let r = parse_dring(alg(catalog::dual(&BaseField::Rational)), &["x"], &[vec!["x + 1", "1"]]);
        assert!(matches!(r, Err(DError::Coordinate0 { .. })));
    }

    #[test]
    fn prime_structures() {
        let b = BaseField::Rational;
        let p = prime_dring(alg(catalog::sqrt2_product(&b))).unwrap();
        let a = p.parse("5/3").unwrap();
        let img = p.apply_e(&a).unwrap();
        assert_eq!(img.coords(), &[a.clone(), a.clone(), p.parse("0").unwrap()]);
    }

    #[test]
    fn square_root_extension() {
        let d = parse_dring(alg(catalog::dual(&BaseField::Rational)), &["x"], &[vec!["x", "1"]]).unwrap();
        let p = vec![d.parse("-x").unwrap(), d.parse("0").unwrap(), d.parse("1").unwrap()];
        let ext = extend_dring_algebraic(&d, &p, "z", &[]).unwrap();
        let dz = ext.apply_operator(1, &AlgExt::generator(&ext.ext)).unwrap();
        // ∂z · 2z = ∂x = 1
        let two_z = ext.parse("2*z").unwrap();
        assert!(dz.mul(&two_z).is_one());
    }
}
