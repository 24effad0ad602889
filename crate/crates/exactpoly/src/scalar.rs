//! Base-field scalars: exact rationals, prime-field residues and number-field
//! elements `Q[y]/(P)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coeff::Coeff;
use crate::error::{PolyError, Result};
use crate::kernel;

/// A simple algebraic extension `Q[y]/(P)` with `P` monic and squarefree.
/// Irreducibility of `P` is the caller's assertion; inverses of zero
/// divisors are reported as non-invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    generator: String,
    /// Monic modulus, low degree first; length `degree + 1`.
    modulus: Vec<BigRational>,
}

impl NumberField {
    pub fn new(generator: impl Into<String>, modulus: Vec<BigRational>) -> Result<Self> {
        let mut modulus = modulus;
        kernel::trim(&mut modulus);
        let deg = kernel::degree(&modulus)
            .filter(|d| *d >= 1)
            .ok_or_else(|| PolyError::InvalidField("number field modulus must have degree >= 1".into()))?;
        let lead = modulus[deg].clone();
        let modulus: Vec<BigRational> = modulus.iter().map(|c| c / &lead).collect();
        let dm = kernel::derivative(&modulus, &());
        let (g, _, _) = kernel::xgcd(&modulus, &dm, &());
        if g.len() != 1 {
            return Err(PolyError::InvalidField("number field modulus is not squarefree".into()));
        }
        Ok(NumberField { generator: generator.into(), modulus })
    }

    pub fn generator(&self) -> &str {
        &self.generator
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseField {
    Rational,
    Prime(u64),
    Number(Arc<NumberField>),
}

impl BaseField {
    /// Prime field `F_p`; `p` must be a prime below 2^31.
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(PolyError::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(BaseField::Prime(p))
    }

    /// `0` selects the rationals, a prime selects `F_p`.
    pub fn from_characteristic(c: u64) -> Result<Self> {
        if c == 0 {
            Ok(BaseField::Rational)
        } else {
            BaseField::prime(c)
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Prime(p) => *p,
            _ => 0,
        }
    }

    pub fn generator_name(&self) -> Option<&str> {
        match self {
            BaseField::Number(nf) => Some(nf.generator()),
            _ => None,
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rational => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "F_{p}"),
            BaseField::Number(nf) => {
                write!(f, "Q({}) with {} = 0", nf.generator, fmt_dense(&nf.modulus, &nf.generator))
            }
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug)]
pub struct NfElement {
    field: Arc<NumberField>,
    /// Exactly `degree` coordinates in the power basis `1, y, y^2, ...`.
    coords: Vec<BigRational>,
}

impl PartialEq for NfElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field) && self.coords == other.coords
    }
}

impl Eq for NfElement {}

impl NfElement {
    pub fn new(field: Arc<NumberField>, coords: Vec<BigRational>) -> Self {
        let reduced = kernel::reduce_monic(&coords, &field.modulus, &());
        NfElement { field, coords: reduced }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    fn lift(&self, other: &NfElement) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "number field mismatch"
        );
    }
}

/// An element of a base field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, p: u64 },
    Number(NfElement),
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || PolyError::Syntax { pos: 0, msg: format!("not a rational number: `{text}`") };
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(BigRational::new(n, d))
    } else {
        Ok(BigRational::from_integer(BigInt::from_str(t).map_err(|_| bad())?))
    }
}

fn mod_inv(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    let (mut t, mut new_t): (i64, i64) = (0, 1);
    let (mut r, mut new_r): (i64, i64) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    Some(t.rem_euclid(p as i64) as u64)
}

impl Scalar {
    pub fn from_int(field: &BaseField, n: i64) -> Self {
        match field {
            BaseField::Rational => Scalar::Rational(BigRational::from_integer(n.into())),
            BaseField::Prime(p) => Scalar::Modular { value: n.rem_euclid(*p as i64) as u64, p: *p },
            BaseField::Number(nf) => {
                let mut coords = vec![<BigRational as Zero>::zero(); nf.degree()];
                coords[0] = BigRational::from_integer(n.into());
                Scalar::Number(NfElement { field: nf.clone(), coords })
            }
        }
    }

    pub fn from_rational(field: &BaseField, q: &BigRational) -> Result<Self> {
        match field {
            BaseField::Rational => Ok(Scalar::Rational(q.clone())),
            BaseField::Prime(p) => {
                let pb = BigInt::from(*p);
                let n = q.numer().mod_floor(&pb).to_u64().unwrap();
                let d = q.denom().mod_floor(&pb).to_u64().unwrap();
                let di = mod_inv(d, *p).ok_or(PolyError::DivisionByZero)?;
                Ok(Scalar::Modular { value: ((n as u128 * di as u128) % *p as u128) as u64, p: *p })
            }
            BaseField::Number(nf) => {
                let mut coords = vec![<BigRational as Zero>::zero(); nf.degree()];
                coords[0] = q.clone();
                Ok(Scalar::Number(NfElement { field: nf.clone(), coords }))
            }
        }
    }

    /// Parses an integer or `a/b` literal into the given field.
    pub fn parse(field: &BaseField, text: &str) -> Result<Self> {
        Scalar::from_rational(field, &parse_rational(text)?)
    }

    /// The generator `y` of a number field.
    pub fn generator(nf: &Arc<NumberField>) -> Self {
        let mut coords = vec![<BigRational as Zero>::zero(); nf.degree()];
        if nf.degree() == 1 {
            coords[0] = -nf.modulus[0].clone();
        } else {
            coords[1] = <BigRational as One>::one();
        }
        Scalar::Number(NfElement { field: nf.clone(), coords })
    }

    pub fn field(&self) -> BaseField {
        match self {
            Scalar::Rational(_) => BaseField::Rational,
            Scalar::Modular { p, .. } => BaseField::Prime(*p),
            Scalar::Number(e) => BaseField::Number(e.field.clone()),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// Converts a rational or number-field element with rational value into
    /// another field (rationals into `F_p` or a number field).
    pub fn convert(&self, target: &BaseField) -> Result<Scalar> {
        match (self, target) {
            (Scalar::Rational(q), _) => Scalar::from_rational(target, q),
            (Scalar::Modular { p, .. }, BaseField::Prime(p2)) if p == p2 => Ok(self.clone()),
            (Scalar::Number(e), BaseField::Number(nf)) if &e.field == nf => Ok(self.clone()),
            (Scalar::Number(e), _) if e.coords.iter().skip(1).all(|c| Zero::is_zero(c)) => {
                Scalar::from_rational(target, &e.coords[0])
            }
            _ => Err(PolyError::FieldMismatch(format!("cannot convert {self} into {target}"))),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => Zero::is_zero(q),
            Scalar::Modular { value, .. } => *value == 0,
            Scalar::Number(e) => e.coords.iter().all(|c| Zero::is_zero(c)),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => One::is_one(q),
            Scalar::Modular { value, .. } => *value == 1,
            Scalar::Number(e) => One::is_one(&e.coords[0]) && e.coords.iter().skip(1).all(|c| Zero::is_zero(c)),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => (!Zero::is_zero(q)).then(|| Scalar::Rational(q.recip())),
            Scalar::Modular { value, p } => mod_inv(*value, *p).map(|v| Scalar::Modular { value: v, p: *p }),
            Scalar::Number(e) => kernel::inv_mod(&e.coords, &e.field.modulus, &())
                .map(|coords| Scalar::Number(NfElement { field: e.field.clone(), coords })),
        }
    }

    pub fn pow(&self, e: u64) -> Scalar {
        Coeff::pow(self, e)
    }
}

fn fmt_dense(coords: &[BigRational], var: &str) -> String {
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (i, c) in coords.iter().enumerate().rev() {
        if Zero::is_zero(c) {
            continue;
        }
        let neg = Signed::is_negative(c);
        let a = c.abs();
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let body = if mono.is_empty() {
            a.to_string()
        } else if One::is_one(&a) {
            mono
        } else {
            format!("{a}*{mono}")
        };
        parts.push((neg, body));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (idx, (neg, body)) in parts.into_iter().enumerate() {
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        s.push_str(&body);
    }
    s
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
            Scalar::Number(e) => write!(f, "{}", fmt_dense(&e.coords, &e.field.generator)),
        }
    }
}

impl Coeff for Scalar {
    type Ctx = BaseField;

    fn ctx(&self) -> BaseField {
        self.field()
    }
    fn zero(ctx: &BaseField) -> Self {
        Scalar::from_int(ctx, 0)
    }
    fn one(ctx: &BaseField) -> Self {
        Scalar::from_int(ctx, 1)
    }
    fn from_scalar(ctx: &BaseField, s: &Scalar) -> Self {
        s.convert(ctx).unwrap_or_else(|e| panic!("{e}"))
    }
    fn characteristic(ctx: &BaseField) -> u64 {
        ctx.characteristic()
    }
    fn from_i64(ctx: &BaseField, n: i64) -> Self {
        Scalar::from_int(ctx, n)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, p }, Scalar::Modular { value: b, p: q }) if p == q => {
                Scalar::Modular { value: (a + b) % p, p: *p }
            }
            (Scalar::Number(a), Scalar::Number(b)) => {
                a.lift(b);
                let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
                Scalar::Number(NfElement { field: a.field.clone(), coords })
            }
            _ => self.add(&rhs.convert(&self.field()).unwrap_or_else(|e| panic!("{e}"))),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, p }, Scalar::Modular { value: b, p: q }) if p == q => {
                Scalar::Modular { value: ((*a as u128 * *b as u128) % *p as u128) as u64, p: *p }
            }
            (Scalar::Number(a), Scalar::Number(b)) => {
                a.lift(b);
                let coords = kernel::mul_mod(&a.coords, &b.coords, &a.field.modulus, &());
                Scalar::Number(NfElement { field: a.field.clone(), coords })
            }
            (Scalar::Number(a), Scalar::Rational(q)) | (Scalar::Rational(q), Scalar::Number(a)) => {
                let coords = a.coords.iter().map(|x| x * q).collect();
                Scalar::Number(NfElement { field: a.field.clone(), coords })
            }
            _ => self.mul(&rhs.convert(&self.field()).unwrap_or_else(|e| panic!("{e}"))),
        }
    }
    fn neg(&self) -> Self {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, p } => Scalar::Modular { value: (p - value) % p, p: *p },
            Scalar::Number(a) => {
                Scalar::Number(NfElement { field: a.field.clone(), coords: a.coords.iter().map(|x| -x).collect() })
            }
        }
    }
    fn inv(&self) -> Option<Self> {
        Scalar::inv(self)
    }
    fn mul_scalar(&self, s: &Scalar) -> Self {
        self.mul(s)
    }
    fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if Signed::is_negative(q))
    }
    fn is_compound(&self) -> bool {
        match self {
            Scalar::Number(e) => e.coords.iter().filter(|c| !Zero::is_zero(*c)).count() > 1
                || e.coords.iter().skip(1).any(|c| !Zero::is_zero(c) && Signed::is_negative(c)),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rationals_stay_reduced() {
        let a = Scalar::parse(&BaseField::Rational, "6/-4").unwrap();
        assert_eq!(a, Scalar::Rational(q(-3, 2)));
        assert_eq!(a.to_string(), "-3/2");
    }

    #[test]
    fn prime_field_residues() {
        let f = BaseField::prime(7).unwrap();
        let a = Scalar::parse(&f, "-1/3").unwrap();
        // 3 * 2 = 6 = -1 mod 7
        assert_eq!(a, Scalar::Modular { value: 2, p: 7 });
        assert!(a.mul(&Scalar::from_int(&f, 3)).add(&Scalar::one(&f)).is_zero());
        assert!(Scalar::parse(&f, "1/7").is_err());
        assert!(BaseField::prime(9).is_err());
    }

    #[test]
    fn sqrt_two_field() {
        let nf = Arc::new(NumberField::new("r", vec![q(-2, 1), q(0, 1), q(1, 1)]).unwrap());
        let r = Scalar::generator(&nf);
        let two = Scalar::from_int(&BaseField::Number(nf.clone()), 2);
        assert_eq!(r.mul(&r), two);
        let inv = r.inv().unwrap();
        assert_eq!(inv.to_string(), "1/2*r");
        assert!(NumberField::new("r", vec![q(1, 1), q(2, 1), q(1, 1)]).is_err());
    }
}
