//! Simple algebraic extensions `C[z]/(P)` of an arbitrary coefficient field,
//! built on the same dense reduction kernel as number fields.

use std::fmt;
use std::sync::Arc;

use crate::coeff::Coeff;
use crate::kernel;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct ExtCtx<C: Coeff> {
    pub base: C::Ctx,
    pub name: String,
    /// Monic modulus, low degree first.
    pub modulus: Vec<C>,
}

impl<C: Coeff> ExtCtx<C> {
    /// Normalizes `modulus` to be monic; `None` if its degree is below 1 or
    /// the leading coefficient is not invertible.
    pub fn new(base: C::Ctx, name: impl Into<String>, modulus: Vec<C>) -> Option<Arc<Self>> {
        let mut m = modulus;
        kernel::trim(&mut m);
        let d = kernel::degree(&m).filter(|d| *d >= 1)?;
        let li = m[d].inv()?;
        let m = kernel::scale(&m, &li);
        Some(Arc::new(ExtCtx { base, name: name.into(), modulus: m }))
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

#[derive(Clone, Debug)]
pub struct AlgExt<C: Coeff> {
    ctx: Arc<ExtCtx<C>>,
    coords: Vec<C>,
}

impl<C: Coeff> PartialEq for AlgExt<C> {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl<C: Coeff> AlgExt<C> {
    pub fn new(ctx: &Arc<ExtCtx<C>>, coords: Vec<C>) -> Self {
        AlgExt { ctx: ctx.clone(), coords: kernel::reduce_monic(&coords, &ctx.modulus, &ctx.base) }
    }

    pub fn from_base(ctx: &Arc<ExtCtx<C>>, c: C) -> Self {
        Self::new(ctx, vec![c])
    }

    pub fn generator(ctx: &Arc<ExtCtx<C>>) -> Self {
        Self::new(ctx, vec![C::zero(&ctx.base), C::one(&ctx.base)])
    }

    pub fn coords(&self) -> &[C] {
        &self.coords
    }

    pub fn ext(&self) -> &Arc<ExtCtx<C>> {
        &self.ctx
    }
}

impl<C: Coeff> fmt::Display for AlgExt<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body = if c.is_compound() || c.is_negative() { format!("({c})") } else { c.to_string() };
            match i {
                0 => write!(f, "{body}")?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{body}*")?;
                    }
                    write!(f, "{}", self.ctx.name)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<C: Coeff> Coeff for AlgExt<C> {
    type Ctx = Arc<ExtCtx<C>>;

    fn ctx(&self) -> Self::Ctx {
        self.ctx.clone()
    }
    fn zero(ctx: &Self::Ctx) -> Self {
        AlgExt { ctx: ctx.clone(), coords: vec![C::zero(&ctx.base); ctx.degree()] }
    }
    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_base(ctx, C::one(&ctx.base))
    }
    fn from_scalar(ctx: &Self::Ctx, s: &Scalar) -> Self {
        Self::from_base(ctx, C::from_scalar(&ctx.base, s))
    }
    fn characteristic(ctx: &Self::Ctx) -> u64 {
        C::characteristic(&ctx.base)
    }
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_base(ctx, C::from_i64(&ctx.base, n))
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
    fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords.iter().skip(1).all(|c| c.is_zero())
    }
    fn add(&self, rhs: &Self) -> Self {
        AlgExt { ctx: self.ctx.clone(), coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.add(b)).collect() }
    }
    fn sub(&self, rhs: &Self) -> Self {
        AlgExt { ctx: self.ctx.clone(), coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.sub(b)).collect() }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let coords = kernel::mul_mod(&self.coords, &rhs.coords, &self.ctx.modulus, &self.ctx.base);
        AlgExt { ctx: self.ctx.clone(), coords }
    }
    fn neg(&self) -> Self {
        AlgExt { ctx: self.ctx.clone(), coords: self.coords.iter().map(|c| c.neg()).collect() }
    }
    fn inv(&self) -> Option<Self> {
        let mut a = self.coords.clone();
        kernel::trim(&mut a);
        if a.is_empty() {
            return None;
        }
        kernel::inv_mod(&a, &self.ctx.modulus, &self.ctx.base).map(|coords| AlgExt { ctx: self.ctx.clone(), coords })
    }
    fn mul_scalar(&self, s: &Scalar) -> Self {
        AlgExt { ctx: self.ctx.clone(), coords: self.coords.iter().map(|c| c.mul_scalar(s)).collect() }
    }
    fn is_compound(&self) -> bool {
        self.coords.iter().filter(|c| !c.is_zero()).count() > 1
    }
}
