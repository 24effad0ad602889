use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// An exact commutative ring (in practice almost always a field) whose
/// elements carry enough context to build constants of the same ring.
///
/// Method names shadow `std::ops`; the operator traits are implemented
/// separately on the concrete types where convenient.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    /// Embeds a base-field scalar. Panics if the scalar lives in an
    /// incompatible field; callers are expected to stay within one base.
    fn from_scalar(ctx: &Self::Ctx, s: &Scalar) -> Self;
    fn characteristic(ctx: &Self::Ctx) -> u64;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero and non-units.
    fn inv(&self) -> Option<Self>;

    fn mul_scalar(&self, s: &Scalar) -> Self {
        if s.is_one() {
            return self.clone();
        }
        self.mul(&Self::from_scalar(&self.ctx(), s))
    }

    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        let one = Self::one(ctx);
        let mut acc = Self::zero(ctx);
        let mut base = one;
        let mut m = n.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.add(&base);
            }
            base = base.add(&base);
            m >>= 1;
        }
        if n < 0 {
            acc.neg()
        } else {
            acc
        }
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.ctx());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// True when the printed form starts with a minus sign that can be
    /// pulled out in front of a term.
    fn is_negative(&self) -> bool {
        false
    }

    /// True when the printed form must be parenthesized as a factor.
    fn is_compound(&self) -> bool {
        false
    }
}

impl Coeff for BigRational {
    type Ctx = ();

    fn ctx(&self) -> Self::Ctx {}
    fn zero(_: &()) -> Self {
        <BigRational as Zero>::zero()
    }
    fn one(_: &()) -> Self {
        <BigRational as One>::one()
    }
    fn from_scalar(_: &(), s: &Scalar) -> Self {
        match s {
            Scalar::Rational(q) => q.clone(),
            other => panic!("cannot embed {other:?} into the rationals"),
        }
    }
    fn characteristic(_: &()) -> u64 {
        0
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}
