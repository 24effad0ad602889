//! Exact arithmetic for the D-ring toolkit: base-field scalars, sparse
//! multivariate polynomials, rational functions, algebraic extensions,
//! an expression parser, Gröbner bases and dense linear algebra.

pub mod algext;
pub mod coeff;
pub mod error;
pub mod gcd;
pub mod groebner;
pub mod kernel;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ratfun;
pub mod scalar;

pub use algext::{AlgExt, ExtCtx};
pub use coeff::Coeff;
pub use error::{PolyError, Result};
pub use gcd::gcd;
pub use groebner::{groebner_basis, Ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_poly, parse_poly_over, parse_ratfun, parse_scalar, parse_with};
pub use poly::{MultiPoly, PolyCtx};
pub use ratfun::{FnField, RatFun};
pub use scalar::{BaseField, NfElement, NumberField, Scalar};
