//! D-ring structures over finite free algebra schemes: validation and
//! products of algebras, operator rings, local decomposition,
//! prolongations and the iterated Hasse-Schmidt system.

pub mod algebra;
pub mod catalog;
pub mod decomposition;
pub mod dring;
pub mod error;
pub mod factor;
pub mod iteration;
pub mod leibniz;
pub mod prolongation;

pub use algebra::{AlgebraElement, AlgebraScheme, Composition, ValidationReport, Violation};
pub use error::{DError, Result};
pub use leibniz::{leibniz_identities, LeibnizIdentity, Rule};
