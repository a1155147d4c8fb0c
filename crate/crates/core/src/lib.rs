//! Numerical semigroup rings `k[[H]]`: canonical ideals, almost Gorenstein
//! stratification by Sally rank, quasi-trivial extensions, Ulrich ideals and
//! exact linear algebra over truncations.

pub mod classify;
pub mod corpus;
pub mod error;
pub mod expr;
pub mod extensions;
pub mod families;
pub mod field;
pub mod ideal;
pub mod par;
pub mod presentation;
pub mod semigroup;
pub mod trunc;
pub mod ulrich;

pub use error::{Error, Result};
pub use ideal::{blowup, canonical_ideal, BlowupResult, RelativeIdeal};
pub use semigroup::{NumericalSemigroup, SemigroupInvariants};
