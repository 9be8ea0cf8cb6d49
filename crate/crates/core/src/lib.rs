//! Defining equations of Rees algebras and special fiber rings of direct sums of
//! powers of the maximal ideal and of truncations of complete intersections,
//! together with a Groebner engine and brute-force oracles that check them.

pub mod error;
pub mod field;
pub mod groebner;
pub mod polyring;
pub mod reescomb;
pub mod truncation;

pub use error::{Error, Result};
pub use field::{Coeff, FieldSpec};
pub mod verifier;
