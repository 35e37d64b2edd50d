//! Exact computations with Kazhdan–Lusztig polynomials, Hecke algebra
//! characters and chromatic quasisymmetric functions for symmetric groups.

pub mod cache;
pub mod character;
pub mod checks;
pub mod csf;
pub mod error;
pub mod hecke;
pub mod kl;
pub mod lab;
pub mod perm;
pub mod qring;
pub mod symfunc;

pub use error::{Error, Result};
pub use hecke::HeckeElement;
pub use kl::KlTable;
pub use perm::{HessenbergFunction, Permutation};
pub use qring::{IntPoly, Laurent, LaurentQ, RatLaurent};
pub use symfunc::{Basis, Partition, SymmetricFunction};
