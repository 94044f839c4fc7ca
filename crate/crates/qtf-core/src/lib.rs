#![no_std]
#![doc = "Exact Laurent-polynomial algebra with symmetry, generalized spectral factorization A = U·diag(1,-1)·U⋆, and symmetric quasi-tight framelet filter banks."]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod field;
pub mod laurent;
pub mod lmatrix;
pub mod factorization;
pub mod framelet;
pub mod analysis;

pub use error::{Error, Result};
pub use field::{Ball, Ring, Root, Scalar};
pub use laurent::{Laurent, Poly, SymType, Symmetry, UPoly};
pub use lmatrix::{LMatrix2, SymCertificate};
