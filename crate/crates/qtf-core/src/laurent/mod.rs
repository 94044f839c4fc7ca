//! Laurent polynomials, symmetry and symmetric division.

pub mod division;
pub mod hsqrt;
pub mod poly;
pub mod roots;
pub mod sym;
pub mod upoly;

pub use division::{sym_eea, sym_long_div, DivisionResult};
pub use poly::{Laurent, Poly};
pub use sym::{SymType, Symmetry};
pub use upoly::UPoly;
pub use hsqrt::{hermitian_square_root, spectrum, AlgebraicPoint, ScaledPoly, SqrtFailure};
pub use roots::{CBall, IsolatedRoot};
