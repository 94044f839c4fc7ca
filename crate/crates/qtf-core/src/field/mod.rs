//! Exact scalars (square-root towers over ℚ) and certified balls.

pub mod ball;
pub mod parse;
pub mod ring;
pub mod scalar;

pub use ball::{Ball, DEFAULT_PREC};
pub use parse::parse_scalar;
pub use ring::Ring;
pub use scalar::{Root, Scalar};
