use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    DivisionByZero,
    NegativeSqrt,
    Parse(String),
    Precondition(String),
    NoSymmetry(String),
    Incompatible(String),
    /// A certified residual exceeded the tolerance, or an internal check failed.
    Internal(String),
    /// The construction would need coefficients outside the real tower.
    LeavesTower(String),
    PrecisionCap(u32),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NegativeSqrt => write!(f, "square root of a negative number"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::Precondition(m) => write!(f, "precondition failed: {m}"),
            Error::NoSymmetry(m) => write!(f, "no symmetry: {m}"),
            Error::Incompatible(m) => write!(f, "incompatible symmetry: {m}"),
            Error::Internal(m) => write!(f, "internal check failed: {m}"),
            Error::LeavesTower(m) => write!(f, "result leaves the radical tower: {m}"),
            Error::PrecisionCap(p) => write!(f, "precision cap of {p} bits exceeded"),
        }
    }
}

