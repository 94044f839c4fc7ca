use core::fmt;

use super::poly::Laurent;
use crate::field::Ring;

/// The type εz^c of a symmetric Laurent polynomial.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SymType {
    pub eps: i8,
    pub c: i64,
}

impl SymType {
    pub const ONE: SymType = SymType { eps: 1, c: 0 };

    pub fn new(eps: i8, c: i64) -> Self {
        debug_assert!(eps == 1 || eps == -1);
        SymType { eps, c }
    }

    pub fn mul(self, o: SymType) -> SymType {
        SymType { eps: self.eps * o.eps, c: self.c + o.c }
    }

    pub fn div(self, o: SymType) -> SymType {
        SymType { eps: self.eps * o.eps, c: self.c - o.c }
    }

    /// Type of u⋆ when u has type self.
    pub fn star(self) -> SymType {
        SymType { eps: self.eps, c: -self.c }
    }

    /// Type of u(z²).
    pub fn square_arg(self) -> SymType {
        SymType { eps: self.eps, c: 2 * self.c }
    }

    pub fn z(c: i64) -> SymType {
        SymType { eps: 1, c }
    }

    /// Multiplying by −z^j changes (ε, c) to (−ε, c + j).
    pub fn neg_shift(self, j: i64) -> SymType {
        SymType { eps: -self.eps, c: self.c + j }
    }
}

impl fmt::Display for SymType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.eps, self.c)
    }
}

/// Result of the symmetry operator on a polynomial that has symmetry.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Symmetry {
    /// The zero polynomial.
    Any,
    Type(SymType),
}

impl Symmetry {
    pub fn ty(self) -> Option<SymType> {
        match self {
            Symmetry::Any => None,
            Symmetry::Type(t) => Some(t),
        }
    }

    /// Whether this symmetry is consistent with the type `t`.
    pub fn admits(self, t: SymType) -> bool {
        match self {
            Symmetry::Any => true,
            Symmetry::Type(s) => s == t,
        }
    }
}

pub fn odd(k: i64) -> i64 {
    k.rem_euclid(2)
}

impl<T: Ring + PartialEq> Laurent<T> {
    /// Sym u, or None when u has no symmetry.
    pub fn sym(&self) -> Option<Symmetry> {
        if self.is_zero() {
            return Some(Symmetry::Any);
        }
        let c = self.ldeg() + self.deg();
        let cs = self.coeffs();
        let n = cs.len();
        let mut plus = true;
        let mut minus = true;
        for i in 0..n {
            let a = &cs[i];
            let b = &cs[n - 1 - i];
            if plus && a != b {
                plus = false;
            }
            if minus && *a != b.negated() {
                minus = false;
            }
            if !plus && !minus {
                return None;
            }
        }
        if plus {
            Some(Symmetry::Type(SymType::new(1, c)))
        } else {
            Some(Symmetry::Type(SymType::new(-1, c)))
        }
    }

    /// Sym u for a nonzero polynomial with symmetry.
    pub fn sym_type(&self) -> Option<SymType> {
        self.sym().and_then(Symmetry::ty)
    }

    pub fn has_symmetry(&self) -> bool {
        self.sym().is_some()
    }

    /// Whether u has type `t` (the zero polynomial has every type).
    pub fn has_type(&self, t: SymType) -> bool {
        self.sym().is_some_and(|s| s.admits(t))
    }

    /// u⋆ = u
    pub fn is_hermitian(&self) -> bool {
        self.star() == *self
    }
}
