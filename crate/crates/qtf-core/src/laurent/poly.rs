use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::field::{Ring, Scalar};

/// Finitely supported coefficient sequence `k ↦ c_k`, read as Σ c_k z^k.
///
/// Stored as a dense run starting at exponent `low`; the first and last stored
/// coefficients are nonzero, and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<T> {
    low: i64,
    c: Vec<T>,
}

pub type Poly = Laurent<Scalar>;

impl<T: Ring> Laurent<T> {
    pub fn new(low: i64, coeffs: Vec<T>) -> Self {
        let mut p = Laurent { low, c: coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.low += lead as i64;
        }
        if self.c.is_empty() {
            self.low = 0;
        }
    }

    pub fn zero() -> Self {
        Laurent { low: 0, c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(v: T) -> Self {
        Self::new(0, alloc::vec![v])
    }

    pub fn monomial(k: i64, v: T) -> Self {
        Self::new(k, alloc::vec![v])
    }

    /// z^k
    pub fn z(k: i64) -> Self {
        Self::monomial(k, T::one())
    }

    pub fn from_ints(low: i64, coeffs: &[i64]) -> Self {
        Self::new(low, coeffs.iter().map(|&x| T::from_i64(x)).collect())
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, T)>>(pairs: I) -> Self {
        let pairs: Vec<(i64, T)> = pairs.into_iter().collect();
        if pairs.is_empty() {
            return Self::zero();
        }
        let lo = pairs.iter().map(|p| p.0).min().unwrap();
        let hi = pairs.iter().map(|p| p.0).max().unwrap();
        let mut c = alloc::vec![T::zero(); (hi - lo + 1) as usize];
        for (k, v) in pairs {
            let i = (k - lo) as usize;
            c[i] = c[i].plus(&v);
        }
        Self::new(lo, c)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Lowest exponent; 0 for the zero polynomial.
    pub fn ldeg(&self) -> i64 {
        self.low
    }

    /// Highest exponent; `ldeg - 1` for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.low + self.c.len() as i64 - 1
    }

    /// deg − ldeg; −1 for zero so every nonzero polynomial is longer.
    pub fn len(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn nterms(&self) -> usize {
        self.c.len()
    }

    pub fn coeff(&self, k: i64) -> T {
        if k < self.low || k > self.deg() {
            T::zero()
        } else {
            self.c[(k - self.low) as usize].clone()
        }
    }

    pub fn coeff_ref(&self, k: i64) -> Option<&T> {
        if k < self.low || k > self.deg() {
            None
        } else {
            Some(&self.c[(k - self.low) as usize])
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn lead(&self) -> T {
        self.c.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn trail(&self) -> T {
        self.c.first().cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        self.c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(i, v)| (self.low + i as i64, v))
    }

    pub fn plus(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.low.min(o.low);
        let hi = self.deg().max(o.deg());
        let c = (lo..=hi).map(|k| match (self.coeff_ref(k), o.coeff_ref(k)) {
            (Some(a), Some(b)) => a.plus(b),
            (Some(a), None) => a.clone(),
            (None, Some(b)) => b.clone(),
            (None, None) => T::zero(),
        });
        Self::new(lo, c.collect())
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }

    pub fn negated(&self) -> Self {
        Laurent { low: self.low, c: self.c.iter().map(|x| x.negated()).collect() }
    }

    pub fn times(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = alloc::vec![T::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].plus(&a.times(b));
                }
            }
        }
        Self::new(self.low + o.low, c)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.low, self.c.iter().map(|x| x.times(s)).collect())
    }

    /// z^k·self
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Laurent { low: self.low + k, c: self.c.clone() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = r.times(self);
        }
        r
    }

    /// Hermitian conjugate for real coefficients: z ↦ z⁻¹.
    pub fn star(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.c.clone();
        c.reverse();
        Laurent { low: -self.deg(), c }
    }

    /// u(−z)
    pub fn flip(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, x)| if (self.low + i as i64).rem_euclid(2) == 1 { x.negated() } else { x.clone() })
            .collect();
        Self::new(self.low, c)
    }

    /// u(z²)
    pub fn upsample(&self) -> Self {
        Self::from_pairs(self.terms().map(|(k, v)| (2 * k, v.clone())))
    }

    /// Coset sequences: u(z) = u0(z²) + z·u1(z²).
    pub fn coset_split(&self) -> (Self, Self) {
        let mut e = Vec::new();
        let mut o = Vec::new();
        for (k, v) in self.terms() {
            if k.rem_euclid(2) == 0 {
                e.push((k.div_euclid(2), v.clone()));
            } else {
                o.push(((k - 1).div_euclid(2), v.clone()));
            }
        }
        (Self::from_pairs(e), Self::from_pairs(o))
    }

    pub fn coset_merge(u0: &Self, u1: &Self) -> Self {
        u0.upsample().plus(&u1.upsample().shift(1))
    }

    pub fn map<U: Ring, F: Fn(&T) -> U>(&self, f: F) -> Laurent<U> {
        Laurent::new(self.low, self.c.iter().map(f).collect())
    }

    /// Evaluates at a point given z and z⁻¹.
    pub fn eval_with(&self, z: &T, zinv: &T) -> T {
        let mut acc = T::zero();
        for (k, v) in self.terms() {
            let mut t = v.clone();
            let (b, n) = if k >= 0 { (z, k) } else { (zinv, -k) };
            for _ in 0..n {
                t = t.times(b);
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// Sum of coefficients, i.e. the value at z = 1.
    pub fn at_one(&self) -> T {
        self.c.iter().fold(T::zero(), |a, x| a.plus(x))
    }

    /// Value at z = −1.
    pub fn at_minus_one(&self) -> T {
        self.flip().at_one()
    }
}

impl Poly {
    pub fn from_rats(low: i64, coeffs: &[(i64, i64)]) -> Self {
        Self::new(low, coeffs.iter().map(|&(n, d)| Scalar::from_ratio(n, d)).collect())
    }

    pub fn to_f64_pairs(&self) -> Vec<(i64, f64)> {
        self.terms().map(|(k, v)| (k, v.to_f64())).collect()
    }

    /// Divides every coefficient by a nonzero scalar.
    pub fn div_scalar(&self, s: &Scalar) -> Poly {
        let inv = s.inv().expect("division of a polynomial by zero");
        self.scale(&inv)
    }

    pub fn eval(&self, z: &Scalar) -> Scalar {
        let zi = if z.is_zero() { Scalar::zero() } else { z.inv().unwrap() };
        self.eval_with(z, &zi)
    }
}

macro_rules! poly_ops {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<'a, T: Ring> $tr<&'a Laurent<T>> for &'a Laurent<T> {
            type Output = Laurent<T>;
            fn $m(self, o: &Laurent<T>) -> Laurent<T> {
                self.$f(o)
            }
        }
        impl<T: Ring> $tr<Laurent<T>> for Laurent<T> {
            type Output = Laurent<T>;
            fn $m(self, o: Laurent<T>) -> Laurent<T> {
                self.$f(&o)
            }
        }
        impl<'a, T: Ring> $tr<&'a Laurent<T>> for Laurent<T> {
            type Output = Laurent<T>;
            fn $m(self, o: &Laurent<T>) -> Laurent<T> {
                self.$f(o)
            }
        }
    };
}
poly_ops!(Add, add, plus);
poly_ops!(Sub, sub, minus);
poly_ops!(Mul, mul, times);

impl<T: Ring> Neg for &Laurent<T> {
    type Output = Laurent<T>;
    fn neg(self) -> Laurent<T> {
        self.negated()
    }
}

impl<T: Ring> Neg for Laurent<T> {
    type Output = Laurent<T>;
    fn neg(self) -> Laurent<T> {
        self.negated()
    }
}

impl<T: Ring> Ring for Laurent<T> {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn one() -> Self {
        Laurent::one()
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        Laurent::plus(self, o)
    }
    fn minus(&self, o: &Self) -> Self {
        Laurent::minus(self, o)
    }
    fn times(&self, o: &Self) -> Self {
        Laurent::times(self, o)
    }
    fn negated(&self) -> Self {
        Laurent::negated(self)
    }
    fn from_i64(n: i64) -> Self {
        Laurent::constant(T::from_i64(n))
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({})", v)?,
                1 => write!(f, "({})z", v)?,
                _ => write!(f, "({})z^{}", v, k)?,
            }
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Debug for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})z^{}", v, k)?;
        }
        Ok(())
    }
}
