//! Exact real numbers of the form Σ qᵢ·√rᵢ.
//!
//! Radicands are distinct square-free positive integers kept in ascending
//! order, with radicand 1 holding the rational part. Square roots of distinct
//! square-free integers are linearly independent over ℚ, so the stored form is
//! canonical and equality is structural.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ball::Ball;
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: Vec<(BigUint, BigRational)>,
}

/// Outcome of a square root: exact in the tower, or an enclosure.
#[derive(Clone, Debug)]
pub enum Root {
    Exact(Scalar),
    Approx(Ball),
}

impl Root {
    pub fn exact(self) -> Option<Scalar> {
        match self {
            Root::Exact(s) => Some(s),
            Root::Approx(_) => None,
        }
    }
}

const TRIAL_BOUND: u64 = 1 << 16;

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            Scalar { terms: alloc::vec![(BigUint::one(), q)] }
        }
    }

    /// q·√r for any positive integer r (square part is pulled out).
    pub fn from_surd(q: BigRational, r: &BigUint) -> Self {
        match squarefree_split(r) {
            Some((s, m)) => {
                let q = q * BigRational::from_integer(BigInt::from(s));
                build(core::iter::once((m, q)))
            }
            None => build(core::iter::once((r.clone(), q))),
        }
    }

    pub fn sqrt_int(r: u64) -> Self {
        Self::from_surd(BigRational::one(), &BigUint::from(r))
    }

    pub fn terms(&self) -> &[(BigUint, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            Some(BigRational::zero())
        } else if self.is_rational() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn radicands(&self) -> impl Iterator<Item = &BigUint> {
        self.terms.iter().map(|t| &t.0).filter(|r| !r.is_one())
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(r, q)| rat_f64(q) * libm::sqrt(r.to_f64().unwrap_or(f64::INFINITY)))
            .sum()
    }

    pub fn to_ball(&self, prec: u32) -> Ball {
        let mut acc = Ball::zero_prec(prec);
        for (r, q) in &self.terms {
            let qb = Ball::from_rational(q, prec + 8);
            let t = if r.is_one() { qb } else { qb.times(&Ball::sqrt_uint(r, prec + 8)) };
            acc = acc.plus(&t);
        }
        acc.with_prec(prec)
    }

    pub fn signum(&self) -> i32 {
        if self.terms.is_empty() {
            return 0;
        }
        if self.is_rational() {
            return if self.terms[0].1.is_positive() { 1 } else { -1 };
        }
        let p = self.split_prime();
        let (a, b) = self.split(&p);
        let sa = a.signum();
        let sb = b.signum();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        let pq = Scalar::from_rational(BigRational::from_integer(BigInt::from(p)));
        sa * (&(&a * &a) - &(&(&b * &b) * &pq)).signum()
    }

    pub fn abs(&self) -> Scalar {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// A base element of the coprime base of the radicands.
    fn split_prime(&self) -> BigUint {
        let rads: Vec<BigUint> = self.radicands().cloned().collect();
        let base = coprime_base(&rads);
        base.into_iter().next().expect("non-rational scalar has a radicand")
    }

    /// Writes self = a + b·√p where no radicand of a or b is divisible by p.
    fn split(&self, p: &BigUint) -> (Scalar, Scalar) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (r, q) in &self.terms {
            if (r % p).is_zero() {
                b.push((r / p, q.clone()));
            } else {
                a.push((r.clone(), q.clone()));
            }
        }
        (build(a), build(b))
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Scalar::from_rational(q.recip()));
        }
        let p = self.split_prime();
        let (a, b) = self.split(&p);
        let pq = Scalar::from_rational(BigRational::from_integer(BigInt::from(p.clone())));
        let norm = &(&a * &a) - &(&(&b * &b) * &pq);
        let sp = Scalar::from_surd(BigRational::one(), &p);
        let conj = &a - &(&b * &sp);
        Ok(&conj * &norm.inv()?)
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut r = Scalar::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// Square root: exact when the result lies in the tower, else a ball.
    pub fn sqrt(&self, prec: u32) -> Result<Root> {
        match self.signum() {
            0 => return Ok(Root::Exact(Scalar::zero())),
            -1 => return Err(Error::NegativeSqrt),
            _ => {}
        }
        if let Some(s) = self.sqrt_exact(6) {
            return Ok(Root::Exact(s));
        }
        Ok(Root::Approx(self.to_ball(prec + 16).sqrt().with_prec(prec)))
    }

    /// Exact square root if it can be found by denesting within `depth`.
    pub fn sqrt_exact(&self, depth: u32) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.signum() < 0 {
            return None;
        }
        if let Some(q) = self.to_rational() {
            return rational_sqrt(&q);
        }
        if depth == 0 {
            return None;
        }
        let p = self.split_prime();
        let (a, b) = self.split(&p);
        let pq = Scalar::from_rational(BigRational::from_integer(BigInt::from(p.clone())));
        let disc = &(&a * &a) - &(&(&b * &b) * &pq);
        let sp = Scalar::from_surd(BigRational::one(), &p);
        let half = Scalar::from_ratio(1, 2);
        if let Some(sd) = disc.sqrt_exact(depth - 1) {
            for cand in [&(&a + &sd) * &half, &(&a - &sd) * &half] {
                if cand.signum() <= 0 {
                    continue;
                }
                if let Some(u) = cand.sqrt_exact(depth - 1) {
                    let v = (&b * &half).checked_div(&u).ok()?;
                    let r = &u + &(&v * &sp);
                    if &(&r * &r) == self {
                        return Some(if r.signum() < 0 { -r } else { r });
                    }
                }
            }
        }
        None
    }
}

fn rat_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn build<I: IntoIterator<Item = (BigUint, BigRational)>>(it: I) -> Scalar {
    let mut map: BTreeMap<BigUint, BigRational> = BTreeMap::new();
    for (r, q) in it {
        if q.is_zero() {
            continue;
        }
        let e = map.entry(r).or_insert_with(BigRational::zero);
        *e += q;
    }
    Scalar { terms: map.into_iter().filter(|(_, q)| !q.is_zero()).collect() }
}

/// Refines a list of integers into a pairwise coprime base (ones dropped).
pub fn coprime_base(xs: &[BigUint]) -> Vec<BigUint> {
    let mut base: Vec<BigUint> = xs.iter().filter(|x| !x.is_one()).cloned().collect();
    base.sort();
    base.dedup();
    loop {
        let mut changed = false;
        'outer: for i in 0..base.len() {
            for j in (i + 1)..base.len() {
                let g = base[i].gcd(&base[j]);
                if !g.is_one() {
                    let a = &base[i] / &g;
                    let b = &base[j] / &g;
                    let mut next: Vec<BigUint> = Vec::new();
                    for (k, x) in base.iter().enumerate() {
                        if k != i && k != j {
                            next.push(x.clone());
                        }
                    }
                    for x in [g, a, b] {
                        if !x.is_one() {
                            next.push(x);
                        }
                    }
                    next.sort();
                    next.dedup();
                    base = next;
                    changed = true;
                    break 'outer;
                }
            }
        }
        if !changed {
            return base;
        }
    }
}

/// n = s²·m with m square-free, or None when trial division cannot certify m.
pub fn squarefree_split(n: &BigUint) -> Option<(BigUint, BigUint)> {
    let mut n = n.clone();
    let mut s = BigUint::one();
    let mut m = BigUint::one();
    let mut p = 2u64;
    while p < TRIAL_BOUND {
        let bp = BigUint::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0u32;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            s *= bp.pow(e / 2);
            if e % 2 == 1 {
                m *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        return Some((s, m));
    }
    let r = n.sqrt();
    if &r * &r == n {
        // n = r² where r has no prime below the bound; r may still be a square, recurse.
        let (s2, m2) = squarefree_split(&r)?;
        // r = s2²·m2 so n = s2⁴·m2²
        return Some((s * &s2 * &s2 * m2, m));
    }
    let b = BigUint::from(TRIAL_BOUND);
    let b3 = &b * &b * &b;
    if n < b3 {
        // n is a prime or a product of two distinct primes above the bound.
        return Some((s, m * n));
    }
    None
}

fn rational_sqrt(q: &BigRational) -> Option<Scalar> {
    if q.is_zero() {
        return Some(Scalar::zero());
    }
    if q.is_negative() {
        return None;
    }
    let n = q.numer().to_biguint()?;
    let d = q.denom().to_biguint()?;
    let nd = &n * &d;
    let (s, m) = squarefree_split(&nd)?;
    let coef = BigRational::new(BigInt::from(s), BigInt::from(d));
    Some(build(core::iter::once((m, coef))))
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        build(self.terms.iter().chain(o.terms.iter()).cloned())
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.is_rational() && o.is_rational() {
            return Scalar::from_rational(&self.terms[0].1 * &o.terms[0].1);
        }
        let mut out = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (r, q) in &self.terms {
            for (s, p) in &o.terms {
                if r.is_one() {
                    out.push((s.clone(), q * p));
                } else if s.is_one() {
                    out.push((r.clone(), q * p));
                } else {
                    let g = r.gcd(s);
                    let rad = (r / &g) * (s / &g);
                    let c = q * p * BigRational::from_integer(BigInt::from_biguint(Sign::Plus, g));
                    out.push((rad, c));
                }
            }
        }
        build(out)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on a zero divisor; use [`Scalar::checked_div`] to handle it.
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(r, q)| (r.clone(), -q)).collect() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}
impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Scalar {
    fn cmp(&self, o: &Self) -> Ordering {
        (self - o).signum().cmp(&0)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        alloc::format!("{}", q.numer())
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (r, q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            let a = q.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if r.is_one() {
                write!(f, "{}", fmt_rat(&a))?;
            } else if a.is_one() {
                write!(f, "sqrt({})", r)?;
            } else {
                write!(f, "{}*sqrt({})", fmt_rat(&a), r)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surd_products() {
        let a = Scalar::sqrt_int(2) * Scalar::from_ratio(1, 4);
        assert_eq!(&a * &a, Scalar::from_ratio(1, 8));
        let b = Scalar::sqrt_int(105) * Scalar::from_ratio(1, 512);
        assert_eq!(&a * &b, Scalar::sqrt_int(210) * Scalar::from_ratio(1, 2048));
    }

    #[test]
    fn inverse_and_sign() {
        let x = Scalar::from_int(1) + Scalar::sqrt_int(2) - Scalar::sqrt_int(3);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert_eq!(x.signum(), 1);
        let z = Scalar::sqrt_int(2) + Scalar::sqrt_int(3) - Scalar::sqrt_int(10);
        assert_eq!(z.signum(), -1);
    }

    #[test]
    fn denesting() {
        let x = Scalar::from_int(5) + Scalar::sqrt_int(6) * Scalar::from_int(2);
        let r = x.sqrt(64).unwrap().exact().unwrap();
        assert_eq!(r, Scalar::sqrt_int(2) + Scalar::sqrt_int(3));
        assert_eq!(Scalar::from_ratio(9, 16).sqrt(64).unwrap().exact(), Some(Scalar::from_ratio(3, 4)));
        let y = (Scalar::from_int(5) - Scalar::sqrt_int(5)) * Scalar::from_ratio(1, 2);
        assert!(matches!(y.sqrt(128).unwrap(), Root::Approx(_)));
    }
}
