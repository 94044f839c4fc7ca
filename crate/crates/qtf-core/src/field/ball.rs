//! Dyadic midpoint-radius intervals.
//!
//! A ball stores `mid`, `rad` and `exp`, and encloses every real in
//! `[(mid - rad)·2^exp, (mid + rad)·2^exp]`. All operations round outward.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ring::Ring;

pub const DEFAULT_PREC: u32 = 256;

#[derive(Clone, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    rad: BigUint,
    exp: i64,
    prec: u32,
}

fn bits_i(x: &BigInt) -> u64 {
    x.magnitude().bits()
}

impl Ball {
    pub fn zero_prec(prec: u32) -> Self {
        Ball { mid: BigInt::zero(), rad: BigUint::zero(), exp: 0, prec }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Ball { mid: BigInt::from(n), rad: BigUint::zero(), exp: 0, prec }.normalize()
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        if x == 0.0 || !x.is_finite() {
            return Self::zero_prec(prec);
        }
        let e = libm::ilogb(x) as i64 - 52;
        let m = libm::ldexp(x, -(e as i32)) as i64;
        Ball { mid: BigInt::from(m), rad: BigUint::zero(), exp: e, prec }.normalize()
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        if q.is_zero() {
            return Self::zero_prec(prec);
        }
        let n = q.numer();
        let d = q.denom();
        let shift = prec as i64 + bits_i(d) as i64 - bits_i(n) as i64 + 4;
        let scaled = if shift >= 0 { n << shift as usize } else { n >> (-shift) as usize };
        let (mid, rem) = num_integer::Integer::div_rem(&scaled, d);
        let rad = if rem.is_zero() && shift >= 0 { BigUint::zero() } else { BigUint::from(2u32) };
        Ball { mid, rad, exp: -shift, prec }.normalize()
    }

    /// Enclosure of √r for a non-negative integer r.
    pub fn sqrt_uint(r: &BigUint, prec: u32) -> Self {
        let shift = 2 * (prec as u64 + 4);
        let scaled = r << shift as usize;
        let s = scaled.sqrt();
        let exact = &s * &s == scaled;
        Ball {
            mid: BigInt::from_biguint(Sign::Plus, s),
            rad: if exact { BigUint::zero() } else { BigUint::one() },
            exp: -(prec as i64 + 4),
            prec,
        }
        .normalize()
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.prec = prec;
        self.normalize()
    }

    fn normalize(mut self) -> Self {
        let b = bits_i(&self.mid).max(self.rad.bits());
        let keep = self.prec as u64 + 4;
        if b > keep {
            let sh = (b - keep) as usize;
            let neg = self.mid.is_negative();
            let mag = self.mid.magnitude() >> sh;
            self.mid = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, mag);
            self.rad = (&self.rad >> sh) + 2u32;
            self.exp += sh as i64;
        }
        if self.mid.is_zero() && self.rad.is_zero() {
            self.exp = 0;
        }
        self
    }

    fn align(a: &Ball, b: &Ball) -> (BigInt, BigUint, BigInt, BigUint, i64) {
        let e = a.exp.min(b.exp);
        let sa = (a.exp - e) as usize;
        let sb = (b.exp - e) as usize;
        (&a.mid << sa, &a.rad << sa, &b.mid << sb, &b.rad << sb, e)
    }

    /// The midpoint as an exact rational.
    pub fn mid_rational(&self) -> BigRational {
        let m = BigRational::from_integer(self.mid.clone());
        let two = BigRational::from_integer(BigInt::from(2));
        if self.exp >= 0 {
            m * num_traits::pow(two, self.exp as usize)
        } else {
            m / num_traits::pow(two, (-self.exp) as usize)
        }
    }

    pub fn mid_f64(&self) -> f64 {
        big_to_f64(&self.mid, self.exp)
    }

    pub fn rad_f64(&self) -> f64 {
        big_to_f64(&BigInt::from_biguint(Sign::Plus, self.rad.clone()), self.exp)
    }

    /// Upper bound on |x| as f64 (rounded up by a relative 1e-12 margin).
    pub fn mag_f64(&self) -> f64 {
        let m = self.mid.magnitude() + &self.rad;
        big_to_f64(&BigInt::from_biguint(Sign::Plus, m), self.exp) * (1.0 + 1e-12)
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.magnitude() <= &self.rad
    }

    /// Sign when the ball excludes zero.
    pub fn sign(&self) -> Option<i32> {
        if self.contains_zero() {
            None
        } else if self.mid.is_negative() {
            Some(-1)
        } else {
            Some(1)
        }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Whether |x| ≤ tol for every point of the ball.
    pub fn le_abs(&self, tol: f64) -> bool {
        self.mag_f64() <= tol
    }

    pub fn neg_ball(&self) -> Ball {
        Ball { mid: -&self.mid, rad: self.rad.clone(), exp: self.exp, prec: self.prec }
    }

    /// Reciprocal; None if the ball contains zero.
    pub fn recip(&self) -> Option<Ball> {
        if self.contains_zero() {
            return None;
        }
        let prec = self.prec;
        let neg = self.mid.is_negative();
        let m = self.mid.magnitude();
        let lo_den = m - &self.rad;
        let hi_den = m + &self.rad;
        let k = prec as u64 + 2 * m.bits() + 8;
        let one = BigUint::one() << k as usize;
        let hi = &one / &lo_den + 1u32;
        let lo = &one / &hi_den;
        let mid = (&hi + &lo) >> 1usize;
        let rad = (&hi - &lo) / 2u32 + 1u32;
        let mid = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, mid);
        Some(Ball { mid, rad, exp: -(k as i64) - self.exp, prec }.normalize())
    }

    pub fn div_ball(&self, o: &Ball) -> Option<Ball> {
        Some(self.times(&o.recip()?))
    }

    /// Square root of the non-negative part of the ball.
    pub fn sqrt(&self) -> Ball {
        let prec = self.prec;
        let lo_i = &self.mid - BigInt::from_biguint(Sign::Plus, self.rad.clone());
        let hi_i = &self.mid + BigInt::from_biguint(Sign::Plus, self.rad.clone());
        let lo = if lo_i.is_negative() { BigUint::zero() } else { lo_i.magnitude().clone() };
        let hi = if hi_i.is_negative() { BigUint::zero() } else { hi_i.magnitude().clone() };
        let top = hi.bits() as i64;
        let mut sh = (2 * (prec as i64 + 4) - top).max(0);
        if (self.exp - sh) % 2 != 0 {
            sh += 1;
        }
        let sh = sh as usize;
        let lo_r = (lo << sh).sqrt();
        let hi_r = (hi << sh).sqrt() + 1u32;
        let mid = (&lo_r + &hi_r) >> 1usize;
        let rad = (&hi_r - &lo_r) / 2u32 + 1u32;
        let e = self.exp - sh as i64;
        Ball { mid: BigInt::from_biguint(Sign::Plus, mid), rad, exp: e / 2, prec }.normalize()
    }

    /// Whether `self` and `o` overlap.
    pub fn overlaps(&self, o: &Ball) -> bool {
        self.minus(o).contains_zero()
    }

    pub fn cmp_mid(&self, o: &Ball) -> Ordering {
        let (a, _, b, _, _) = Ball::align(self, o);
        a.cmp(&b)
    }

    /// Drops the radius (used to keep iterates of Newton steps compact).
    pub fn center(&self) -> Ball {
        Ball { mid: self.mid.clone(), rad: BigUint::zero(), exp: self.exp, prec: self.prec }
    }

    /// Widens the ball by the magnitude of `r`.
    pub fn inflate(&self, r: &Ball) -> Ball {
        let m = r.mag_ball();
        let w = Ball { mid: BigInt::zero(), rad: m.mid.magnitude().clone(), exp: m.exp, prec: self.prec };
        self.plus(&w)
    }

    fn mag_ball(&self) -> Ball {
        Ball {
            mid: BigInt::from_biguint(Sign::Plus, self.mid.magnitude() + &self.rad),
            rad: BigUint::zero(),
            exp: self.exp,
            prec: self.prec,
        }
    }
}

fn big_to_f64(m: &BigInt, e: i64) -> f64 {
    if m.is_zero() {
        return 0.0;
    }
    let b = bits_i(m) as i64;
    let sh = (b - 60).max(0);
    let top = (m >> sh as usize).to_f64().unwrap_or(0.0);
    let e2 = e + sh;
    if e2 > 2000 {
        return if m.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    if e2 < -2000 {
        return 0.0;
    }
    libm::ldexp(top, e2 as i32)
}

impl Ring for Ball {
    fn zero() -> Self {
        Ball::zero_prec(DEFAULT_PREC)
    }
    fn one() -> Self {
        Ball::from_int(1, DEFAULT_PREC)
    }
    fn is_zero(&self) -> bool {
        self.mid.is_zero() && self.rad.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        let (a, ar, b, br, e) = Ball::align(self, o);
        Ball { mid: a + b, rad: ar + br, exp: e, prec: self.prec.max(o.prec) }.normalize()
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.neg_ball())
    }
    fn times(&self, o: &Self) -> Self {
        let rad = self.mid.magnitude() * &o.rad + o.mid.magnitude() * &self.rad + &self.rad * &o.rad;
        Ball { mid: &self.mid * &o.mid, rad, exp: self.exp + o.exp, prec: self.prec.max(o.prec) }
            .normalize()
    }
    fn negated(&self) -> Self {
        self.neg_ball()
    }
    fn from_i64(n: i64) -> Self {
        Ball::from_int(n, DEFAULT_PREC)
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e} ± {:e}]", self.mid_f64(), self.rad_f64())
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.20e}", self.mid_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_encloses() {
        let s = Ball::sqrt_uint(&BigUint::from(2u32), 200);
        let sq = s.times(&s).minus(&Ball::from_int(2, 200));
        assert!(sq.contains_zero());
        assert!(s.rad_f64() < 1e-55);
    }

    #[test]
    fn recip_and_sqrt() {
        let third = Ball::from_int(3, 128).recip().unwrap();
        assert!(third.times(&Ball::from_int(3, 128)).minus(&Ball::from_int(1, 128)).contains_zero());
        let r = Ball::from_int(10, 128).sqrt();
        assert!((r.mid_f64() - libm::sqrt(10.0)).abs() < 1e-14);
        assert!(r.times(&r).minus(&Ball::from_int(10, 128)).contains_zero());
    }
}
