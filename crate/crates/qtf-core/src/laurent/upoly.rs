//! Ordinary univariate polynomials over the scalar tower.
//!
//! Used for the variable x = z + z⁻¹ of Hermitian Laurent polynomials, for
//! square-free decomposition and for Sturm sequences.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::Poly;
use crate::field::Scalar;

/// Ascending coefficients; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    c: Vec<Scalar>,
}

impl UPoly {
    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::new(alloc::vec![Scalar::one()])
    }

    pub fn constant(s: Scalar) -> Self {
        UPoly::new(alloc::vec![s])
    }

    /// x − r
    pub fn linear(r: &Scalar) -> Self {
        UPoly::new(alloc::vec![-r, Scalar::one()])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; −1 for zero.
    pub fn degree(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lead(&self) -> Scalar {
        self.c.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = Scalar::zero();
        UPoly::new((0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = alloc::vec![Scalar::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += &(a * b);
                }
            }
        }
        UPoly::new(c)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        UPoly::new(self.c.iter().map(|x| x * s).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = UPoly::one();
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().inv().unwrap())
    }

    pub fn divrem(&self, b: &Self) -> (Self, Self) {
        let (q, r) = super::division::udivrem(&self.c, &b.c);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn exact_div(&self, b: &Self) -> Option<Self> {
        let (q, r) = self.divrem(b);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(self.c.iter().enumerate().skip(1).map(|(i, x)| x * &Scalar::from_int(i as i64)).collect())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, a| acc * x + a.to_f64())
    }

    /// Sign at +∞ (s = 1) or −∞ (s = −1).
    pub fn sign_at_inf(&self, s: i32) -> i32 {
        let l = self.lead().signum();
        if s < 0 && self.degree() % 2 == 1 {
            -l
        } else {
            l
        }
    }

    /// Square-free decomposition f = lc·Π f_i^i with monic f_i (index i−1 holds f_i).
    pub fn squarefree(&self) -> Vec<UPoly> {
        let mut out = Vec::new();
        if self.degree() < 1 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0).unwrap();
        let c = fp.exact_div(&a0).unwrap();
        let mut d = c.sub(&b.derivative());
        while b.degree() >= 1 {
            let a = b.gcd(&d);
            let nb = b.exact_div(&a).unwrap();
            let c = d.exact_div(&a).unwrap();
            d = c.sub(&nb.derivative());
            out.push(a);
            b = nb;
        }
        while out.last().is_some_and(|p| p.degree() == 0) {
            out.pop();
        }
        out
    }

    /// Product of the factors of odd multiplicity (square-free).
    pub fn odd_part(&self) -> UPoly {
        let mut r = UPoly::one();
        for (i, f) in self.squarefree().iter().enumerate() {
            if i % 2 == 0 {
                r = r.mul(f);
            }
        }
        r
    }

    pub fn sturm(&self) -> Vec<UPoly> {
        let mut seq = alloc::vec![self.clone(), self.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let (_, r) = seq[n - 2].divrem(&seq[n - 1]);
            seq.push(r.neg());
        }
        seq.pop();
        seq
    }

    /// Number of distinct real roots in the open interval (lo, hi); None marks ±∞.
    pub fn count_roots(&self, lo: Option<&Scalar>, hi: Option<&Scalar>) -> usize {
        if self.degree() < 1 {
            return 0;
        }
        let sf = self.exact_div(&self.gcd(&self.derivative())).unwrap();
        let seq = sf.sturm();
        let var = |x: Option<&Scalar>, s: i32| -> usize {
            let signs: Vec<i32> = seq
                .iter()
                .map(|p| match x {
                    Some(v) => p.eval(v).signum(),
                    None => p.sign_at_inf(s),
                })
                .filter(|&s| s != 0)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let vlo = var(lo, -1);
        let vhi = var(hi, 1);
        let mut n = vlo.saturating_sub(vhi);
        // Sturm counts (lo, hi]; drop a root sitting at hi.
        if let Some(h) = hi {
            if sf.eval(h).is_zero() {
                n -= 1;
            }
        }
        n
    }

    /// An integer bound B with all real roots in (−B, B).
    pub fn root_bound(&self) -> Scalar {
        let l = self.lead().abs();
        let mut s = Scalar::zero();
        for a in &self.c[..self.c.len() - 1] {
            s += &(&a.abs() / &l);
        }
        let mut b = Scalar::from_int(1);
        let one = Scalar::one();
        let bound = &s + &one;
        while b <= bound {
            b = &b * &Scalar::from_int(2);
        }
        b
    }

    /// Disjoint isolating intervals (lo, hi) with rational ends, one per distinct
    /// real root inside (lo0, hi0), each of width at most `width`.
    pub fn isolate_real(&self, lo0: Option<&Scalar>, hi0: Option<&Scalar>, width: &Scalar) -> Vec<(Scalar, Scalar)> {
        if self.degree() < 1 {
            return Vec::new();
        }
        let sf = self.exact_div(&self.gcd(&self.derivative())).unwrap();
        let b = sf.root_bound();
        let lo = lo0.cloned().unwrap_or_else(|| -&b);
        let hi = hi0.cloned().unwrap_or_else(|| b.clone());
        let mut out = Vec::new();
        let mut stack = alloc::vec![(lo, hi)];
        let half = Scalar::from_ratio(1, 2);
        while let Some((a, c)) = stack.pop() {
            let n = sf.count_roots(Some(&a), Some(&c));
            if n == 0 {
                continue;
            }
            if n == 1 && &c - &a <= *width {
                out.push((a, c));
                continue;
            }
            let m = rational_between(&a, &c, &half);
            if sf.eval(&m).is_zero() {
                out.push((m.clone(), m.clone()));
                let eps = (&c - &a) * Scalar::from_ratio(1, 1024);
                stack.push((a, &m - &eps));
                stack.push((&m + &eps, c));
                // roots strictly inside (m−eps, m) or (m, m+eps) are recovered below
                continue;
            }
            stack.push((a, m.clone()));
            stack.push((m, c));
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.c.iter().map(|x| x.to_f64()).collect()
    }
}

/// A rational point near the weighted midpoint of (a, c).
fn rational_between(a: &Scalar, c: &Scalar, t: &Scalar) -> Scalar {
    let m = a + &(&(c - a) * t);
    if m.is_rational() {
        return m;
    }
    // round to a dyadic rational inside (a, c)
    let w = (c - a).to_f64().abs();
    let mut k = 1i64;
    while (1.0 / k as f64) > w / 8.0 && k < (1 << 60) {
        k *= 2;
    }
    let num = libm::round(m.to_f64() * k as f64) as i64;
    let r = Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(k)));
    if &r > a && &r < c {
        r
    } else {
        m
    }
}

/// The monomial-free poly u(z) written as P(z + z⁻¹) for Hermitian u.
pub fn to_x(u: &Poly) -> Option<UPoly> {
    if u.is_zero() {
        return Some(UPoly::zero());
    }
    if !u.is_hermitian() {
        return None;
    }
    let n = u.deg();
    // D_k(x) = z^k + z^{-k}: D_0 = 2, D_1 = x, D_{k+1} = x·D_k − D_{k−1}
    let x = UPoly::new(alloc::vec![Scalar::zero(), Scalar::one()]);
    let mut dk_1 = UPoly::constant(Scalar::from_int(2));
    let mut dk = x.clone();
    let mut p = UPoly::constant(u.coeff(0));
    for k in 1..=n {
        p = p.add(&dk.scale(&u.coeff(k)));
        let next = x.mul(&dk).sub(&dk_1);
        dk_1 = dk;
        dk = next;
    }
    Some(p)
}

/// P(z + z⁻¹) as a Laurent polynomial.
pub fn from_x(p: &UPoly) -> Poly {
    let x = Poly::new(-1, alloc::vec![Scalar::one(), Scalar::zero(), Scalar::one()]);
    let mut acc = Poly::zero();
    for a in p.coeffs().iter().rev() {
        acc = &(&acc * &x) + &Poly::constant(a.clone());
    }
    acc
}

/// Recognizes a float as a rational with denominator ≤ `max_den`.
pub fn recognize_rational(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() || x.abs() > 1e15 {
        return None;
    }
    // continued fraction convergents
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut y = x;
    for _ in 0..40 {
        let a = libm::floor(y);
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let approx = h1 as f64 / k1 as f64;
        if (approx - x).abs() <= 1e-9 * (1.0 + x.abs()) {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = y - a;
        if frac.abs() < 1e-15 {
            break;
        }
        y = 1.0 / frac;
    }
    if k1 != 0 && (h1 as f64 / k1 as f64 - x).abs() <= 1e-9 * (1.0 + x.abs()) {
        return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
    }
    None
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", a)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_substitution_round_trip() {
        let u = Poly::from_ints(-2, &[1, -4, 6, -4, 1]);
        let p = to_x(&u).unwrap();
        assert_eq!(from_x(&p), u);
        assert_eq!(p, UPoly::from_ints(&[4, -4, 1]));
    }

    #[test]
    fn sturm_counts() {
        // (x−1)(x+3)(x−5)²
        let p = UPoly::from_ints(&[-1, 1]).mul(&UPoly::from_ints(&[3, 1])).mul(&UPoly::from_ints(&[-5, 1]).pow(2));
        assert_eq!(p.count_roots(None, None), 3);
        assert_eq!(p.count_roots(Some(&Scalar::from_int(2)), None), 1);
        assert_eq!(p.count_roots(None, Some(&Scalar::from_int(-2))), 1);
        assert_eq!(p.count_roots(Some(&Scalar::from_int(1)), Some(&Scalar::from_int(5))), 0);
        let sf = p.squarefree();
        assert_eq!(sf.len(), 2);
        assert_eq!(p.odd_part(), UPoly::from_ints(&[-1, 1]).mul(&UPoly::from_ints(&[3, 1])));
        let iso = p.isolate_real(None, None, &Scalar::from_ratio(1, 8));
        assert_eq!(iso.len(), 3);
    }
}
