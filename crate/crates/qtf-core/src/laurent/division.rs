//! Division, gcd and the symmetric Euclidean algorithm.

use alloc::vec::Vec;

use super::poly::Poly;
use super::sym::{SymType, Symmetry};
use crate::error::{Error, Result};
use crate::field::Scalar;

/// Quotient and remainder with a = b·q + r.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisionResult {
    pub q: Poly,
    pub r: Poly,
}

/// Ordinary polynomial division over the scalar field (ascending coefficients).
pub(crate) fn udivrem(a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let mut r: Vec<Scalar> = a.to_vec();
    let db = b.len() - 1;
    let lb_inv = b[db].inv().expect("nonzero divisor");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = alloc::vec![Scalar::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let t = &r[i + db] * &lb_inv;
        if !t.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    let v = &r[i + j] - &(&t * bj);
                    r[i + j] = v;
                }
            }
        }
        q[i] = t;
    }
    r.truncate(db);
    while r.last().is_some_and(|x| x.is_zero()) {
        r.pop();
    }
    (q, r)
}

impl Poly {
    /// Splits u = z^s·U(z) with U an ordinary polynomial and U(0) ≠ 0.
    pub(crate) fn split_monomial(&self) -> (i64, Vec<Scalar>) {
        (self.ldeg(), self.coeffs().to_vec())
    }

    pub(crate) fn from_upoly(shift: i64, c: Vec<Scalar>) -> Poly {
        Poly::new(shift, c)
    }

    /// a / b when b divides a in the Laurent ring.
    pub fn exact_div(&self, b: &Poly) -> Option<Poly> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (sa, ca) = self.split_monomial();
        let (sb, cb) = b.split_monomial();
        let (q, r) = udivrem(&ca, &cb);
        if r.is_empty() {
            Some(Poly::from_upoly(sa - sb, q))
        } else {
            None
        }
    }

    pub fn divides(&self, a: &Poly) -> bool {
        a.exact_div(self).is_some()
    }

    /// A unit (nonzero scalar times a monomial).
    pub fn is_unit(&self) -> bool {
        self.nterms() == 1
    }

    /// Monic gcd with ldeg 0; gcd(0, 0) = 0.
    pub fn gcd_monic(&self, o: &Poly) -> Poly {
        if self.is_zero() && o.is_zero() {
            return Poly::zero();
        }
        let mut a = self.coeffs().to_vec();
        let mut b = o.coeffs().to_vec();
        if a.len() < b.len() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let (_, r) = udivrem(&a, &b);
            a = b;
            b = r;
        }
        let lc = a.last().unwrap().inv().unwrap();
        let g = Poly::new(0, a.iter().map(|x| x * &lc).collect());
        // strip any z-power (cannot occur when inputs are z-free, kept for safety)
        g.shift(-g.ldeg())
    }

    /// Normalized gcd: Sym = 1 and g⋆ = g when the monic gcd has type +z^{2m},
    /// otherwise the monic gcd itself.
    pub fn sym_gcd(&self, o: &Poly) -> Result<Poly> {
        if self.is_zero() && o.is_zero() {
            return Err(Error::Precondition("gcd of two zero polynomials".into()));
        }
        Ok(normalize_gcd(self.gcd_monic(o)))
    }

    /// Multiplicity of the zero z0 ≠ 0.
    pub fn mz(&self, z0: &Scalar) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::Precondition("multiplicity in the zero polynomial".into()));
        }
        if z0.is_zero() {
            return Err(Error::Precondition("multiplicity at z0 = 0".into()));
        }
        let (_, mut c) = self.split_monomial();
        let mut m = 0;
        loop {
            // synthetic division by (z - z0)
            let n = c.len();
            if n < 2 {
                return Ok(m);
            }
            let mut q = alloc::vec![Scalar::zero(); n - 1];
            let mut carry = Scalar::zero();
            for i in (0..n).rev() {
                let v = &c[i] + &(&carry * z0);
                if i == 0 {
                    if !v.is_zero() {
                        return Ok(m);
                    }
                } else {
                    q[i - 1] = v.clone();
                    carry = v;
                }
            }
            c = q;
            m += 1;
        }
    }

    /// Order of the zero at z = 1.
    pub fn vmo(&self) -> Result<u32> {
        self.mz(&Scalar::one())
    }

    /// Order of the zero at z = −1.
    pub fn sr(&self) -> Result<u32> {
        self.mz(&Scalar::from_int(-1))
    }

    /// Checks ε = (−1)^{mz(u,1)} and odd(c) = odd(mz(u,1) + mz(u,−1)).
    pub fn parity_check(&self) -> Result<(bool, bool)> {
        let t = self
            .sym_type()
            .ok_or_else(|| Error::NoSymmetry("parity check needs a nonzero symmetric polynomial".into()))?;
        let m1 = self.vmo()? as i64;
        let mm1 = self.sr()? as i64;
        let eps_ok = (t.eps == 1) == (m1 % 2 == 0);
        let c_ok = (t.c - m1 - mm1).rem_euclid(2) == 0;
        Ok((eps_ok, c_ok))
    }
}

pub(crate) fn normalize_gcd(g: Poly) -> Poly {
    if g.is_zero() {
        return g;
    }
    match g.sym_type() {
        Some(t) if t.eps == 1 && t.c % 2 == 0 => g.shift(-t.c / 2),
        _ => g,
    }
}

fn sym_of(p: &Poly, what: &str) -> Result<Symmetry> {
    p.sym().ok_or_else(|| Error::NoSymmetry(alloc::format!("{what} has no symmetry")))
}

/// One step q1 = a(M_a)/b(M_b)·z^{M_a−M_b} + a(m_a)/b(m_b)·z^{m_a−m_b}.
pub fn sym_div_step(a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    sym_of(a, "dividend")?;
    sym_of(b, "divisor")?;
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if a.len() <= b.len() {
        return Err(Error::Precondition("division step needs len(a) > len(b)".into()));
    }
    let q1 = Poly::from_pairs([
        (a.deg() - b.deg(), &a.lead() / &b.lead()),
        (a.ldeg() - b.ldeg(), &a.trail() / &b.trail()),
    ]);
    let a1 = a - &(b * &q1);
    Ok((q1, a1))
}

/// Case number (1)–(4) of the long division for the pair of types.
pub fn division_case(ta: SymType, tb: SymType) -> u8 {
    let same = ta.eps == tb.eps;
    let odd = (ta.c - tb.c).rem_euclid(2) == 1;
    match (same, odd) {
        (true, true) => 1,
        (false, true) => 2,
        (true, false) => 3,
        (false, false) => 4,
    }
}

/// Long division that keeps symmetry: a = b·q + r, Sym r = Sym a = Sym b·Sym q.
pub fn sym_long_div(a: &Poly, b: &Poly) -> Result<DivisionResult> {
    sym_of(a, "dividend")?;
    sym_of(b, "divisor")?;
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if a.len() < b.len() {
        return Ok(DivisionResult { q: Poly::zero(), r: a.clone() });
    }
    let mut q = Poly::zero();
    let mut r = a.clone();
    while !r.is_zero() && r.len() > b.len() {
        let before = r.len();
        let (q1, r1) = sym_div_step(&r, b)?;
        if !(r1.len() < before) {
            return Err(Error::Internal("symmetric division step did not shorten".into()));
        }
        q = &q + &q1;
        r = r1;
    }
    if !r.is_zero() && r.len() == b.len() {
        let ta = a.sym_type().unwrap();
        let tb = b.sym_type().unwrap();
        if division_case(ta, tb) == 3 {
            let qd = Poly::monomial(r.deg() - b.deg(), &r.lead() / &b.lead());
            r = &r - &(b * &qd);
            q = &q + &qd;
        }
    }
    Ok(DivisionResult { q, r })
}

/// Classical extended Euclid on the Laurent ring: a·u + b·v = g (monic gcd).
pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let (sa, ca) = a.split_monomial();
    let (sb, cb) = b.split_monomial();
    // invariants: r_i = A·s_i + B·t_i over ordinary polynomials
    let mut r0 = ca;
    let mut r1 = cb;
    let mut s0 = Poly::one();
    let mut s1 = Poly::zero();
    let mut t0 = Poly::zero();
    let mut t1 = Poly::one();
    while !r1.is_empty() {
        let (q, r) = udivrem(&r0, &r1);
        let qp = Poly::new(0, q);
        let s2 = &s0 - &(&qp * &s1);
        let t2 = &t0 - &(&qp * &t1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let lc = r0.last().unwrap().inv().unwrap();
    let g = Poly::new(0, r0.iter().map(|x| x * &lc).collect());
    let u = s0.scale(&lc).shift(-sa);
    let v = t0.scale(&lc).shift(-sb);
    (u, v, g)
}

/// EEA with symmetry: a·u + b·v = r = gcd(a, b) with Sym a·Sym u = Sym b·Sym v = Sym r.
pub fn sym_eea(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
    let sa = sym_of(a, "first argument")?;
    let sb = sym_of(b, "second argument")?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::Precondition("extended gcd of two zero polynomials".into()));
    }
    if a.is_zero() {
        return Ok((Poly::zero(), Poly::one(), b.clone()));
    }
    if b.is_zero() {
        return Ok((Poly::one(), Poly::zero(), a.clone()));
    }
    let (u1, u2, g) = ext_gcd(a, b);
    let r = normalize_gcd(g.clone());
    // r = κ·z^m·g
    let k = &r.lead() / &g.lead();
    let m = r.ldeg() - g.ldeg();
    let u1 = u1.scale(&k).shift(m);
    let u2 = u2.scale(&k).shift(m);
    let tr = r.sym_type().ok_or_else(|| Error::Internal("gcd without symmetry".into()))?;
    let ta = sa.ty().unwrap();
    let tb = sb.ty().unwrap();
    let half = Scalar::from_ratio(1, 2);
    let fold = |w: &Poly, t: SymType| -> Poly {
        // (w(z) + w(z⁻¹)·Sym r/Sym a)/2
        let ratio = tr.div(t);
        let mut s = w.star().shift(ratio.c);
        if ratio.eps < 0 {
            s = -s;
        }
        (w + &s).scale(&half)
    };
    let mut u = fold(&u1, ta);
    let mut v = fold(&u2, tb);
    // shorten u modulo b/r and compensate in v
    let bq = b.exact_div(&r).ok_or_else(|| Error::Internal("gcd does not divide b".into()))?;
    if !u.is_zero() && u.len() >= bq.len() {
        let aq = a.exact_div(&r).ok_or_else(|| Error::Internal("gcd does not divide a".into()))?;
        let k = sym_long_div(&u, &bq)?.q;
        u = &u - &(&k * &bq);
        v = &v + &(&k * &aq);
    }
    Ok((u, v, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(low: i64, c: &[i64]) -> Poly {
        Poly::from_ints(low, c)
    }

    #[test]
    fn division_examples() {
        let (q, a1) = sym_div_step(&p(-2, &[1, 0, 0, 0, 1]), &p(-1, &[1, 0, 1])).unwrap();
        assert_eq!(q, p(-1, &[1, 0, 1]));
        assert_eq!(a1, p(0, &[-2]));
        let d = sym_long_div(&p(-1, &[1, 0, 1]), &p(-1, &[1, 2, 1])).unwrap();
        assert_eq!(d.q, p(0, &[1]));
        assert_eq!(d.r, p(0, &[-2]));
    }

    #[test]
    fn eea_example() {
        let (u, v, r) = sym_eea(&p(0, &[1, -1]), &p(0, &[1, 1])).unwrap();
        assert_eq!(r, Poly::one());
        assert_eq!(&(&p(0, &[1, -1]) * &u) + &(&p(0, &[1, 1]) * &v), r);
        assert_eq!(u, Poly::from_rats(-1, &[(-1, 4), (1, 4)]));
        assert_eq!(v, Poly::from_rats(-1, &[(1, 4), (1, 4)]));
    }

    #[test]
    fn multiplicities() {
        let u = p(0, &[1, -1]).pow(2) * p(0, &[1, 1]);
        assert_eq!(u.mz(&Scalar::one()).unwrap(), 2);
        assert_eq!(u.mz(&Scalar::from_int(-1)).unwrap(), 1);
        assert_eq!(u.parity_check().unwrap(), (true, true));
    }
}
