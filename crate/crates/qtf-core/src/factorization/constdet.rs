//! Factorization of Hermitian matrices with constant negative determinant.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::laurent::{sym_long_div, Poly, SymType};
use crate::lmatrix::LMatrix2;

/// U = X·diag(√μ1, √μ2) with X exact and μ1, μ2 > 0.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledFactor {
    pub x: LMatrix2,
    pub mu: [Scalar; 2],
}

impl ScaledFactor {
    pub fn exact(x: LMatrix2) -> Self {
        ScaledFactor { x, mu: [Scalar::one(), Scalar::one()] }
    }

    /// X·diag(μ1, −μ2)·X⋆, which equals U·diag(1,−1)·U⋆.
    pub fn product(&self) -> LMatrix2 {
        let d = LMatrix2::diag(Poly::constant(self.mu[0].clone()), Poly::constant(-&self.mu[1]));
        self.x.mul(&d).mul(&self.x.star())
    }

    /// U itself when both square roots lie in the tower.
    pub fn materialize(&self) -> Option<LMatrix2> {
        let s0 = self.mu[0].sqrt_exact(6)?;
        let s1 = self.mu[1].sqrt_exact(6)?;
        let m = &self.x.m;
        Some(LMatrix2::new(m[0][0].scale(&s0), m[0][1].scale(&s1), m[1][0].scale(&s0), m[1][1].scale(&s1)))
    }

    /// L·U for an exact matrix L.
    pub fn left(&self, l: &LMatrix2) -> ScaledFactor {
        ScaledFactor { x: l.mul(&self.x), mu: self.mu.clone() }
    }
}

/// The constant value of a nonzero monomial-free determinant.
pub fn constant_det(a: &LMatrix2) -> Option<Scalar> {
    let d = a.det();
    (d.nterms() == 1 && d.ldeg() == 0).then(|| d.lead())
}

fn neg_const_det(a: &LMatrix2) -> Result<Scalar> {
    if !a.is_hermitian() {
        return Err(Error::Precondition("matrix is not Hermitian".into()));
    }
    match constant_det(a) {
        Some(c) if c.signum() < 0 => Ok(c),
        _ => Err(Error::Precondition(format!("determinant {} is not a negative constant", a.det()))),
    }
}

/// Type of A12, or None when A12 = 0.
pub fn alpha_of(a: &LMatrix2) -> Result<Option<SymType>> {
    a.m[0][1].sym().map(|s| s.ty()).ok_or_else(|| Error::NoSymmetry("off-diagonal entry".into()))
}

/// Congruences V with A_K = V_{K−1}···V_0·A·V_0⋆···V_{K−1}⋆ having a zero entry.
pub fn shrink_offdiag(a: &LMatrix2) -> Result<(Vec<LMatrix2>, LMatrix2)> {
    if let Some(t) = alpha_of(a)? {
        if t.eps == -1 && t.c % 2 == 0 {
            return Err(Error::Precondition("off-diagonal type −z^(2k) needs the case-4 construction".into()));
        }
    }
    let mut chain = Vec::new();
    let mut m = a.clone();
    while m.entries().all(|e| !e.is_zero()) {
        let before = m.m[1][0].len();
        let v = if m.m[0][0].len() <= m.m[1][0].len() {
            let q = sym_long_div(&m.m[1][0], &m.m[0][0])?.q;
            LMatrix2::new(Poly::one(), Poly::zero(), -q, Poly::one())
        } else {
            let q = sym_long_div(&m.m[0][1], &m.m[1][1])?.q;
            LMatrix2::new(Poly::one(), -q, Poly::zero(), Poly::one())
        };
        m = v.mul(&m).mul(&v.star());
        if !(m.m[1][0].len() < before) {
            return Err(Error::Internal("off-diagonal length did not decrease".into()));
        }
        chain.push(v);
    }
    Ok((chain, m))
}

/// Terminal factor of a matrix with a zero entry and constant negative determinant.
fn terminal(a: &LMatrix2, c: &Scalar) -> Result<ScaledFactor> {
    let half = Scalar::from_ratio(1, 2);
    let one = Poly::one();
    let [[a11, a12], [a21, a22]] = &a.m;
    if a12.is_zero() && a21.is_zero() {
        let (c1, c2) = match (a11.nterms(), a22.nterms()) {
            (1, 1) if a11.ldeg() == 0 && a22.ldeg() == 0 => (a11.lead(), a22.lead()),
            _ => return Err(Error::Internal("diagonal entries are not constants".into())),
        };
        if c1.signum() > 0 {
            return Ok(ScaledFactor { x: LMatrix2::identity(), mu: [c1, -&c2] });
        }
        return Ok(ScaledFactor { x: LMatrix2::swap(), mu: [c2, -&c1] });
    }
    let x = if a11.is_zero() {
        let h = a22.scale(&half);
        LMatrix2::new(a12.clone(), a12.clone(), &h + &one, &h - &one)
    } else if a22.is_zero() {
        let h = a11.scale(&half);
        LMatrix2::new(&h + &one, &h - &one, a21.clone(), a21.clone())
    } else {
        return Err(Error::Internal(format!("no zero entry (det {c})")));
    };
    Ok(ScaledFactor { x, mu: [half.clone(), half] })
}

/// A = U·diag(1,−1)·U⋆ for off-diagonal type εz^(2k+1) or z^(2k).
pub fn const_det_factor_cases123(a: &LMatrix2) -> Result<ScaledFactor> {
    let c = neg_const_det(a)?;
    let (chain, ak) = shrink_offdiag(a)?;
    let mut f = terminal(&ak, &c)?;
    for v in chain.iter().rev() {
        let vinv = LMatrix2::new(Poly::one(), -&v.m[0][1], -&v.m[1][0], Poly::one());
        f = f.left(&vinv);
    }
    Ok(f)
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].inv().unwrap();
        for v in m[row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..cols {
                    let s = &m[row][j] * &f;
                    m[r][j] -= &s;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Basis of the nullspace, ordered by free column.
fn nullspace(mut m: Vec<Vec<Scalar>>, cols: usize) -> Vec<Vec<Scalar>> {
    let pivots = rref(&mut m, cols);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = alloc::vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&m[r][free];
        }
        out.push(v);
    }
    out
}

/// Ordinary remainder coefficients of z^s·p modulo the ordinary polynomial `a`.
fn remainder(p: &Poly, s: i64, a: &[Scalar]) -> Vec<Scalar> {
    let n = a.len() - 1;
    let mut out = alloc::vec![Scalar::zero(); n];
    if p.is_zero() {
        return out;
    }
    let shift = p.ldeg() + s;
    debug_assert!(shift >= 0);
    let mut c = alloc::vec![Scalar::zero(); shift as usize];
    c.extend_from_slice(p.coeffs());
    let (_, r) = crate::laurent::division::udivrem(&c, a);
    for (i, v) in r.into_iter().enumerate() {
        out[i] = v;
    }
    out
}

/// A = U·diag(1,−1)·U⋆ for off-diagonal type −z^(2k).
pub fn const_det_factor_case4(a: &LMatrix2) -> Result<ScaledFactor> {
    let c = neg_const_det(a)?;
    let k = match alpha_of(a)? {
        Some(t) if t.eps == -1 && t.c % 2 == 0 => t.c / 2,
        _ => return Err(Error::Precondition("off-diagonal type is not −z^(2k)".into())),
    };
    let [[a11, _], [a21, _]] = &a.m;
    if a11.is_zero() {
        return Err(Error::Internal("A11 vanishes for type −z^(2k)".into()));
    }
    let n = a11.deg();
    if a11.ldeg() != -n {
        return Err(Error::Internal("A11 support is not centred".into()));
    }
    let aord: Vec<Scalar> = a11.coeffs().to_vec();
    let negc = -&c;
    // unknowns V(0..n), W'(0..n); W = d·W' so that d·W⋆ = −C·W'⋆
    let mut basis: Vec<Poly> = Vec::new();
    for j in 0..=n {
        basis.push(a21.shift(j));
    }
    for j in 0..=n {
        basis.push(Poly::monomial(n - k - j, negc.clone()));
    }
    let s = -basis.iter().filter(|p| !p.is_zero()).map(Poly::ldeg).min().unwrap_or(0).min(0);
    let cols = basis.len();
    let rems: Vec<Vec<Scalar>> = basis.iter().map(|p| remainder(p, s, &aord)).collect();
    let rows = (2 * n) as usize;
    let m: Vec<Vec<Scalar>> = (0..rows).map(|r| (0..cols).map(|j| rems[j][r].clone()).collect()).collect();
    let e = nullspace(m, cols);
    if e.is_empty() {
        return Err(Error::Internal("solution space of the congruence is empty".into()));
    }
    let half = Scalar::from_ratio(1, 2);
    let np = (n + 1) as usize;
    for sol in &e {
        let mut u11 = Poly::new(0, sol[..np].to_vec());
        let mut u12 = Poly::new(0, sol[np..].to_vec());
        let keep = u11.has_type(SymType::new(1, n)) && u12.has_type(SymType::new(-1, n));
        if !keep {
            u11 = (&u11 - &u11.star().shift(n)).scale(&half);
            u12 = (&u12 + &u12.star().shift(n)).scale(&half);
        }
        // Å11Å11⋆ − d²Å'12Å'12⋆ with d² = −C
        let dd = &(&u11 * &u11.star()) + &(&u12 * &u12.star()).scale(&c);
        if dd.is_zero() {
            continue;
        }
        let lambda = &a11.lead() / &dd.lead();
        if dd.scale(&lambda) != *a11 {
            return Err(Error::Internal("A11 is not a multiple of the symmetrized square difference".into()));
        }
        let zk = Poly::z(n - k);
        let u21 = (&(a21 * &u11) + &(&zk * &u12.star()).scale(&negc))
            .exact_div(a11)
            .ok_or_else(|| Error::Internal("A11 does not divide the (2,1) numerator".into()))?;
        let u22 = (&(a21 * &u12) + &(&zk * &u11.star()))
            .exact_div(a11)
            .ok_or_else(|| Error::Internal("A11 does not divide the (2,2) numerator".into()))?;
        let f = if lambda.signum() > 0 {
            ScaledFactor { x: LMatrix2::new(u11, u12, u21, u22), mu: [lambda.clone(), &lambda * &negc] }
        } else {
            ScaledFactor { x: LMatrix2::new(u12, u11, u22, u21), mu: [&lambda * &c, -&lambda] }
        };
        return Ok(f);
    }
    Err(Error::Internal("every solution of the congruence is degenerate".into()))
}

/// Dispatches on the off-diagonal type; A12 = 0 is treated as type 1.
pub fn const_det_factor(a: &LMatrix2) -> Result<ScaledFactor> {
    match alpha_of(a)? {
        Some(t) if t.eps == -1 && t.c % 2 == 0 => const_det_factor_case4(a),
        _ => const_det_factor_cases123(a),
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn p(low: i64, c: &[i64]) -> Poly {
        Poly::from_ints(low, c)
    }

    #[test]
    fn diagonal_terminals() {
        let a = LMatrix2::diag(Poly::from_ints(0, &[2]), Poly::from_ints(0, &[-3]));
        let f = const_det_factor(&a).unwrap();
        assert_eq!(f.product(), a);
        let a = LMatrix2::diag(Poly::from_ints(0, &[-2]), Poly::from_ints(0, &[3]));
        let f = const_det_factor(&a).unwrap();
        assert_eq!(f.x, LMatrix2::swap());
        assert_eq!(f.product(), a);
    }

    /// Up(r)·Lo(q)·Up(r2)·diag(2, 1) with off-diagonal type ζ.
    pub(crate) fn sample(case: usize) -> LMatrix2 {
        let (r, q, r2) = match case {
            0 => (p(-1, &[1, 0, 1]), p(0, &[2]), p(-1, &[1, 1, 1])),
            1 => (p(0, &[1, 1]), p(-1, &[1, 1]), p(-1, &[1, 0, 0, 1])),
            2 => (p(0, &[-1, 1]), p(-1, &[1, -1]), p(-1, &[1, 0, 0, -1])),
            _ => (p(-1, &[-1, 0, 1]), p(-1, &[1, 0, -1]), p(-2, &[2, 0, 0, 0, -2])),
        };
        let up = |x: Poly| LMatrix2::new(Poly::one(), x, Poly::zero(), Poly::one());
        let lo = |x: Poly| LMatrix2::new(Poly::one(), Poly::zero(), x, Poly::one());
        up(r).mul(&lo(q)).mul(&up(r2)).mul(&LMatrix2::diag(p(0, &[2]), Poly::one()))
    }

    #[test]
    fn round_trips() {
        for case in 0..4 {
            let u0 = sample(case);
            assert!(crate::lmatrix::compatible_chain(&[&u0]).unwrap());
            let a = u0.signature_product();
            assert!(constant_det(&a).is_some());
            let f = const_det_factor(&a).unwrap();
            assert_eq!(f.product(), a, "case {case}");
            assert!(crate::lmatrix::compatible_chain(&[&f.x]).unwrap());
        }
        let t = alpha_of(&sample(3).signature_product()).unwrap().unwrap();
        assert_eq!((t.eps, t.c % 2), (-1, 0));
    }
}
