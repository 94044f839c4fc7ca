//! 2×2 Laurent polynomial matrices: symmetry certificates, strong inverses
//! and the diagonal normal form.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::laurent::{hsqrt, sym_eea, sym_long_div, AlgebraicPoint, Poly, SymType, Symmetry};

/// A 2×2 matrix over the Laurent ring, indexed from zero.
#[derive(Clone, PartialEq)]
pub struct LMatrix2 {
    pub m: [[Poly; 2]; 2],
}

impl fmt::Debug for LMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1])
    }
}

impl LMatrix2 {
    pub fn new(a11: Poly, a12: Poly, a21: Poly, a22: Poly) -> Self {
        LMatrix2 { m: [[a11, a12], [a21, a22]] }
    }

    pub fn identity() -> Self {
        Self::diag(Poly::one(), Poly::one())
    }

    pub fn zero() -> Self {
        Self::diag(Poly::zero(), Poly::zero())
    }

    pub fn diag(a: Poly, b: Poly) -> Self {
        Self::new(a, Poly::zero(), Poly::zero(), b)
    }

    /// diag(1, −1)
    pub fn signature() -> Self {
        Self::diag(Poly::one(), -Poly::one())
    }

    pub fn swap() -> Self {
        Self::new(Poly::zero(), Poly::one(), Poly::one(), Poly::zero())
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.m[i][j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &Poly> {
        self.m.iter().flat_map(|r| r.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(Poly::is_zero)
    }

    pub fn mul(&self, o: &LMatrix2) -> LMatrix2 {
        let e = |i: usize, j: usize| &(&self.m[i][0] * &o.m[0][j]) + &(&self.m[i][1] * &o.m[1][j]);
        LMatrix2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn add(&self, o: &LMatrix2) -> LMatrix2 {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &LMatrix2) -> LMatrix2 {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &LMatrix2, f: impl Fn(&Poly, &Poly) -> Poly) -> LMatrix2 {
        LMatrix2::new(
            f(&self.m[0][0], &o.m[0][0]),
            f(&self.m[0][1], &o.m[0][1]),
            f(&self.m[1][0], &o.m[1][0]),
            f(&self.m[1][1], &o.m[1][1]),
        )
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> LMatrix2 {
        LMatrix2::new(f(&self.m[0][0]), f(&self.m[0][1]), f(&self.m[1][0]), f(&self.m[1][1]))
    }

    pub fn scale(&self, s: &Scalar) -> LMatrix2 {
        self.map(|p| p.scale(s))
    }

    /// Multiplies by a polynomial.
    pub fn times_poly(&self, p: &Poly) -> LMatrix2 {
        self.map(|x| x * p)
    }

    pub fn transpose(&self) -> LMatrix2 {
        LMatrix2::new(self.m[0][0].clone(), self.m[1][0].clone(), self.m[0][1].clone(), self.m[1][1].clone())
    }

    /// Conjugate transpose with u ↦ u⋆ on entries.
    pub fn star(&self) -> LMatrix2 {
        self.transpose().map(Poly::star)
    }

    pub fn det(&self) -> Poly {
        &(&self.m[0][0] * &self.m[1][1]) - &(&self.m[0][1] * &self.m[1][0])
    }

    pub fn adj(&self) -> LMatrix2 {
        LMatrix2::new(self.m[1][1].clone(), -&self.m[0][1], -&self.m[1][0], self.m[0][0].clone())
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.star()
    }

    pub fn is_diagonal(&self) -> bool {
        self.m[0][1].is_zero() && self.m[1][0].is_zero()
    }

    /// U·diag(1,−1)·U⋆
    pub fn signature_product(&self) -> LMatrix2 {
        self.mul(&Self::signature()).mul(&self.star())
    }

    /// Entrywise symmetry, or the first entry without one.
    pub fn sym(&self) -> Result<[[Symmetry; 2]; 2]> {
        let s = |i: usize, j: usize| {
            self.m[i][j]
                .sym()
                .ok_or_else(|| Error::NoSymmetry(format!("entry ({},{}) has no symmetry", i + 1, j + 1)))
        };
        Ok([[s(0, 0)?, s(0, 1)?], [s(1, 0)?, s(1, 1)?]])
    }

    /// Largest coefficient length over the entries.
    pub fn max_len(&self) -> i64 {
        self.entries().map(Poly::len).max().unwrap_or(0)
    }
}

/// Row types θ1 and column types θ2 with Sym P_{jk} = (θ1_j)⋆·θ2_k.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SymCertificate {
    pub theta1: [SymType; 2],
    pub theta2: [SymType; 2],
}

impl SymCertificate {
    /// The symmetry predicted for entry (j, k).
    pub fn entry(&self, j: usize, k: usize) -> SymType {
        self.theta1[j].star().mul(self.theta2[k])
    }

    /// Certificate of P·Q given certificates with matching inner types.
    pub fn compose(&self, o: &SymCertificate) -> Option<SymCertificate> {
        (self.theta2 == o.theta1).then_some(SymCertificate { theta1: self.theta1, theta2: o.theta2 })
    }

    /// Certificate of P⋆.
    pub fn star(&self) -> SymCertificate {
        SymCertificate { theta1: self.theta2, theta2: self.theta1 }
    }

    pub fn checks(&self, p: &LMatrix2) -> bool {
        (0..2).all(|j| (0..2).all(|k| p.m[j][k].has_type(self.entry(j, k))))
    }
}

/// Type constraints star(node_a)·node_b = s between unknown types.
struct TypeGraph {
    nodes: Vec<Option<SymType>>,
    edges: Vec<(usize, usize, SymType)>,
}

impl TypeGraph {
    fn new(n: usize) -> Self {
        TypeGraph { nodes: alloc::vec![None; n], edges: Vec::new() }
    }

    fn add_matrix(&mut self, p: &LMatrix2, row: usize, col: usize) -> Result<()> {
        let s = p.sym()?;
        for j in 0..2 {
            for k in 0..2 {
                if let Symmetry::Type(t) = s[j][k] {
                    self.edges.push((row + j, col + k, t));
                }
            }
        }
        Ok(())
    }

    /// Propagates from each unassigned node (set to type 1) and checks every edge.
    fn solve(&mut self) -> bool {
        for start in 0..self.nodes.len() {
            if self.nodes[start].is_some() {
                continue;
            }
            self.nodes[start] = Some(SymType::ONE);
            let mut changed = true;
            while changed {
                changed = false;
                for &(a, b, s) in &self.edges {
                    match (self.nodes[a], self.nodes[b]) {
                        (Some(ta), None) => {
                            self.nodes[b] = Some(ta.mul(s));
                            changed = true;
                        }
                        (None, Some(tb)) => {
                            self.nodes[a] = Some(s.star().mul(tb));
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
        }
        self.edges.iter().all(|&(a, b, s)| self.nodes[a].unwrap().star().mul(self.nodes[b].unwrap()) == s)
    }
}

/// A certificate for P, with unconstrained slots set to type 1.
pub fn infer_certificate(p: &LMatrix2) -> Result<SymCertificate> {
    let mut g = TypeGraph::new(4);
    g.add_matrix(p, 0, 2)?;
    if !g.solve() {
        return Err(Error::Incompatible("entry symmetries admit no certificate".into()));
    }
    let t = |i: usize| g.nodes[i].unwrap();
    Ok(SymCertificate { theta1: [t(0), t(1)], theta2: [t(2), t(3)] })
}

/// Whether P1·P2···Pn is a product of matrices with jointly compatible symmetry.
pub fn compatible_chain(ms: &[&LMatrix2]) -> Result<bool> {
    let mut g = TypeGraph::new(2 * (ms.len() + 1));
    for (i, p) in ms.iter().enumerate() {
        g.add_matrix(p, 2 * i, 2 * i + 2)?;
    }
    Ok(g.solve())
}

/// The inverse of P when det P is a nonzero monomial.
pub fn invert_strongly_invertible(p: &LMatrix2) -> Result<LMatrix2> {
    let d = p.det();
    if d.nterms() != 1 {
        return Err(Error::Precondition(format!("determinant {d} is not a monomial")));
    }
    let inv = Poly::monomial(-d.ldeg(), d.lead().inv()?);
    Ok(p.adj().times_poly(&inv))
}

/// P with P·(u1, u2)ᵀ = (r, 0)ᵀ, P strongly invertible with compatible symmetry.
pub fn row_reduce_pair(u1: &Poly, u2: &Poly) -> Result<(LMatrix2, Poly)> {
    if u2.is_zero() {
        return Ok((LMatrix2::identity(), u1.clone()));
    }
    if u1.is_zero() {
        return Ok((LMatrix2::swap(), u2.clone()));
    }
    let (u, v, r) = sym_eea(u1, u2)?;
    let a = u1.exact_div(&r).ok_or_else(|| Error::Internal("gcd does not divide u1".into()))?;
    let b = u2.exact_div(&r).ok_or_else(|| Error::Internal("gcd does not divide u2".into()))?;
    // det = (u·u1 + v·u2)/r = 1
    Ok((LMatrix2::new(u, v, -b, a), r))
}

/// P·A·Q = D with P, Q strongly invertible and D diagonal.
#[derive(Clone, Debug)]
pub struct NormalFormResult {
    pub p: LMatrix2,
    pub q: LMatrix2,
    pub d: LMatrix2,
    pub steps: usize,
}

/// Symmetric quotient of x by pivot when it shortens x.
fn reducer(x: &Poly, pivot: &Poly) -> Result<Option<Poly>> {
    if x.is_zero() || pivot.is_zero() || x.len() < pivot.len() {
        return Ok(None);
    }
    let q = sym_long_div(x, pivot)?.q;
    Ok(if q.is_zero() { None } else { Some(q) })
}

/// Diagonalizes A by alternating row and column reductions.
pub fn normal_form(a: &LMatrix2) -> Result<NormalFormResult> {
    a.sym()?;
    if !compatible_chain(&[a])? {
        return Err(Error::Incompatible("input symmetry is not compatible".into()));
    }
    let mut p = LMatrix2::identity();
    let mut q = LMatrix2::identity();
    let mut m = a.clone();
    let mut steps = 0usize;
    let mut last_len = i64::MAX;
    let limit = 4 * (a.max_len() as usize + 2) + 8;
    while !m.is_diagonal() {
        if steps > limit {
            return Err(Error::Internal("normal form did not terminate".into()));
        }
        if !m.m[1][0].is_zero() {
            let pj = if m.m[0][0].is_zero() {
                LMatrix2::swap()
            } else if let Some(qt) = m.m[1][0].exact_div(&m.m[0][0]) {
                LMatrix2::new(Poly::one(), Poly::zero(), -qt, Poly::one())
            } else {
                row_reduce_pair(&m.m[0][0], &m.m[1][0])?.0
            };
            m = pj.mul(&m);
            p = pj.mul(&p);
            steps += 1;
        }
        if let Some(qt) = reducer(&m.m[0][1], &m.m[0][0])? {
            let qj = LMatrix2::new(Poly::one(), -qt, Poly::zero(), Poly::one());
            m = m.mul(&qj);
            q = q.mul(&qj);
        }
        if !m.m[0][1].is_zero() {
            let qj = if m.m[0][0].is_zero() {
                LMatrix2::swap()
            } else if let Some(qt) = m.m[0][1].exact_div(&m.m[0][0]) {
                LMatrix2::new(Poly::one(), -qt, Poly::zero(), Poly::one())
            } else {
                row_reduce_pair(&m.m[0][0], &m.m[0][1])?.0.transpose()
            };
            m = m.mul(&qj);
            q = q.mul(&qj);
            steps += 1;
        }
        if let Some(qt) = reducer(&m.m[1][0], &m.m[0][0])? {
            let pj = LMatrix2::new(Poly::one(), Poly::zero(), -qt, Poly::one());
            m = pj.mul(&m);
            p = pj.mul(&p);
        }
        let l = m.m[0][0].len();
        if !m.m[0][0].is_zero() {
            if l > last_len {
                return Err(Error::Internal("leading entry grew during reduction".into()));
            }
            last_len = l;
        }
    }
    Ok(NormalFormResult { p, q, d: m, steps })
}

/// Roots of det A with multiplicities.
pub fn spectrum(a: &LMatrix2, prec: u32, cap: u32) -> Result<Vec<AlgebraicPoint>> {
    hsqrt::spectrum(&a.det(), prec, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(low: i64, c: &[i64]) -> Poly {
        Poly::from_ints(low, c)
    }

    #[test]
    fn certificate_and_inverse() {
        let a = LMatrix2::new(p(-1, &[1, 0, 1]), p(0, &[1, 1]), p(-1, &[1, 1]), p(0, &[3]));
        let c = infer_certificate(&a).unwrap();
        assert!(c.checks(&a));
        let u = LMatrix2::new(Poly::one(), p(0, &[1, 1]), Poly::zero(), Poly::z(2));
        let ui = invert_strongly_invertible(&u).unwrap();
        assert_eq!(u.mul(&ui), LMatrix2::identity());
    }

    #[test]
    fn reduce_and_normal_form() {
        let u1 = p(-1, &[1, 3, 1]);
        let u2 = p(0, &[1, 1]);
        let (pm, r) = row_reduce_pair(&u1, &u2).unwrap();
        let col = pm.mul(&LMatrix2::new(u1, Poly::zero(), u2, Poly::zero()));
        assert_eq!(col.m[0][0], r);
        assert!(col.m[1][0].is_zero());
        assert!(pm.det().nterms() == 1);
        let a = LMatrix2::new(p(-1, &[1, 3, 1]), p(0, &[1, 1]), p(-1, &[1, 1]), p(-1, &[2, 5, 2]));
        let nf = normal_form(&a).unwrap();
        assert_eq!(nf.p.mul(&a).mul(&nf.q), nf.d);
        assert!(nf.d.is_diagonal());
        assert!(compatible_chain(&[&nf.p, &a, &nf.q]).unwrap());
    }
}
