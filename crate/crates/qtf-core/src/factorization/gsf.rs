//! The full factorization A = U·diag(1,−1)·U⋆ with its existence test.

use alloc::format;
use alloc::vec::Vec;

use super::constdet::{const_det_factor, constant_det, ScaledFactor};
use super::dos::{dos_decompose, dos_feasible, DOSWitness, DosConfig, DosFailure, DosResult};
use crate::error::{Error, Result};
use crate::field::{Ball, Scalar};
use crate::laurent::hsqrt::poly_sqrt;
use crate::laurent::{hermitian_square_root, Laurent, Poly, ScaledPoly, SqrtFailure, SymType, UPoly};
use crate::lmatrix::{compatible_chain, invert_strongly_invertible, normal_form, LMatrix2};

pub type BallMatrix = [[Laurent<Ball>; 2]; 2];

/// The factor U in the most exact form available.
#[derive(Clone, Debug)]
pub enum UForm {
    Exact(LMatrix2),
    /// Column scales √μ outside the tower.
    Scaled(ScaledFactor),
    /// Ball coefficients with a certified residual.
    Approx(BallMatrix),
}

impl UForm {
    pub fn exact(&self) -> Option<&LMatrix2> {
        match self {
            UForm::Exact(u) => Some(u),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, UForm::Approx(_))
    }

    pub fn to_ball(&self, prec: u32) -> BallMatrix {
        let conv = |p: &Poly| p.map(|s| s.to_ball(prec));
        match self {
            UForm::Exact(u) => u.m.clone().map(|r| r.map(|e| conv(&e))),
            UForm::Scaled(f) => {
                let s = [f.mu[0].to_ball(prec + 16).sqrt(), f.mu[1].to_ball(prec + 16).sqrt()];
                let x = &f.x.m;
                let e = |i: usize, j: usize| conv(&x[i][j]).scale(&s[j]);
                [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
            }
            UForm::Approx(m) => m.clone(),
        }
    }

    /// Exact entry symmetry pattern (the scaled form shares it with X).
    pub fn pattern(&self) -> Option<&LMatrix2> {
        match self {
            UForm::Exact(u) => Some(u),
            UForm::Scaled(f) => Some(&f.x),
            UForm::Approx(_) => None,
        }
    }
}

/// Success of the factorization.
#[derive(Clone, Debug)]
pub struct GSFResult {
    pub u: UForm,
    /// Sym U11 / Sym U21 = Sym U12 / Sym U22.
    pub alpha: SymType,
    /// Largest coefficient of U·diag(1,−1)·U⋆ − A; zero on the exact path.
    pub residual: f64,
}

impl GSFResult {
    pub fn is_exact(&self) -> bool {
        self.u.is_exact()
    }
}

#[derive(Clone, Debug)]
pub enum Condition1 {
    Holds { d: ScaledPoly },
    Fails(SqrtFailure),
}

#[derive(Clone, Debug)]
pub enum Condition2 {
    Holds { p0: Poly, p: Poly, ty: SymType },
    Fails { p0: Poly, p: Poly, ty: SymType, failure: DosFailure },
}

/// Which of the two existence conditions fails, with witnesses.
#[derive(Clone, Debug)]
pub struct ExistenceReport {
    pub condition1: Condition1,
    pub condition2: Option<Condition2>,
}

impl ExistenceReport {
    pub fn holds(&self) -> bool {
        matches!(self.condition1, Condition1::Holds { .. }) && matches!(self.condition2, Some(Condition2::Holds { .. }))
    }
}

#[derive(Clone, Debug)]
pub enum GsfOutcome {
    Factored(GSFResult),
    Infeasible(ExistenceReport),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct GsfConfig {
    pub dos: DosConfig,
    /// Target for Sym U11/Sym U21 when A12 = 0 leaves it open.
    pub alpha: Option<SymType>,
}

/// Ratio Sym M_{i,1}/Sym M_{i,0} over rows with both entries nonzero; None when free.
fn row_ratio(m: &LMatrix2) -> Result<Option<SymType>> {
    let mut r: Option<SymType> = None;
    for i in 0..2 {
        if let (Some(a), Some(b)) = (m.m[i][0].sym_type(), m.m[i][1].sym_type()) {
            let t = b.div(a);
            if r.is_some_and(|x| x != t) {
                return Err(Error::Incompatible("rows disagree on the column ratio".into()));
            }
            r = Some(t);
        }
    }
    Ok(r)
}

/// Sym U11/Sym U21 = Sym U12/Sym U22, or None when every column has a zero.
pub fn sym1_ratio(u: &LMatrix2) -> Result<Option<SymType>> {
    row_ratio(&u.transpose()).map(|r| r.map(|t| t.star()))
        .and_then(|_| {
            let mut r: Option<SymType> = None;
            for j in 0..2 {
                if let (Some(a), Some(b)) = (u.m[0][j].sym_type(), u.m[1][j].sym_type()) {
                    let t = a.div(b);
                    if r.is_some_and(|x| x != t) {
                        return Err(Error::Incompatible("columns disagree on the row ratio".into()));
                    }
                    r = Some(t);
                }
            }
            Ok(r)
        })
}

fn exact_div(a: &Poly, b: &Poly, what: &str) -> Result<Poly> {
    a.exact_div(b).ok_or_else(|| Error::Internal(format!("{what}: {b} does not divide {a}")))
}

/// e = κ·z^m·s² with s monic; returns s.
fn square_part(e: &Poly) -> Result<Poly> {
    let f = UPoly::new(e.coeffs().to_vec()).monic();
    let s = poly_sqrt(&f).ok_or_else(|| Error::Internal(format!("{e} is not a scaled square")))?;
    Ok(Poly::new(0, s.coeffs().to_vec()))
}

/// A = U·Ã·U⋆ with Ã of constant negative determinant.
///
/// Requires coprime entries and det A = −d·d⋆ with d real and symmetric.
pub fn spectrum_shrink(a: &LMatrix2) -> Result<(LMatrix2, LMatrix2)> {
    if constant_det(a).is_some() {
        return Err(Error::Precondition("determinant is already constant".into()));
    }
    let nf = normal_form(a)?;
    let pinv = invert_strongly_invertible(&nf.p)?;
    let ar = nf.p.mul(a).mul(&nf.p.star());
    let h = [square_part(&nf.d.m[0][0])?, square_part(&nf.d.m[1][1])?];
    let hs = [h[0].star(), h[1].star()];
    let e = |i: usize, j: usize| exact_div(&exact_div(&ar.m[i][j], &h[i], "row")?, &hs[j], "column");
    let at = LMatrix2::new(e(0, 0)?, e(0, 1)?, e(1, 0)?, e(1, 1)?);
    match constant_det(&at) {
        Some(c) if c.signum() < 0 => {}
        _ => return Err(Error::Internal(format!("shrunk determinant {} is not a negative constant", at.det()))),
    }
    let u = pinv.mul(&LMatrix2::diag(h[0].clone(), h[1].clone()));
    Ok((u, at))
}

/// Factorization for coprime entries: A = V·B·V⋆, then B by the constant-determinant routines.
pub fn coprime_factor(a: &LMatrix2) -> Result<ScaledFactor> {
    if let Err(f) = hermitian_square_root(&-a.det()) {
        return Err(Error::Precondition(format!("−det A is not a Hermitian square: {f:?}")));
    }
    if constant_det(a).is_some() {
        return const_det_factor(a);
    }
    let (v, b) = spectrum_shrink(a)?;
    Ok(const_det_factor(&b)?.left(&v))
}

fn gcd_all(a: &LMatrix2) -> Result<Poly> {
    let mut g = Poly::zero();
    for e in a.entries() {
        g = if g.is_zero() { e.clone() } else if e.is_zero() { g } else { g.sym_gcd(e)? };
    }
    if g.is_zero() {
        return Err(Error::Precondition("gcd of a zero matrix".into()));
    }
    Ok(g.sym_gcd(&g)?)
}

fn mz_or_inf(p: &Poly, z0: &Scalar) -> Result<u32> {
    if p.is_zero() {
        Ok(u32::MAX)
    } else {
        p.mz(z0)
    }
}

/// p0 = gcd of the entries and p = p0 / ((z−1)^m1 (z+1)^m2), both Hermitian.
pub fn gcd_parts(a: &LMatrix2) -> Result<(Poly, Poly)> {
    let p0 = gcd_all(a)?;
    let one = Scalar::one();
    let mone = Scalar::from_int(-1);
    let m1 = p0.mz(&one)?;
    let m2 = p0.mz(&mone)?;
    let w = &Poly::from_ints(0, &[-1, 1]).pow(m1) * &Poly::from_ints(0, &[1, 1]).pow(m2);
    let p = exact_div(&p0, &w, "gcd")?;
    let p = p.shift(-(p.ldeg() + p.deg()) / 2);
    Ok((p0, p))
}

fn verify(a: &LMatrix2, u: &UForm, cfg: &GsfConfig) -> Result<f64> {
    match u {
        UForm::Exact(m) => {
            if m.signature_product() != *a {
                return Err(Error::Internal("U·diag(1,−1)·U⋆ differs from A".into()));
            }
            Ok(0.0)
        }
        UForm::Scaled(f) => {
            if f.product() != *a {
                return Err(Error::Internal("scaled U·diag(1,−1)·U⋆ differs from A".into()));
            }
            Ok(0.0)
        }
        UForm::Approx(m) => {
            let prec = cfg.dos.prec;
            let res = ball_residual(m, a, prec);
            if res > cfg.dos.tol {
                return Err(Error::Internal(format!("ball residual {res:e} exceeds tolerance")));
            }
            Ok(res)
        }
    }
}

/// Largest coefficient magnitude of U·diag(1,−1)·U⋆ − A in ball arithmetic.
pub fn ball_residual(m: &BallMatrix, a: &LMatrix2, prec: u32) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let v = m[i][0]
                .times(&m[j][0].star())
                .minus(&m[i][1].times(&m[j][1].star()))
                .minus(&a.m[i][j].map(|s| s.to_ball(prec)));
            for c in v.coeffs() {
                worst = worst.max(c.mag_f64());
            }
        }
    }
    worst
}

/// Factors A or reports which existence condition fails.
pub fn gsf(a: &LMatrix2, cfg: &GsfConfig) -> Result<GsfOutcome> {
    if !a.is_hermitian() {
        return Err(Error::Precondition("matrix is not Hermitian".into()));
    }
    if !compatible_chain(&[a])? {
        return Err(Error::Incompatible("entry symmetries are not compatible".into()));
    }
    let det = a.det();
    if det.is_zero() {
        return degenerate(a, cfg).map(GsfOutcome::Factored);
    }
    let d = match hermitian_square_root(&-&det) {
        Ok(d) => d,
        Err(f) => return Ok(GsfOutcome::Infeasible(ExistenceReport { condition1: Condition1::Fails(f), condition2: None })),
    };
    let sd = d.poly.sym_type().ok_or_else(|| Error::Internal("d has no symmetry".into()))?;
    let alphas: Vec<SymType> = match a.m[0][1].sym_type() {
        Some(t) => alloc::vec![t],
        None => {
            let mut v = alloc::vec![SymType::ONE, SymType::new(1, 1), SymType::new(-1, 1), SymType::new(-1, 0)];
            if let Some(t) = cfg.alpha {
                v.retain(|x| x.eps != t.eps || (x.c - t.c).rem_euclid(2) != 0);
                v.insert(0, t);
            }
            v
        }
    };
    let (p0, p) = gcd_parts(a)?;
    let mut first_failure = None;
    for alpha in alphas {
        let ty = alpha.mul(sd);
        if let Err(failure) = dos_feasible(&p, ty) {
            first_failure.get_or_insert(Condition2::Fails { p0: p0.clone(), p: p.clone(), ty, failure });
            continue;
        }
        let (u, r) = construct(a, ty, cfg)?;
        let (u, alpha) = align(a, u, r.unwrap_or(alpha), cfg)?;
        let residual = verify(a, &u, cfg)?;
        if let Some(t) = a.m[0][1].sym_type() {
            if t != alpha {
                return Err(Error::Internal(format!("factor has ratio {alpha}, expected {t}")));
            }
        }
        return Ok(GsfOutcome::Factored(GSFResult { u, alpha, residual }));
    }
    Ok(GsfOutcome::Infeasible(ExistenceReport { condition1: Condition1::Holds { d }, condition2: first_failure }))
}

/// Existence conditions without building U.
pub fn existence(a: &LMatrix2) -> Result<ExistenceReport> {
    let det = a.det();
    if det.is_zero() {
        let (p0, p) = gcd_parts(a)?;
        return Ok(ExistenceReport {
            condition1: Condition1::Holds { d: ScaledPoly::exact(Poly::zero()) },
            condition2: Some(Condition2::Holds { p0, p, ty: SymType::ONE }),
        });
    }
    let d = match hermitian_square_root(&-&det) {
        Ok(d) => d,
        Err(f) => return Ok(ExistenceReport { condition1: Condition1::Fails(f), condition2: None }),
    };
    let sd = d.poly.sym_type().unwrap();
    let alpha = a.m[0][1].sym_type().unwrap_or(SymType::ONE);
    let ty = alpha.mul(sd);
    let (p0, p) = gcd_parts(a)?;
    let c2 = match dos_feasible(&p, ty) {
        Ok(()) => Condition2::Holds { p0, p, ty },
        Err(failure) => Condition2::Fails { p0, p, ty, failure },
    };
    Ok(ExistenceReport { condition1: Condition1::Holds { d }, condition2: Some(c2) })
}

/// Steps 1–4 of the construction; `ty` is the DOS type used when the ratio is free.
fn construct(a: &LMatrix2, ty: SymType, cfg: &GsfConfig) -> Result<(UForm, Option<SymType>)> {
    let one = Scalar::one();
    let mone = Scalar::from_int(-1);
    let half_mz = |p: &Poly, z0: &Scalar| mz_or_inf(p, z0).map(|m| if m == u32::MAX { m } else { m / 2 });
    let a1 = half_mz(&a.m[0][0], &one)?.min(mz_or_inf(&a.m[0][1], &one)?);
    let a2 = half_mz(&a.m[0][0], &mone)?.min(mz_or_inf(&a.m[0][1], &mone)?);
    let (a1, a2) = (if a1 == u32::MAX { 0 } else { a1 }, if a2 == u32::MAX { 0 } else { a2 });
    let w = &Poly::from_ints(0, &[-1, 1]).pow(a1) * &Poly::from_ints(0, &[1, 1]).pow(a2);
    let ws = w.star();
    let at = LMatrix2::new(
        exact_div(&a.m[0][0], &(&w * &ws), "A11")?,
        exact_div(&a.m[0][1], &w, "A12")?,
        exact_div(&a.m[1][0], &ws, "A21")?,
        a.m[1][1].clone(),
    );
    let pt = gcd_all(&at)?;
    let ac = at.map(|e| e.exact_div(&pt).unwrap());
    let inner = coprime_factor(&ac)?;
    let f = LMatrix2::diag(w, Poly::one());
    let ut = inner.left(&f);
    if pt.is_one_poly() {
        let r = sym1_ratio(&ut.x)?;
        return Ok((
            match ut.materialize() {
                Some(m) => UForm::Exact(m),
                None => UForm::Scaled(ut),
            },
            r,
        ));
    }
    let need = row_ratio(&ut.x)?.unwrap_or(ty);
    let wit = dos_decompose(&pt, need, &cfg.dos)?;
    let um = ut.materialize().ok_or_else(|| {
        Error::LeavesTower(format!("column scales {} and {} with a nontrivial gcd factor", ut.mu[0], ut.mu[1]))
    })?;
    let r = sym1_ratio(&um)?;
    let u = match wit {
        DosResult::Exact(wt) => UForm::Exact(um.mul(&dos_matrix(&wt))),
        DosResult::Approx { witness, .. } => {
            let prec = cfg.dos.prec;
            let ub = UForm::Exact(um).to_ball(prec);
            UForm::Approx(ball_mul(&ub, &dos_matrix_ball(&witness)))
        }
    };
    Ok((u, r))
}

/// Multiplies the second row by z^m (A unchanged when A12 = 0).
fn shift_row2(u: UForm, m: i64) -> UForm {
    let sh = |x: &LMatrix2| LMatrix2::new(x.m[0][0].clone(), x.m[0][1].clone(), x.m[1][0].shift(m), x.m[1][1].shift(m));
    match u {
        UForm::Exact(x) => UForm::Exact(sh(&x)),
        UForm::Scaled(f) => UForm::Scaled(ScaledFactor { x: sh(&f.x), mu: f.mu }),
        UForm::Approx(b) => {
            let [r0, [c, d]] = b;
            UForm::Approx([r0, [c.shift(m), d.shift(m)]])
        }
    }
}

/// Moves a free ratio onto the configured target by an even power of z.
fn align(a: &LMatrix2, u: UForm, r: SymType, cfg: &GsfConfig) -> Result<(UForm, SymType)> {
    match (a.m[0][1].is_zero(), cfg.alpha) {
        (true, Some(t)) if t != r && t.eps == r.eps && (r.c - t.c).rem_euclid(2) == 0 => {
            Ok((shift_row2(u, (r.c - t.c) / 2), t))
        }
        _ => Ok((u, r)),
    }
}

/// [[p1, p2⋆], [p2, p1⋆]]
pub fn dos_matrix(w: &DOSWitness) -> LMatrix2 {
    LMatrix2::new(w.u1.clone(), w.u2.star(), w.u2.clone(), w.u1.star())
}

fn dos_matrix_ball(w: &DOSWitness<Ball>) -> BallMatrix {
    [[w.u1.clone(), w.u2.star()], [w.u2.clone(), w.u1.star()]]
}

fn ball_mul(a: &BallMatrix, b: &BallMatrix) -> BallMatrix {
    let e = |i: usize, j: usize| a[i][0].times(&b[0][j]).plus(&a[i][1].times(&b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// det A ≡ 0: U = P⁻¹·[[Å11 + ¼, Å11 − ¼], [0, 0]] (or the second-row analogue).
fn degenerate(a: &LMatrix2, cfg: &GsfConfig) -> Result<GSFResult> {
    let q = Poly::constant(Scalar::from_ratio(1, 4));
    let (pinv, ar) = if a.is_zero() {
        (LMatrix2::identity(), a.clone())
    } else {
        let nf = normal_form(a)?;
        (invert_strongly_invertible(&nf.p)?, nf.p.mul(a).mul(&nf.p.star()))
    };
    let z = Poly::zero();
    let core = if ar.m[1][1].is_zero() && ar.m[0][1].is_zero() {
        let h = &ar.m[0][0];
        LMatrix2::new(h + &q, h - &q, z.clone(), z)
    } else if ar.m[0][0].is_zero() && ar.m[0][1].is_zero() {
        let h = &ar.m[1][1];
        LMatrix2::new(z.clone(), z, h + &q, h - &q)
    } else {
        return Err(Error::Internal("rank-one reduction left two nonzero rows".into()));
    };
    let u = pinv.mul(&core);
    let r = sym1_ratio(&u)?.or(a.m[0][1].sym_type()).or(cfg.alpha).unwrap_or(SymType::ONE);
    let (form, alpha) = align(a, UForm::Exact(u), r, cfg)?;
    let residual = verify(a, &form, cfg)?;
    Ok(GSFResult { u: form, alpha, residual })
}

trait IsOne {
    fn is_one_poly(&self) -> bool;
}

impl IsOne for Poly {
    fn is_one_poly(&self) -> bool {
        self.nterms() == 1 && self.ldeg() == 0 && self.lead().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(low: i64, c: &[i64]) -> Poly {
        Poly::from_ints(low, c)
    }

    fn factored(a: &LMatrix2) -> GSFResult {
        match gsf(a, &GsfConfig::default()).unwrap() {
            GsfOutcome::Factored(r) => r,
            GsfOutcome::Infeasible(r) => panic!("{r:?}"),
        }
    }

    #[test]
    fn zero_and_definite() {
        let r = factored(&LMatrix2::zero());
        let u = r.u.exact().unwrap();
        assert_eq!(u.m[0][0], Poly::constant(Scalar::from_ratio(1, 4)));
        assert_eq!(u.m[0][1], Poly::constant(Scalar::from_ratio(-1, 4)));
        assert!(u.m[1][0].is_zero() && u.m[1][1].is_zero());
        match gsf(&LMatrix2::identity(), &GsfConfig::default()).unwrap() {
            GsfOutcome::Infeasible(rep) => assert!(matches!(rep.condition1, Condition1::Fails(_))),
            _ => panic!("identity is positive definite"),
        }
    }

    /// [[p1, 1], [1, p1⋆]] with Sym p1 = t, so that p1·p1⋆ − 1 is the gcd factor.
    fn gcd_block(t: SymType) -> LMatrix2 {
        let base = match (t.eps, t.c.rem_euclid(2)) {
            (1, 1) => p(0, &[1, 1]),
            (1, _) => p(-1, &[1, 3, 1]),
            (_, 1) => p(0, &[-1, 1]),
            _ => p(-1, &[-1, 0, 1]),
        };
        let p1 = base.shift(t.c.div_euclid(2));
        LMatrix2::new(p1.clone(), Poly::one(), Poly::one(), p1.star())
    }

    #[test]
    fn round_trips() {
        let scalings = [
            LMatrix2::identity(),
            LMatrix2::diag(p(-1, &[1, 3, 1]), Poly::one()),
            LMatrix2::diag(p(0, &[-1, 1]), p(-1, &[1, 0, 1])),
        ];
        for case in 0..4 {
            for (k, s) in scalings.iter().enumerate() {
                let base = crate::factorization::constdet::tests::sample(case).mul(s);
                let t = row_ratio(&base).unwrap().unwrap();
                for u0 in [base.clone(), base.mul(&gcd_block(t))] {
                    assert!(compatible_chain(&[&u0]).unwrap(), "case {case}/{k}");
                    let a = u0.signature_product();
                    let r = factored(&a);
                    assert_eq!(r.residual, 0.0, "case {case}/{k}");
                    assert!(r.is_exact());
                    assert_eq!(Some(r.alpha), a.m[0][1].sym_type(), "case {case}/{k}");
                }
            }
        }
    }

    #[test]
    fn rank_one() {
        let v = LMatrix2::new(p(0, &[1, 1]), Poly::zero(), p(0, &[2]), Poly::zero());
        let a = v.signature_product();
        assert!(a.det().is_zero());
        let r = factored(&a);
        assert_eq!(r.u.exact().unwrap().signature_product(), a);
    }
}
