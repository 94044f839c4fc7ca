//! Symmetric quasi-tight framelet filter banks {a; b1, b2}_{Θ,(1,−1)}.

pub mod banks;

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::factorization::dos::dos_feasible;
use crate::factorization::gsf::{gcd_parts, gsf, GsfConfig, GsfOutcome, UForm};
use crate::factorization::DosFailure;
use crate::field::{Ball, Scalar};
use crate::laurent::sym::odd;
use crate::laurent::{hermitian_square_root, Laurent, Poly, ScaledPoly, SqrtFailure, SymType};
use crate::lmatrix::LMatrix2;

/// The δ filter.
pub fn delta() -> Poly {
    Poly::one()
}

/// A high-pass filter: exact b = √scale·poly, or ball coefficients.
#[derive(Clone, Debug)]
pub enum HighPass {
    Exact { poly: Poly, scale: Scalar },
    Approx(Laurent<Ball>),
}

impl HighPass {
    pub fn exact(poly: Poly) -> Self {
        HighPass::Exact { poly, scale: Scalar::one() }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, HighPass::Exact { .. })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            HighPass::Exact { poly, scale } => poly.is_zero() || scale.is_zero(),
            HighPass::Approx(p) => p.coeffs().iter().all(|c| c.le_abs(0.0)),
        }
    }

    pub fn to_ball(&self, prec: u32) -> Laurent<Ball> {
        match self {
            HighPass::Exact { poly, scale } => {
                let s = scale.to_ball(prec + 16).sqrt();
                poly.map(|c| c.to_ball(prec)).scale(&s)
            }
            HighPass::Approx(p) => p.clone(),
        }
    }

    /// Coefficients as (k, value) in double precision.
    pub fn to_f64_pairs(&self) -> Vec<(i64, f64)> {
        match self {
            HighPass::Exact { poly, scale } => {
                let s = libm::sqrt(scale.to_f64());
                poly.to_f64_pairs().into_iter().map(|(k, v)| (k, v * s)).collect()
            }
            HighPass::Approx(p) => p.terms().map(|(k, v)| (k, v.mid_f64())).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FilterBank {
    pub a: Poly,
    pub theta: Poly,
    pub b: [HighPass; 2],
    pub nb: u32,
}

impl FilterBank {
    pub fn exact(a: Poly, theta: Poly, b1: Poly, b2: Poly, nb: u32) -> Self {
        FilterBank { a, theta, b: [HighPass::exact(b1), HighPass::exact(b2)], nb }
    }

    pub fn is_exact(&self) -> bool {
        self.b.iter().all(HighPass::is_exact)
    }
}

fn vmo_or_inf(p: &Poly) -> Result<u32> {
    if p.is_zero() {
        Ok(u32::MAX)
    } else {
        p.vmo()
    }
}

/// Θ(z) − Θ(z²)·a⋆(z)·a(z)
pub fn oep_defect(a: &Poly, theta: &Poly) -> Poly {
    theta - &(&theta.upsample() * &(&a.star() * a))
}

fn check_inputs(a: &Poly, theta: &Poly) -> Result<i64> {
    if !theta.is_zero() && (theta.star() != *theta || theta.sym_type() != Some(SymType::ONE)) {
        return Err(Error::Precondition("Θ must satisfy Θ⋆ = Θ and Sym Θ = 1".into()));
    }
    match a.sym_type() {
        Some(t) if t.eps == 1 => Ok(t.c),
        Some(_) => Err(Error::Precondition("Sym a must be z^c with sign +1".into())),
        None => Err(Error::NoSymmetry("low-pass filter has no symmetry".into())),
    }
}

/// Admissible n_b as (1, upper); None when upper < 1.
pub fn nb_range(a: &Poly, theta: &Poly) -> Result<Option<(u32, u32)>> {
    check_inputs(a, theta)?;
    let sr = a.sr()?;
    let v = vmo_or_inf(&oep_defect(a, theta))?;
    let upper = sr.min(if v == u32::MAX { u32::MAX } else { v / 2 });
    Ok(if upper >= 1 { Some((1, upper)) } else { None })
}

#[derive(Clone, Debug)]
pub struct MomentMatrices {
    pub m: LMatrix2,
    pub m_nb: LMatrix2,
    pub n_nb: LMatrix2,
    /// A(z) and B(z) of M_nb = [[A(z), B(z)], [B(−z), A(−z)]].
    pub a_poly: Poly,
    pub b_poly: Poly,
}

/// [[1, z⁻¹], [1, −z⁻¹]]
pub fn coset_transform() -> LMatrix2 {
    LMatrix2::new(Poly::one(), Poly::z(-1), Poly::one(), -Poly::z(-1))
}

/// M, M_nb and N for a given n_b; the divisions must be exact.
pub fn build_moment_matrices(a: &Poly, theta: &Poly, nb: u32) -> Result<MomentMatrices> {
    let t2 = theta.upsample();
    let af = a.flip();
    let m11 = oep_defect(a, theta);
    let m12 = -(&t2 * &(&a.star() * &af));
    let m21 = -(&t2 * &(&af.star() * a));
    let m22 = &theta.flip() - &(&t2 * &(&af.star() * &af));
    let m = LMatrix2::new(m11.clone(), m12.clone(), m21, m22);
    let one_minus = Poly::from_ints(0, &[1, -1]).pow(nb);
    let one_plus = Poly::from_ints(0, &[1, 1]).pow(nb);
    let div = |x: &Poly, y: &Poly, what: &str| {
        x.exact_div(y).ok_or_else(|| Error::Precondition(format!("{what} is not divisible; n_b = {nb} is out of range")))
    };
    let ap = div(&m11, &(&one_minus * &one_minus.star()), "A")?;
    let bp = div(&m12, &(&one_minus.star() * &one_plus), "B")?;
    let m_nb = LMatrix2::new(ap.clone(), bp.clone(), bp.flip(), ap.flip());
    let (a0, a1) = ap.coset_split();
    let (b0, b1) = bp.coset_split();
    let half = Scalar::from_ratio(1, 2);
    let n_nb = LMatrix2::new(&a0 + &b0, &a1 - &b1, (&a1 + &b1).shift(1), &a0 - &b0).scale(&half);
    Ok(MomentMatrices { m, m_nb, n_nb, a_poly: ap, b_poly: bp })
}

impl MomentMatrices {
    /// T⋆·M_nb·T = 4·N(z²) with T the coset transform.
    pub fn conjugation_holds(&self) -> bool {
        let t = coset_transform();
        let lhs = t.star().mul(&self.m_nb).mul(&t);
        let rhs = self.n_nb.map(|e| e.upsample()).scale(&Scalar::from_int(4));
        lhs == rhs
    }
}

/// Outcome of the two existence conditions for a framelet bank.
#[derive(Clone, Debug)]
pub struct FrameletExistence {
    pub nb: u32,
    /// Sym a = z^c.
    pub c: i64,
    pub det_n: Poly,
    pub d: core::result::Result<ScaledPoly, SqrtFailure>,
    pub p0: Poly,
    pub p: Poly,
    /// DOS type required of p; None when condition 1 fails.
    pub ty: Option<SymType>,
    pub dos: Option<core::result::Result<(), DosFailure>>,
    /// Θ = δ, so p0 = p = 1.
    pub theta_delta: bool,
}

impl FrameletExistence {
    pub fn condition1(&self) -> bool {
        self.d.is_ok()
    }

    pub fn condition2(&self) -> bool {
        matches!(self.dos, Some(Ok(())))
    }

    pub fn holds(&self) -> bool {
        self.condition1() && self.condition2()
    }
}

/// Tests det N = −d·d⋆ and the DOS property of p.
pub fn existence_test(a: &Poly, theta: &Poly, nb: u32) -> Result<FrameletExistence> {
    let c = check_inputs(a, theta)?;
    let mm = build_moment_matrices(a, theta, nb)?;
    let det_n = mm.n_nb.det();
    let theta_delta = *theta == delta();
    let (p0, p) = if mm.n_nb.is_zero() { (Poly::zero(), Poly::zero()) } else { gcd_parts(&mm.n_nb)? };
    let k = c + nb as i64;
    let base = SymType::new(if k.rem_euclid(2) == 0 { 1 } else { -1 }, odd(k) - 1);
    if det_n.is_zero() {
        // d = 0 has every symmetry: any type class will do
        let cands = [SymType::ONE, SymType::new(1, 1), SymType::new(-1, 1), SymType::new(-1, 0)];
        let mut first = None;
        for t in cands {
            let ty = base.mul(t);
            match dos_feasible(&p, ty) {
                Ok(()) => {
                    return Ok(FrameletExistence {
                        nb,
                        c,
                        det_n,
                        d: Ok(ScaledPoly::exact(Poly::zero())),
                        p0,
                        p,
                        ty: Some(ty),
                        dos: Some(Ok(())),
                        theta_delta,
                    })
                }
                Err(f) => {
                    first.get_or_insert((ty, f));
                }
            }
        }
        let (ty, f) = first.unwrap();
        return Ok(FrameletExistence {
            nb,
            c,
            det_n,
            d: Ok(ScaledPoly::exact(Poly::zero())),
            p0,
            p,
            ty: Some(ty),
            dos: Some(Err(f)),
            theta_delta,
        });
    }
    let d = hermitian_square_root(&-&det_n);
    let (ty, dos) = match &d {
        Ok(d) => {
            let sd = d.poly.sym_type().ok_or_else(|| Error::Internal("d has no symmetry".into()))?;
            let ty = base.mul(sd);
            (Some(ty), Some(dos_feasible(&p, ty)))
        }
        Err(_) => (None, None),
    };
    Ok(FrameletExistence { nb, c, det_n, d, p0, p, ty, dos, theta_delta })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ConstructConfig {
    pub gsf: GsfConfig,
    /// Shift l in P_l for the odd branch.
    pub l: i64,
}

#[derive(Clone, Debug)]
pub enum ConstructOutcome {
    Bank(FilterBank, VerifyReport),
    Infeasible(FrameletExistence),
}

/// Rows of V with N = V⋆·diag(1,−1)·V, each as (coset 0, coset 1).
enum Cosets {
    Exact([[Poly; 2]; 2], [Scalar; 2]),
    Approx([[Laurent<Ball>; 2]; 2]),
}

fn cosets_from(u: &UForm, post: Option<&LMatrix2>, prec: u32) -> Cosets {
    // V = U⋆·post
    match u {
        UForm::Exact(m) => {
            let v = match post {
                Some(p) => m.star().mul(p),
                None => m.star(),
            };
            Cosets::Exact(v.m, [Scalar::one(), Scalar::one()])
        }
        UForm::Scaled(f) => {
            let v = match post {
                Some(p) => f.x.star().mul(p),
                None => f.x.star(),
            };
            Cosets::Exact(v.m, f.mu.clone())
        }
        UForm::Approx(b) => {
            let us = [[b[0][0].star(), b[1][0].star()], [b[0][1].star(), b[1][1].star()]];
            let v = match post {
                Some(p) => {
                    let pb = p.m.clone().map(|r| r.map(|e| e.map(|s| s.to_ball(prec))));
                    let e = |i: usize, j: usize| us[i][0].times(&pb[0][j]).plus(&us[i][1].times(&pb[1][j]));
                    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
                }
                None => us,
            };
            Cosets::Approx(v)
        }
    }
}

/// Builds b1, b2 from a factorization of N (or of P_l·N·P_l⋆ when c + n_b is odd).
pub fn construct(a: &Poly, theta: &Poly, nb: u32, cfg: &ConstructConfig) -> Result<ConstructOutcome> {
    let ex = existence_test(a, theta, nb)?;
    if !ex.holds() {
        return Ok(ConstructOutcome::Infeasible(ex));
    }
    let mm = build_moment_matrices(a, theta, nb)?;
    let even = (ex.c + nb as i64).rem_euclid(2) == 0;
    let prec = cfg.gsf.dos.prec;
    let cos = if even {
        let g = GsfConfig { alpha: Some(SymType::new(1, -1)), ..cfg.gsf };
        let r = factor(&mm.n_nb, &g)?;
        cosets_from(&r, None, prec)
    } else {
        // P' = [[1, z^l], [1, −z^l]]; N = P'⁻¹·Ñ·P'^{-⋆} and P'^{-⋆} = P'/2
        let pl = LMatrix2::new(Poly::one(), Poly::z(cfg.l), Poly::one(), -Poly::z(cfg.l));
        let nt = pl.mul(&mm.n_nb).mul(&pl.star());
        let g = GsfConfig { alpha: Some(SymType::new(-1, 0)), ..cfg.gsf };
        let r = factor(&nt, &g)?;
        let post = pl.scale(&Scalar::from_ratio(1, 2));
        cosets_from(&r, Some(&post), prec)
    };
    let vm = Poly::from_ints(0, &[1, -1]).pow(nb);
    let b = match cos {
        Cosets::Exact(v, mu) => {
            let mk = |k: usize| HighPass::Exact {
                poly: &Poly::coset_merge(&v[k][0], &v[k][1]) * &vm,
                scale: mu[k].clone(),
            };
            [mk(0), mk(1)]
        }
        Cosets::Approx(v) => {
            let vb = vm.map(|s| s.to_ball(prec));
            let mk = |k: usize| HighPass::Approx(Laurent::coset_merge(&v[k][0], &v[k][1]).times(&vb));
            [mk(0), mk(1)]
        }
    };
    let bank = FilterBank { a: a.clone(), theta: theta.clone(), b, nb };
    let rep = verify(&bank, cfg.gsf.dos.tol);
    if !rep.passed() {
        return Err(Error::Internal(format!("constructed bank fails verification: {rep:?}")));
    }
    Ok(ConstructOutcome::Bank(bank, rep))
}

fn factor(n: &LMatrix2, cfg: &GsfConfig) -> Result<UForm> {
    match gsf(n, cfg)? {
        GsfOutcome::Factored(r) => Ok(r.u),
        GsfOutcome::Infeasible(rep) => Err(Error::Internal(format!("factorization failed after a passing existence test: {rep:?}"))),
    }
}

/// Per-check outcome of bank verification.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    /// Largest coefficient of the residual of each identity.
    pub tffb1: f64,
    pub tffb0: f64,
    pub exact: bool,
    pub tol: f64,
    pub sym: [Option<SymType>; 2],
    pub sym_a: Option<SymType>,
    pub vmo: [u32; 2],
    pub nb: u32,
    pub parity: bool,
}

impl VerifyReport {
    pub fn identities(&self) -> bool {
        if self.exact {
            self.tffb1 == 0.0 && self.tffb0 == 0.0
        } else {
            self.tffb1 <= self.tol && self.tffb0 <= self.tol
        }
    }

    pub fn symmetric(&self) -> bool {
        self.sym_a.is_some() && self.sym.iter().all(Option::is_some)
    }

    pub fn vmo_ok(&self) -> bool {
        self.vmo.iter().all(|&v| v >= self.nb)
    }

    pub fn passed(&self) -> bool {
        self.identities() && self.symmetric() && self.vmo_ok() && self.parity
    }
}

fn max_coeff(p: &Poly) -> f64 {
    p.coeffs().iter().map(|c| libm::fabs(c.to_f64())).fold(0.0, f64::max)
}

fn max_ball(p: &Laurent<Ball>) -> f64 {
    p.coeffs().iter().map(Ball::mag_f64).fold(0.0, f64::max)
}

/// Symmetry of a ball polynomial within tol; zero has type (1, 0).
fn ball_sym_type(p: &Laurent<Ball>, tol: f64) -> Option<SymType> {
    let big: Vec<(i64, f64)> = p.terms().map(|(k, v)| (k, v.mid_f64())).filter(|(_, v)| libm::fabs(*v) > tol).collect();
    let (lo, hi) = match (big.first(), big.last()) {
        (Some(l), Some(h)) => (l.0, h.0),
        _ => return Some(SymType::ONE),
    };
    let c = lo + hi;
    let coef = |k: i64| p.coeff_ref(k).map(Ball::mid_f64).unwrap_or(0.0);
    for eps in [1i8, -1] {
        if (lo..=hi).all(|k| libm::fabs(coef(k) - f64::from(eps) * coef(c - k)) <= tol) {
            return Some(SymType::new(eps, c));
        }
    }
    None
}

/// Moments Σ b(k)·k^j vanish for j < n, counted in double precision.
fn ball_vmo(p: &Laurent<Ball>, tol: f64) -> u32 {
    let pairs: Vec<(f64, f64)> = p.terms().map(|(k, v)| (k as f64, v.mid_f64())).collect();
    let scale = pairs.iter().map(|(_, v)| libm::fabs(*v)).fold(0.0, f64::max).max(1.0);
    let mut n = 0u32;
    while n < 64 {
        let m: f64 = pairs.iter().map(|(k, v)| v * libm::pow(*k, f64::from(n))).sum();
        let kmax = pairs.iter().map(|(k, _)| libm::fabs(*k)).fold(1.0, f64::max);
        if libm::fabs(m) > (tol.max(1e-12)) * scale * libm::pow(kmax, f64::from(n)) * pairs.len() as f64 {
            break;
        }
        n += 1;
    }
    n
}

/// Checks both perfect-reconstruction identities, symmetry, vanishing moments and parity.
pub fn verify(bank: &FilterBank, tol: f64) -> VerifyReport {
    let t2 = bank.theta.upsample();
    let sym_a = bank.a.sym_type();
    let (tffb1, tffb0, sym, vmo, exact) = if bank.is_exact() {
        let mut r1 = &(&t2 * &(&bank.a.star() * &bank.a)) - &bank.theta;
        let mut r0 = &t2 * &(&bank.a.star() * &bank.a.flip());
        let mut sym = [None, None];
        let mut vmo = [0u32; 2];
        for (k, b) in bank.b.iter().enumerate() {
            let HighPass::Exact { poly, scale } = b else { unreachable!() };
            let s = if k == 0 { scale.clone() } else { -scale };
            r1 = &r1 + &(&poly.star() * poly).scale(&s);
            r0 = &r0 + &(&poly.star() * &poly.flip()).scale(&s);
            sym[k] = if poly.is_zero() { Some(SymType::ONE) } else { poly.sym_type() };
            vmo[k] = vmo_or_inf(poly).unwrap_or(0);
        }
        (max_coeff(&r1), max_coeff(&r0), sym, vmo, true)
    } else {
        let prec = 256;
        let conv = |p: &Poly| p.map(|s| s.to_ball(prec));
        let (a, t2b, th) = (conv(&bank.a), conv(&t2), conv(&bank.theta));
        let mut r1 = t2b.times(&a.star().times(&a)).minus(&th);
        let mut r0 = t2b.times(&a.star().times(&a.flip()));
        let mut sym = [None, None];
        let mut vmo = [0u32; 2];
        for (k, b) in bank.b.iter().enumerate() {
            let p = b.to_ball(prec);
            let (g1, g0) = (p.star().times(&p), p.star().times(&p.flip()));
            if k == 0 {
                r1 = r1.plus(&g1);
                r0 = r0.plus(&g0);
            } else {
                r1 = r1.minus(&g1);
                r0 = r0.minus(&g0);
            }
            sym[k] = ball_sym_type(&p, tol.max(1e-20));
            vmo[k] = ball_vmo(&p, tol);
        }
        (max_ball(&r1), max_ball(&r0), sym, vmo, false)
    };
    let parity = match sym_a {
        Some(ta) => bank.b.iter().zip(sym.iter()).all(|(b, s)| b.is_zero() || s.is_some_and(|t| (t.c + ta.c).rem_euclid(2) == 0)),
        None => false,
    };
    VerifyReport { tffb1, tffb0, exact, tol, sym, sym_a, vmo, nb: bank.nb, parity }
}

/// p0 is the same (up to a monomial and a constant) for every admissible n_b.
pub fn p0_stability(a: &Poly, theta: &Poly) -> Result<bool> {
    let Some((lo, hi)) = nb_range(a, theta)? else {
        return Ok(true);
    };
    let norm = |p: &Poly| -> Option<Poly> {
        if p.is_zero() {
            return None;
        }
        let lc = p.lead();
        Some(p.shift(-p.ldeg()).div_scalar(&lc))
    };
    let mut first: Option<Option<Poly>> = None;
    for nb in lo..=hi {
        let p0 = existence_test(a, theta, nb)?.p0;
        let n = norm(&p0);
        match &first {
            None => first = Some(n),
            Some(f) if *f != n => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

/// Sym u^[0] and Sym u^[1] for Sym u = εz^c with c even.
pub fn coset_types(t: SymType) -> Option<(SymType, SymType)> {
    if t.c.rem_euclid(2) != 0 {
        return None;
    }
    Some((SymType::new(t.eps, t.c / 2), SymType::new(t.eps, t.c / 2 - 1)))
}

/// √2·P_l·(u^[0], u^[1]) = (u^[0] + z^l u^[1], u^[0] − z^l u^[1]).
pub fn pl_transform(u: &Poly, l: i64) -> (Poly, Poly) {
    let (u0, u1) = u.coset_split();
    let s = u1.shift(l);
    (&u0 + &s, &u0 - &s)
}
