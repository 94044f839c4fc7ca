//! Differences of Hermitian squares u = u1·u1⋆ − u2·u2⋆ with a prescribed
//! ratio Sym u1 / Sym u2.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Ball, Ring, Scalar};
use crate::laurent::roots::split_real_complex;
use crate::laurent::upoly::{from_x, recognize_rational, to_x};
use crate::laurent::{Laurent, Poly, SymType, UPoly};

/// u1, u2 with their symmetry types; zero entries keep an explicit type.
#[derive(Clone, Debug, PartialEq)]
pub struct DOSWitness<T: Ring = Scalar> {
    pub u1: Laurent<T>,
    pub u2: Laurent<T>,
    pub t1: SymType,
    pub t2: SymType,
}

impl<T: Ring + PartialEq> DOSWitness<T> {
    /// Sym u1 / Sym u2
    pub fn ratio(&self) -> SymType {
        self.t1.div(self.t2)
    }

    /// u1·u1⋆ − u2·u2⋆
    pub fn value(&self) -> Laurent<T> {
        self.u1.times(&self.u1.star()).minus(&self.u2.times(&self.u2.star()))
    }

    /// Shifts u1 by a power of z so that the ratio becomes `target`.
    pub fn retype(mut self, target: SymType) -> Result<Self> {
        let r = self.ratio();
        if r.eps != target.eps || (target.c - r.c) % 2 != 0 {
            return Err(Error::Incompatible(format!("ratio {r} cannot be moved to {target}")));
        }
        let k = (target.c - r.c) / 2;
        self.u1 = self.u1.shift(k);
        self.t1 = self.t1.mul(SymType::z(2 * k));
        Ok(self)
    }

    /// Whether the entries carry their recorded types.
    pub fn types_hold(&self) -> bool {
        self.u1.has_type(self.t1) && self.u2.has_type(self.t2)
    }
}

impl DOSWitness {
    /// The exact witness identity and ratio.
    pub fn check(&self, u: &Poly, ty: SymType) -> bool {
        self.types_hold() && self.ratio() == ty && self.value() == *u
    }

    pub fn to_ball(&self, prec: u32) -> DOSWitness<Ball> {
        DOSWitness {
            u1: self.u1.map(|s| s.to_ball(prec)),
            u2: self.u2.map(|s| s.to_ball(prec)),
            t1: self.t1,
            t2: self.t2,
        }
    }
}

impl DOSWitness<Ball> {
    /// Largest coefficient magnitude of value − u.
    pub fn residual(&self, u: &Poly) -> f64 {
        let prec = self.u1.coeffs().first().or(self.u2.coeffs().first()).map_or(256, Ball::prec);
        let d = self.value().minus(&u.map(|s| s.to_ball(prec)));
        d.coeffs().iter().map(Ball::mag_f64).fold(0.0, f64::max)
    }
}

/// The witness for the product of the two represented polynomials.
pub fn dos_combine<T: Ring + PartialEq>(w1: &DOSWitness<T>, w2: &DOSWitness<T>) -> Result<DOSWitness<T>> {
    let tau = w1.ratio();
    if tau != w2.ratio() {
        return Err(Error::Incompatible(format!("ratios {} and {} differ", tau, w2.ratio())));
    }
    let c1 = tau.c + w1.t2.c;
    let u5 = w1.u1.times(&w2.u1).plus(&w1.u2.star().times(&w2.u2).shift(c1));
    let u6 = w1.u2.times(&w2.u1).plus(&w1.u1.star().times(&w2.u2).shift(c1));
    Ok(DOSWitness { u1: u5, u2: u6, t1: w1.t1.mul(w2.t1), t2: w1.t2.mul(w2.t1) })
}

/// A real root x of odd multiplicity in a forbidden interval, with z + z⁻¹ = x.
#[derive(Clone, Debug, PartialEq)]
pub enum DosFailure {
    NotHermitian,
    OddRoot { x_lo: Scalar, x_hi: Scalar, z_approx: f64, multiplicity: usize },
}

impl core::fmt::Display for DosFailure {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DosFailure::NotHermitian => write!(f, "polynomial is not Hermitian with real coefficients"),
            DosFailure::OddRoot { x_lo, x_hi, z_approx, multiplicity } => write!(
                f,
                "root z ≈ {z_approx:.12} of odd multiplicity {multiplicity} (z + 1/z in [{}, {}])",
                x_lo.to_f64(),
                x_hi.to_f64()
            ),
        }
    }
}

/// Forbidden x-intervals (lo, hi) for the type class; None marks ±∞.
fn forbidden(ty: SymType) -> Vec<(Option<Scalar>, Option<Scalar>)> {
    let two = Scalar::from_int(2);
    let mtwo = Scalar::from_int(-2);
    match (ty.eps, ty.c.rem_euclid(2)) {
        (1, 0) => Vec::new(),
        (1, _) => alloc::vec![(None, Some(mtwo))],
        (_, 0) => alloc::vec![(None, Some(mtwo)), (Some(two), None)],
        _ => alloc::vec![(Some(two), None)],
    }
}

fn z_of_x(x: f64) -> f64 {
    let disc = libm::sqrt((x * x - 4.0).max(0.0));
    if x > 0.0 {
        (x - disc) / 2.0
    } else {
        (x + disc) / 2.0
    }
}

/// Decides whether u has the DOS property for the type, with a witness when not.
pub fn dos_feasible(u: &Poly, ty: SymType) -> core::result::Result<(), DosFailure> {
    let p = to_x(u).ok_or(DosFailure::NotHermitian)?;
    if p.is_zero() {
        return Ok(());
    }
    let width = Scalar::from_ratio(1, 1 << 20);
    for (i, f) in p.squarefree().iter().enumerate() {
        if i % 2 == 1 {
            continue;
        }
        for (lo, hi) in forbidden(ty) {
            if let Some((a, b)) = f.isolate_real(lo.as_ref(), hi.as_ref(), &width).first() {
                let x = (a.to_f64() + b.to_f64()) / 2.0;
                return Err(DosFailure::OddRoot {
                    x_lo: a.clone(),
                    x_hi: b.clone(),
                    z_approx: z_of_x(x),
                    multiplicity: i + 1,
                });
            }
        }
    }
    Ok(())
}

/// An irreducible Hermitian factor, written in x = z + z⁻¹.
#[derive(Clone, Debug, PartialEq)]
pub enum Atom {
    /// z⁻¹(z − 1)² = x − 2
    PlusOne,
    /// z⁻¹(z + 1)² = x + 2
    MinusOne,
    /// x − x0: a unit-circle pair when |x0| < 2, a real pair when |x0| > 2.
    Real(Scalar),
    /// x² + p·x + q with non-real roots.
    Quadratic { p: Scalar, q: Scalar },
}

impl Atom {
    pub fn poly(&self) -> Poly {
        let x = UPoly::new(alloc::vec![Scalar::zero(), Scalar::one()]);
        let f = match self {
            Atom::PlusOne => x.sub(&UPoly::constant(Scalar::from_int(2))),
            Atom::MinusOne => x.add(&UPoly::constant(Scalar::from_int(2))),
            Atom::Real(x0) => UPoly::linear(x0),
            Atom::Quadratic { p, q } => UPoly::new(alloc::vec![q.clone(), p.clone(), Scalar::one()]),
        };
        from_x(&f)
    }
}

/// Scalars the atom formulas are evaluated in.
pub(crate) trait AtomNum: Ring + PartialEq {
    fn sqrt_n(&self) -> Option<Self>;
    fn inv_n(&self) -> Option<Self>;
    fn sign_n(&self) -> Option<i32>;
}

impl AtomNum for Scalar {
    fn sqrt_n(&self) -> Option<Self> {
        self.sqrt_exact(6)
    }
    fn inv_n(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn sign_n(&self) -> Option<i32> {
        Some(self.signum())
    }
}

impl AtomNum for Ball {
    fn sqrt_n(&self) -> Option<Self> {
        (self.sign() != Some(-1)).then(|| self.sqrt())
    }
    fn inv_n(&self) -> Option<Self> {
        self.recip()
    }
    fn sign_n(&self) -> Option<i32> {
        self.sign()
    }
}

fn lp<T: Ring>(low: i64, c: &[i64]) -> Laurent<T> {
    Laurent::new(low, c.iter().map(|&v| T::from_i64(v)).collect())
}

fn quarter<T: AtomNum>() -> T {
    T::from_i64(4).inv_n().unwrap()
}

fn sym(eps: i8, c: i64) -> SymType {
    SymType::new(eps, c)
}

/// Fills the type of a zero entry from the ratio.
fn witness<T: AtomNum>(u1: Laurent<T>, u2: Laurent<T>, t1: SymType, t2: SymType) -> DOSWitness<T> {
    DOSWitness { u1, u2, t1, t2 }
}

fn with_ratio<T: AtomNum>(u1: Laurent<T>, u2: Laurent<T>, t1: Option<SymType>, t2: Option<SymType>, r: SymType) -> DOSWitness<T> {
    match (t1, t2) {
        (Some(a), Some(b)) => witness(u1, u2, a, b),
        (Some(a), None) => witness(u1, u2, a, a.div(r)),
        (None, Some(b)) => witness(u1, u2, r.mul(b), b),
        (None, None) => witness(u1, u2, r, SymType::ONE),
    }
}

fn pm_one_atom<T: AtomNum>(plus: bool, r: SymType) -> DOSWitness<T> {
    if plus {
        with_ratio(Laurent::zero(), lp(0, &[-1, 1]), None, Some(sym(-1, 1)), r)
    } else {
        with_ratio(lp(0, &[1, 1]), Laurent::zero(), Some(sym(1, 1)), None, r)
    }
}

/// Witness for x − x0 in the class of `r`, with ratio in that class.
fn real_atom<T: AtomNum>(x0: &T, r: SymType) -> Option<DOSWitness<T>> {
    let two = T::from_i64(2);
    let xz: Laurent<T> = lp(-1, &[1, 0, 1]);
    let inside = two.minus(x0).sign_n()? > 0 && two.plus(x0).sign_n()? > 0;
    match (r.eps, r.c.rem_euclid(2)) {
        (1, 0) if inside => {
            // ((x − 2x0 + 2), (x − 2)) / (2√(2 − x0))
            let s = two.times(&two.minus(x0).sqrt_n()?).inv_n()?;
            let a = xz.plus(&Laurent::constant(two.minus(&two.times(x0)))).scale(&s);
            let b = xz.minus(&Laurent::constant(two.clone())).scale(&s);
            Some(witness(a, b, SymType::ONE, SymType::ONE))
        }
        (1, 0) => {
            let w = xz.minus(&Laurent::constant(x0.clone()));
            let q = Laurent::constant(quarter());
            Some(witness(w.plus(&q), w.minus(&q), SymType::ONE, SymType::ONE))
        }
        (1, _) => {
            let b = two.plus(x0).sqrt_n()?;
            Some(witness(lp(0, &[1, 1]), Laurent::constant(b), sym(1, 1), SymType::ONE))
        }
        (_, 0) => {
            if !inside {
                return None;
            }
            let a = two.minus(x0).times(&quarter()).sqrt_n()?;
            let b = two.plus(x0).times(&quarter()).sqrt_n()?;
            Some(witness(lp(0, &[1, 1]).scale(&a), lp(0, &[-1, 1]).scale(&b), sym(1, 1), sym(-1, 1)))
        }
        _ => {
            let a = two.minus(x0).sqrt_n()?;
            Some(witness(Laurent::constant(a), lp(-1, &[1, -1]), SymType::ONE, sym(-1, -1)))
        }
    }
}

/// Witness for x² + p·x + q (non-real roots a ± ib) in the class of `r`.
fn quad_atom<T: AtomNum>(p: &T, q: &T, r: SymType) -> Option<DOSWitness<T>> {
    let two = T::from_i64(2);
    let four = T::from_i64(4);
    let xz: Laurent<T> = lp(-1, &[1, 0, 1]);
    let f = xz.times(&xz).plus(&xz.scale(p)).plus(&Laurent::constant(q.clone()));
    let half = two.inv_n()?;
    match (r.eps, r.c.rem_euclid(2)) {
        (1, 0) => {
            let one = Laurent::constant(T::one());
            Some(witness(f.plus(&one).scale(&half), f.minus(&one).scale(&half), SymType::ONE, SymType::ONE))
        }
        (1, _) => {
            // R = √((a+2)² + b²), γ = 2 + R, β² = 4 + 2a + 2R
            let rr = q.minus(&two.times(p)).plus(&four).sqrt_n()?;
            let gamma = two.plus(&rr);
            let beta = four.minus(p).plus(&two.times(&rr)).sqrt_n()?;
            let u1 = xz.plus(&Laurent::constant(gamma));
            Some(witness(u1, lp(0, &[1, 1]).scale(&beta), SymType::ONE, sym(1, 1)))
        }
        (_, 0) => {
            // α² the smaller root of 4t² − (4 + q)t + a² = 0
            let a = p.negated().times(&half);
            let s = four.plus(q);
            let disc = s.times(&s).minus(&T::from_i64(16).times(&a).times(&a)).sqrt_n()?;
            let t = s.minus(&disc).times(&T::from_i64(8).inv_n()?);
            let (alpha, gamma) = if a.sign_n()? == 0 {
                (T::zero(), s.sqrt_n()?)
            } else {
                let al = t.sqrt_n()?;
                let g = a.negated().times(&al.inv_n()?);
                (al, g)
            };
            let beta = T::one().minus(&t).sqrt_n()?;
            let u1 = xz.scale(&alpha).plus(&Laurent::constant(gamma));
            Some(witness(u1, lp(0, &[-1, 0, 1]).scale(&beta), SymType::ONE, sym(-1, 2)))
        }
        _ => {
            // R = √((a−2)² + b²), γ = −2 − R, β² = 4 − 2a + 2R
            let rr = q.plus(&two.times(p)).plus(&four).sqrt_n()?;
            let gamma = two.plus(&rr).negated();
            let beta = four.plus(p).plus(&two.times(&rr)).sqrt_n()?;
            let u1 = xz.plus(&Laurent::constant(gamma));
            Some(witness(u1, lp(-1, &[-1, 1]).scale(&beta), SymType::ONE, sym(-1, -1)))
        }
    }
}

fn const_atom<T: AtomNum>(k: &T, r: SymType) -> Option<DOSWitness<T>> {
    match k.sign_n()? {
        1 => Some(with_ratio(Laurent::constant(k.sqrt_n()?), Laurent::zero(), Some(SymType::ONE), None, r)),
        -1 => Some(with_ratio(Laurent::zero(), Laurent::constant(k.negated().sqrt_n()?), None, Some(SymType::ONE), r)),
        _ => None,
    }
}

/// Witness of a single atom with ratio exactly `ty`.
pub fn dos_atom(atom: &Atom, ty: SymType) -> Result<DOSWitness> {
    let w = match atom {
        Atom::PlusOne => Some(pm_one_atom(true, ty)),
        Atom::MinusOne => Some(pm_one_atom(false, ty)),
        Atom::Real(x0) => {
            let two = Scalar::from_int(2);
            if *x0 == two {
                Some(pm_one_atom(true, ty))
            } else if *x0 == -&two {
                Some(pm_one_atom(false, ty))
            } else {
                if let Err(e) = dos_feasible(&atom.poly(), ty) {
                    return Err(Error::Precondition(format!("atom has no witness for type {ty}: {e}")));
                }
                real_atom(x0, ty)
            }
        }
        Atom::Quadratic { p, q } => quad_atom(p, q, ty),
    };
    w.ok_or_else(|| Error::LeavesTower(format!("atom witness for type {ty} needs a square root outside the tower")))?
        .retype(ty)
}

/// Exact witness or a ball witness with a certified residual.
#[derive(Clone, Debug)]
pub enum DosResult {
    Exact(DOSWitness),
    Approx { witness: DOSWitness<Ball>, residual: f64 },
}

impl DosResult {
    pub fn exact(&self) -> Option<&DOSWitness> {
        match self {
            DosResult::Exact(w) => Some(w),
            DosResult::Approx { .. } => None,
        }
    }

    pub fn types(&self) -> (SymType, SymType) {
        match self {
            DosResult::Exact(w) => (w.t1, w.t2),
            DosResult::Approx { witness, .. } => (witness.t1, witness.t2),
        }
    }
}

/// Precision settings for the ball path.
#[derive(Clone, Copy, Debug)]
pub struct DosConfig {
    pub prec: u32,
    pub prec_cap: u32,
    pub tol: f64,
}

impl Default for DosConfig {
    fn default() -> Self {
        DosConfig { prec: 256, prec_cap: 4096, tol: 1e-25 }
    }
}

/// Factors of a monic square-free polynomial found exactly, and the rest.
fn split_exact(f: &UPoly) -> (Vec<Scalar>, Vec<(Scalar, Scalar)>, UPoly) {
    let mut lin = Vec::new();
    let mut quad = Vec::new();
    let mut rest = f.clone();
    if rest.degree() > 2 {
        let width = Scalar::from_ratio(1, 1 << 30);
        for (a, b) in f.isolate_real(None, None, &width) {
            let mid = (a.to_f64() + b.to_f64()) / 2.0;
            if let Some(q) = recognize_rational(mid, 1 << 20) {
                let x0 = Scalar::from_rational(q);
                if rest.eval(&x0).is_zero() {
                    rest = rest.exact_div(&UPoly::linear(&x0)).unwrap();
                    lin.push(x0);
                }
            }
        }
    }
    match rest.degree() {
        1 => {
            lin.push(-&rest.coeffs()[0]);
            rest = UPoly::one();
        }
        2 => {
            let q = rest.coeffs()[0].clone();
            let p = rest.coeffs()[1].clone();
            let disc = &(&p * &p) - &(&q * &Scalar::from_int(4));
            if disc.signum() < 0 {
                quad.push((p, q));
                rest = UPoly::one();
            } else if let Some(s) = disc.sqrt_exact(6) {
                let half = Scalar::from_ratio(1, 2);
                lin.push(&(&s - &p) * &half);
                lin.push(&(&(-&s) - &p) * &half);
                rest = UPoly::one();
            }
        }
        _ => {}
    }
    (lin, quad, rest)
}

/// A full witness for u with ratio `ty`.
pub fn dos_decompose(u: &Poly, ty: SymType, cfg: &DosConfig) -> Result<DosResult> {
    if let Err(e) = dos_feasible(u, ty) {
        return Err(Error::Precondition(format!("no DOS for type {ty}: {e}")));
    }
    if u.is_zero() {
        return Ok(DosResult::Exact(witness(Poly::zero(), Poly::zero(), ty, SymType::ONE)));
    }
    if ty.eps == 1 && ty.c % 2 == 0 {
        let one = Poly::one();
        let half = Scalar::from_ratio(1, 2);
        let u1 = (u + &one).scale(&half).shift(ty.c / 2);
        let u2 = (u - &one).scale(&half);
        return Ok(DosResult::Exact(witness(u1, u2, ty, SymType::ONE)));
    }
    let p = to_x(u).unwrap();
    let lc = p.lead();
    let mut e = UPoly::one();
    let mut odd = UPoly::one();
    for (i, f) in p.squarefree().iter().enumerate() {
        let m = (i + 1) as u32;
        e = e.mul(&f.pow(m / 2));
        if m % 2 == 1 {
            odd = odd.mul(f);
        }
    }
    let mut atoms: Vec<DOSWitness> = Vec::new();
    let mut pending: Vec<Atom> = Vec::new();
    match const_atom(&lc, ty) {
        Some(w) => atoms.push(w),
        None => pending.push(Atom::Real(Scalar::zero())),
    }
    if e.degree() > 0 {
        atoms.push(with_ratio(from_x(&e), Poly::zero(), Some(SymType::ONE), None, ty));
    }
    let (lin, quad, rest) = split_exact(&odd);
    for x0 in lin {
        let atom = Atom::Real(x0);
        match dos_atom(&atom, ty) {
            Ok(w) => atoms.push(w),
            Err(Error::LeavesTower(_)) => pending.push(atom),
            Err(err) => return Err(err),
        }
    }
    for (pq, qq) in quad {
        let atom = Atom::Quadratic { p: pq, q: qq };
        match dos_atom(&atom, ty) {
            Ok(w) => atoms.push(w),
            Err(Error::LeavesTower(_)) => pending.push(atom),
            Err(err) => return Err(err),
        }
    }
    let mut acc = with_ratio(Poly::one(), Poly::zero(), Some(SymType::ONE), None, ty);
    for w in &atoms {
        acc = dos_combine(&acc, &w.clone().retype(ty)?)?;
    }
    if pending.is_empty() && rest.degree() < 1 {
        debug_assert!(acc.check(u, ty));
        return Ok(DosResult::Exact(acc));
    }
    ball_completion(u, ty, &acc, &lc, &pending, &rest, cfg)
}

fn ball_completion(
    u: &Poly,
    ty: SymType,
    exact: &DOSWitness,
    lc: &Scalar,
    pending: &[Atom],
    rest: &UPoly,
    cfg: &DosConfig,
) -> Result<DosResult> {
    let mut prec = cfg.prec;
    loop {
        let bw = |a: Option<DOSWitness<Ball>>| {
            a.ok_or_else(|| Error::Internal("ball atom formula failed".into()))?.retype(ty)
        };
        let mut acc = exact.to_ball(prec);
        for atom in pending {
            let w = match atom {
                Atom::Real(x0) if x0.is_zero() && !lc.is_zero() => bw(const_atom(&lc.to_ball(prec), ty))?,
                Atom::Real(x0) => bw(real_atom(&x0.to_ball(prec), ty))?,
                Atom::Quadratic { p, q } => bw(quad_atom(&p.to_ball(prec), &q.to_ball(prec), ty))?,
                Atom::PlusOne | Atom::MinusOne => bw(Some(pm_one_atom(matches!(atom, Atom::PlusOne), ty)))?,
            };
            acc = dos_combine(&acc, &w)?;
        }
        if rest.degree() > 0 {
            let (real, cplx) = split_real_complex(rest, prec, cfg.prec_cap)?;
            for r in &real {
                acc = dos_combine(&acc, &bw(real_atom(&r.re_ball(), ty))?)?;
            }
            for r in &cplx {
                let a = r.re_ball();
                let b = r.im_ball();
                let pb = a.times(&Ball::from_int(-2, prec));
                let qb = a.times(&a).plus(&b.times(&b));
                acc = dos_combine(&acc, &bw(quad_atom(&pb, &qb, ty))?)?;
            }
        }
        let res = acc.residual(u);
        if res <= cfg.tol {
            return Ok(DosResult::Approx { witness: acc, residual: res });
        }
        if prec >= cfg.prec_cap {
            return Err(Error::PrecisionCap(cfg.prec_cap));
        }
        prec = (prec * 2).min(cfg.prec_cap);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: i8, c: i64) -> SymType {
        SymType::new(e, c)
    }

    #[test]
    fn atoms_reproduce() {
        let a = dos_atom(&Atom::PlusOne, t(1, 1)).unwrap();
        assert!(a.u1.is_zero());
        assert_eq!(a.u2, Poly::from_ints(0, &[-1, 1]));
        let c = dos_atom(&Atom::Real(Scalar::zero()), t(1, 1)).unwrap();
        assert_eq!(c.u1, Poly::from_ints(0, &[1, 1]));
        assert_eq!(c.u2, Poly::constant(Scalar::sqrt_int(2)));
        for ty in [t(1, 0), t(1, 1), t(-1, 0), t(-1, 1), t(1, -3), t(-1, 4)] {
            for x0 in [-1i64, 0, 1] {
                let atom = Atom::Real(Scalar::from_int(x0));
                assert!(dos_atom(&atom, ty).unwrap().check(&atom.poly(), ty));
            }
            let q = Atom::Quadratic { p: Scalar::from_int(0), q: Scalar::from_int(5) };
            if let Ok(w) = dos_atom(&q, ty) {
                assert!(w.check(&q.poly(), ty));
            }
        }
    }

    #[test]
    fn decompose_and_reject() {
        let u = Poly::from_ints(-2, &[2, -5, 12, -5, 2]);
        for ty in [t(1, 1), t(-1, 1), t(1, 0)] {
            match dos_decompose(&u, ty, &DosConfig::default()).unwrap() {
                DosResult::Exact(w) => assert!(w.check(&u, ty)),
                DosResult::Approx { residual, .. } => assert!(residual < 1e-25),
            }
        }
        let bad = Poly::from_rats(-1, &[(1, 2), (5, 4), (1, 2)]);
        assert!(matches!(dos_feasible(&bad, t(1, 1)), Err(DosFailure::OddRoot { .. })));
        assert!(dos_feasible(&bad, t(1, 0)).is_ok());
    }
}
