//! Hermitian square roots f = d·d⋆ and the spectrum of a Laurent polynomial.

use alloc::format;
use alloc::vec::Vec;

use super::poly::Poly;
use super::roots::{isolate_complex, IsolatedRoot};
use super::sym::SymType;
use super::upoly::{to_x, UPoly};
use crate::error::{Error, Result};
use crate::field::{Ball, Root, Scalar};

/// d = √scale · poly, with poly exact.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledPoly {
    pub scale: Scalar,
    pub poly: Poly,
}

impl ScaledPoly {
    pub fn exact(p: Poly) -> Self {
        ScaledPoly { scale: Scalar::one(), poly: p }
    }

    /// The polynomial itself when √scale lies in the tower.
    pub fn to_exact(&self) -> Option<Poly> {
        let s = self.scale.sqrt_exact(4)?;
        Some(self.poly.scale(&s))
    }

    /// d·d⋆ = scale · poly·poly⋆
    pub fn hermitian_square(&self) -> Poly {
        (&self.poly * &self.poly.star()).scale(&self.scale)
    }
}

/// Why f = d·d⋆ has no real symmetric solution.
#[derive(Clone, Debug, PartialEq)]
pub enum SqrtFailure {
    /// f is zero or f⋆ ≠ f.
    NotHermitian,
    /// f takes a negative value on the unit circle, at z = e^{iω} with 2cos ω = x.
    NegativeOnCircle { x: Scalar },
    /// A real root in (−1,0)∪(0,1) of odd multiplicity; its image x = z + z⁻¹
    /// lies in the given interval.
    OddRealRoot { x_lo: Scalar, x_hi: Scalar, z_approx: f64 },
    /// The conditions hold but every solution needs complex coefficients.
    ComplexRequired,
}

impl core::fmt::Display for SqrtFailure {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SqrtFailure::NotHermitian => write!(f, "polynomial is zero or not Hermitian"),
            SqrtFailure::NegativeOnCircle { x } => write!(f, "negative on the unit circle at z + 1/z = {}", x.to_f64() + 0.0),
            SqrtFailure::OddRealRoot { x_lo, x_hi, z_approx } => write!(
                f,
                "real root z ≈ {z_approx:.12} of odd multiplicity (z + 1/z in [{}, {}])",
                x_lo.to_f64(),
                x_hi.to_f64()
            ),
            SqrtFailure::ComplexRequired => write!(f, "every square root needs complex coefficients"),
        }
    }
}

/// Monic square root of a monic ordinary polynomial, if one exists.
pub fn poly_sqrt(f: &UPoly) -> Option<UPoly> {
    let d = f.degree();
    if d < 0 {
        return Some(UPoly::zero());
    }
    if d % 2 != 0 || !f.lead().is_one() {
        return None;
    }
    let n = (d / 2) as usize;
    let fc = f.coeffs();
    let mut s = alloc::vec![Scalar::zero(); n + 1];
    s[n] = Scalar::one();
    let half = Scalar::from_ratio(1, 2);
    for k in (0..n).rev() {
        let mut acc = fc[n + k].clone();
        for i in (k + 1)..n {
            let j = n + k - i;
            if j > k && j < n {
                acc -= &(&s[i] * &s[j]);
            }
        }
        s[k] = &acc * &half;
    }
    let r = UPoly::new(s);
    if &r.mul(&r) == f {
        Some(r)
    } else {
        None
    }
}

/// Solves f = d·d⋆ with d real and symmetric.
///
/// The returned d has the form √μ·s with s exact; see [`ScaledPoly`].
pub fn hermitian_square_root(f: &Poly) -> core::result::Result<ScaledPoly, SqrtFailure> {
    if f.is_zero() || !f.is_hermitian() {
        return Err(SqrtFailure::NotHermitian);
    }
    let m = f.ldeg();
    let big_f = UPoly::new(f.coeffs().to_vec());
    let kappa = big_f.lead();
    if let Some(s) = poly_sqrt(&big_f.monic()) {
        let sp = Poly::new(0, s.coeffs().to_vec());
        let es = sp.sym_type().expect("square root of a Hermitian polynomial is symmetric");
        if m == -sp.deg() && kappa.signum() == es.eps as i32 {
            return Ok(ScaledPoly { scale: kappa.abs(), poly: sp });
        }
    }
    Err(diagnose(f))
}

/// First violated condition among: sign on the circle, parity on (−1,0)∪(0,1).
fn diagnose(f: &Poly) -> SqrtFailure {
    let p = to_x(f).expect("hermitian input");
    let odd = p.odd_part();
    let two = Scalar::from_int(2);
    let mtwo = Scalar::from_int(-2);
    // sign of f on the circle: x ∈ [−2, 2]
    let iso = odd.isolate_real(Some(&mtwo), Some(&two), &Scalar::from_ratio(1, 64));
    let nudge = Scalar::from_ratio(1, 1 << 12);
    let mut cand = alloc::vec![Scalar::zero(), Scalar::from_ratio(1, 3)];
    for (a, b) in &iso {
        cand.push(a - &nudge);
        cand.push(a.clone());
        cand.push(b.clone());
        cand.push(b + &nudge);
    }
    for x in cand {
        if x > mtwo && x < two && p.eval(&x).signum() < 0 {
            return SqrtFailure::NegativeOnCircle { x };
        }
    }
    for (lo, hi) in [(Some(&two), None), (None, Some(&mtwo))] {
        let iso = odd.isolate_real(lo, hi, &Scalar::from_ratio(1, 1 << 10));
        if let Some((a, b)) = iso.first() {
            let x = (a.to_f64() + b.to_f64()) / 2.0;
            let disc = libm::sqrt((x * x - 4.0).max(0.0));
            let z = if x > 0.0 { (x - disc) / 2.0 } else { (x + disc) / 2.0 };
            return SqrtFailure::OddRealRoot { x_lo: a.clone(), x_hi: b.clone(), z_approx: z };
        }
    }
    SqrtFailure::ComplexRequired
}

/// Type of d for f = d·d⋆ when f is written as a scaled square.
pub fn hsqrt_type(d: &ScaledPoly) -> Option<SymType> {
    d.poly.sym_type()
}

/// A nonzero complex root with its multiplicity, certified by a disc.
#[derive(Clone, Debug)]
pub struct AlgebraicPoint {
    /// Square-free factor over the tower containing the root.
    pub factor: UPoly,
    pub root: IsolatedRoot,
    pub multiplicity: u32,
    /// The root itself when it is a real tower element.
    pub exact: Option<Scalar>,
}

impl AlgebraicPoint {
    pub fn approx(&self) -> (f64, f64) {
        (self.root.re_f64(), self.root.im_f64())
    }

    /// Re-isolates the root with a disc of radius below 2^(−bits).
    pub fn refine(&self, bits: u32, cap: u32) -> Result<AlgebraicPoint> {
        let target = libm::ldexp(1.0, -(bits as i32));
        let mut prec = bits + 32;
        loop {
            let roots = isolate_complex(&self.factor, prec, cap.max(prec))?;
            let (x, y) = self.approx();
            let best = roots
                .into_iter()
                .min_by(|a, b| {
                    let da = libm::hypot(a.re_f64() - x, a.im_f64() - y);
                    let db = libm::hypot(b.re_f64() - x, b.im_f64() - y);
                    da.partial_cmp(&db).unwrap()
                })
                .ok_or_else(|| Error::Internal("lost root".into()))?;
            if best.radius_f64() <= target {
                return Ok(AlgebraicPoint { root: best, ..self.clone() });
            }
            if prec >= cap {
                return Err(Error::PrecisionCap(cap));
            }
            prec = (prec * 2).min(cap);
        }
    }

    pub fn re_ball(&self) -> Ball {
        self.root.re_ball()
    }
}

/// Roots of u in ℂ∖{0} with multiplicities.
pub fn spectrum(u: &Poly, prec: u32, cap: u32) -> Result<Vec<AlgebraicPoint>> {
    if u.is_zero() {
        return Err(Error::Precondition("spectrum of the zero polynomial".into()));
    }
    let f = UPoly::new(u.coeffs().to_vec());
    let mut out = Vec::new();
    for (i, fi) in f.squarefree().into_iter().enumerate() {
        if fi.degree() < 1 {
            continue;
        }
        let mult = (i + 1) as u32;
        let exact_linear = if fi.degree() == 1 { Some(-&fi.coeffs()[0]) } else { None };
        for r in isolate_complex(&fi, prec, cap)? {
            let exact = exact_linear.clone().or_else(|| exact_real_root(&fi, &r));
            out.push(AlgebraicPoint { factor: fi.clone(), root: r, multiplicity: mult, exact });
        }
    }
    out.sort_by(|a, b| {
        let (x0, y0) = a.approx();
        let (x1, y1) = b.approx();
        (x0, y0).partial_cmp(&(x1, y1)).unwrap_or(core::cmp::Ordering::Equal)
    });
    Ok(out)
}

/// Rational recognition of a real root, confirmed by exact evaluation.
fn exact_real_root(f: &UPoly, r: &IsolatedRoot) -> Option<Scalar> {
    if !r.touches_real() {
        return None;
    }
    let q = super::upoly::recognize_rational(r.re_f64(), 1 << 20)?;
    let s = Scalar::from_rational(q);
    if f.eval(&s).is_zero() {
        Some(s)
    } else {
        None
    }
}

/// √x in the tower, or an error naming the quantity.
pub fn sqrt_in_tower(x: &Scalar, what: &str) -> Result<Scalar> {
    match x.sqrt(64)? {
        Root::Exact(s) => Ok(s),
        Root::Approx(_) => Err(Error::LeavesTower(format!("sqrt of {x} ({what})"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_square_root() {
        let f = Poly::from_rats(-1, &[(-1, 4), (1, 2), (-1, 4)]);
        let d = hermitian_square_root(&f).unwrap();
        assert_eq!(d.hermitian_square(), f);
        let e = d.to_exact().unwrap();
        assert!(e == Poly::from_rats(0, &[(1, 2), (-1, 2)]) || e == Poly::from_rats(0, &[(-1, 2), (1, 2)]));
        assert_eq!(hermitian_square_root(&Poly::one()).unwrap().to_exact().unwrap(), Poly::one());
        let g = Poly::from_ints(-1, &[1, 2, 1]) * Poly::from_ints(-1, &[-1, 2, -1]);
        let g = g.scale(&Scalar::from_ratio(1, 16));
        let d = hermitian_square_root(&g).unwrap();
        assert_eq!(d.hermitian_square(), g);
    }

    #[test]
    fn failures() {
        // −(z+2+z⁻¹) is negative on the circle
        let f = Poly::from_ints(-1, &[-1, -2, -1]);
        assert!(matches!(hermitian_square_root(&f), Err(SqrtFailure::NegativeOnCircle { .. })));
        // (z−2)(z⁻¹−2) = −2z + 5 − 2z⁻¹ > 0 on the circle, odd root at ½
        let f = Poly::from_ints(-1, &[-2, 5, -2]);
        match hermitian_square_root(&f) {
            Err(SqrtFailure::OddRealRoot { z_approx, .. }) => assert!((z_approx - 0.5).abs() < 1e-3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn spectrum_points() {
        let u = Poly::from_ints(-1, &[-2, 5, -2]);
        let s = spectrum(&u, 128, 4096).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].exact, Some(Scalar::from_ratio(1, 2)));
        assert_eq!(s[1].exact, Some(Scalar::from_int(2)));
        let r = s[0].refine(200, 4096).unwrap();
        assert!(r.root.radius_f64() < 1e-60);
    }
}
