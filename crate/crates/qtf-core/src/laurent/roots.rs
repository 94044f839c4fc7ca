//! Certified complex root isolation for square-free polynomials.

use alloc::vec::Vec;

use super::upoly::UPoly;
use crate::error::{Error, Result};
use crate::field::{Ball, Ring, Scalar};

/// A complex number as a pair of real balls.
#[derive(Clone, Debug)]
pub struct CBall {
    pub re: Ball,
    pub im: Ball,
}

impl CBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        CBall { re, im }
    }

    pub fn real(re: Ball) -> Self {
        let p = re.prec();
        CBall { re, im: Ball::zero_prec(p) }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        CBall { re: Ball::from_f64(re, prec), im: Ball::from_f64(im, prec) }
    }

    pub fn add(&self, o: &Self) -> Self {
        CBall { re: self.re.plus(&o.re), im: self.im.plus(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CBall { re: self.re.minus(&o.re), im: self.im.minus(&o.im) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        CBall {
            re: self.re.times(&o.re).minus(&self.im.times(&o.im)),
            im: self.re.times(&o.im).plus(&self.im.times(&o.re)),
        }
    }

    pub fn scale(&self, s: &Ball) -> Self {
        CBall { re: self.re.times(s), im: self.im.times(s) }
    }

    pub fn norm2(&self) -> Ball {
        self.re.times(&self.re).plus(&self.im.times(&self.im))
    }

    pub fn abs(&self) -> Ball {
        self.norm2().sqrt()
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm2().recip()?;
        Some(CBall { re: self.re.times(&n), im: self.im.neg_ball().times(&n) })
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.recip()?))
    }

    pub fn center(&self) -> Self {
        CBall { re: self.re.center(), im: self.im.center() }
    }

    pub fn conj(&self) -> Self {
        CBall { re: self.re.clone(), im: self.im.neg_ball() }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }
}

/// Horner evaluation with ball coefficients.
pub fn eval_c(coeffs: &[Ball], z: &CBall) -> CBall {
    let p = z.re.prec();
    let mut acc = CBall::real(Ball::zero_prec(p));
    for a in coeffs.iter().rev() {
        acc = acc.mul(z).add(&CBall::real(a.clone()));
    }
    acc
}

/// A root of a square-free factor, certified to lie in the disc
/// |z − center| ≤ radius, which contains no other root of the factor.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    pub center: CBall,
    pub radius: Ball,
}

impl IsolatedRoot {
    pub fn re_f64(&self) -> f64 {
        self.center.re.mid_f64()
    }

    pub fn im_f64(&self) -> f64 {
        self.center.im.mid_f64()
    }

    pub fn radius_f64(&self) -> f64 {
        self.radius.mag_f64()
    }

    /// A ball enclosure of the real part.
    pub fn re_ball(&self) -> Ball {
        self.center.re.inflate(&self.radius)
    }

    pub fn im_ball(&self) -> Ball {
        self.center.im.inflate(&self.radius)
    }

    /// Whether the disc meets the real axis.
    pub fn touches_real(&self) -> bool {
        let d = self.center.im.mag_f64();
        d <= self.radius.mag_f64()
    }
}

fn aberth_f64(c: &[f64]) -> Vec<(f64, f64)> {
    let n = c.len() - 1;
    let lc = c[n];
    let mon: Vec<f64> = c.iter().map(|x| x / lc).collect();
    let bound = 1.0 + mon[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let r0 = bound.min(1e6) * 0.5 + 0.1;
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = 2.0 * core::f64::consts::PI * (k as f64 + 0.4) / n as f64 + 0.3;
            (r0 * libm::cos(t), r0 * libm::sin(t))
        })
        .collect();
    let ev = |x: (f64, f64)| -> ((f64, f64), (f64, f64)) {
        let mut p = (0.0, 0.0);
        let mut d = (0.0, 0.0);
        for a in mon.iter().rev() {
            d = (d.0 * x.0 - d.1 * x.1 + p.0, d.0 * x.1 + d.1 * x.0 + p.1);
            p = (p.0 * x.0 - p.1 * x.1 + a, p.0 * x.1 + p.1 * x.0);
        }
        (p, d)
    };
    let cdiv = |a: (f64, f64), b: (f64, f64)| -> (f64, f64) {
        let n = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, d) = ev(z[i]);
            if p.0 == 0.0 && p.1 == 0.0 {
                continue;
            }
            let ratio = cdiv(p, d);
            let mut s = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let w = cdiv((1.0, 0.0), (z[i].0 - z[j].0, z[i].1 - z[j].1));
                    s = (s.0 + w.0, s.1 + w.1);
                }
            }
            let den = (1.0 - (ratio.0 * s.0 - ratio.1 * s.1), -(ratio.0 * s.1 + ratio.1 * s.0));
            let step = cdiv(ratio, den);
            if step.0.is_finite() && step.1.is_finite() {
                z[i] = (z[i].0 - step.0, z[i].1 - step.1);
                moved = moved.max(libm::hypot(step.0, step.1) / (1.0 + libm::hypot(z[i].0, z[i].1)));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Newton-corrected Weierstrass refinement at the given precision.
fn refine(coeffs: &[Ball], z: &mut [CBall], rounds: usize) {
    let n = z.len();
    let lc = CBall::real(coeffs[n].clone());
    for _ in 0..rounds {
        for i in 0..n {
            let p = eval_c(coeffs, &z[i]);
            let mut den = lc.clone();
            for j in 0..n {
                if j != i {
                    den = den.mul(&z[i].sub(&z[j]));
                }
            }
            if let Some(step) = p.div(&den) {
                z[i] = z[i].sub(&step).center();
            }
        }
    }
}

/// Certified isolating discs for every complex root of a square-free `f`.
///
/// Uses the inclusion radius n·|f(zᵢ)| / |lc·Π_{j≠i}(zᵢ − zⱼ)| and requires
/// the discs to be pairwise disjoint.
pub fn isolate_complex(f: &UPoly, prec: u32, prec_cap: u32) -> Result<Vec<IsolatedRoot>> {
    let n = f.degree();
    if n < 1 {
        return Ok(Vec::new());
    }
    let n = n as usize;
    let approx = aberth_f64(&f.to_f64());
    let mut prec = prec.max(64);
    loop {
        let coeffs: Vec<Ball> = f.coeffs().iter().map(|c| c.to_ball(prec)).collect();
        let mut z: Vec<CBall> = approx.iter().map(|&(a, b)| CBall::from_f64(a, b, prec)).collect();
        let rounds = 6 + (prec as usize / 64);
        refine(&coeffs, &mut z, rounds);
        if let Some(out) = certify(&coeffs, &z, n) {
            return Ok(out);
        }
        if prec >= prec_cap {
            return Err(Error::PrecisionCap(prec_cap));
        }
        prec = (prec * 2).min(prec_cap);
    }
}

fn certify(coeffs: &[Ball], z: &[CBall], n: usize) -> Option<Vec<IsolatedRoot>> {
    let prec = coeffs[0].prec();
    let lc = CBall::real(coeffs[n].clone());
    let nb = Ball::from_int(n as i64, prec);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let p = eval_c(coeffs, &z[i]);
        let mut den = lc.clone();
        for j in 0..n {
            if j != i {
                den = den.mul(&z[i].sub(&z[j]));
            }
        }
        let r = p.abs().times(&nb).div_ball(&den.abs())?;
        out.push(IsolatedRoot { center: z[i].clone(), radius: r });
    }
    for i in 0..n {
        for j in i + 1..n {
            let gap = out[i].center.sub(&out[j].center).abs().minus(&out[i].radius).minus(&out[j].radius);
            if gap.sign() != Some(1) {
                return None;
            }
        }
    }
    Some(out)
}

/// Roots of a square-free real polynomial split into real roots (ascending)
/// and complex roots with positive imaginary part.
pub fn split_real_complex(f: &UPoly, prec: u32, prec_cap: u32) -> Result<(Vec<IsolatedRoot>, Vec<IsolatedRoot>)> {
    let roots = isolate_complex(f, prec, prec_cap)?;
    let nreal = f.count_roots(None, None);
    let mut idx: Vec<usize> = (0..roots.len()).collect();
    idx.sort_by(|&a, &b| {
        let x = roots[a].center.im.mid_f64().abs();
        let y = roots[b].center.im.mid_f64().abs();
        x.partial_cmp(&y).unwrap_or(core::cmp::Ordering::Equal)
    });
    let mut real: Vec<IsolatedRoot> = idx[..nreal]
        .iter()
        .map(|&i| {
            let r = &roots[i];
            IsolatedRoot { center: CBall::real(r.center.re.clone()), radius: r.radius.clone() }
        })
        .collect();
    real.sort_by(|a, b| a.re_f64().partial_cmp(&b.re_f64()).unwrap_or(core::cmp::Ordering::Equal));
    let cplx: Vec<IsolatedRoot> = idx[nreal..]
        .iter()
        .map(|&i| &roots[i])
        .filter(|r| r.center.im.mid_f64() > 0.0)
        .cloned()
        .collect();
    if real.len() + 2 * cplx.len() != roots.len() {
        return Err(Error::Internal("conjugate pairing of complex roots failed".into()));
    }
    Ok((real, cplx))
}

/// Sign of a tower scalar compared against a ball, if decided.
pub fn ball_sign(s: &Scalar, b: &Ball) -> Option<i32> {
    s.to_ball(b.prec()).minus(b).sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolates_cyclotomic() {
        // x^4 + x^3 + x^2 + x + 1
        let f = UPoly::from_ints(&[1, 1, 1, 1, 1]);
        let r = isolate_complex(&f, 128, 4096).unwrap();
        assert_eq!(r.len(), 4);
        for x in &r {
            let m = libm::hypot(x.re_f64(), x.im_f64());
            assert!((m - 1.0).abs() < 1e-30);
            assert!(x.radius_f64() < 1e-25);
        }
        let (re, cx) = split_real_complex(&UPoly::from_ints(&[-2, 0, 1]).mul(&UPoly::from_ints(&[1, 0, 1])), 128, 4096).unwrap();
        assert_eq!(re.len(), 2);
        assert_eq!(cx.len(), 1);
        assert!((re[1].re_f64() - libm::sqrt(2.0)).abs() < 1e-15);
    }
}
