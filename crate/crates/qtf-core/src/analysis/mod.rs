//! Cascade samples of φ, η and ψ, and the L² smoothness exponent sm(a).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::framelet::FilterBank;
use crate::laurent::Poly;

/// Samples f(i/2^J) for i in start..start + values.len().
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    pub level: u32,
    pub start: i64,
    pub values: Vec<f64>,
}

impl SampledFunction {
    pub fn step(&self) -> f64 {
        libm::ldexp(1.0, -(self.level as i32))
    }

    pub fn x(&self, i: usize) -> f64 {
        (self.start + i as i64) as f64 * self.step()
    }

    pub fn support(&self) -> (f64, f64) {
        (self.x(0), self.x(self.values.len().saturating_sub(1)))
    }

    /// Value at grid index n (absolute), zero off the sampled range.
    pub fn at(&self, n: i64) -> f64 {
        let i = n - self.start;
        if i < 0 || i as usize >= self.values.len() {
            0.0
        } else {
            self.values[i as usize]
        }
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().enumerate().map(|(i, v)| (self.x(i), *v))
    }

    /// Trapezoid rule for ∫ f(x)·x^j dx.
    pub fn moment(&self, j: u32) -> f64 {
        let h = self.step();
        let n = self.values.len();
        let mut s = 0.0;
        for (i, v) in self.values.iter().enumerate() {
            let w = if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
            s += w * v * libm::pow(self.x(i), f64::from(j));
        }
        s * h
    }
}

fn coeffs_f64(p: &Poly) -> (i64, Vec<f64>) {
    (p.ldeg(), p.coeffs().iter().map(|c| c.to_f64()).collect())
}

/// φ at the integers: the eigenvector of (2a(2j − k)) for eigenvalue 1 with Σ = 1, if unique.
fn integer_values(lo: i64, ac: &[f64]) -> Option<Vec<f64>> {
    let dim = ac.len();
    if dim < 2 {
        return None;
    }
    let coef = |m: i64| if m < 0 || m as usize >= dim { 0.0 } else { ac[m as usize] };
    let t = DMatrix::from_fn(dim, dim, |j, k| 2.0 * coef(2 * (j as i64 + lo) - (k as i64 + lo) - lo));
    let mut m = &t - DMatrix::identity(dim, dim);
    for k in 0..dim {
        m[(dim - 1, k)] = 1.0;
    }
    let mut rhs = nalgebra::DVector::zeros(dim);
    rhs[dim - 1] = 1.0;
    let v = m.lu().solve(&rhs)?;
    let res = (&t * &v - &v).amax();
    if !res.is_finite() || res > 1e-9 {
        return None;
    }
    Some(v.iter().copied().collect())
}

/// Cascade iteration: φ_{n+1} = 2 Σ a(k) φ_n(2· − k) on the dyadic grid.
///
/// Exact at dyadics when the integer values of φ are determined, otherwise the hat-seeded iterate.
pub fn cascade_phi(a: &Poly, level: u32) -> Result<SampledFunction> {
    if level == 0 {
        return Err(Error::Precondition("level must be at least 1".into()));
    }
    if !a.at_one().is_one() {
        return Err(Error::Precondition(format!("mask sums to {}, not 1", a.at_one())));
    }
    let (lo, ac) = coeffs_f64(a);
    let (mut start, mut c) = (0i64, vec![1.0f64]);
    for _ in 0..level {
        // c'(k) = 2 Σ_m a(k − 2m) c(m)
        let mut next = vec![0.0; 2 * (c.len() - 1) + ac.len()];
        for (m, cm) in c.iter().enumerate() {
            for (t, at) in ac.iter().enumerate() {
                next[2 * m + t] += 2.0 * at * cm;
            }
        }
        start = 2 * start + lo;
        c = next;
    }
    // φ(k/2^J) = Σ_m c(m) φ(k − m)
    if let Some(v) = integer_values(lo, &ac) {
        let mut out = vec![0.0; c.len() + v.len() - 1];
        for (i, ci) in c.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                out[i + j] += ci * vj;
            }
        }
        start += lo;
        c = out;
    }
    Ok(SampledFunction { level, start, values: c })
}

/// η = Σ Θ(k) φ(· − k) and ψ^ℓ = 2 Σ b_ℓ(k) φ(2· − k) on the grid of φ.
pub fn derive_functions(bank: &FilterBank, phi: &SampledFunction) -> Result<[SampledFunction; 3]> {
    let level = phi.level;
    if level == 0 {
        return Err(Error::Precondition("φ must be sampled at level ≥ 1".into()));
    }
    let scale = 1i64 << level;
    let n = phi.values.len() as i64;
    let theta: Vec<(i64, f64)> = bank.theta.to_f64_pairs();
    let (tlo, thi) = (theta.first().map_or(0, |t| t.0), theta.last().map_or(0, |t| t.0));
    let start = phi.start + tlo * scale;
    let len = (n + (thi - tlo) * scale).max(0) as usize;
    let mut eta = vec![0.0; len];
    for (i, e) in eta.iter_mut().enumerate() {
        let x = start + i as i64;
        *e = theta.iter().map(|(k, v)| v * phi.at(x - k * scale)).sum();
    }
    let eta = SampledFunction { level, start, values: eta };
    let psi = |pairs: Vec<(i64, f64)>| -> SampledFunction {
        if pairs.is_empty() {
            return SampledFunction { level, start: 0, values: vec![0.0] };
        }
        let (blo, bhi) = (pairs[0].0, pairs[pairs.len() - 1].0);
        // 2x − k ∈ supp φ  ⇔  x ∈ [(start + blo·2^J)/2, (end + bhi·2^J)/2]
        let s = (phi.start + blo * scale).div_euclid(2);
        let e = (phi.start + n - 1 + bhi * scale + 1).div_euclid(2);
        let values = (s..=e).map(|x| 2.0 * pairs.iter().map(|(k, v)| v * phi.at(2 * x - k * scale)).sum::<f64>()).collect();
        SampledFunction { level, start: s, values }
    };
    Ok([eta, psi(bank.b[0].to_f64_pairs()), psi(bank.b[1].to_f64_pairs())])
}

/// sm(a) = n − ½·log₂ ρ(T) with a = ((1+z)/2)^n·b and T = (2·u(2j − k)) for u = b·b⋆.
pub fn sm_estimate(a: &Poly) -> Result<f64> {
    if !a.at_one().is_one() {
        return Err(Error::Precondition(format!("mask sums to {}, not 1", a.at_one())));
    }
    let n = a.sr()?;
    if n == 0 {
        return Err(Error::Precondition("sum rule order is zero".into()));
    }
    let f = Poly::from_rats(0, &[(1, 2), (1, 2)]).pow(n);
    let b = a.exact_div(&f).ok_or_else(|| Error::Internal("(1+z)^sr does not divide the mask".into()))?;
    let u = &b * &b.star();
    let (ulo, uc) = coeffs_f64(&u);
    let l = -ulo;
    let dim = (2 * l + 1) as usize;
    let coef = |m: i64| -> f64 {
        let i = m - ulo;
        if i < 0 || i as usize >= uc.len() {
            0.0
        } else {
            uc[i as usize]
        }
    };
    let t = DMatrix::from_fn(dim, dim, |r, c| {
        let (j, k) = (r as i64 - l, c as i64 - l);
        2.0 * coef(2 * j - k)
    });
    let rho = t.complex_eigenvalues().iter().map(|z| libm::sqrt(z.re * z.re + z.im * z.im)).fold(0.0, f64::max);
    Ok(f64::from(n) - 0.5 * libm::log2(rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framelet::banks;

    #[test]
    fn splines() {
        let haar = Poly::from_rats(0, &[(1, 2), (1, 2)]);
        let phi = cascade_phi(&haar, 4).unwrap();
        assert!(phi.values.iter().all(|&v| (v - 1.0).abs() < 1e-15));
        assert_eq!((phi.start, phi.values.len()), (0, 16));
        let hat = haar.pow(2);
        let phi = cascade_phi(&hat, 3).unwrap();
        assert!((phi.at(8) - 1.0).abs() < 1e-15 && (phi.at(4) - 0.5).abs() < 1e-15);
        assert!((sm_estimate(&haar).unwrap() - 0.5).abs() < 1e-12);
        assert!((sm_estimate(&hat).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn reference_smoothness() {
        let want = [0.8853, 1.0193, 1.6821, 1.1543, 0.7184, 1.0];
        for (rb, w) in banks::all().iter().zip(want) {
            let s = sm_estimate(&rb.bank.a).unwrap();
            assert!((s - w).abs() < 1e-3, "{} {s} vs {w}", rb.name);
        }
    }

    #[test]
    fn partition_and_moments() {
        for rb in banks::all() {
            let phi = cascade_phi(&rb.bank.a, 8).unwrap();
            let scale = 1i64 << 8;
            for r in 0..scale {
                let sum: f64 = (-20..20).map(|k| phi.at(r + k * scale)).sum();
                assert!((sum - 1.0).abs() < 1e-10, "{} {r} {sum}", rb.name);
            }
            let [eta, p1, p2] = derive_functions(&rb.bank, &phi).unwrap();
            if rb.bank.theta == crate::framelet::delta() {
                assert_eq!(eta, phi);
            }
            assert!((eta.moment(0) - 1.0).abs() < 1e-8);
            let _ = (p1, p2);
        }
        let rb = banks::odd_three();
        let phi = cascade_phi(&rb.bank.a, 12).unwrap();
        let [_, p1, p2] = derive_functions(&rb.bank, &phi).unwrap();
        for j in 0..3 {
            assert!(p1.moment(j).abs() < 1e-4 && p2.moment(j).abs() < 1e-4, "{j} {} {}", p1.moment(j), p2.moment(j));
        }
    }
}
