//! Reference filter banks with known symmetry and vanishing moments.

use alloc::vec::Vec;

use super::{delta, FilterBank};
use crate::field::parse::parse_scalar;
use crate::laurent::Poly;

fn lit(low: i64, cs: &[&str]) -> Poly {
    Poly::new(low, cs.iter().map(|s| parse_scalar(s).expect("valid literal")).collect())
}

fn ints(low: i64, cs: &[i64]) -> Poly {
    Poly::from_ints(low, cs)
}

fn scaled(s: &str, p: Poly) -> Poly {
    p.scale(&parse_scalar(s).expect("valid literal"))
}

/// A named bank with the expected symmetry centers and vanishing moments.
#[derive(Clone, Debug)]
pub struct ReferenceBank {
    pub name: &'static str,
    pub bank: FilterBank,
    pub vmo: [u32; 2],
}

/// Symmetric four-tap spline-like mask with Θ = δ, n_b = 2.
pub fn classic() -> ReferenceBank {
    let a = lit(-2, &["-1/16", "1/4", "5/8", "1/4", "-1/16"]);
    let b1 = scaled("sqrt(2)/4", ints(0, &[-1, 2, -1]));
    let b2 = scaled("1/16", ints(-2, &[1, -4, 6, -4, 1]));
    ReferenceBank { name: "classic", bank: FilterBank::exact(a, delta(), b1, b2, 2), vmo: [2, 4] }
}

/// Surd-coefficient mask with Θ = δ, n_b = 2, c + n_b even.
pub fn even_surd() -> ReferenceBank {
    let sq = ints(0, &[1, 1]).pow(2);
    let t1 = scaled("-1/16", (&ints(0, &[1, -6, 1]) * &sq).shift(-2));
    let t2 = scaled("-3/32+1/16*sqrt(2)", (&sq * &ints(0, &[1, -1]).pow(4)).shift(-3));
    let a = &t1 + &t2;
    let v = ints(0, &[1, -1]).pow(2);
    let k1 = lit(-3, &["4-3*sqrt(2)", "-2*sqrt(2)", "-2068+1559*sqrt(2)", "1084*sqrt(2)", "-2068+1559*sqrt(2)", "-2*sqrt(2)", "4-3*sqrt(2)"]);
    let k2 = lit(-3, &["3*sqrt(2)-4", "2*sqrt(2)", "-2028+1513*sqrt(2)", "964*sqrt(2)", "-2028+1513*sqrt(2)", "2*sqrt(2)", "3*sqrt(2)-4"]);
    let b1 = scaled("1/2048", &v * &k1);
    let b2 = scaled("1/2048", &v * &k2);
    ReferenceBank { name: "even_surd", bank: FilterBank::exact(a, delta(), b1, b2, 2), vmo: [2, 2] }
}

/// Degree-twelve mask with sr = 4, Θ = δ, n_b = 4.
pub fn even_high() -> ReferenceBank {
    let a = scaled("1/1024", ints(-6, &[-1, 0, 18, -32, -63, 288, 604, 288, -63, -32, 18, 0, -1]));
    let b1 = scaled("sqrt(2)/32", ints(-2, &[-1, 0, 9, -16, 9, 0, -1]));
    let b2 = scaled("1/1024", ints(-6, &[1, 0, -18, 32, 63, -288, 420, -288, 63, 32, -18, 0, 1]));
    ReferenceBank { name: "even_high", bank: FilterBank::exact(a, delta(), b1, b2, 4), vmo: [4, 8] }
}

/// Odd-center mask (Sym a = z) with Θ = δ, n_b = 3.
pub fn odd_three() -> ReferenceBank {
    let a = scaled("1/1024", ints(-3, &[15, -63, 35, 525, 525, 35, -63, 15]));
    let b1 = scaled("1/1024", ints(-3, &[-15, 63, -385, 945, -945, 385, -63, 15]));
    let b2 = scaled("sqrt(105)/512", ints(-1, &[5, -21, 38, -38, 21, -5]));
    ReferenceBank { name: "odd_three", bank: FilterBank::exact(a, delta(), b1, b2, 3), vmo: [3, 3] }
}

/// Odd-center mask with sr = 1, Θ = δ, n_b = 1.
pub fn odd_one() -> ReferenceBank {
    let a = scaled("1/32", ints(-2, &[-1, 1, 16, 16, 1, -1]));
    let b1 = scaled("sqrt(2)/4096", ints(-4, &[-1, 1, 32, 32, -2302, 2302, -32, -32, -1, 1]));
    let b2 = scaled("sqrt(2)/4096", ints(-4, &[1, -1, -32, -32, -1794, 1794, 32, 32, 1, -1]));
    ReferenceBank { name: "odd_one", bank: FilterBank::exact(a, delta(), b1, b2, 1), vmo: [1, 1] }
}

/// Θ = (z + z⁻¹)/2 with n_b = 2.
pub fn theta_average() -> ReferenceBank {
    let theta = lit(-1, &["1/2", "0", "1/2"]);
    let a = scaled("1/8", ints(-3, &[-1, 0, 3, 4, 3, 0, -1]));
    let v = ints(0, &[-1, 1]).pow(2).shift(-1);
    let b1 = scaled("1/64", &v * &ints(-4, &[1, 2, -12, -30, -46, -30, -12, 2, 1]));
    let f2 = &ints(-2, &[1, -2, 4, -2, 1]) * &ints(-2, &[1, 4, 8, 4, 1]);
    let b2 = scaled("1/64", &v * &f2);
    ReferenceBank { name: "theta_average", bank: FilterBank { theta, ..FilterBank::exact(a, delta(), b1, b2, 2) }, vmo: [2, 2] }
}

pub fn all() -> Vec<ReferenceBank> {
    alloc::vec![classic(), even_surd(), even_high(), odd_three(), odd_one(), theta_average()]
}
