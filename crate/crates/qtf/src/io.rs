//! JSON documents for filters, matrices, banks and results, and CSV plot data.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use qtf_core::analysis::SampledFunction;
use qtf_core::factorization::gsf::BallMatrix;
use qtf_core::factorization::{DOSWitness, GSFResult, UForm};
use qtf_core::field::parse::parse_scalar;
use qtf_core::framelet::{FilterBank, HighPass};
use qtf_core::{Ball, Laurent, LMatrix2, Poly, Scalar, SymType};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SIGNATURE: [i32; 2] = [1, -1];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coeff {
    pub k: i64,
    pub v: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterDoc {
    pub coeffs: Vec<Coeff>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    #[serde(rename = "11")]
    pub m11: FilterDoc,
    #[serde(rename = "12")]
    pub m12: FilterDoc,
    #[serde(rename = "21")]
    pub m21: FilterDoc,
    #[serde(rename = "22")]
    pub m22: FilterDoc,
}

/// b_ℓ = √(b_ℓ_scale)·(listed coefficients). `approximate` marks ball midpoints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BankDoc {
    pub a: FilterDoc,
    pub theta: FilterDoc,
    pub b1: FilterDoc,
    pub b2: FilterDoc,
    pub nb: u32,
    #[serde(default = "signature")]
    pub signature: [i32; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b1_scale: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2_scale: Option<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub approximate: bool,
}

fn signature() -> [i32; 2] {
    SIGNATURE
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// U = X·diag(√μ1, √μ2) when `column_scales` is present.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDoc {
    #[serde(rename = "U")]
    pub u: MatrixDoc,
    pub signature: [i32; 2],
    pub residual: String,
    pub sym_alpha: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column_scales: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub approximate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DosDoc {
    pub u1: FilterDoc,
    pub u2: FilterDoc,
    pub sym_u1: String,
    pub sym_u2: String,
    pub ratio: String,
    pub residual: String,
    #[serde(default, skip_serializing_if = "is_false")]
    pub approximate: bool,
}

pub fn sym_string(t: SymType) -> String {
    format!("{},{}", t.eps, t.c)
}

/// "eps,c" with eps in {1, +1, -1, −1}.
pub fn parse_sym(s: &str) -> Result<SymType, CliError> {
    let bad = || CliError::Input(format!("symmetry type must look like \"-1,0\", got {s:?}"));
    let (e, c) = s.split_once(',').ok_or_else(bad)?;
    let eps = match e.trim().replace('\u{2212}', "-").as_str() {
        "1" | "+1" => 1,
        "-1" => -1,
        _ => return Err(bad()),
    };
    let c: i64 = c.trim().replace('\u{2212}', "-").parse().map_err(|_| bad())?;
    Ok(SymType::new(eps, c))
}

pub fn parse_filter(doc: &FilterDoc) -> Result<Poly, CliError> {
    let mut seen = BTreeSet::new();
    let mut pairs = Vec::with_capacity(doc.coeffs.len());
    for c in &doc.coeffs {
        if !seen.insert(c.k) {
            return Err(CliError::Input(format!("duplicate exponent {}", c.k)));
        }
        let v = parse_scalar(&c.v).map_err(|e| CliError::Input(format!("coefficient of z^{}: {e}", c.k)))?;
        pairs.push((c.k, v));
    }
    Ok(Poly::from_pairs(pairs))
}

pub fn filter_doc(p: &Poly) -> FilterDoc {
    FilterDoc { coeffs: p.terms().map(|(k, v)| Coeff { k, v: v.to_string() }).collect() }
}

/// Ball midpoints written as exact rationals.
pub fn ball_filter_doc(p: &Laurent<Ball>) -> FilterDoc {
    let coeffs = p
        .terms()
        .filter(|(_, v)| !v.le_abs(0.0))
        .map(|(k, v)| Coeff { k, v: Scalar::from_rational(v.mid_rational()).to_string() })
        .collect();
    FilterDoc { coeffs }
}

pub fn parse_matrix(doc: &MatrixDoc) -> Result<LMatrix2, CliError> {
    Ok(LMatrix2::new(parse_filter(&doc.m11)?, parse_filter(&doc.m12)?, parse_filter(&doc.m21)?, parse_filter(&doc.m22)?))
}

pub fn matrix_doc(m: &LMatrix2) -> MatrixDoc {
    MatrixDoc { m11: filter_doc(&m.m[0][0]), m12: filter_doc(&m.m[0][1]), m21: filter_doc(&m.m[1][0]), m22: filter_doc(&m.m[1][1]) }
}

fn ball_matrix_doc(m: &BallMatrix) -> MatrixDoc {
    MatrixDoc {
        m11: ball_filter_doc(&m[0][0]),
        m12: ball_filter_doc(&m[0][1]),
        m21: ball_filter_doc(&m[1][0]),
        m22: ball_filter_doc(&m[1][1]),
    }
}

fn parse_scale(s: &Option<String>) -> Result<Scalar, CliError> {
    match s {
        None => Ok(Scalar::one()),
        Some(s) => {
            let v = parse_scalar(s).map_err(|e| CliError::Input(format!("scale: {e}")))?;
            if v.signum() <= 0 {
                return Err(CliError::Input(format!("scale must be positive, got {s}")));
            }
            Ok(v)
        }
    }
}

pub fn parse_bank(doc: &BankDoc) -> Result<FilterBank, CliError> {
    if doc.signature != SIGNATURE {
        return Err(CliError::Input(format!("only the signature [1,-1] is supported, got {:?}", doc.signature)));
    }
    let a = parse_filter(&doc.a)?;
    let theta = parse_filter(&doc.theta)?;
    let hp = |f: &FilterDoc, s: &Option<String>| -> Result<HighPass, CliError> {
        let poly = parse_filter(f)?;
        let scale = parse_scale(s)?;
        Ok(if doc.approximate {
            let prec = qtf_core::field::DEFAULT_PREC;
            let sq = scale.to_ball(prec + 16).sqrt();
            HighPass::Approx(poly.map(|c| c.to_ball(prec)).scale(&sq))
        } else {
            HighPass::Exact { poly, scale }
        })
    };
    Ok(FilterBank { a, theta, b: [hp(&doc.b1, &doc.b1_scale)?, hp(&doc.b2, &doc.b2_scale)?], nb: doc.nb })
}

pub fn bank_doc(bank: &FilterBank) -> BankDoc {
    let approximate = !bank.is_exact();
    let hp = |h: &HighPass| -> (FilterDoc, Option<String>) {
        match h {
            HighPass::Exact { poly, scale } if !approximate => {
                (filter_doc(poly), (!scale.is_one()).then(|| scale.to_string()))
            }
            _ => (ball_filter_doc(&h.to_ball(qtf_core::field::DEFAULT_PREC)), None),
        }
    };
    let (b1, b1_scale) = hp(&bank.b[0]);
    let (b2, b2_scale) = hp(&bank.b[1]);
    BankDoc {
        a: filter_doc(&bank.a),
        theta: filter_doc(&bank.theta),
        b1,
        b2,
        nb: bank.nb,
        signature: SIGNATURE,
        b1_scale,
        b2_scale,
        approximate,
    }
}

pub fn factor_doc(r: &GSFResult) -> FactorDoc {
    let (u, column_scales, approximate) = match &r.u {
        UForm::Exact(m) => (matrix_doc(m), None, false),
        UForm::Scaled(f) => match f.materialize() {
            Some(m) => (matrix_doc(&m), None, false),
            None => (matrix_doc(&f.x), Some([f.mu[0].to_string(), f.mu[1].to_string()]), false),
        },
        UForm::Approx(b) => (ball_matrix_doc(b), None, true),
    };
    FactorDoc { u, signature: SIGNATURE, residual: decimal(r.residual), sym_alpha: sym_string(r.alpha), column_scales, approximate }
}

pub fn dos_doc_exact(w: &DOSWitness) -> DosDoc {
    DosDoc {
        u1: filter_doc(&w.u1),
        u2: filter_doc(&w.u2),
        sym_u1: sym_string(w.t1),
        sym_u2: sym_string(w.t2),
        ratio: sym_string(w.ratio()),
        residual: decimal(0.0),
        approximate: false,
    }
}

pub fn dos_doc_approx(w: &DOSWitness<Ball>, residual: f64) -> DosDoc {
    DosDoc {
        u1: ball_filter_doc(&w.u1),
        u2: ball_filter_doc(&w.u2),
        sym_u1: sym_string(w.t1),
        sym_u2: sym_string(w.t2),
        ratio: sym_string(w.t1.div(w.t2)),
        residual: decimal(residual),
        approximate: true,
    }
}

/// Shortest round-trip decimal form.
pub fn decimal(x: f64) -> String {
    format!("{x:?}")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_filter(path: &Path) -> Result<Poly, CliError> {
    parse_filter(&read_json(path)?)
}

pub fn read_matrix(path: &Path) -> Result<LMatrix2, CliError> {
    parse_matrix(&read_json(path)?)
}

pub fn read_bank(path: &Path) -> Result<FilterBank, CliError> {
    parse_bank(&read_json(path)?)
}

pub fn write_json<T: Serialize>(path: &Path, doc: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Filter stem: columns k, value.
pub fn write_stem_csv(path: &Path, pairs: &[(i64, f64)]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    w.write_record(["k", "value"])?;
    for (k, v) in pairs {
        w.write_record([k.to_string(), decimal(*v)])?;
    }
    w.flush()?;
    Ok(())
}

/// Samples: columns x, value.
pub fn write_samples_csv(path: &Path, f: &SampledFunction) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    w.write_record(["x", "value"])?;
    for (x, v) in f.points() {
        w.write_record([decimal(x), decimal(v)])?;
    }
    w.flush()?;
    Ok(())
}
