//! The six subcommands. Each returns a JSON report and an exit code.

use std::fs;
use std::path::{Path, PathBuf};

use qtf_core::analysis::{cascade_phi, derive_functions, sm_estimate};
use qtf_core::factorization::gsf::{Condition1, Condition2, ExistenceReport};
use qtf_core::factorization::{dos_decompose, dos_feasible, gsf, DosResult, GsfOutcome};
use qtf_core::framelet::{construct, nb_range, verify, ConstructOutcome, FrameletExistence, VerifyReport};
use qtf_core::{LMatrix2, Poly, SymType};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::io;

/// A report to print and the process exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { code: 0, report }
    }
}

fn sym_value(t: Option<SymType>) -> Value {
    t.map_or(Value::Null, |t| Value::String(io::sym_string(t)))
}

fn count_value(n: qtf_core::Result<u32>) -> Value {
    n.map_or(Value::Null, Value::from)
}

/// Sym type, sr, vmo and the smoothness estimate of a filter.
pub fn cmd_analyze(filter: &Path, cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let a = io::read_filter(filter)?;
    if a.is_zero() {
        return Err(CliError::Precondition("the zero filter has nothing to analyze".into()));
    }
    let sum = a.at_one();
    let sm = if sum.is_one() { sm_estimate(&a).ok() } else { None };
    Ok(Outcome::ok(json!({
        "ldeg": a.ldeg(),
        "deg": a.deg(),
        "sym": sym_value(a.sym_type()),
        "sum": sum.to_string(),
        "sr": count_value(a.sr()),
        "vmo": count_value(a.vmo()),
        "sm": sm.map_or(Value::Null, |s| json!(s)),
    })))
}

fn existence_json(ex: &FrameletExistence) -> Value {
    json!({
        "nb": ex.nb,
        "sym_a_center": ex.c,
        "theta_delta": ex.theta_delta,
        "condition1": {
            "holds": ex.condition1(),
            "det_n": io::filter_doc(&ex.det_n),
            "detail": match &ex.d {
                Ok(d) => json!({"d": io::filter_doc(&d.poly), "d_scale": d.scale.to_string()}),
                Err(f) => Value::String(f.to_string()),
            },
        },
        "condition2": {
            "holds": ex.condition2(),
            "p0": io::filter_doc(&ex.p0),
            "p": io::filter_doc(&ex.p),
            "dos_type": sym_value(ex.ty),
            "detail": match &ex.dos {
                Some(Ok(())) => Value::String("DOS feasible".into()),
                Some(Err(f)) => Value::String(f.to_string()),
                None => Value::Null,
            },
        },
    })
}

pub fn verify_json(r: &VerifyReport) -> Value {
    json!({
        "passed": r.passed(),
        "exact": r.exact,
        "tffb1_residual": io::decimal(r.tffb1),
        "tffb0_residual": io::decimal(r.tffb0),
        "identities": r.identities(),
        "sym_a": sym_value(r.sym_a),
        "sym_b1": sym_value(r.sym[0]),
        "sym_b2": sym_value(r.sym[1]),
        "symmetric": r.symmetric(),
        "vmo": r.vmo,
        "nb": r.nb,
        "vmo_ok": r.vmo_ok(),
        "parity": r.parity,
    })
}

/// Builds a bank for (a, Θ, n_b); writes it to `--out` or returns it as the report.
pub fn cmd_construct(a: &Path, theta: &Path, nb: u32, cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let a = io::read_filter(a)?;
    let theta = io::read_filter(theta)?;
    match nb_range(&a, &theta)? {
        Some((lo, hi)) if (lo..=hi).contains(&nb) => {}
        Some((lo, hi)) => return Err(CliError::Precondition(format!("n_b = {nb} is outside the admissible range [{lo}, {hi}]"))),
        None => return Err(CliError::Precondition("no admissible n_b: sr(a) or the moment defect is too small".into())),
    }
    match construct(&a, &theta, nb, &cfg.construct())? {
        ConstructOutcome::Infeasible(ex) => Ok(Outcome { code: 2, report: json!({"feasible": false, "existence": existence_json(&ex)}) }),
        ConstructOutcome::Bank(bank, rep) => {
            let doc = io::bank_doc(&bank);
            let code = if rep.passed() { 0 } else { 1 };
            let report = match &cfg.out {
                Some(p) => {
                    io::write_json(p, &doc)?;
                    json!({"feasible": true, "bank_file": p.display().to_string(), "verify": verify_json(&rep)})
                }
                None => serde_json::to_value(&doc)?,
            };
            Ok(Outcome { code, report })
        }
    }
}

pub fn cmd_verify(bank: &Path, cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let bank = io::read_bank(bank)?;
    let r = verify(&bank, cfg.residual_tol);
    Ok(Outcome { code: if r.passed() { 0 } else { 1 }, report: verify_json(&r) })
}

fn gsf_existence_json(rep: &ExistenceReport) -> Value {
    let c1 = match &rep.condition1 {
        Condition1::Holds { d } => json!({"holds": true, "d": io::filter_doc(&d.poly), "d_scale": d.scale.to_string()}),
        Condition1::Fails(f) => json!({"holds": false, "reason": f.to_string()}),
    };
    let c2 = match &rep.condition2 {
        None => Value::Null,
        Some(Condition2::Holds { p0, p, ty }) => {
            json!({"holds": true, "p0": io::filter_doc(p0), "p": io::filter_doc(p), "dos_type": io::sym_string(*ty)})
        }
        Some(Condition2::Fails { p0, p, ty, failure }) => json!({
            "holds": false,
            "p0": io::filter_doc(p0),
            "p": io::filter_doc(p),
            "dos_type": io::sym_string(*ty),
            "reason": failure.to_string(),
        }),
    };
    json!({"feasible": false, "condition1": c1, "condition2": c2})
}

fn check_symmetric_input(a: &LMatrix2) -> Result<(), CliError> {
    if !a.is_hermitian() {
        return Err(CliError::Input("matrix is not Hermitian (A⋆ ≠ A)".into()));
    }
    if a.entries().any(|e| !e.has_symmetry()) {
        return Err(CliError::Input("every matrix entry must have symmetry".into()));
    }
    Ok(())
}

/// A = U·diag(1,−1)·U⋆ or the failing existence condition.
pub fn cmd_factor(matrix: &Path, cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let a = io::read_matrix(matrix)?;
    check_symmetric_input(&a)?;
    match gsf(&a, &cfg.gsf())? {
        GsfOutcome::Infeasible(rep) => Ok(Outcome { code: 2, report: gsf_existence_json(&rep) }),
        GsfOutcome::Factored(r) => {
            if !r.is_exact() && r.residual > cfg.residual_tol {
                return Err(CliError::Check(format!("certified residual {} exceeds tolerance {}", r.residual, cfg.residual_tol)));
            }
            let doc = io::factor_doc(&r);
            let report = match &cfg.out {
                Some(p) => {
                    io::write_json(p, &doc)?;
                    json!({"feasible": true, "factor_file": p.display().to_string(), "residual": doc.residual, "sym_alpha": doc.sym_alpha})
                }
                None => serde_json::to_value(&doc)?,
            };
            Ok(Outcome::ok(report))
        }
    }
}

/// u = u1·u1⋆ − u2·u2⋆ with Sym u1 / Sym u2 = the given type.
pub fn cmd_dos(poly: &Path, ty: &str, cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let u: Poly = io::read_filter(poly)?;
    let ty = io::parse_sym(ty)?;
    if let Err(f) = dos_feasible(&u, ty) {
        return Ok(Outcome { code: 2, report: json!({"feasible": false, "type": io::sym_string(ty), "reason": f.to_string()}) });
    }
    let doc = match dos_decompose(&u, ty, &cfg.dos())? {
        DosResult::Exact(w) => io::dos_doc_exact(&w),
        DosResult::Approx { witness, residual } => {
            if residual > cfg.residual_tol {
                return Err(CliError::Check(format!("certified residual {residual} exceeds tolerance {}", cfg.residual_tol)));
            }
            io::dos_doc_approx(&witness, residual)
        }
    };
    let report = match &cfg.out {
        Some(p) => {
            io::write_json(p, &doc)?;
            json!({"feasible": true, "witness_file": p.display().to_string(), "ratio": doc.ratio})
        }
        None => serde_json::to_value(&doc)?,
    };
    Ok(Outcome::ok(report))
}

pub const RENDER_FILES: [&str; 8] = ["a.csv", "theta.csv", "b1.csv", "b2.csv", "phi.csv", "eta.csv", "psi1.csv", "psi2.csv"];

/// Filter stems and cascade samples of φ, η, ψ¹, ψ² as CSV files in `--out` (default ".").
pub fn cmd_render(bank: &Path, cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let bank = io::read_bank(bank)?;
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let phi = cascade_phi(&bank.a, cfg.level)?;
    let [eta, psi1, psi2] = derive_functions(&bank, &phi)?;
    let path = |name: &str| dir.join(name);
    io::write_stem_csv(&path(RENDER_FILES[0]), &bank.a.to_f64_pairs())?;
    io::write_stem_csv(&path(RENDER_FILES[1]), &bank.theta.to_f64_pairs())?;
    io::write_stem_csv(&path(RENDER_FILES[2]), &bank.b[0].to_f64_pairs())?;
    io::write_stem_csv(&path(RENDER_FILES[3]), &bank.b[1].to_f64_pairs())?;
    for (name, f) in RENDER_FILES[4..].iter().zip([&phi, &eta, &psi1, &psi2]) {
        io::write_samples_csv(&path(name), f)?;
    }
    Ok(Outcome::ok(json!({
        "level": cfg.level,
        "dir": dir.display().to_string(),
        "files": RENDER_FILES,
        "phi_support": [phi.support().0, phi.support().1],
    })))
}
