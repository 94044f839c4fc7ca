use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qtf::{commands, CliError, Outcome, RunConfig};

/// Symmetric quasi-tight framelets and generalized spectral factorization.
#[derive(Parser)]
#[command(name = "qtf", version)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// Tolerance for certified ball residuals.
    #[arg(long, global = true, default_value = "1e-25")]
    tol: f64,
    /// Precision cap in bits for ball arithmetic.
    #[arg(long, global = true, env = "QTF_PRECISION_CAP", default_value_t = 4096)]
    prec_cap: u32,
    /// Shift l of P_l in the odd construction branch.
    #[arg(long, global = true, default_value_t = 0, allow_negative_numbers = true)]
    pl_shift: i64,
    /// Cascade level J.
    #[arg(long, visible_alias = "levels", global = true, default_value_t = 12)]
    level: u32,
    /// Output file (construct, factor, dos) or directory (render).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed recorded in the run configuration; every subcommand is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Symmetry type, sum rules, vanishing moments and smoothness of a filter.
    Analyze { filter: PathBuf },
    /// Build a bank {a; b1, b2} for given a, Θ and n_b.
    Construct {
        a: PathBuf,
        theta: PathBuf,
        #[arg(long)]
        nb: u32,
    },
    /// Check both perfect-reconstruction identities, symmetry, moments and parity.
    Verify { bank: PathBuf },
    /// Factor A = U·diag(1,−1)·U⋆.
    Factor { matrix: PathBuf },
    /// Write u = u1·u1⋆ − u2·u2⋆ with Sym u1 / Sym u2 = "eps,c".
    Dos {
        poly: PathBuf,
        #[arg(allow_hyphen_values = true)]
        ty: String,
    },
    /// Write stems and cascade samples as CSV files.
    Render { bank: PathBuf },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let o = cli.opts;
    let cfg = RunConfig { residual_tol: o.tol, prec_cap: o.prec_cap, pl_shift: o.pl_shift, level: o.level, out: o.out, seed: o.seed };
    match cli.cmd {
        Cmd::Analyze { filter } => commands::cmd_analyze(&filter, &cfg),
        Cmd::Construct { a, theta, nb } => commands::cmd_construct(&a, &theta, nb, &cfg),
        Cmd::Verify { bank } => commands::cmd_verify(&bank, &cfg),
        Cmd::Factor { matrix } => commands::cmd_factor(&matrix, &cfg),
        Cmd::Dos { poly, ty } => commands::cmd_dos(&poly, &ty, &cfg),
        Cmd::Render { bank } => commands::cmd_render(&bank, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{}", serde_json::to_string_pretty(&out.report).expect("report serializes"));
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
