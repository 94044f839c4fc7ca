use std::path::PathBuf;

use qtf_core::factorization::{DosConfig, GsfConfig};
use qtf_core::framelet::ConstructConfig;

use crate::error::CliError;

/// Settings shared by every command.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Tolerance for certified ball residuals; the exact path always requires zero.
    pub residual_tol: f64,
    /// Largest working precision in bits for ball arithmetic.
    pub prec_cap: u32,
    /// Shift l of P_l in the odd construction branch.
    pub pl_shift: i64,
    /// Cascade level J.
    pub level: u32,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { residual_tol: 1e-25, prec_cap: 4096, pl_shift: 0, level: 12, out: None, seed: 0 }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.residual_tol > 0.0 && self.residual_tol.is_finite()) {
            return Err(CliError::Precondition(format!("tolerance must be positive, got {}", self.residual_tol)));
        }
        if self.level == 0 {
            return Err(CliError::Precondition("cascade level must be at least 1".into()));
        }
        if self.prec_cap < 64 {
            return Err(CliError::Precondition(format!("precision cap {} is below 64 bits", self.prec_cap)));
        }
        Ok(())
    }

    pub fn dos(&self) -> DosConfig {
        let d = DosConfig::default();
        DosConfig { prec: d.prec.min(self.prec_cap), prec_cap: self.prec_cap, tol: self.residual_tol }
    }

    pub fn gsf(&self) -> GsfConfig {
        GsfConfig { dos: self.dos(), alpha: None }
    }

    pub fn construct(&self) -> ConstructConfig {
        ConstructConfig { gsf: self.gsf(), l: self.pl_shift }
    }
}
