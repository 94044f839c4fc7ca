//! Generalized spectral factorization A = U·diag(1,−1)·U⋆ and its building blocks.

pub mod dos;

pub use dos::{dos_atom, dos_combine, dos_decompose, dos_feasible, Atom, DOSWitness, DosConfig, DosFailure, DosResult};
pub mod constdet;

pub use constdet::{const_det_factor, const_det_factor_case4, const_det_factor_cases123, shrink_offdiag, ScaledFactor};
pub mod gsf;

pub use gsf::{
    coprime_factor, existence, gsf, spectrum_shrink, Condition1, Condition2, ExistenceReport, GSFResult, GsfConfig,
    GsfOutcome, UForm,
};
