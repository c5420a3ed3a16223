//! Numerical runs for the base point A = E₂₃ and its perturbations.

pub mod example;
pub mod limit;
pub mod matrices;
pub mod prop_b;

use serde::{Deserialize, Serialize};

pub use example::{
    example_run, example_verdicts, explicit_disc, kappa_check, sigma_of_matrix_disc, ExampleParams, ExampleRow,
    ExampleRun, KappaCheck, DEFAULT_T_GRID,
};
pub use limit::{limit_certificate, LimitCertificate};
pub use matrices::{base_matrices, BaseMatrices};
pub use prop_b::{
    prop_b_run, prop_b_verdicts, sigma_expansion, sigma_expansion_closed_form, step1_asymptotics, step1_run,
    step1_verdicts, t_of, Perturbation, PropBRow, RowStatus, Step1Row,
};

/// One pass/fail line of a reproduction run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(claim: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Verdict { claim: claim.into(), pass, detail: detail.into() }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}] {} ({})", if self.pass { "PASS" } else { "FAIL" }, self.claim, self.detail)
    }
}
