//! Exact relation checks. Every check returns a [`CheckReport`]; a failing
//! report names the relation and the first differing entry.

mod appendix;
mod checks;
mod report;

use std::fmt;
use std::str::FromStr;

pub use appendix::check_appendix;
pub use checks::{
    check_delta_property, check_extra_serre, check_intertwining, check_lax_ybe, check_opposite,
    check_path_independence, check_qcom, check_qserre, check_ybe, delta_formula,
};
pub use report::{CheckReport, Status, Witness};
pub(crate) use report::Tally;

use crate::error::{Error, Result};
use crate::gradedmat::build_vector_rep;
use crate::laxengine::{assemble_r, extend_sigma, init_simple_sigma, opposite_r, SigmaSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Ybe,
    LaxYbe,
    Intertwine,
    Delta,
    Qcom,
    Serre,
    ExtraSerre,
    Appendix,
    Opposite,
    PathIndependence,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Ybe,
        Check::LaxYbe,
        Check::Intertwine,
        Check::Delta,
        Check::Qcom,
        Check::Serre,
        Check::ExtraSerre,
        Check::Appendix,
        Check::Opposite,
        Check::PathIndependence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Ybe => "ybe",
            Check::LaxYbe => "lax-ybe",
            Check::Intertwine => "intertwine",
            Check::Delta => "delta",
            Check::Qcom => "qcom",
            Check::Serre => "serre",
            Check::ExtraSerre => "extra-serre",
            Check::Appendix => "appendix",
            Check::Opposite => "opposite",
            Check::PathIndependence => "path-independence",
        }
    }

    /// Checks that only make sense when `W` is the vector module.
    pub fn needs_vector(self) -> bool {
        matches!(self, Check::Ybe | Check::Intertwine | Check::Opposite)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown check '{s}'")))
    }
}

/// Runs one check against a complete sigma set. Checks that need the vector
/// module rebuild it from the algebra when `sigma` lives on another module.
pub fn run_check(check: Check, sigma: &SigmaSet) -> Result<CheckReport> {
    let alg = sigma.algebra();
    let is_vector = sigma.rep.name == "vector";
    let vector_sigma = || -> Result<SigmaSet> {
        if is_vector {
            Ok(sigma.clone())
        } else {
            extend_sigma(init_simple_sigma(&build_vector_rep(alg)?)?)
        }
    };
    match check {
        Check::Ybe => check_ybe(&assemble_r(&vector_sigma()?)?),
        Check::LaxYbe => {
            let rv = assemble_r(&vector_sigma()?)?;
            check_lax_ybe(&rv, &assemble_r(sigma)?)
        }
        Check::Intertwine => {
            let vs = vector_sigma()?;
            check_intertwining(&assemble_r(&vs)?, &vs.rep)
        }
        Check::Delta => check_delta_property(sigma),
        Check::Qcom => check_qcom(sigma),
        Check::Serre => check_qserre(&sigma.rep),
        Check::ExtraSerre => check_extra_serre(sigma),
        Check::Appendix => check_appendix(sigma),
        Check::Opposite => {
            let vs = vector_sigma()?;
            check_opposite(&assemble_r(&vs)?, &opposite_r(&vs)?)
        }
        Check::PathIndependence => check_path_independence(sigma),
    }
}

pub fn run_checks(checks: &[Check], sigma: &SigmaSet) -> Result<Vec<CheckReport>> {
    checks.iter().map(|&c| run_check(c, sigma)).collect()
}

pub fn reports_to_json(reports: &[CheckReport]) -> serde_json::Value {
    serde_json::json!({
        "passed": reports.iter().all(CheckReport::passed),
        "reports": reports,
    })
}

#[cfg(test)]
mod tests;
