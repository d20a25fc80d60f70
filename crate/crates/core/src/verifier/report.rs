use std::fmt;

use serde::{Deserialize, Serialize};

use crate::gradedmat::{Coeff, GradedMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub relation: String,
    pub row: usize,
    pub col: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one check suite. A failing report always carries a witness;
/// a vacuous report is a pass with `relations_checked == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub status: Status,
    pub relations_checked: usize,
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn vacuous(check: &str) -> Self {
        CheckReport {
            check: check.into(),
            status: Status::Pass,
            relations_checked: 0,
            vacuous: true,
            witness: None,
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.status, self.vacuous) {
            (Status::Fail, _) => "FAIL",
            (Status::Pass, true) => "VACUOUS",
            (Status::Pass, false) => "PASS",
        };
        write!(f, "{status} {} ({} relations)", self.check, self.relations_checked)?;
        if let Some(w) = &self.witness {
            write!(
                f,
                "\n  witness: {} at ({}, {}): lhs = {}, rhs = {}",
                w.relation, w.row, w.col, w.lhs, w.rhs
            )?;
        }
        Ok(())
    }
}

/// Accumulates relation comparisons, keeping the first failure.
pub(crate) struct Tally {
    check: String,
    count: usize,
    witness: Option<Witness>,
}

impl Tally {
    pub fn new(check: &str) -> Self {
        Tally {
            check: check.into(),
            count: 0,
            witness: None,
        }
    }

    /// Records `lhs == rhs` for the named relation; positions are reported
    /// 1-based.
    pub fn compare<C: Coeff>(
        &mut self,
        relation: impl FnOnce() -> String,
        lhs: &GradedMatrix<C>,
        rhs: &GradedMatrix<C>,
    ) -> bool {
        self.count += 1;
        match lhs.first_difference(rhs) {
            None => true,
            Some(d) => {
                if self.witness.is_none() {
                    self.witness = Some(Witness {
                        relation: relation(),
                        row: d.row + 1,
                        col: d.col + 1,
                        lhs: d.lhs.to_string(),
                        rhs: d.rhs.to_string(),
                    });
                }
                false
            }
        }
    }

    pub fn zero<C: Coeff>(&mut self, relation: impl FnOnce() -> String, x: &GradedMatrix<C>) -> bool {
        let z = GradedMatrix::zero(x.gradings().to_vec());
        self.compare(relation, x, &z)
    }

    /// A relation that could not be instantiated counts as a failure.
    pub fn missing(&mut self, relation: String) {
        self.count += 1;
        if self.witness.is_none() {
            self.witness = Some(Witness {
                relation,
                row: 0,
                col: 0,
                lhs: "undefined".into(),
                rhs: "defined".into(),
            });
        }
    }

    pub fn finish(self) -> CheckReport {
        CheckReport {
            check: self.check,
            status: if self.witness.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            relations_checked: self.count,
            vacuous: self.count == 0,
            witness: self.witness,
        }
    }
}
