//! Numerical verification: lemma checks, the inequality suite and its reports.
//!
//! Every check produces [`InequalityCase`]s carrying both numeric sides and the
//! constant that was used, so a failing case can be audited from the report alone.

mod checks;
mod lemmas;
pub mod report;
mod suite;

use serde::{Deserialize, Serialize};

pub use crate::simplefn::gen_random_simple;
pub use lemmas::{
    g_lemma_check, g_lemma_lhs, k_closed_form, k_constant_check, radial_power_fn, RadialFunction, RadialKind, Shell,
};
pub use suite::{
    criterion_summary, run_check, run_suite, Check, CheckEntry, CriterionSummary, GridSpec, HolderSplit, SuiteConfig,
    TripleSpec,
};

/// How `lhs` is compared with `rhs · constant`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `lhs ≤ rhs·constant` up to the tolerance.
    Le,
    /// `lhs < rhs·constant` strictly.
    Lt,
    /// `|lhs − rhs·constant| ≤ tolerance`.
    Approx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Inputs outside the statement's hypotheses; not counted as a failure.
    Misuse,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Misuse => "misuse",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityCase {
    pub id: String,
    #[serde(with = "report::num")]
    pub lhs: f64,
    #[serde(with = "report::num")]
    pub rhs: f64,
    #[serde(with = "report::num")]
    pub constant: f64,
    /// `rhs · constant − lhs`.
    #[serde(with = "report::num")]
    pub margin: f64,
    pub relation: Relation,
    #[serde(with = "report::num")]
    pub tolerance: f64,
    pub status: Status,
    pub context: String,
}

impl InequalityCase {
    pub fn new(
        id: impl Into<String>,
        relation: Relation,
        lhs: f64,
        rhs: f64,
        constant: f64,
        tolerance: f64,
        context: impl Into<String>,
    ) -> Self {
        let margin = rhs * constant - lhs;
        let ok = match relation {
            Relation::Le => margin >= -tolerance,
            Relation::Lt => margin > 0.0,
            Relation::Approx => margin.abs() <= tolerance,
        };
        InequalityCase {
            id: id.into(),
            lhs,
            rhs,
            constant,
            margin,
            relation,
            tolerance,
            status: if ok { Status::Pass } else { Status::Fail },
            context: context.into(),
        }
    }

    pub fn misuse(id: impl Into<String>, context: impl Into<String>) -> Self {
        InequalityCase {
            id: id.into(),
            lhs: 0.0,
            rhs: 0.0,
            constant: 1.0,
            margin: 0.0,
            relation: Relation::Le,
            tolerance: 0.0,
            status: Status::Misuse,
            context: context.into(),
        }
    }

    /// A case whose inputs could not be evaluated.
    pub fn error(id: impl Into<String>, err: &crate::Error, context: &str) -> Self {
        let mut c = Self::misuse(id, format!("{context}; error: {err}"));
        c.status = Status::Fail;
        c
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// True iff every case is a pass or a misuse.
pub fn all_pass(cases: &[InequalityCase]) -> bool {
    cases.iter().all(|c| c.status != Status::Fail)
}
