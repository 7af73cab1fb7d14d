//! Case-by-case verification that a group with the codegree set of a target
//! has the target as its top composition factor, plus the arithmetic used to
//! rule out a nontrivial normal subgroup. Every case produces a certificate
//! that [`recheck_report`] re-derives from the serialized report alone.

mod cases;
mod checks;
pub mod grid;
mod report;

pub use cases::{
    case_ids, case_specs, close_case, CaseKind, CaseSpec, CheckSet, CountEvidence, CountRow, FixedRef, FixedWitness,
};
pub use checks::{gl_order, Check};
pub use grid::{sqrt_bound_grid, GridEvidence, GridPoint, OuterBound, Slice, SliceBound};
pub use report::{recheck_report, verify_all, DataSummary, OracleCheck, ProofReport, VerifyOptions, FORMAT_VERSION};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, FactoredInt};
use crate::catalog::{CatalogError, GroupRecord};
use crate::codegree::{cod_simple, CodegreeError, CodegreeSet, DegreeData};
use crate::dixon::DixonError;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Codegree(#[from] CodegreeError),
    #[error(transparent)]
    Dixon(#[from] DixonError),
    #[error("reduction failed: {0}")]
    Reduction(String),
    #[error("recheck failed: {0}")]
    Recheck(String),
    #[error("unsupported report: {0}")]
    Format(String),
}

/// A target group: its degrees, codegree set and the bound `M² = (max cod)²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetSpec {
    pub name: String,
    pub display: String,
    pub order: FactoredInt,
    pub degrees: Vec<u64>,
    /// Descending.
    pub cod: Vec<FactoredInt>,
    pub max: FactoredInt,
    pub m_squared: FactoredInt,
    pub schur_multiplier: Option<u64>,
}

impl TargetSpec {
    pub fn from_record(r: &GroupRecord) -> Result<Self, VerifyError> {
        Self::from_data(&r.data, r.display_name(), r.schur_multiplier)
    }

    fn from_data(d: &DegreeData, display: &str, schur_multiplier: Option<u64>) -> Result<Self, VerifyError> {
        if !d.simple || d.partial {
            return Err(VerifyError::Reduction(format!("{} is not a complete simple record", d.name)));
        }
        let set = cod_simple(d)?;
        let max = set.max().clone();
        Ok(Self {
            name: d.name.clone(),
            display: display.to_string(),
            order: d.order.clone(),
            degrees: d.degrees.clone(),
            cod: set.elements.iter().rev().cloned().collect(),
            m_squared: max.pow(2),
            max,
            schur_multiplier,
        })
    }

    pub fn degree_data(&self) -> DegreeData {
        DegreeData {
            name: self.name.clone(),
            order: self.order.clone(),
            degrees: self.degrees.clone(),
            kernels: None,
            simple: true,
            partial: false,
            provenance: String::new(),
        }
    }

    pub fn cod_set(&self) -> CodegreeSet {
        CodegreeSet::from_elements(crate::codegree::CodSource::Data, self.cod.iter().cloned())
    }

    pub fn contains(&self, c: &FactoredInt) -> bool {
        self.cod.contains(c)
    }

    /// Recomputes the codegree set and bound from the embedded degrees.
    pub fn recheck(&self) -> Result<(), VerifyError> {
        let again = Self::from_data(&self.degree_data(), &self.display, self.schur_multiplier)?;
        if &again != self {
            return Err(VerifyError::Recheck(format!("target {} does not match its degrees", self.name)));
        }
        let sum = self.degree_data().sum_of_squares()?;
        if self.order.value().map(u128::from) != Some(sum) {
            return Err(VerifyError::Recheck(format!("target {}: squared degrees do not sum to |G|", self.name)));
        }
        Ok(())
    }
}

/// How one grid point (and cod variant) is closed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    /// A codegree of the group outside `cod(target)`.
    Witness {
        label: String,
        value: FactoredInt,
    },
    /// The point is the target itself.
    Identified {
        group: String,
    },
    /// A literature bound on `|cod|` exceeds `|cod(target)|` (trusted).
    CountExceeds {
        min: usize,
        target: usize,
    },
    Open {
        reason: String,
    },
}

impl Outcome {
    pub fn closed(&self) -> bool {
        !matches!(self, Outcome::Open { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointOutcome {
    pub variant: Option<String>,
    pub outcome: Outcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Grid,
    FixedData,
    Count,
    DataFact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Closed,
    Open { reason: String },
}

impl Verdict {
    pub fn is_closed(&self) -> bool {
        matches!(self, Verdict::Closed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Evidence {
    Grid(Box<GridEvidence>),
    Fixed {
        groups: Vec<FixedWitness>,
    },
    Count(Box<CountEvidence>),
    Checks {
        checks: Vec<Check>,
    },
    /// The case could not be set up (missing data, failed reduction).
    Missing {
        error: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub id: String,
    pub target: String,
    pub method: Method,
    pub summary: String,
    /// Bound used by grid cases: the largest codegree of the target.
    pub target_max: FactoredInt,
    pub evidence: Evidence,
    /// Literature facts the verdict depends on, not computed here.
    pub trusted: Vec<String>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}
