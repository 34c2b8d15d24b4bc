//! Quantum stabilizer parameters derived from Hermitian self-orthogonal
//! codes, the named QMDS families, shortening, and conjecture checks.

mod conjecture;
mod families;
mod registry;
mod stabilizer;

pub use conjecture::{
    conjecture_pc_params, conjecture_report, cyclic_subcode_search, ConjectureReport, ConjectureRow,
    SubcodeFinding, Verdict as ConjectureVerdict, WeightTableRow,
};
pub use families::{
    char2_q2plus2, char2_q2plus2_parts, family_distance2, family_q2plus1, run_pipeline, verify_witness, PipelineRun,
};
pub use registry::{literature_records, Registry};
pub use stabilizer::{puncture_stabilizer, shorten_params, stabilizer_from_self_orthogonal};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ccodes::CcodeError;
use crate::gf::GfError;
use crate::linalg::LinalgError;
use crate::pcode::{PcodeError, WitnessFile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QstabError {
    #[error("the code is not Hermitian self-orthogonal")]
    NotSelfOrthogonal,
    #[error("shortening needs a pure code")]
    NotPure,
    #[error("cannot shorten by {s} a code of distance {d}")]
    BadS { s: usize, d: usize },
    #[error("the stabilizer code has distance one")]
    DistanceOne,
    #[error("no [[{n},{}, 2]] code over alphabet {q} follows from the known constructions", n.saturating_sub(2))]
    NotKnown { q: u32, n: usize },
    #[error("m = {0} is outside 1..=4")]
    MOutOfRange(u32),
    #[error("distance {d} is outside the supported range for q = {q}")]
    BadDistance { q: u32, d: u32 },
    #[error("alphabet {0} is not a supported prime power")]
    UnsupportedAlphabet(u32),
    #[error("no weight-{n} word found in the puncture code for q = {q}, d = {d}")]
    MissingFullWeight { q: u32, d: u32, n: usize },
    #[error("construction check failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Pcode(#[from] PcodeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ccode(#[from] CcodeError),
    #[error(transparent)]
    Gf(#[from] GfError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Purity {
    Yes,
    No,
    Unknown,
}

/// How much of a record has been checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    /// Built here from a witness with an exact distance.
    Verified,
    /// Built here, but the distance is only bounded.
    Claimed,
    /// Obtained from a verified or literature record by parameter algebra.
    Derived,
    /// Existence follows from a rule; nothing was constructed.
    ParameterOnly,
    /// Imported from published tables.
    Literature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceKind {
    Exact,
    /// `d(D*)` is exact and meets the quantum Singleton bound, so the
    /// relative distance is pinned between the two.
    ExactBySingleton,
    LowerBound,
    /// Taken as stated by the source.
    Stated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumCodeParams {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub pure: Purity,
    pub status: RecordStatus,
    pub distance: DistanceKind,
    pub provenance: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessFile>,
}

impl QuantumCodeParams {
    pub fn key(&self) -> String {
        format!("{},{},{}@{}", self.n, self.k, self.d, self.q)
    }

    /// Slack in `n + 2 >= k + 2d`; negative means the record is impossible.
    pub fn singleton_slack(&self) -> i64 {
        self.n as i64 + 2 - self.k as i64 - 2 * self.d as i64
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.distance, DistanceKind::Exact | DistanceKind::ExactBySingleton)
    }
}

/// True iff the record meets the quantum Singleton bound with equality.
pub fn qmds_check(p: &QuantumCodeParams) -> bool {
    p.singleton_slack() == 0
}

impl fmt::Display for QuantumCodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{}]]_{}", self.n, self.k, self.d, self.q)
    }
}

/// Parses `n,k,d@q`.
pub fn parse_key(key: &str) -> Option<(u32, usize, usize, usize)> {
    let (nkd, q) = key.split_once('@')?;
    let parts: Vec<usize> = nkd
        .split(',')
        .map(|s| s.trim().parse().ok())
        .collect::<Option<_>>()?;
    match parts[..] {
        [n, k, d] => Some((q.trim().parse().ok()?, n, k, d)),
        _ => None,
    }
}
