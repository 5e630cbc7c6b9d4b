//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed rational literal: {0:?}")]
    BadRational(String),

    #[error("operands belong to different algebras")]
    AlgebraMismatch,

    #[error("coefficient vector has length {got}, algebra dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid algebra definition: {0}")]
    BadAlgebra(String),

    #[error("s_0 is not an automorphism: scaling factor must be nonzero")]
    ZeroScale,

    #[error("algebra is not nilpotent: lower central series stabilizes at dimension {stable_dim}")]
    NotNilpotent { stable_dim: usize },

    #[error("vectors are linearly dependent (rank {rank} < {count})")]
    DependentVectors { rank: usize, count: usize },

    #[error("span is not closed under the bracket: [v{left}, v{right}] = {bracket} lies outside the span")]
    NotClosed { left: usize, right: usize, bracket: String },

    #[error("invalid jet parameters: require m >= 1 and k >= 1, got m={m}, k={k}")]
    BadJetParameters { m: usize, k: usize },

    #[error("jet points have mismatched parameters: ({m1},{k1}) vs ({m2},{k2})")]
    JetMismatch { m1: usize, k1: usize, m2: usize, k2: usize },

    #[error("invalid jet point: {0}")]
    BadJetPoint(String),

    #[error("cochain degree {degree} exceeds dimension {dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },

    #[error("cochains live on spaces of different dimension ({0} vs {1})")]
    CochainMismatch(usize, usize),

    #[error("not a cocycle: d(z) = {dz}")]
    NotCocycle { dz: String },

    #[error("cochain is not weight-homogeneous: weights {weights:?} present")]
    NotHomogeneous { weights: Vec<u32> },

    #[error(
        "computation budget exceeded: {needed} exterior-basis cells needed, cap is {cap} \
         (set CARNOT_BUDGET_CELLS to raise)"
    )]
    BudgetExceeded { needed: u128, cap: u128 },

    #[error("horizontality ledger has no entry in dimension {dim}")]
    MissingLedgerEntry { dim: usize },

    #[error("ledger entry in dimension {dim} is invalid: {reason}")]
    BadLedgerEntry { dim: usize, reason: String },

    #[error("theorem hypothesis unmet: {0}")]
    NotApplicable(String),

    #[error("certificate hypothesis failed: {hypothesis}: {witness}")]
    HypothesisFailed { hypothesis: String, witness: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
