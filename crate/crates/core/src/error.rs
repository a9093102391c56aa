use alloc::string::String;

use crate::degsets::DecompositionCertificate;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("missing hypothesis `{flag}` on base `{base}`")]
    MissingHypothesis { base: String, flag: String },
    #[error("hypothesis unavailable: {0}")]
    HypothesisUnavailable(String),
    #[error("resource cap `{cap}` exceeded (limit {limit})")]
    ResourceCap { cap: &'static str, limit: u64 },
    /// The decomposition search ran out of budget; carries what was found so far.
    #[error("decomposition search exhausted `{cap}` (limit {limit}) with {remaining} extraneous sums left")]
    SearchExhausted {
        cap: &'static str,
        limit: u64,
        remaining: usize,
        partial: alloc::boxed::Box<DecompositionCertificate>,
    },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by a configured cap rather than by the input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceCap { .. } | Error::SearchExhausted { .. })
    }
}
