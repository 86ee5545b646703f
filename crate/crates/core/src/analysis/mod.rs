//! Statistics over trials and joint distributions.

mod chsh;
mod correlation;
mod runs;
mod signaling;

use alloc::vec::Vec;

pub use chsh::{
    chsh, lhv_bound_bruteforce, local_strategies, ChshMode, ChshResult, ChshSettings, LocalStrategy,
};
pub use correlation::{degree_of_correlation, degree_of_correlation_analytic, CorrelationSummary};
pub use runs::{run_length_statistics, RunLengthReport};
pub use signaling::{no_signaling_audit, phase_grid, AuditMode, SignalingAudit};

/// One emitted trial: the detector label(s) that fired, in side order.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TrialRecord {
    pub index: u64,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub setting: Option<&'static str>,
    pub outcomes: Vec<&'static str>,
    /// Set once the detector has irreversibly registered.
    pub recorded: bool,
}

impl TrialRecord {
    pub fn new(index: u64, setting: Option<&'static str>, outcomes: Vec<&'static str>) -> Self {
        Self {
            index,
            setting,
            outcomes,
            recorded: true,
        }
    }
}
