use alloc::string::String;
use alloc::vec::Vec;

use crate::analysis::TrialRecord;
use crate::optics::PhaseSetting;

/// One labeled probability inside a measurement context.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ProbabilityEntry {
    pub context: String,
    pub outcome: String,
    pub probability: f64,
}

/// Analytic probabilities grouped by measurement context. Probabilities in
/// each context sum to one.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(transparent))]
pub struct ProbabilityTable {
    entries: Vec<ProbabilityEntry>,
}

impl ProbabilityTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, context: &str, outcome: &str, probability: f64) {
        self.entries.push(ProbabilityEntry {
            context: context.into(),
            outcome: outcome.into(),
            probability,
        });
    }

    pub fn entries(&self) -> &[ProbabilityEntry] {
        &self.entries
    }

    pub fn get(&self, context: &str, outcome: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.context == context && e.outcome == outcome)
            .map(|e| e.probability)
    }

    /// Context names in first-appearance order.
    pub fn contexts(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for e in &self.entries {
            if !out.contains(&e.context.as_str()) {
                out.push(&e.context);
            }
        }
        out
    }

    pub fn context_total(&self, context: &str) -> f64 {
        self.entries
            .iter()
            .filter(|e| e.context == context)
            .map(|e| e.probability)
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MzConfig {
    #[cfg_attr(feature = "serde", serde(rename = "phi1_deg"))]
    pub phi1: PhaseSetting,
    #[cfg_attr(feature = "serde", serde(rename = "phi2_deg"))]
    pub phi2: PhaseSetting,
    pub bs2_present: bool,
}

impl MzConfig {
    pub fn new(phi1: PhaseSetting, phi2: PhaseSetting, bs2_present: bool) -> Self {
        Self {
            phi1,
            phi2,
            bs2_present,
        }
    }

    /// Path-length phase difference φ₁ − φ₂.
    pub fn phase_difference(&self) -> f64 {
        self.phi1.radians() - self.phi2.radians()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RtoConfig {
    #[cfg_attr(feature = "serde", serde(rename = "phia_deg"))]
    pub phi_a: PhaseSetting,
    #[cfg_attr(feature = "serde", serde(rename = "phib_deg"))]
    pub phi_b: PhaseSetting,
}

impl RtoConfig {
    pub fn new(phi_a: PhaseSetting, phi_b: PhaseSetting) -> Self {
        Self { phi_a, phi_b }
    }
}

/// Echo of the parameters an experiment ran with.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(tag = "experiment", rename_all = "snake_case")
)]
pub enum ExperimentConfig {
    MachZehnder(MzConfig),
    DelayedChoice {
        #[cfg_attr(feature = "serde", serde(rename = "phi_deg"))]
        phase: PhaseSetting,
    },
    EncounterDelayedChoice {
        #[cfg_attr(feature = "serde", serde(rename = "phi_deg"))]
        phase: PhaseSetting,
        total_duration: f64,
        insertion_delay: f64,
        front_fraction: f64,
    },
    Rto(RtoConfig),
    Measurement,
    SinglePhotonCollapse,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub analytic: ProbabilityTable,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub trials: Option<Vec<TrialRecord>>,
    pub seed: Option<u64>,
    pub n_trials: u64,
}

impl ExperimentResult {
    pub(crate) fn analytic(config: ExperimentConfig, analytic: ProbabilityTable) -> Self {
        Self {
            config,
            analytic,
            trials: None,
            seed: None,
            n_trials: 0,
        }
    }

    pub(crate) fn with_trials(mut self, seed: u64, trials: Vec<TrialRecord>) -> Self {
        self.seed = Some(seed);
        self.n_trials = trials.len() as u64;
        self.trials = Some(trials);
        self
    }

    pub fn trials(&self) -> &[TrialRecord] {
        self.trials.as_deref().unwrap_or(&[])
    }

    /// Empirical frequency of `outcome` among trials whose setting is
    /// `setting` (all trials when `None`). Returns `None` without matching
    /// trials.
    pub fn frequency(&self, setting: Option<&str>, outcome: &str) -> Option<f64> {
        let selected: Vec<&TrialRecord> = self
            .trials()
            .iter()
            .filter(|t| setting.is_none_or(|s| t.setting == Some(s)))
            .collect();
        if selected.is_empty() {
            return None;
        }
        let hits = selected
            .iter()
            .filter(|t| t.outcomes.contains(&outcome))
            .count();
        Some(hits as f64 / selected.len() as f64)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for PhaseSetting {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.degrees())
    }
}
