//! A single excitation shared between two field modes, each watched by its
//! own detector.

use alloc::vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::result::{ExperimentConfig, ExperimentResult, ProbabilityTable};
use super::sampling::StreamKey;
use crate::analysis::TrialRecord;
use crate::qcore::{CMatrix, PureState, Subsystem};
use crate::{Error, Result};

pub const OCCUPIED: &str = "occupied";
pub const VACUUM: &str = "vacuum";
const DETECTORS: [&str; 2] = ["D1", "D2"];
const TAG_COLLAPSE: u64 = 0xC011_A95E;

/// `(|occupied, vacuum⟩ + |vacuum, occupied⟩)/√2` over modes watched by D1
/// and D2.
pub fn single_excitation_state() -> PureState {
    let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let z = Complex64::new(0.0, 0.0);
    PureState::new(
        vec![
            Subsystem::two_level("mode1", OCCUPIED, VACUUM),
            Subsystem::two_level("mode2", OCCUPIED, VACUUM),
        ],
        vec![z, r, r, z],
    )
    .expect("normalized")
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollapseRun {
    pub result: ExperimentResult,
    pub clicks_d1: u64,
    pub clicks_d2: u64,
    /// Trials with zero or two clicks.
    pub anomalies: u64,
    /// Largest entrywise distance between the unclicked mode's conditional
    /// state and the vacuum projector, over both click outcomes.
    pub unclicked_vacuum_deviation: f64,
}

pub fn run_single_photon_collapse(trials: u64, seed: u64) -> Result<CollapseRun> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let state = single_excitation_state();
    let born = state.born_probabilities();

    let vacuum = CMatrix::diagonal(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
    let mut table = ProbabilityTable::new();
    let mut deviation: f64 = 0.0;
    for (clicked, other) in [(0usize, 1usize), (1, 0)] {
        let (p, post) = state.condition_on(clicked, OCCUPIED)?;
        table.push("click", DETECTORS[clicked], p);
        let post = post.ok_or_else(|| Error::invalid("click outcome has zero probability"))?;
        let rho = post.partial_trace(&[other])?;
        deviation = deviation.max(rho.matrix().max_abs_diff(&vacuum));
        let ctx = if clicked == 0 {
            "unclicked_mode2_given_D1"
        } else {
            "unclicked_mode1_given_D2"
        };
        table.push(ctx, OCCUPIED, rho.entry(0, 0).re);
        table.push(ctx, VACUUM, rho.entry(1, 1).re);
    }

    let key = StreamKey::new(seed, TAG_COLLAPSE);
    let (mut d1, mut d2, mut anomalies) = (0, 0, 0);
    let records = (0..trials)
        .map(|n| {
            let labels = born.labels_of(born.sample_index(key.trial(n).uniform()));
            let mut outcomes = vec![];
            for (mode, label) in labels.iter().enumerate() {
                if *label == OCCUPIED {
                    outcomes.push(DETECTORS[mode]);
                }
            }
            match outcomes[..] {
                ["D1"] => d1 += 1,
                ["D2"] => d2 += 1,
                _ => anomalies += 1,
            }
            TrialRecord::new(n, None, outcomes)
        })
        .collect();

    Ok(CollapseRun {
        result: ExperimentResult::analytic(ExperimentConfig::SinglePhotonCollapse, table)
            .with_trials(seed, records),
        clicks_d1: d1,
        clicks_d2: d2,
        anomalies,
        unclicked_vacuum_deviation: deviation,
    })
}
