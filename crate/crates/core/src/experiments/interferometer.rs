//! Single-photon Mach–Zehnder runs: fixed beam splitters, delayed choice,
//! and insertion of the second beam splitter while the packet is crossing.
//!
//! The photon enters in the `path1` mode. Detector D1 sits on output mode 1
//! of the recombining beam splitter and D2 on output mode 0, which gives
//! `P(D1) = cos²((φ₁ − φ₂)/2)`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::result::{ExperimentConfig, ExperimentResult, MzConfig, ProbabilityTable};
use super::sampling::{context_id, StreamKey};
use crate::analysis::TrialRecord;
use crate::optics::{
    beam_splitter_5050, beam_splitter_matrix, phase_shifter, Circuit, PhaseSetting,
};
use crate::qcore::{CMatrix, PureState, Subsystem};
use crate::{Error, Result};

pub const DETECTORS: &str = "detectors";
pub const D1: &str = "D1";
pub const D2: &str = "D2";
pub const BS2_INSERTED: &str = "bs2_inserted";
pub const BS2_ABSENT: &str = "bs2_absent";
pub const SUB_WAVES: &str = "sub_waves";

const TAG_MZ: u64 = 0x4D5A;
const TAG_DELAYED: u64 = 0xDC;

pub fn photon_path() -> Subsystem {
    Subsystem::two_level("photon", "path1", "path2")
}

fn input_state() -> PureState {
    PureState::basis(vec![photon_path()], &["path1"]).expect("valid basis label")
}

/// BS1 followed by the two path phase shifters.
fn arms_circuit(phi1: PhaseSetting, phi2: PhaseSetting) -> Result<Circuit> {
    Circuit::new(vec![photon_path()])
        .with(beam_splitter_5050(0).with_name("BS1"))?
        .with(phase_shifter(0, 0, phi1)?.with_name("phi1"))?
        .with(phase_shifter(0, 1, phi2)?.with_name("phi2"))
}

/// Full interferometer; BS2 is omitted entirely when removed.
pub fn mach_zehnder_circuit(config: &MzConfig) -> Result<Circuit> {
    let circuit = arms_circuit(config.phi1, config.phi2)?;
    if config.bs2_present {
        circuit.with(beam_splitter_5050(0).with_name("BS2"))
    } else {
        Ok(circuit)
    }
}

/// `[P(D1), P(D2)]` for a photon state on the output modes.
fn detector_probabilities(state: &PureState) -> [f64; 2] {
    let p = state.born_probabilities();
    [p.probabilities()[1], p.probabilities()[0]]
}

fn mz_probabilities(config: &MzConfig) -> Result<[f64; 2]> {
    let out = mach_zehnder_circuit(config)?.run(&input_state())?;
    Ok(detector_probabilities(&out))
}

fn detector_table(context: &str, p: [f64; 2], table: &mut ProbabilityTable) {
    table.push(context, D1, p[0]);
    table.push(context, D2, p[1]);
}

fn pick(p: [f64; 2], u: f64) -> &'static str {
    if u < p[0] {
        D1
    } else {
        D2
    }
}

/// Analytic detector probabilities for one interferometer setting.
pub fn run_mach_zehnder(config: &MzConfig) -> Result<ExperimentResult> {
    let p = mz_probabilities(config)?;
    let mut table = ProbabilityTable::new();
    detector_table(DETECTORS, p, &mut table);
    Ok(ExperimentResult::analytic(
        ExperimentConfig::MachZehnder(*config),
        table,
    ))
}

/// [`run_mach_zehnder`] plus `trials` single-photon detections.
pub fn sample_mach_zehnder(config: &MzConfig, trials: u64, seed: u64) -> Result<ExperimentResult> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let p = mz_probabilities(config)?;
    let key = StreamKey::new(
        seed,
        context_id(
            TAG_MZ,
            &[
                config.phi1.radians(),
                config.phi2.radians(),
                f64::from(u8::from(config.bs2_present)),
            ],
        ),
    );
    let records = (0..trials)
        .map(|i| TrialRecord::new(i, None, vec![pick(p, key.trial(i).uniform())]))
        .collect();
    Ok(run_mach_zehnder(config)?.with_trials(seed, records))
}

/// Delayed choice: a fair coin, flipped after the photon has passed BS1,
/// decides whether BS2 is inserted.
///
/// The analytic table has one context per choice (`bs2_inserted`,
/// `bs2_absent`); each trial records its choice as the setting.
pub fn run_delayed_choice(phase: PhaseSetting, trials: u64, seed: u64) -> Result<ExperimentResult> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let in_arms = arms_circuit(phase, PhaseSetting::zero())?.run(&input_state())?;
    let with_bs2 = in_arms.apply_unitary(&beam_splitter_matrix(), &[0])?;
    let p_in = detector_probabilities(&with_bs2);
    let p_out = detector_probabilities(&in_arms);

    let mut table = ProbabilityTable::new();
    detector_table(BS2_INSERTED, p_in, &mut table);
    detector_table(BS2_ABSENT, p_out, &mut table);

    let key = StreamKey::new(seed, context_id(TAG_DELAYED, &[phase.radians()]));
    let records = (0..trials)
        .map(|i| {
            let mut rng = key.trial(i);
            let inserted = rng.coin();
            let (setting, p) = if inserted {
                (BS2_INSERTED, p_in)
            } else {
                (BS2_ABSENT, p_out)
            };
            TrialRecord::new(i, Some(setting), vec![pick(p, rng.uniform())])
        })
        .collect();
    Ok(
        ExperimentResult::analytic(ExperimentConfig::DelayedChoice { phase }, table)
            .with_trials(seed, records),
    )
}

/// Temporal extent of the photon and the moment BS2 goes in, both measured
/// from the arrival of the packet's front end at the crossing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavePacketEnvelope {
    total_duration: f64,
    insertion_delay: f64,
}

impl WavePacketEnvelope {
    pub fn new(total_duration: f64, insertion_delay: f64) -> Result<Self> {
        if !(total_duration.is_finite() && total_duration > 0.0) {
            return Err(Error::invalid(
                "packet duration must be positive and finite",
            ));
        }
        if !(0.0..=total_duration).contains(&insertion_delay) {
            return Err(Error::invalid(
                "insertion delay must lie within the packet duration",
            ));
        }
        Ok(Self {
            total_duration,
            insertion_delay,
        })
    }

    /// Envelope with unit duration and the given delay fraction.
    pub fn from_fraction(r: f64) -> Result<Self> {
        Self::new(1.0, r)
    }

    pub fn total_duration(&self) -> f64 {
        self.total_duration
    }

    pub fn insertion_delay(&self) -> f64 {
        self.insertion_delay
    }

    /// Share of the packet that crosses before BS2 is inserted.
    pub fn front_fraction(&self) -> f64 {
        self.insertion_delay / self.total_duration
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "snake_case")
)]
pub enum Segment {
    /// Crosses before insertion; meets no beam splitter.
    Front,
    /// Crosses after insertion; meets BS2.
    Back,
}

/// One of the four branches (segment × path) arriving at the crossing.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SubWave {
    pub segment: Segment,
    pub path: &'static str,
    pub weight: f64,
    pub bs2_present: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EncounterDelayedChoice {
    pub result: ExperimentResult,
    pub sub_waves: [SubWave; 4],
}

impl EncounterDelayedChoice {
    pub fn p_d1(&self) -> f64 {
        self.result.analytic.get(DETECTORS, D1).unwrap_or(f64::NAN)
    }

    pub fn p_d2(&self) -> f64 {
        self.result.analytic.get(DETECTORS, D2).unwrap_or(f64::NAN)
    }
}

/// BS2 inserted while the photon is crossing.
///
/// The packet is split into orthogonal temporal modes: the front (fraction
/// `r` of its energy) passes a bare crossing and the back passes BS2. The
/// segment is carried as an extra subsystem and BS2 acts conditionally on it.
pub fn run_encounter_delayed_choice(
    phase: PhaseSetting,
    envelope: WavePacketEnvelope,
) -> Result<EncounterDelayedChoice> {
    let r = envelope.front_fraction();
    let segment = Subsystem::two_level("segment", "front", "back");
    let segments = PureState::new(
        vec![segment],
        vec![
            Complex64::new(libm::sqrt(r), 0.0),
            Complex64::new(libm::sqrt(1.0 - r), 0.0),
        ],
    )?;
    let in_arms = arms_circuit(phase, PhaseSetting::zero())?.run(&input_state())?;
    let joint = segments.tensor(&in_arms)?;

    let before = joint.born_probabilities();
    let weight = |seg: &str, path: &str| before.probability(&[seg, path]);
    let sub_waves = [
        SubWave {
            segment: Segment::Front,
            path: "path1",
            weight: weight("front", "path1")?,
            bs2_present: false,
        },
        SubWave {
            segment: Segment::Front,
            path: "path2",
            weight: weight("front", "path2")?,
            bs2_present: false,
        },
        SubWave {
            segment: Segment::Back,
            path: "path1",
            weight: weight("back", "path1")?,
            bs2_present: true,
        },
        SubWave {
            segment: Segment::Back,
            path: "path2",
            weight: weight("back", "path2")?,
            bs2_present: true,
        },
    ];

    // |front><front| ⊗ I + |back><back| ⊗ BS
    let mut controlled = CMatrix::identity(4);
    let bs = beam_splitter_matrix();
    for i in 0..2 {
        for j in 0..2 {
            controlled[(2 + i, 2 + j)] = bs[(i, j)];
        }
    }
    let out = joint.apply_unitary(&controlled, &[0, 1])?;
    let photon = out.born_probabilities().marginal(1)?;
    let p = [photon[1], photon[0]];

    let mut table = ProbabilityTable::new();
    detector_table(DETECTORS, p, &mut table);
    for w in &sub_waves {
        let name = match (w.segment, w.path) {
            (Segment::Front, "path1") => "front_path1",
            (Segment::Front, _) => "front_path2",
            (Segment::Back, "path1") => "back_path1",
            (Segment::Back, _) => "back_path2",
        };
        table.push(SUB_WAVES, name, w.weight);
    }
    let config = ExperimentConfig::EncounterDelayedChoice {
        phase,
        total_duration: envelope.total_duration(),
        insertion_delay: envelope.insertion_delay(),
        front_fraction: r,
    };
    Ok(EncounterDelayedChoice {
        result: ExperimentResult::analytic(config, table),
        sub_waves,
    })
}

/// `n` uniformly spaced insertion delays from 0 to T inclusive.
pub fn delay_fractions(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|i| i as f64 / (n - 1) as f64).collect(),
    }
}

/// Default number of delay points in a sweep.
pub const DEFAULT_DELAYS: usize = 16;
