//! Momentum-entangled photon pairs: each photon of the pair travels a solid
//! and a dashed path to its own beam splitter.
//!
//! The pair leaves the source as `(|solid,solid⟩ + |dashed,dashed⟩)/√2`.
//! A's phase shifter lengthens A's dashed path and B's lengthens B's solid
//! path, so the two shifters enter the pair amplitude with opposite signs and
//! only `φB − φA` matters. The B side is the mirror image of the A side, so
//! its detector numbering is mirrored too: A1 is A's output mode 1, B1 is
//! B's output mode 0.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::result::{ExperimentConfig, ExperimentResult, ProbabilityTable, RtoConfig};
use super::sampling::{context_id, StreamKey};
use crate::analysis::TrialRecord;
use crate::optics::{beam_splitter_5050, phase_shifter, Circuit};
use crate::qcore::{PureState, Subsystem};
use crate::{Error, Result};

pub const JOINT: &str = "joint";
pub const SIDE_A: &str = "A";
pub const SIDE_B: &str = "B";
pub const A_LABELS: [&str; 2] = ["A1", "A2"];
pub const B_LABELS: [&str; 2] = ["B1", "B2"];
const JOINT_LABELS: [[&str; 2]; 2] = [["A1B1", "A1B2"], ["A2B1", "A2B2"]];

/// Output mode of each side's beam splitter feeding detector 1 and 2.
const A_PORT: [usize; 2] = [1, 0];
const B_PORT: [usize; 2] = [0, 1];

const TAG_RTO: u64 = 0x52_544F;

pub fn rto_layout() -> Vec<Subsystem> {
    vec![
        Subsystem::two_level("A", "solid", "dashed"),
        Subsystem::two_level("B", "solid", "dashed"),
    ]
}

/// `(|solid,solid⟩ + |dashed,dashed⟩)/√2`
pub fn rto_source_state() -> PureState {
    let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let z = Complex64::new(0.0, 0.0);
    PureState::new(rto_layout(), vec![r, z, z, r]).expect("normalized Bell pair")
}

pub fn rto_circuit(config: &RtoConfig) -> Result<Circuit> {
    Circuit::new(rto_layout())
        .with(phase_shifter(0, 1, config.phi_a)?.with_name("phiA"))?
        .with(phase_shifter(1, 0, config.phi_b)?.with_name("phiB"))?
        .with(beam_splitter_5050(0).with_name("BS_A"))?
        .with(beam_splitter_5050(1).with_name("BS_B"))
}

/// Joint detection probabilities, `p[i][j] = P(A(i+1), B(j+1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RtoJoint {
    pub p: [[f64; 2]; 2],
}

impl RtoJoint {
    pub fn p_same(&self) -> f64 {
        self.p[0][0] + self.p[1][1]
    }

    pub fn p_different(&self) -> f64 {
        self.p[0][1] + self.p[1][0]
    }

    pub fn marginal_a(&self) -> [f64; 2] {
        [self.p[0][0] + self.p[0][1], self.p[1][0] + self.p[1][1]]
    }

    pub fn marginal_b(&self) -> [f64; 2] {
        [self.p[0][0] + self.p[1][0], self.p[0][1] + self.p[1][1]]
    }

    /// `P(same) − P(different)`
    pub fn correlation(&self) -> f64 {
        self.p_same() - self.p_different()
    }

    fn sample(&self, u: f64) -> (usize, usize) {
        let mut acc = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                acc += self.p[i][j];
                if u < acc {
                    return (i, j);
                }
            }
        }
        (1, 1)
    }
}

pub fn rto_joint(config: &RtoConfig) -> Result<RtoJoint> {
    let out = rto_circuit(config)?.run(&rto_source_state())?;
    let probs = out.born_probabilities();
    let probs = probs.probabilities();
    let mut p = [[0.0; 2]; 2];
    for (i, row) in p.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = probs[A_PORT[i] * 2 + B_PORT[j]];
        }
    }
    Ok(RtoJoint { p })
}

/// Analytic joint and per-side outcome tables.
pub fn run_rto(config: &RtoConfig) -> Result<ExperimentResult> {
    let joint = rto_joint(config)?;
    let mut table = ProbabilityTable::new();
    for i in 0..2 {
        for j in 0..2 {
            table.push(JOINT, JOINT_LABELS[i][j], joint.p[i][j]);
        }
    }
    let (ma, mb) = (joint.marginal_a(), joint.marginal_b());
    for k in 0..2 {
        table.push(SIDE_A, A_LABELS[k], ma[k]);
    }
    for k in 0..2 {
        table.push(SIDE_B, B_LABELS[k], mb[k]);
    }
    Ok(ExperimentResult::analytic(
        ExperimentConfig::Rto(*config),
        table,
    ))
}

/// Samples pair detections. `setting` tags every record and also separates
/// the random stream, so CHSH setting pairs draw independently.
pub fn sample_rto_tagged(
    config: &RtoConfig,
    trials: u64,
    seed: u64,
    setting: Option<&'static str>,
) -> Result<ExperimentResult> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let joint = rto_joint(config)?;
    let tag = setting.map_or(0u64, |s| {
        s.bytes()
            .fold(0u64, |h, b| h.wrapping_mul(131).wrapping_add(u64::from(b)))
    });
    let key = StreamKey::new(
        seed,
        context_id(
            TAG_RTO ^ tag,
            &[config.phi_a.radians(), config.phi_b.radians()],
        ),
    );
    let records = (0..trials)
        .map(|n| {
            let (i, j) = joint.sample(key.trial(n).uniform());
            TrialRecord::new(n, setting, vec![A_LABELS[i], B_LABELS[j]])
        })
        .collect();
    Ok(run_rto(config)?.with_trials(seed, records))
}

pub fn sample_rto(config: &RtoConfig, trials: u64, seed: u64) -> Result<ExperimentResult> {
    sample_rto_tagged(config, trials, seed, None)
}
