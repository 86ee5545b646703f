//! The photon–detector state formed when a path-superposed photon meets a
//! which-path detector, and probes of its subsystems.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use num_complex::Complex64;

use super::result::{ExperimentConfig, ExperimentResult, ProbabilityTable};
use crate::optics::{beam_splitter_matrix, phase_shifter, PhaseSetting};
use crate::qcore::{DensityOperator, PureState, Subsystem};
use crate::{Error, Result};

pub const PHOTON: usize = 0;
pub const DETECTOR: usize = 1;

pub fn measurement_layout() -> Vec<Subsystem> {
    vec![
        Subsystem::two_level("photon", "path1", "path2"),
        Subsystem::two_level("detector", "D1", "D2"),
    ]
}

/// `(|path1, D1⟩ + |path2, D2⟩)/√2`
pub fn build_measurement_state() -> PureState {
    let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let z = Complex64::new(0.0, 0.0);
    PureState::new(measurement_layout(), vec![r, z, z, r]).expect("normalized")
}

/// A photon alone in `(|path1⟩ + |path2⟩)/√2`.
pub fn lone_photon() -> PureState {
    let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
    PureState::new(vec![measurement_layout().swap_remove(0)], vec![r, r]).expect("normalized")
}

/// Runs one subsystem alone through a probe interferometer and returns its
/// two output probabilities.
///
/// The probe applies phase `phi` to the second basis level, then a 50/50
/// beam splitter. The probe carries a fixed quarter-wave offset on that level
/// so that at `phi = 0` a lone `(|1⟩+|2⟩)/√2` exits entirely through the
/// first output.
pub fn subsystem_interference_probe(
    state: &PureState,
    subsystem: usize,
    phi: PhaseSetting,
) -> Result<[f64; 2]> {
    let sub = state
        .subsystems()
        .get(subsystem)
        .ok_or(Error::InvalidSubsystem {
            index: subsystem,
            count: state.subsystems().len(),
        })?;
    if sub.dim() != 2 {
        return Err(Error::invalid("the probe needs a two-level subsystem"));
    }
    let shifted = PhaseSetting::from_radians(phi.radians() - FRAC_PI_2)?;
    let out = phase_shifter(subsystem, 1, shifted)?.apply(state)?;
    let out = out.apply_unitary(&beam_splitter_matrix(), &[subsystem])?;
    let m = out.born_probabilities().marginal(subsystem)?;
    Ok([m[0], m[1]])
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbePoint {
    pub phase_deg: f64,
    pub photon: [f64; 2],
    pub detector: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementReport {
    pub result: ExperimentResult,
    pub reduced_photon: DensityOperator,
    pub reduced_detector: DensityOperator,
    pub purity_photon: f64,
    pub purity_detector: f64,
    pub probe: Vec<ProbePoint>,
}

/// Joint table, reduced operators, purities and a probe sweep over
/// `probe_phases` uniformly spaced phases in `[0°, 360°)`.
pub fn measurement_report(probe_phases: usize) -> Result<MeasurementReport> {
    let state = build_measurement_state();
    let born = state.born_probabilities();
    let mut table = ProbabilityTable::new();
    for (label, p) in born.iter() {
        table.push("joint", &label, p);
    }
    let reduced_photon = state.partial_trace(&[PHOTON])?;
    let reduced_detector = state.partial_trace(&[DETECTOR])?;
    for (name, rho) in [("photon", &reduced_photon), ("detector", &reduced_detector)] {
        for (label, p) in rho.subsystems()[0].labels().iter().zip(rho.diagonal()) {
            table.push(name, label, p);
        }
    }
    let probe = (0..probe_phases)
        .map(|k| {
            let deg = 360.0 * k as f64 / probe_phases as f64;
            let phi = PhaseSetting::from_degrees(deg)?;
            Ok(ProbePoint {
                phase_deg: deg,
                photon: subsystem_interference_probe(&state, PHOTON, phi)?,
                detector: subsystem_interference_probe(&state, DETECTOR, phi)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasurementReport {
        result: ExperimentResult::analytic(ExperimentConfig::Measurement, table),
        purity_photon: reduced_photon.purity(),
        purity_detector: reduced_detector.purity(),
        reduced_photon,
        reduced_detector,
        probe,
    })
}
