//! One procedure per experiment. Each returns an analytic probability table;
//! procedures that take a trial count and seed also return sampled trials.

mod collapse;
mod double_slit;
mod interferometer;
mod measurement;
mod result;
mod rto;
pub mod sampling;

pub use collapse::{
    run_single_photon_collapse, single_excitation_state, CollapseRun, OCCUPIED, VACUUM,
};
pub use double_slit::{
    bin_impacts, default_screen_grid, double_slit_intensity, fringe_visibility, intensity_at,
    sample_impacts, screen_grid, trapezoid_weights, SlitGeometry, Slits, DEFAULT_FRINGES,
    MIN_DISTANCE_RATIO,
};
pub use interferometer::{
    delay_fractions, mach_zehnder_circuit, photon_path, run_delayed_choice,
    run_encounter_delayed_choice, run_mach_zehnder, sample_mach_zehnder, EncounterDelayedChoice,
    Segment, SubWave, WavePacketEnvelope, BS2_ABSENT, BS2_INSERTED, D1, D2, DEFAULT_DELAYS,
    DETECTORS, SUB_WAVES,
};
pub use measurement::{
    build_measurement_state, lone_photon, measurement_layout, measurement_report,
    subsystem_interference_probe, MeasurementReport, ProbePoint, DETECTOR, PHOTON,
};
pub use result::{
    ExperimentConfig, ExperimentResult, MzConfig, ProbabilityEntry, ProbabilityTable, RtoConfig,
};
pub use rto::{
    rto_circuit, rto_joint, rto_layout, rto_source_state, run_rto, sample_rto, sample_rto_tagged,
    RtoJoint, A_LABELS, B_LABELS, JOINT, SIDE_A, SIDE_B,
};
