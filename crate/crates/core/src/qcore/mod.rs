//! State representation and the dense linear algebra underneath it.

mod constants;
mod density;
mod matrix;
mod state;

pub use constants::{photon_energy, PhysicalConstants, PLANCK_TWO_FIGURES};
pub use density::DensityOperator;
pub use matrix::CMatrix;
pub use num_complex::Complex64;
pub use state::{BornDistribution, PureState, Subsystem};
