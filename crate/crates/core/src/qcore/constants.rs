use crate::{Error, Result};

/// Planck's constant to two figures, in joule-seconds.
pub const PLANCK_TWO_FIGURES: f64 = 6.6e-34;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PhysicalConstants {
    /// Planck's constant, J·s.
    pub h: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            h: PLANCK_TWO_FIGURES,
        }
    }
}

impl PhysicalConstants {
    /// Energy in joules of one quantum at frequency `f` (Hz): `E = h f`.
    pub fn photon_energy(&self, f: f64) -> Result<f64> {
        if !f.is_finite() || f < 0.0 {
            return Err(Error::invalid(alloc::format!(
                "frequency must be finite and non-negative, got {f}"
            )));
        }
        Ok(self.h * f)
    }
}

/// [`PhysicalConstants::photon_energy`] with the default constants.
pub fn photon_energy(f: f64) -> Result<f64> {
    PhysicalConstants::default().photon_energy(f)
}
