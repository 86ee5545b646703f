use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::experiments::{rto_joint, sample_rto, RtoConfig, A_LABELS, B_LABELS};
use crate::optics::PhaseSetting;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditMode {
    Analytic,
    Sampled { trials_per_point: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SignalingAudit {
    pub points: usize,
    /// max |P − 0.5| over both sides, both outcomes, all grid points.
    pub max_deviation: f64,
    pub worst_phia_deg: f64,
    pub worst_phib_deg: f64,
}

/// `n` phases uniformly spaced on `[0, 2π)`.
pub fn phase_grid(n: usize) -> Vec<PhaseSetting> {
    (0..n)
        .map(|k| PhaseSetting::from_radians(TAU * k as f64 / n as f64).expect("finite"))
        .collect()
}

/// Checks that each side's outcome marginals stay at (0.5, 0.5) whatever the
/// two phase settings are, over the grid `phases_a × phases_b`.
pub fn no_signaling_audit(
    phases_a: &[PhaseSetting],
    phases_b: &[PhaseSetting],
    mode: AuditMode,
) -> Result<SignalingAudit> {
    if phases_a.is_empty() || phases_b.is_empty() {
        return Err(Error::invalid("phase grid must be non-empty"));
    }
    let mut audit = SignalingAudit {
        points: phases_a.len() * phases_b.len(),
        max_deviation: 0.0,
        worst_phia_deg: phases_a[0].degrees(),
        worst_phib_deg: phases_b[0].degrees(),
    };
    for &pa in phases_a {
        for &pb in phases_b {
            let config = RtoConfig::new(pa, pb);
            let (ma, mb) = match mode {
                AuditMode::Analytic => {
                    let j = rto_joint(&config)?;
                    (j.marginal_a(), j.marginal_b())
                }
                AuditMode::Sampled {
                    trials_per_point,
                    seed,
                } => {
                    let run = sample_rto(&config, trials_per_point, seed)?;
                    let f = |label: &str| run.frequency(None, label).unwrap_or(0.0);
                    (
                        [f(A_LABELS[0]), f(A_LABELS[1])],
                        [f(B_LABELS[0]), f(B_LABELS[1])],
                    )
                }
            };
            let dev = ma
                .iter()
                .chain(&mb)
                .map(|p| (p - 0.5).abs())
                .fold(0.0, f64::max);
            if dev > audit.max_deviation {
                audit.max_deviation = dev;
                audit.worst_phia_deg = pa.degrees();
                audit.worst_phib_deg = pb.degrees();
            }
        }
    }
    Ok(audit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_grid_is_flat() {
        let g = phase_grid(8);
        let a = no_signaling_audit(&g, &g, AuditMode::Analytic).unwrap();
        assert_eq!(a.points, 64);
        assert!(a.max_deviation < 1e-12);
    }

    #[test]
    fn origin_point_is_exact() {
        let z = [PhaseSetting::zero()];
        let a = no_signaling_audit(&z, &z, AuditMode::Analytic).unwrap();
        assert!(a.max_deviation < 1e-15);
    }

    #[test]
    fn empty_grid_rejected() {
        assert!(no_signaling_audit(&[], &phase_grid(2), AuditMode::Analytic).is_err());
    }

    #[test]
    fn sampled_point_within_bound() {
        let g = phase_grid(2);
        let n = 10_000;
        let a = no_signaling_audit(
            &g,
            &g,
            AuditMode::Sampled {
                trials_per_point: n,
                seed: 4,
            },
        )
        .unwrap();
        assert!(a.max_deviation < 4.0 * libm::sqrt(0.25 / n as f64));
    }
}
