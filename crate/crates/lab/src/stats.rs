//! Goodness-of-fit testing for sampled screen impacts.

use anyhow::{bail, Result};
use quanta_core::experiments::{intensity_at, SlitGeometry, Slits};
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Smallest expected count per bin before neighbouring bins are merged.
pub const MIN_EXPECTED: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GoodnessOfFit {
    pub chi_square: f64,
    pub dof: usize,
    pub confidence: f64,
    pub critical_value: f64,
    pub p_value: f64,
    pub passed: bool,
    pub bins_used: usize,
}

/// Pearson chi-square of `observed` counts against `expected_prob`.
///
/// Adjacent bins are merged left to right until each holds an expected count
/// of at least [`MIN_EXPECTED`]; a short tail joins the last merged bin.
pub fn chi_square_gof(
    observed: &[u64],
    expected_prob: &[f64],
    confidence: f64,
) -> Result<GoodnessOfFit> {
    if observed.len() != expected_prob.len() {
        bail!(
            "{} observed bins but {} expected",
            observed.len(),
            expected_prob.len()
        );
    }
    if !(0.0..1.0).contains(&confidence) {
        bail!("confidence must lie in [0, 1)");
    }
    let n: u64 = observed.iter().sum();
    let total_p: f64 = expected_prob.iter().sum();
    if n == 0 || !(total_p > 0.0) {
        bail!("goodness of fit needs observations and a positive expectation");
    }

    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut o, mut e) = (0.0, 0.0);
    for (&obs, &p) in observed.iter().zip(expected_prob) {
        o += obs as f64;
        e += n as f64 * p / total_p;
        if e >= MIN_EXPECTED {
            bins.push((o, e));
            (o, e) = (0.0, 0.0);
        }
    }
    if e > 0.0 || o > 0.0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += o;
                last.1 += e;
            }
            None => bins.push((o, e)),
        }
    }
    if bins.len() < 2 {
        bail!("too few observations for a chi-square test");
    }

    let chi_square: f64 = bins.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let dof = bins.len() - 1;
    let dist = ChiSquared::new(dof as f64)?;
    let critical_value = dist.inverse_cdf(confidence);
    Ok(GoodnessOfFit {
        chi_square,
        dof,
        confidence,
        critical_value,
        p_value: 1.0 - dist.cdf(chi_square),
        passed: chi_square <= critical_value,
        bins_used: bins.len(),
    })
}

/// Probability of each grid point's screen cell (midpoint to midpoint) under
/// the closed-form intensity, by composite Simpson integration, normalized
/// over the grid window.
pub fn cell_probabilities(grid: &[f64], geometry: &SlitGeometry, slits: Slits) -> Vec<f64> {
    const PANELS: usize = 16;
    let last = grid.len().saturating_sub(1);
    let mut cells: Vec<f64> = (0..grid.len())
        .map(|i| {
            let lo = if i > 0 {
                0.5 * (grid[i - 1] + grid[i])
            } else {
                grid[0]
            };
            let hi = if i < last {
                0.5 * (grid[i] + grid[i + 1])
            } else {
                grid[last]
            };
            let h = (hi - lo) / PANELS as f64;
            let mut s = intensity_at(geometry, slits, lo) + intensity_at(geometry, slits, hi);
            for k in 1..PANELS {
                let w = if k % 2 == 1 { 4.0 } else { 2.0 };
                s += w * intensity_at(geometry, slits, lo + k as f64 * h);
            }
            s * h / 3.0
        })
        .collect();
    let total: f64 = cells.iter().sum();
    for c in &mut cells {
        *c /= total;
    }
    cells
}
