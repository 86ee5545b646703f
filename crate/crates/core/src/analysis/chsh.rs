use alloc::vec::Vec;

use super::correlation::{degree_of_correlation, degree_of_correlation_analytic};
use crate::experiments::{rto_joint, sample_rto_tagged, RtoConfig};
use crate::optics::PhaseSetting;
use crate::Result;

/// Phase settings `a, a′` for side A and `b, b′` for side B.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ChshSettings {
    #[cfg_attr(feature = "serde", serde(rename = "a_deg"))]
    pub a: PhaseSetting,
    #[cfg_attr(feature = "serde", serde(rename = "a2_deg"))]
    pub a2: PhaseSetting,
    #[cfg_attr(feature = "serde", serde(rename = "b_deg"))]
    pub b: PhaseSetting,
    #[cfg_attr(feature = "serde", serde(rename = "b2_deg"))]
    pub b2: PhaseSetting,
}

impl ChshSettings {
    pub fn from_degrees(a: f64, a2: f64, b: f64, b2: f64) -> Result<Self> {
        Ok(Self {
            a: PhaseSetting::from_degrees(a)?,
            a2: PhaseSetting::from_degrees(a2)?,
            b: PhaseSetting::from_degrees(b)?,
            b2: PhaseSetting::from_degrees(b2)?,
        })
    }

    /// a = 0°, a′ = 90°, b = 45°, b′ = 135°.
    pub fn optimal() -> Self {
        Self::from_degrees(0.0, 90.0, 45.0, 135.0).expect("finite angles")
    }

    fn pairs(&self) -> [(&'static str, PhaseSetting, PhaseSetting); 4] {
        [
            ("a,b", self.a, self.b),
            ("a,b2", self.a, self.b2),
            ("a2,b", self.a2, self.b),
            ("a2,b2", self.a2, self.b2),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChshMode {
    Analytic,
    Sampled { trials_per_pair: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ChshResult {
    pub e_ab: f64,
    pub e_ab2: f64,
    pub e_a2b: f64,
    pub e_a2b2: f64,
    pub s: f64,
    pub lhv_bound: f64,
    /// Propagated binomial error of `s`; zero for analytic results.
    pub standard_error: f64,
}

/// `S = E(a,b) − E(a,b′) + E(a′,b) + E(a′,b′)` with each `E` the degree of
/// correlation of the entangled-pair experiment at `(φA, φB) = (x, y)`.
pub fn chsh(settings: &ChshSettings, mode: ChshMode) -> Result<ChshResult> {
    let mut e = [0.0; 4];
    let mut var = 0.0;
    for (k, (tag, x, y)) in settings.pairs().into_iter().enumerate() {
        let config = RtoConfig::new(x, y);
        let summary = match mode {
            ChshMode::Analytic => degree_of_correlation_analytic(&rto_joint(&config)?),
            ChshMode::Sampled {
                trials_per_pair,
                seed,
            } => {
                let run = sample_rto_tagged(&config, trials_per_pair, seed, Some(tag))?;
                degree_of_correlation(run.trials())?
            }
        };
        e[k] = summary.degree_of_correlation;
        var += summary.standard_error * summary.standard_error;
    }
    Ok(ChshResult {
        e_ab: e[0],
        e_ab2: e[1],
        e_a2b: e[2],
        e_a2b2: e[3],
        s: e[0] - e[1] + e[2] + e[3],
        lhv_bound: lhv_bound_bruteforce(),
        standard_error: libm::sqrt(var),
    })
}

/// Deterministic local assignment of ±1 to each side's two settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalStrategy {
    pub a: [i8; 2],
    pub b: [i8; 2],
}

impl LocalStrategy {
    pub fn chsh_value(&self) -> i32 {
        let e = |i: usize, j: usize| i32::from(self.a[i]) * i32::from(self.b[j]);
        e(0, 0) - e(0, 1) + e(1, 0) + e(1, 1)
    }
}

/// All 16 deterministic local strategies.
pub fn local_strategies() -> Vec<LocalStrategy> {
    const SIGNS: [i8; 2] = [1, -1];
    let mut out = Vec::with_capacity(16);
    for a0 in SIGNS {
        for a1 in SIGNS {
            for b0 in SIGNS {
                for b1 in SIGNS {
                    out.push(LocalStrategy {
                        a: [a0, a1],
                        b: [b0, b1],
                    });
                }
            }
        }
    }
    out
}

/// Largest `|S|` reachable by any deterministic local strategy.
pub fn lhv_bound_bruteforce() -> f64 {
    let best = local_strategies()
        .iter()
        .map(|s| s.chsh_value().abs())
        .max()
        .unwrap_or(0);
    f64::from(best)
}
