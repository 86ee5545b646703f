use crate::experiments::RtoJoint;
use crate::{Error, Result};

use super::TrialRecord;

/// Same/different statistics of paired binary outcomes.
///
/// Analytic summaries carry zero counts and zero standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CorrelationSummary {
    pub n_same: u64,
    pub n_diff: u64,
    pub degree_of_correlation: f64,
    pub standard_error: f64,
}

/// Detector number encoded as the trailing digit of a label (`A1` → 1).
fn detector_number(label: &str) -> Option<u8> {
    label
        .bytes()
        .last()
        .filter(u8::is_ascii_digit)
        .map(|b| b - b'0')
}

/// Empirical `C = (n_same − n_diff)/N` with binomial standard error
/// `√((1 − C²)/N)`.
pub fn degree_of_correlation(trials: &[TrialRecord]) -> Result<CorrelationSummary> {
    if trials.is_empty() {
        return Err(Error::InsufficientData("no trials to correlate".into()));
    }
    let (mut same, mut diff) = (0u64, 0u64);
    for t in trials {
        let [a, b] = t.outcomes[..] else {
            return Err(Error::invalid(alloc::format!(
                "trial {} has {} outcomes, expected a pair",
                t.index,
                t.outcomes.len()
            )));
        };
        match (detector_number(a), detector_number(b)) {
            (Some(x), Some(y)) if x == y => same += 1,
            (Some(_), Some(_)) => diff += 1,
            _ => {
                return Err(Error::invalid(alloc::format!(
                    "unnumbered detector label in trial {}",
                    t.index
                )))
            }
        }
    }
    let n = (same + diff) as f64;
    let c = (same as f64 - diff as f64) / n;
    Ok(CorrelationSummary {
        n_same: same,
        n_diff: diff,
        degree_of_correlation: c,
        standard_error: libm::sqrt(((1.0 - c * c) / n).max(0.0)),
    })
}

/// `C = P(same) − P(different)` from exact probabilities.
pub fn degree_of_correlation_analytic(joint: &RtoJoint) -> CorrelationSummary {
    CorrelationSummary {
        n_same: 0,
        n_diff: 0,
        degree_of_correlation: joint.correlation(),
        standard_error: 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{rto_joint, RtoConfig};
    use crate::optics::PhaseSetting;
    use alloc::vec;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn rec(i: u64, a: &'static str, b: &'static str) -> TrialRecord {
        TrialRecord::new(i, None, vec![a, b])
    }

    #[test]
    fn analytic_examples() {
        let c = |deg: f64| {
            let cfg = RtoConfig::new(
                PhaseSetting::zero(),
                PhaseSetting::from_degrees(deg).unwrap(),
            );
            degree_of_correlation_analytic(&rto_joint(&cfg).unwrap()).degree_of_correlation
        };
        assert!((c(0.0) - 1.0).abs() < 1e-12);
        assert!(c(90.0).abs() < 1e-12);
    }

    #[test]
    fn all_same_set() {
        let trials: Vec<_> = (0..10)
            .map(|i| {
                if i % 2 == 0 {
                    rec(i, "A1", "B1")
                } else {
                    rec(i, "A2", "B2")
                }
            })
            .collect();
        let s = degree_of_correlation(&trials).unwrap();
        assert_eq!(s.n_same, 10);
        assert_eq!(s.n_diff, 0);
        assert_eq!(s.degree_of_correlation, 1.0);
        assert_eq!(s.standard_error, 0.0);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            degree_of_correlation(&[]),
            Err(Error::InsufficientData(_))
        ));
        assert!(degree_of_correlation(&[TrialRecord::new(0, None, vec!["D1"])]).is_err());
        assert!(degree_of_correlation(&[rec(0, "A", "B1")]).is_err());
    }

    proptest! {
        #[test]
        fn symmetric_under_side_swap(bits in prop::collection::vec((any::<bool>(), any::<bool>()), 1..200)) {
            let label = |side: char, b: bool| -> &'static str {
                match (side, b) { ('A', true) => "A1", ('A', false) => "A2", (_, true) => "B1", (_, false) => "B2" }
            };
            let fwd: Vec<_> = bits.iter().enumerate().map(|(i, &(x, y))| rec(i as u64, label('A', x), label('B', y))).collect();
            let rev: Vec<_> = bits.iter().enumerate().map(|(i, &(x, y))| rec(i as u64, label('B', y), label('A', x))).collect();
            let a = degree_of_correlation(&fwd).unwrap();
            let b = degree_of_correlation(&rev).unwrap();
            prop_assert_eq!(a, b);
            prop_assert_eq!(a.n_same + a.n_diff, bits.len() as u64);
            prop_assert!((-1.0..=1.0).contains(&a.degree_of_correlation));
        }
    }
}
