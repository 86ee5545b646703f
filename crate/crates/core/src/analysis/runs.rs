use crate::{Error, Result};

/// Sliding-window count of `k` consecutive D1 outcomes, compared with the
/// fair i.i.d. expectation `2^-k` per window, plus a block chi-square test.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RunLengthReport {
    pub k: usize,
    pub length: usize,
    pub windows: u64,
    pub observed_count: u64,
    pub observed_fraction: f64,
    pub expected_fraction: f64,
    /// Standard deviation of the window fraction under the fair model,
    /// including the covariance of overlapping windows.
    pub fraction_std_dev: f64,
    pub z_score: f64,
    /// Non-overlapping `k`-blocks classified as all-D1 / all-D2 / mixed.
    pub blocks: u64,
    pub chi_square: f64,
    pub dof: u32,
    pub p_value: f64,
}

fn sq(x: f64) -> f64 {
    x * x
}

/// `outcomes[i]` is true for a D1 detection.
pub fn run_length_statistics(outcomes: &[bool], k: usize) -> Result<RunLengthReport> {
    if k < 1 {
        return Err(Error::invalid("run length k must be at least 1"));
    }
    if k > 62 {
        return Err(Error::invalid("run length k must be at most 62"));
    }
    if outcomes.len() < k {
        return Err(Error::InsufficientData(alloc::format!(
            "sequence of length {} is shorter than k = {k}",
            outcomes.len()
        )));
    }

    // Sliding count via the length of the current D1 streak.
    let mut streak = 0usize;
    let mut count = 0u64;
    for &o in outcomes {
        streak = if o { streak + 1 } else { 0 };
        if streak >= k {
            count += 1;
        }
    }

    let windows = (outcomes.len() - k + 1) as u64;
    let m = windows as f64;
    let p = libm::ldexp(1.0, -(k as i32));
    // Var(W) = M p(1−p) + 2 Σ_{j=1}^{k−1} (M − j)(2^{−(k+j)} − p²)
    let mut var = m * p * (1.0 - p);
    for j in 1..k.min(windows as usize) {
        let cov = libm::ldexp(1.0, -((k + j) as i32)) - p * p;
        var += 2.0 * (m - j as f64) * cov;
    }
    let observed_fraction = count as f64 / m;
    let fraction_std_dev = libm::sqrt(var) / m;
    let z_score = (observed_fraction - p) / fraction_std_dev;

    let blocks = (outcomes.len() / k) as u64;
    let (mut ones, mut zeros) = (0u64, 0u64);
    for block in outcomes.chunks_exact(k) {
        if block.iter().all(|&o| o) {
            ones += 1;
        } else if block.iter().all(|&o| !o) {
            zeros += 1;
        }
    }
    let nb = blocks as f64;
    let (chi_square, dof, p_value) = if k == 1 {
        let e = nb * 0.5;
        let chi = sq(ones as f64 - e) / e + sq(zeros as f64 - e) / e;
        (chi, 1, libm::erfc(libm::sqrt(chi / 2.0)))
    } else {
        let mixed = blocks - ones - zeros;
        let e_pure = nb * p;
        let e_mixed = nb * (1.0 - 2.0 * p);
        let chi = sq(ones as f64 - e_pure) / e_pure
            + sq(zeros as f64 - e_pure) / e_pure
            + sq(mixed as f64 - e_mixed) / e_mixed;
        // Chi-square survival with two degrees of freedom is exp(−x/2).
        (chi, 2, libm::exp(-chi / 2.0))
    };

    Ok(RunLengthReport {
        k,
        length: outcomes.len(),
        windows,
        observed_count: count,
        observed_fraction,
        expected_fraction: p,
        fraction_std_dev,
        z_score,
        blocks,
        chi_square,
        dof,
        p_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    /// Counts windows directly, one slice at a time.
    fn naive_count(outcomes: &[bool], k: usize) -> u64 {
        outcomes.windows(k).filter(|w| w.iter().all(|&o| o)).count() as u64
    }

    /// Exact mean and variance of the overlapping-window count by summing
    /// over every bit string of length n.
    fn enumerate_moments(n: usize, k: usize) -> (f64, f64) {
        let total = 1u64 << n;
        let (mut s1, mut s2) = (0.0, 0.0);
        for bits in 0..total {
            let seq: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
            let c = naive_count(&seq, k) as f64;
            s1 += c;
            s2 += c * c;
        }
        let mean = s1 / total as f64;
        (mean, s2 / total as f64 - mean * mean)
    }

    #[test]
    fn all_d1_sequence() {
        let r = run_length_statistics(&[true; 100], 10).unwrap();
        assert_eq!(r.windows, 91);
        assert_eq!(r.observed_count, 91);
    }

    #[test]
    fn k_one_is_d1_fraction() {
        let seq: Vec<bool> = (0..1000).map(|i| i % 2 == 0).collect();
        let r = run_length_statistics(&seq, 1).unwrap();
        assert_eq!(r.observed_fraction, 0.5);
        assert_eq!(r.dof, 1);
        assert!((r.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sliding_count_matches_naive() {
        let seq: Vec<bool> = (0..500u32)
            .map(|i| (i.wrapping_mul(2654435761) >> 7) & 3 != 0)
            .collect();
        for k in 1..6 {
            assert_eq!(
                run_length_statistics(&seq, k).unwrap().observed_count,
                naive_count(&seq, k)
            );
        }
    }

    #[test]
    fn variance_matches_enumeration() {
        for (n, k) in [(10, 2), (12, 3), (14, 4), (8, 1)] {
            let (mean, var) = enumerate_moments(n, k);
            let r = run_length_statistics(&vec![false; n], k).unwrap();
            let m = r.windows as f64;
            assert!((r.expected_fraction * m - mean).abs() < 1e-9);
            let model_var = (r.fraction_std_dev * m).powi(2);
            assert!(
                (model_var - var).abs() < 1e-9,
                "n={n} k={k}: {model_var} vs {var}"
            );
        }
    }

    #[test]
    fn errors() {
        assert!(run_length_statistics(&[true; 5], 0).is_err());
        assert!(matches!(
            run_length_statistics(&[true; 5], 6),
            Err(Error::InsufficientData(_))
        ));
    }
}
