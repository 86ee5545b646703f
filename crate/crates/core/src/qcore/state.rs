use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::{Error, Result, NORM_TOL, OPERATOR_TOL};

/// One tensor factor of a state: a name and its ordered basis labels.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Subsystem {
    name: String,
    labels: Vec<String>,
}

impl Subsystem {
    pub fn new<I, S>(name: impl Into<String>, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let name = name.into();
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::invalid("a subsystem needs at least one label"));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel {
                    subsystem: name,
                    label: l.clone(),
                });
            }
        }
        Ok(Self { name, labels })
    }

    /// Two-level subsystem. Panics if the labels coincide.
    pub fn two_level(name: &str, first: &str, second: &str) -> Self {
        Self::new(name.to_string(), [first, second]).expect("two distinct labels")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Index bookkeeping for a row-major tensor layout (first subsystem is the
/// most significant digit).
pub(crate) struct Layout {
    dims: Vec<usize>,
    strides: Vec<usize>,
}

impl Layout {
    pub(crate) fn of(subsystems: &[Subsystem]) -> Self {
        let dims: Vec<usize> = subsystems.iter().map(Subsystem::dim).collect();
        let mut strides = alloc::vec![1; dims.len()];
        for k in (0..dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * dims[k + 1];
        }
        Self { dims, strides }
    }

    pub(crate) fn total(&self) -> usize {
        self.dims.iter().product()
    }

    /// Full-index offsets enumerating every joint value of `which`, in the
    /// order given (first entry most significant).
    pub(crate) fn offsets(&self, which: &[usize]) -> Vec<usize> {
        let mut out = alloc::vec![0usize];
        for &k in which {
            let mut next = Vec::with_capacity(out.len() * self.dims[k]);
            for &base in &out {
                for d in 0..self.dims[k] {
                    next.push(base + d * self.strides[k]);
                }
            }
            out = next;
        }
        out
    }

    pub(crate) fn complement(&self, which: &[usize]) -> Vec<usize> {
        (0..self.dims.len())
            .filter(|k| !which.contains(k))
            .collect()
    }

    pub(crate) fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = alloc::vec![0; self.dims.len()];
        for k in 0..self.dims.len() {
            out[k] = index / self.strides[k];
            index %= self.strides[k];
        }
        out
    }
}

pub(crate) fn check_targets(targets: &[usize], count: usize) -> Result<()> {
    for (i, &t) in targets.iter().enumerate() {
        if t >= count {
            return Err(Error::InvalidSubsystem { index: t, count });
        }
        if targets[..i].contains(&t) {
            return Err(Error::invalid("subsystem indices must be distinct"));
        }
    }
    Ok(())
}

fn check_subsystems(subsystems: &[Subsystem]) -> Result<()> {
    if subsystems.is_empty() {
        return Err(Error::invalid("a state needs at least one subsystem"));
    }
    for (i, s) in subsystems.iter().enumerate() {
        if subsystems[..i].iter().any(|o| o.name == s.name) {
            return Err(Error::NameCollision(s.name.clone()));
        }
    }
    Ok(())
}

/// A normalized vector over the product basis of its subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    subsystems: Vec<Subsystem>,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Builds a state, rejecting amplitudes whose norm is not 1 within 1e-12.
    pub fn new(subsystems: Vec<Subsystem>, amplitudes: Vec<Complex64>) -> Result<Self> {
        let state = Self::unchecked(subsystems, amplitudes)?;
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(state)
    }

    /// Builds a state after rescaling `amplitudes` to unit norm.
    pub fn normalized(subsystems: Vec<Subsystem>, amplitudes: Vec<Complex64>) -> Result<Self> {
        let mut state = Self::unchecked(subsystems, amplitudes)?;
        let norm = state.norm();
        if norm == 0.0 {
            return Err(Error::NotNormalized { norm });
        }
        state.amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(state)
    }

    /// The product basis state with the given label on each subsystem.
    pub fn basis(subsystems: Vec<Subsystem>, labels: &[&str]) -> Result<Self> {
        let index = joint_index(&subsystems, labels)?;
        let mut amplitudes = alloc::vec![Complex64::new(0.0, 0.0); Layout::of(&subsystems).total()];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self::new(subsystems, amplitudes)
    }

    fn unchecked(subsystems: Vec<Subsystem>, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_subsystems(&subsystems)?;
        let expected = Layout::of(&subsystems).total();
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: amplitudes.len(),
            });
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::invalid("amplitudes must be finite"));
        }
        Ok(Self {
            subsystems,
            amplitudes,
        })
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.amplitudes.iter().map(Complex64::norm_sqr).sum())
    }

    pub fn subsystem_index(&self, name: &str) -> Option<usize> {
        self.subsystems.iter().position(|s| s.name == name)
    }

    /// Amplitude of the product basis state named by `labels`.
    pub fn amplitude(&self, labels: &[&str]) -> Result<Complex64> {
        Ok(self.amplitudes[joint_index(&self.subsystems, labels)?])
    }

    /// `self ⊗ other`: amplitude at (i, j) is `a_i · b_j`.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let mut subsystems = self.subsystems.clone();
        subsystems.extend(other.subsystems.iter().cloned());
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|&a| other.amplitudes.iter().map(move |&b| a * b))
            .collect();
        PureState::new(subsystems, amplitudes)
    }

    /// Applies `u` to the subsystems listed in `targets` (first target is the
    /// most significant digit of `u`'s index) and the identity elsewhere.
    pub fn apply_unitary(&self, u: &CMatrix, targets: &[usize]) -> Result<PureState> {
        check_targets(targets, self.subsystems.len())?;
        let layout = Layout::of(&self.subsystems);
        let target_dim: usize = targets.iter().map(|&t| self.subsystems[t].dim()).product();
        if !u.is_square() || u.rows() != target_dim {
            return Err(Error::DimensionMismatch {
                expected: target_dim,
                found: u.rows(),
            });
        }
        let max_deviation = u.unitarity_deviation();
        if max_deviation > OPERATOR_TOL {
            return Err(Error::NotUnitary { max_deviation });
        }

        let inner = layout.offsets(targets);
        let outer = layout.offsets(&layout.complement(targets));
        let mut amplitudes = self.amplitudes.clone();
        let mut block = alloc::vec![Complex64::new(0.0, 0.0); target_dim];
        for &base in &outer {
            for (slot, &off) in block.iter_mut().zip(&inner) {
                *slot = self.amplitudes[base + off];
            }
            for (i, &off) in inner.iter().enumerate() {
                amplitudes[base + off] = (0..target_dim).map(|j| u[(i, j)] * block[j]).sum();
            }
        }
        Ok(PureState {
            subsystems: self.subsystems.clone(),
            amplitudes,
        })
    }

    /// `p_i = |amplitude_i|²` over the product basis.
    pub fn born_probabilities(&self) -> BornDistribution {
        BornDistribution {
            subsystems: self.subsystems.clone(),
            probabilities: self.amplitudes.iter().map(Complex64::norm_sqr).collect(),
        }
    }

    /// Projects `subsystem` onto `label`. Returns the outcome probability and,
    /// when it is nonzero, the renormalized post-measurement state.
    pub fn condition_on(&self, subsystem: usize, label: &str) -> Result<(f64, Option<PureState>)> {
        check_targets(&[subsystem], self.subsystems.len())?;
        let level = self.subsystems[subsystem]
            .label_index(label)
            .ok_or_else(|| Error::invalid(alloc::format!("unknown label `{label}`")))?;
        let layout = Layout::of(&self.subsystems);
        let mut projected = self.amplitudes.clone();
        for (i, a) in projected.iter_mut().enumerate() {
            if layout.digits(i)[subsystem] != level {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        let probability: f64 = projected.iter().map(Complex64::norm_sqr).sum();
        if probability == 0.0 {
            return Ok((0.0, None));
        }
        let state = PureState::normalized(self.subsystems.clone(), projected)?;
        Ok((probability, Some(state)))
    }
}

pub(crate) fn joint_index(subsystems: &[Subsystem], labels: &[&str]) -> Result<usize> {
    if labels.len() != subsystems.len() {
        return Err(Error::DimensionMismatch {
            expected: subsystems.len(),
            found: labels.len(),
        });
    }
    let mut index = 0;
    for (s, l) in subsystems.iter().zip(labels) {
        let digit = s.label_index(l).ok_or_else(|| {
            Error::invalid(alloc::format!("unknown label `{l}` for `{}`", s.name))
        })?;
        index = index * s.dim() + digit;
    }
    Ok(index)
}

/// Outcome probabilities over a product basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BornDistribution {
    subsystems: Vec<Subsystem>,
    probabilities: Vec<f64>,
}

impl BornDistribution {
    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    pub fn probability(&self, labels: &[&str]) -> Result<f64> {
        Ok(self.probabilities[joint_index(&self.subsystems, labels)?])
    }

    /// Joint labels of basis index `i`.
    pub fn labels_of(&self, i: usize) -> Vec<&str> {
        let layout = Layout::of(&self.subsystems);
        layout
            .digits(i)
            .into_iter()
            .zip(&self.subsystems)
            .map(|(d, s)| s.labels[d].as_str())
            .collect()
    }

    /// `(joint label, probability)` pairs in basis order.
    pub fn iter(&self) -> impl Iterator<Item = (String, f64)> + '_ {
        (0..self.probabilities.len()).map(move |i| {
            let labels = self.labels_of(i);
            (labels.join(","), self.probabilities[i])
        })
    }

    /// Marginal distribution of one subsystem.
    pub fn marginal(&self, subsystem: usize) -> Result<Vec<f64>> {
        check_targets(&[subsystem], self.subsystems.len())?;
        let layout = Layout::of(&self.subsystems);
        let mut out = alloc::vec![0.0; self.subsystems[subsystem].dim()];
        for (i, p) in self.probabilities.iter().enumerate() {
            out[layout.digits(i)[subsystem]] += p;
        }
        Ok(out)
    }

    /// Inverse-CDF lookup for `u ∈ [0, 1)`.
    pub fn sample_index(&self, u: f64) -> usize {
        let mut acc = 0.0;
        let last = self
            .probabilities
            .iter()
            .rposition(|&p| p > 0.0)
            .unwrap_or(0);
        for (i, &p) in self.probabilities.iter().enumerate() {
            acc += p;
            if u < acc {
                return i;
            }
        }
        last
    }
}

impl core::fmt::Display for Subsystem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}{{{}}}", self.name, self.labels.join(","))
    }
}
