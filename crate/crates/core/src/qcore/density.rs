use alloc::vec::Vec;

use num_complex::Complex64;

use super::matrix::CMatrix;
use super::state::{check_targets, Layout, PureState, Subsystem};
use crate::{Error, Result, OPERATOR_TOL};

/// Hermitian, positive semidefinite, unit-trace operator on a product space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    subsystems: Vec<Subsystem>,
    matrix: CMatrix,
}

impl DensityOperator {
    /// Validates hermiticity, unit trace and eigenvalues ≥ −1e-10.
    pub fn new(subsystems: Vec<Subsystem>, matrix: CMatrix) -> Result<Self> {
        let dim = Layout::of(&subsystems).total();
        if !matrix.is_square() || matrix.rows() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: matrix.rows(),
            });
        }
        let herm = matrix.hermiticity_deviation();
        if herm > OPERATOR_TOL {
            return Err(Error::InvalidDensity(alloc::format!(
                "max |rho - rho^dag| = {herm:e}"
            )));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > OPERATOR_TOL || trace.im.abs() > OPERATOR_TOL {
            return Err(Error::InvalidDensity(alloc::format!("trace = {trace}")));
        }
        let min_eigen = matrix.hermitian_eigenvalues()[0];
        if min_eigen < -OPERATOR_TOL {
            return Err(Error::InvalidDensity(alloc::format!(
                "smallest eigenvalue {min_eigen:e}"
            )));
        }
        Ok(Self { subsystems, matrix })
    }

    /// `|ψ><ψ|`
    pub fn from_pure(state: &PureState) -> Self {
        Self {
            subsystems: state.subsystems().to_vec(),
            matrix: CMatrix::outer(state.amplitudes()),
        }
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.matrix.hermitian_eigenvalues()
    }

    pub fn tensor(&self, other: &DensityOperator) -> Result<DensityOperator> {
        let mut subsystems = self.subsystems.clone();
        subsystems.extend(other.subsystems.iter().cloned());
        DensityOperator::new(subsystems, self.matrix.kron(&other.matrix))
    }

    /// Traces out every subsystem not listed in `keep`. Kept subsystems stay
    /// in their original relative order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityOperator> {
        if keep.is_empty() {
            return Err(Error::EmptyKeep);
        }
        check_targets(keep, self.subsystems.len())?;
        let mut keep = keep.to_vec();
        keep.sort_unstable();

        let layout = Layout::of(&self.subsystems);
        let kept = layout.offsets(&keep);
        let traced = layout.offsets(&layout.complement(&keep));
        let n = kept.len();
        let mut reduced = CMatrix::zeros(n, n);
        for (a, &ka) in kept.iter().enumerate() {
            for (b, &kb) in kept.iter().enumerate() {
                reduced[(a, b)] = traced.iter().map(|&e| self.matrix[(ka + e, kb + e)]).sum();
            }
        }
        let subsystems = keep.iter().map(|&k| self.subsystems[k].clone()).collect();
        DensityOperator::new(subsystems, reduced)
    }

    /// `tr(ρ²)`
    pub fn purity(&self) -> f64 {
        // tr(ρ²) = Σ_ij ρ_ij ρ_ji = Σ_ij |ρ_ij|² for Hermitian ρ.
        self.matrix.as_slice().iter().map(Complex64::norm_sqr).sum()
    }

    /// Largest modulus among off-diagonal entries.
    pub fn max_off_diagonal(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| self.matrix[(i, j)].norm())
            .fold(0.0, f64::max)
    }

    /// Real diagonal, i.e. the outcome probabilities in the stored basis.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    /// Maximally mixed operator `I/d` on the given subsystems.
    pub fn maximally_mixed(subsystems: Vec<Subsystem>) -> Result<Self> {
        let d = Layout::of(&subsystems).total();
        let entries = alloc::vec![Complex64::new(1.0 / d as f64, 0.0); d];
        Self::new(subsystems, CMatrix::diagonal(&entries))
    }
}

impl PureState {
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityOperator> {
        DensityOperator::from_pure(self).partial_trace(keep)
    }
}
