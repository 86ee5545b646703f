//! Far-field (Fraunhofer) screen intensity behind one or two slits, and
//! impact positions drawn from it.
//!
//! Two slits: `I(x) ∝ cos²(π d x/(λL)) · sinc²(π a x/(λL))`; one slit keeps
//! only the sinc² envelope. Lengths share one arbitrary unit.

use alloc::vec::Vec;

use super::sampling::StreamKey;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "snake_case")
)]
pub enum Slits {
    One,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SlitGeometry {
    pub slit_separation: f64,
    pub slit_width: f64,
    pub wavelength: f64,
    pub screen_distance: f64,
}

/// Minimum `L/d` accepted as far field.
pub const MIN_DISTANCE_RATIO: f64 = 100.0;

impl SlitGeometry {
    pub fn new(
        slit_separation: f64,
        slit_width: f64,
        wavelength: f64,
        screen_distance: f64,
    ) -> Result<Self> {
        let g = Self {
            slit_separation,
            slit_width,
            wavelength,
            screen_distance,
        };
        g.validate()?;
        Ok(g)
    }

    /// `a = 0.8λ`, `d = 4λ`, `L = 10⁴λ`.
    pub fn for_wavelength(wavelength: f64) -> Result<Self> {
        Self::new(
            4.0 * wavelength,
            0.8 * wavelength,
            wavelength,
            1e4 * wavelength,
        )
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.slit_separation,
            self.slit_width,
            self.wavelength,
            self.screen_distance,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("geometry values must be finite"));
        }
        if !(self.slit_width > 0.0) {
            return Err(Error::invalid("slit width must be positive"));
        }
        if !(self.slit_separation > self.slit_width) {
            return Err(Error::invalid("slit separation must exceed slit width"));
        }
        if !(self.wavelength > 0.0) {
            return Err(Error::invalid("wavelength must be positive"));
        }
        if !(self.screen_distance >= MIN_DISTANCE_RATIO * self.slit_separation) {
            return Err(Error::invalid(alloc::format!(
                "screen distance must be at least {MIN_DISTANCE_RATIO} slit separations"
            )));
        }
        Ok(())
    }

    /// Screen distance between adjacent bright fringes, `λL/d`.
    pub fn fringe_period(&self) -> f64 {
        self.wavelength * self.screen_distance / self.slit_separation
    }

    /// Position of the first single-slit envelope zero, `λL/a`.
    pub fn envelope_zero(&self) -> f64 {
        self.wavelength * self.screen_distance / self.slit_width
    }
}

impl Default for SlitGeometry {
    fn default() -> Self {
        Self::for_wavelength(500e-9).expect("default geometry is valid")
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        libm::sin(x) / x
    }
}

/// Unnormalized intensity with `I(0) = 1`.
pub fn intensity_at(geometry: &SlitGeometry, slits: Slits, x: f64) -> f64 {
    let scale = core::f64::consts::PI * x / (geometry.wavelength * geometry.screen_distance);
    let envelope = sinc(scale * geometry.slit_width);
    let envelope = envelope * envelope;
    match slits {
        Slits::One => envelope,
        Slits::Two => {
            let fringe = libm::cos(scale * geometry.slit_separation);
            fringe * fringe * envelope
        }
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::invalid("screen grid needs at least two points"));
    }
    if grid.iter().any(|x| !x.is_finite()) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(
            "screen grid must be finite and strictly increasing",
        ));
    }
    Ok(())
}

/// Trapezoid weights of each grid point.
pub fn trapezoid_weights(grid: &[f64]) -> Vec<f64> {
    let n = grid.len();
    (0..n)
        .map(|i| {
            let left = if i > 0 { grid[i] - grid[i - 1] } else { 0.0 };
            let right = if i + 1 < n {
                grid[i + 1] - grid[i]
            } else {
                0.0
            };
            0.5 * (left + right)
        })
        .collect()
}

/// Intensity on `grid`, normalized to unit trapezoid integral.
pub fn double_slit_intensity(
    grid: &[f64],
    slits: Slits,
    geometry: &SlitGeometry,
) -> Result<Vec<f64>> {
    geometry.validate()?;
    check_grid(grid)?;
    let raw: Vec<f64> = grid
        .iter()
        .map(|&x| intensity_at(geometry, slits, x))
        .collect();
    let integral: f64 = raw
        .iter()
        .zip(trapezoid_weights(grid))
        .map(|(i, w)| i * w)
        .sum();
    if !(integral > 0.0) {
        return Err(Error::ZeroIntensity);
    }
    Ok(raw.into_iter().map(|i| i / integral).collect())
}

/// `n` evenly spaced points on `[-half_width, half_width]`.
pub fn screen_grid(half_width: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 || !(half_width > 0.0) || !half_width.is_finite() {
        return Err(Error::invalid("grid needs n ≥ 2 and a positive half width"));
    }
    Ok((0..n)
        .map(|i| -half_width + 2.0 * half_width * i as f64 / (n - 1) as f64)
        .collect())
}

/// Number of fringe periods either side of the axis in the default grid.
pub const DEFAULT_FRINGES: f64 = 3.0;

/// Grid spanning ±3 fringe periods.
pub fn default_screen_grid(geometry: &SlitGeometry, n: usize) -> Result<Vec<f64>> {
    screen_grid(DEFAULT_FRINGES * geometry.fringe_period(), n)
}

/// `(I_max − I_min)/(I_max + I_min)` between the central bright fringe and the
/// first dark fringe of the two-slit pattern.
pub fn fringe_visibility(geometry: &SlitGeometry) -> f64 {
    let max = intensity_at(geometry, Slits::Two, 0.0);
    let min = intensity_at(geometry, Slits::Two, 0.5 * geometry.fringe_period());
    (max - min) / (max + min)
}

/// Draws `n` impact positions from `intensity` sampled on `grid`.
///
/// Each grid point owns the screen cell between the midpoints to its
/// neighbours; a cell is chosen with probability proportional to intensity ×
/// cell width, and the impact lands uniformly inside it.
pub fn sample_impacts(grid: &[f64], intensity: &[f64], n: u64, seed: u64) -> Result<Vec<f64>> {
    check_grid(grid)?;
    if grid.len() != intensity.len() {
        return Err(Error::DimensionMismatch {
            expected: grid.len(),
            found: intensity.len(),
        });
    }
    if n == 0 {
        return Err(Error::invalid("impact count must be at least 1"));
    }
    if intensity.iter().any(|i| !i.is_finite() || *i < 0.0) {
        return Err(Error::invalid("intensity must be finite and non-negative"));
    }
    let widths = trapezoid_weights(grid);
    let mut cdf = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    for (i, w) in intensity.iter().zip(&widths) {
        acc += i * w;
        cdf.push(acc);
    }
    if !(acc > 0.0) {
        return Err(Error::ZeroIntensity);
    }
    let last = grid.len() - 1;
    let key = StreamKey::new(seed, 0x5C2EE7);
    Ok((0..n)
        .map(|k| {
            let mut rng = key.trial(k);
            let target = rng.uniform() * acc;
            let cell = cdf.partition_point(|&c| c <= target).min(last);
            let lo = if cell > 0 {
                0.5 * (grid[cell - 1] + grid[cell])
            } else {
                grid[0]
            };
            let hi = if cell < last {
                0.5 * (grid[cell] + grid[cell + 1])
            } else {
                grid[last]
            };
            lo + rng.uniform() * (hi - lo)
        })
        .collect())
}

/// Counts impacts per grid cell (nearest grid point).
pub fn bin_impacts(grid: &[f64], impacts: &[f64]) -> Vec<u64> {
    let mut counts = alloc::vec![0u64; grid.len()];
    if grid.is_empty() {
        return counts;
    }
    for &x in impacts {
        let i = grid.partition_point(|&g| g < x);
        let nearest = if i == 0 {
            0
        } else if i == grid.len() || x - grid[i - 1] <= grid[i] - x {
            i - 1
        } else {
            i
        };
        counts[nearest] += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometry() -> SlitGeometry {
        SlitGeometry::for_wavelength(1.0).unwrap()
    }

    #[test]
    fn axis_is_global_maximum() {
        let g = geometry();
        let grid = default_screen_grid(&g, 601).unwrap();
        for slits in [Slits::One, Slits::Two] {
            let i = double_slit_intensity(&grid, slits, &g).unwrap();
            let (argmax, _) =
                i.iter()
                    .enumerate()
                    .fold((0, f64::MIN), |m, (k, &v)| if v > m.1 { (k, v) } else { m });
            assert_eq!(grid[argmax], 0.0);
        }
    }

    #[test]
    fn first_dark_fringe_position() {
        let g = geometry();
        let x0 = g.wavelength * g.screen_distance / (2.0 * g.slit_separation);
        assert!(intensity_at(&g, Slits::Two, x0) < 1e-30);
        assert!(intensity_at(&g, Slits::Two, 0.9 * x0) > 1e-3);
    }

    #[test]
    fn narrow_single_slit_has_no_interior_zero() {
        let g = geometry();
        assert!(g.envelope_zero() > DEFAULT_FRINGES * g.fringe_period());
        let grid = default_screen_grid(&g, 601).unwrap();
        let i = double_slit_intensity(&grid, Slits::One, &g).unwrap();
        let peak = i.iter().cloned().fold(0.0, f64::max);
        assert!(i.iter().all(|&v| v > 0.1 * peak));
    }

    #[test]
    fn normalized_to_unit_integral() {
        let g = geometry();
        let grid = default_screen_grid(&g, 301).unwrap();
        let i = double_slit_intensity(&grid, Slits::Two, &g).unwrap();
        let integral: f64 = i
            .iter()
            .zip(trapezoid_weights(&grid))
            .map(|(a, b)| a * b)
            .sum();
        assert!((integral - 1.0).abs() < 1e-12);
    }

    #[test]
    fn visibility_is_one() {
        assert!((fringe_visibility(&geometry()) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn geometry_validation() {
        assert!(SlitGeometry::new(1.0, 2.0, 1.0, 1e4).is_err());
        assert!(SlitGeometry::new(4.0, 0.0, 1.0, 1e4).is_err());
        assert!(SlitGeometry::new(4.0, 1.0, -1.0, 1e4).is_err());
        assert!(SlitGeometry::new(4.0, 1.0, 1.0, 10.0).is_err());
        assert!(SlitGeometry::new(4.0, 1.0, f64::NAN, 1e4).is_err());
    }

    #[test]
    fn impacts_are_deterministic_and_in_range() {
        let g = geometry();
        let grid = default_screen_grid(&g, 201).unwrap();
        let i = double_slit_intensity(&grid, Slits::Two, &g).unwrap();
        let a = sample_impacts(&grid, &i, 10, 99).unwrap();
        let b = sample_impacts(&grid, &i, 10, 99).unwrap();
        assert_eq!(a.len(), 10);
        assert_eq!(a, b);
        assert!(a.iter().all(|x| (grid[0]..=grid[200]).contains(x)));
    }

    #[test]
    fn delta_intensity_lands_in_one_cell() {
        let grid = screen_grid(1.0, 11).unwrap();
        let mut i = alloc::vec![0.0; 11];
        i[7] = 3.0;
        let hits = sample_impacts(&grid, &i, 500, 1).unwrap();
        let counts = bin_impacts(&grid, &hits);
        assert_eq!(counts[7], 500);
    }

    #[test]
    fn impact_errors() {
        let grid = screen_grid(1.0, 5).unwrap();
        assert_eq!(
            sample_impacts(&grid, &[0.0; 5], 10, 0),
            Err(Error::ZeroIntensity)
        );
        assert!(sample_impacts(&grid, &[1.0; 5], 0, 0).is_err());
        assert!(sample_impacts(&grid, &[1.0, -1.0, 1.0, 1.0, 1.0], 3, 0).is_err());
        assert!(sample_impacts(&grid, &[1.0; 4], 3, 0).is_err());
    }
}
