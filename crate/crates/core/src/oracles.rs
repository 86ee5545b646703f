//! Independent reference computations.
//!
//! Everything here uses plain `(re, im)` tuples and nested `Vec`s rather than
//! the crate's matrix and state types, so agreement with the main engine is
//! meaningful.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::experiments::{SlitGeometry, Slits};
use crate::{Error, Result};

/// `(re, im)`
pub type Cx = (f64, f64);

/// Row-major list of rows.
pub type CxMatrix = Vec<Vec<Cx>>;

fn add(a: Cx, b: Cx) -> Cx {
    (a.0 + b.0, a.1 + b.1)
}

fn mul(a: Cx, b: Cx) -> Cx {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn norm_sqr(a: Cx) -> f64 {
    a.0 * a.0 + a.1 * a.1
}

fn expi(theta: f64) -> Cx {
    (libm::cos(theta), libm::sin(theta))
}

/// Applies `matrices` to `input` in order.
pub fn matrix_chain_oracle(matrices: &[CxMatrix], input: &[Cx]) -> Result<Vec<Cx>> {
    let mut v = input.to_vec();
    for m in matrices {
        if m.len() != v.len() {
            return Err(Error::DimensionMismatch {
                expected: v.len(),
                found: m.len(),
            });
        }
        let mut out = vec![(0.0, 0.0); m.len()];
        for (i, row) in m.iter().enumerate() {
            if row.len() != v.len() {
                return Err(Error::DimensionMismatch {
                    expected: v.len(),
                    found: row.len(),
                });
            }
            for (a, x) in row.iter().zip(&v) {
                out[i] = add(out[i], mul(*a, *x));
            }
        }
        v = out;
    }
    Ok(v)
}

fn bs() -> CxMatrix {
    let r = (FRAC_1_SQRT_2, 0.0);
    let t = (0.0, FRAC_1_SQRT_2);
    vec![vec![r, t], vec![t, r]]
}

fn phases(p0: f64, p1: f64) -> CxMatrix {
    vec![vec![expi(p0), (0.0, 0.0)], vec![(0.0, 0.0), expi(p1)]]
}

fn identity2() -> CxMatrix {
    vec![vec![(1.0, 0.0), (0.0, 0.0)], vec![(0.0, 0.0), (1.0, 0.0)]]
}

fn kron(a: &CxMatrix, b: &CxMatrix) -> CxMatrix {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![(0.0, 0.0); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = mul(a[i][j], b[k][l]);
                }
            }
        }
    }
    out
}

/// `[P(D1), P(D2)]` of the interferometer with path phases in radians.
/// D1 is output mode 1.
pub fn mach_zehnder_oracle(phi1: f64, phi2: f64, bs2_present: bool) -> [f64; 2] {
    let mut chain = vec![bs(), phases(phi1, phi2)];
    if bs2_present {
        chain.push(bs());
    }
    let out = matrix_chain_oracle(&chain, &[(1.0, 0.0), (0.0, 0.0)]).expect("2x2 chain");
    [norm_sqr(out[1]), norm_sqr(out[0])]
}

/// Joint `p[i][j] = P(A(i+1), B(j+1))` for the entangled pair, phases in
/// radians. φA acts on A's dashed path, φB on B's solid path.
pub fn rto_oracle(phi_a: f64, phi_b: f64) -> [[f64; 2]; 2] {
    let chain = vec![
        kron(&phases(0.0, phi_a), &identity2()),
        kron(&identity2(), &phases(phi_b, 0.0)),
        kron(&bs(), &identity2()),
        kron(&identity2(), &bs()),
    ];
    let h = (FRAC_1_SQRT_2, 0.0);
    let z = (0.0, 0.0);
    let out = matrix_chain_oracle(&chain, &[h, z, z, h]).expect("4x4 chain");
    // A1 = A port 1, A2 = A port 0; B1 = B port 0, B2 = B port 1.
    let a_port = [1, 0];
    let b_port = [0, 1];
    let mut p = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            p[i][j] = norm_sqr(out[a_port[i] * 2 + b_port[j]]);
        }
    }
    p
}

/// Minimum sample points across each slit.
pub const MIN_HUYGENS_SAMPLES: usize = 200;

/// Screen intensity by summing far-field secondary wavelets from
/// `samples_per_slit` midpoints across each aperture, normalized to unit
/// trapezoid integral over `grid`.
pub fn huygens_integral_oracle(
    geometry: &SlitGeometry,
    slits: Slits,
    grid: &[f64],
    samples_per_slit: usize,
) -> Result<Vec<f64>> {
    geometry.validate()?;
    if samples_per_slit < MIN_HUYGENS_SAMPLES {
        return Err(Error::invalid(alloc::format!(
            "at least {MIN_HUYGENS_SAMPLES} samples per slit required"
        )));
    }
    if grid.len() < 2 {
        return Err(Error::invalid("screen grid needs at least two points"));
    }
    let centers: Vec<f64> = match slits {
        Slits::One => vec![0.0],
        Slits::Two => vec![
            -geometry.slit_separation / 2.0,
            geometry.slit_separation / 2.0,
        ],
    };
    let a = geometry.slit_width;
    let h = a / samples_per_slit as f64;
    let k = 2.0 * PI / (geometry.wavelength * geometry.screen_distance);
    let raw: Vec<f64> = grid
        .iter()
        .map(|&x| {
            let mut amp = (0.0, 0.0);
            for c in &centers {
                for s in 0..samples_per_slit {
                    let y = c - a / 2.0 + (s as f64 + 0.5) * h;
                    amp = add(amp, expi(-k * y * x));
                }
            }
            norm_sqr(amp)
        })
        .collect();
    let mut integral = 0.0;
    for i in 1..grid.len() {
        integral += 0.5 * (raw[i] + raw[i - 1]) * (grid[i] - grid[i - 1]);
    }
    if !(integral > 0.0) {
        return Err(Error::ZeroIntensity);
    }
    Ok(raw.into_iter().map(|v| v / integral).collect())
}

/// Enumerates deterministic local strategies as 4-bit masks and returns the
/// largest `|S|` and the number of strategies visited.
pub fn lhv_enumeration_oracle() -> (f64, usize) {
    let sign = |mask: u32, bit: u32| -> f64 {
        if mask >> bit & 1 == 1 {
            -1.0
        } else {
            1.0
        }
    };
    let mut best: f64 = 0.0;
    let mut count = 0;
    for mask in 0u32..16 {
        let (a, a2, b, b2) = (sign(mask, 0), sign(mask, 1), sign(mask, 2), sign(mask, 3));
        let s = a * (b - b2) + a2 * (b + b2);
        best = best.max(s.abs());
        count += 1;
    }
    (best, count)
}

/// Side-by-side comparison of an oracle against the main engine.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OracleReport {
    pub case: String,
    pub oracle_values: Vec<f64>,
    pub main_values: Vec<f64>,
    pub max_abs_diff: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl OracleReport {
    pub fn compare(
        case: impl Into<String>,
        oracle_values: Vec<f64>,
        main_values: Vec<f64>,
        tolerance: f64,
    ) -> Self {
        let max_abs_diff = if oracle_values.len() == main_values.len() {
            oracle_values
                .iter()
                .zip(&main_values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        Self {
            case: case.into(),
            passed: max_abs_diff <= tolerance,
            oracle_values,
            main_values,
            max_abs_diff,
            tolerance,
        }
    }
}
