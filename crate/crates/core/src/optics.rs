//! Beam splitters, phase shifters, mirrors, and circuits composed of them.
//!
//! Beam-splitter convention: transmission keeps the mode index and carries
//! amplitude 1/√2, reflection swaps the mode index and carries i/√2, i.e.
//! `(1/√2)·[[1, i], [i, 1]]`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;

use crate::qcore::{CMatrix, PureState, Subsystem};
use crate::{Error, Result, OPERATOR_TOL};

/// An angle reduced to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct PhaseSetting(f64);

impl PhaseSetting {
    pub fn from_radians(angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(Error::invalid("phase must be finite"));
        }
        let mut a = libm::fmod(angle, TAU);
        if a < 0.0 {
            a += TAU;
        }
        // fmod of a tiny negative number can round up to exactly 2π.
        if a >= TAU {
            a = 0.0;
        }
        Ok(Self(a))
    }

    pub fn from_degrees(deg: f64) -> Result<Self> {
        Self::from_radians(deg.to_radians())
    }

    pub const fn zero() -> Self {
        Self(0.0)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    /// `e^{iφ}`
    pub fn phasor(self) -> Complex64 {
        Complex64::new(libm::cos(self.0), libm::sin(self.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ElementKind {
    BeamSplitter,
    /// Multiplies the amplitude of basis level `level` by `e^{iφ}`.
    PhaseShifter {
        level: usize,
        phase: PhaseSetting,
    },
    /// Redirects geometry only; acts as the identity.
    Mirror,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OpticalElement {
    name: String,
    kind: ElementKind,
    matrix: CMatrix,
    targets: Vec<usize>,
}

impl OpticalElement {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn apply(&self, state: &PureState) -> Result<PureState> {
        state.apply_unitary(&self.matrix, &self.targets)
    }
}

/// Matrix `(1/√2)·[[1, i], [i, 1]]`.
pub fn beam_splitter_matrix() -> CMatrix {
    let t = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let r = Complex64::new(0.0, FRAC_1_SQRT_2);
    CMatrix::from_rows([[t, r], [r, t]])
}

/// Symmetric 50/50 beam splitter acting on the two path modes of `target`.
pub fn beam_splitter_5050(target: usize) -> OpticalElement {
    OpticalElement {
        name: "BS".into(),
        kind: ElementKind::BeamSplitter,
        matrix: beam_splitter_matrix(),
        targets: alloc::vec![target],
    }
}

/// Phase shifter lengthening path `level` (0 or 1) of two-mode subsystem
/// `target` by `phi`.
pub fn phase_shifter(target: usize, level: usize, phi: PhaseSetting) -> Result<OpticalElement> {
    if level > 1 {
        return Err(Error::invalid(alloc::format!(
            "phase shifter level {level} is not a path mode of a two-mode subsystem"
        )));
    }
    let mut diag = [Complex64::new(1.0, 0.0); 2];
    diag[level] = phi.phasor();
    Ok(OpticalElement {
        name: "phi".into(),
        kind: ElementKind::PhaseShifter { level, phase: phi },
        matrix: CMatrix::diagonal(&diag),
        targets: alloc::vec![target],
    })
}

pub fn mirror(target: usize) -> OpticalElement {
    OpticalElement {
        name: "M".into(),
        kind: ElementKind::Mirror,
        matrix: CMatrix::identity(2),
        targets: alloc::vec![target],
    }
}

/// An ordered list of elements over a fixed subsystem layout.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    layout: Vec<Subsystem>,
    elements: Vec<OpticalElement>,
}

impl Circuit {
    pub fn new(layout: Vec<Subsystem>) -> Self {
        Self {
            layout,
            elements: Vec::new(),
        }
    }

    /// Appends an element after checking its targets against the layout.
    pub fn push(&mut self, element: OpticalElement) -> Result<&mut Self> {
        check_element(&self.layout, &element)?;
        self.elements.push(element);
        Ok(self)
    }

    pub fn with(mut self, element: OpticalElement) -> Result<Self> {
        self.push(element)?;
        Ok(self)
    }

    pub fn layout(&self) -> &[Subsystem] {
        &self.layout
    }

    pub fn elements(&self) -> &[OpticalElement] {
        &self.elements
    }

    /// Applies every element in order to `input`.
    pub fn run(&self, input: &PureState) -> Result<PureState> {
        run_circuit(self, input)
    }
}

fn check_element(layout: &[Subsystem], element: &OpticalElement) -> Result<()> {
    let layout_err = |reason: String| Error::Layout {
        element: element.name.clone(),
        reason,
    };
    let mut dim = 1;
    for (i, &t) in element.targets.iter().enumerate() {
        let sub = layout.get(t).ok_or_else(|| {
            layout_err(alloc::format!(
                "target {t} outside {} subsystems",
                layout.len()
            ))
        })?;
        if element.targets[..i].contains(&t) {
            return Err(layout_err(alloc::format!("target {t} repeated")));
        }
        dim *= sub.dim();
    }
    if element.matrix.rows() != dim {
        return Err(layout_err(alloc::format!(
            "matrix dimension {} does not match target dimension {dim}",
            element.matrix.rows()
        )));
    }
    let dev = element.matrix.unitarity_deviation();
    if dev > OPERATOR_TOL {
        return Err(layout_err(alloc::format!(
            "not unitary (deviation {dev:e})"
        )));
    }
    Ok(())
}

/// Sequential application of each element of `circuit` to `input`.
pub fn run_circuit(circuit: &Circuit, input: &PureState) -> Result<PureState> {
    if input.subsystems() != circuit.layout.as_slice() {
        let element = circuit
            .elements
            .first()
            .map_or_else(|| "<input>".to_string(), |e| e.name.clone());
        return Err(Error::Layout {
            element,
            reason: "input state layout differs from circuit layout".into(),
        });
    }
    let mut state = input.clone();
    for element in &circuit.elements {
        check_element(input.subsystems(), element)?;
        state = element.apply(&state)?;
    }
    Ok(state)
}

/// JSON document form of a circuit: element list with parameters in degrees.
#[cfg(feature = "serde")]
pub mod document {
    use super::*;
    use serde::{Deserialize, Serialize};

    #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
    pub struct CircuitDocument {
        pub subsystems: Vec<Subsystem>,
        pub elements: Vec<ElementDocument>,
    }

    #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
    pub struct ElementDocument {
        pub name: String,
        pub kind: String,
        pub targets: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub phase_deg: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub level: Option<usize>,
    }

    impl From<&Circuit> for CircuitDocument {
        fn from(c: &Circuit) -> Self {
            let elements = c
                .elements
                .iter()
                .map(|e| {
                    let (kind, phase_deg, level) = match e.kind {
                        ElementKind::BeamSplitter => ("beam_splitter", None, None),
                        ElementKind::PhaseShifter { level, phase } => {
                            ("phase_shifter", Some(phase.degrees()), Some(level))
                        }
                        ElementKind::Mirror => ("mirror", None, None),
                    };
                    ElementDocument {
                        name: e.name.clone(),
                        kind: kind.into(),
                        targets: e.targets.clone(),
                        phase_deg,
                        level,
                    }
                })
                .collect();
            Self {
                subsystems: c.layout.clone(),
                elements,
            }
        }
    }

    impl TryFrom<CircuitDocument> for Circuit {
        type Error = Error;

        fn try_from(doc: CircuitDocument) -> Result<Self> {
            let mut circuit = Circuit::new(doc.subsystems);
            for e in doc.elements {
                let [target] = e.targets[..] else {
                    return Err(Error::Layout {
                        element: e.name,
                        reason: "single-subsystem elements take exactly one target".into(),
                    });
                };
                let element = match e.kind.as_str() {
                    "beam_splitter" => beam_splitter_5050(target),
                    "mirror" => mirror(target),
                    "phase_shifter" => {
                        let deg = e
                            .phase_deg
                            .ok_or_else(|| Error::invalid("phase_shifter needs phase_deg"))?;
                        phase_shifter(
                            target,
                            e.level.unwrap_or(0),
                            PhaseSetting::from_degrees(deg)?,
                        )?
                    }
                    other => {
                        return Err(Error::invalid(alloc::format!(
                            "unknown element kind `{other}`"
                        )))
                    }
                };
                circuit.push(element.with_name(e.name))?;
            }
            Ok(circuit)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    fn path() -> Subsystem {
        Subsystem::two_level("photon", "path1", "path2")
    }

    fn path1() -> PureState {
        PureState::basis(vec![path()], &["path1"]).unwrap()
    }

    fn phase(rad: f64) -> PhaseSetting {
        PhaseSetting::from_radians(rad).unwrap()
    }

    fn mz(phi1: f64, phi2: f64) -> Circuit {
        Circuit::new(vec![path()])
            .with(beam_splitter_5050(0).with_name("BS1"))
            .unwrap()
            .with(phase_shifter(0, 0, phase(phi1)).unwrap())
            .unwrap()
            .with(phase_shifter(0, 1, phase(phi2)).unwrap())
            .unwrap()
            .with(beam_splitter_5050(0).with_name("BS2"))
            .unwrap()
    }

    #[test]
    fn phase_setting_reduction() {
        assert!((phase(-PI / 2.0).radians() - 1.5 * PI).abs() < 1e-15);
        assert!((phase(5.0 * PI).radians() - PI).abs() < 1e-12);
        assert_eq!(phase(2.0 * PI).radians(), 0.0);
        assert!(PhaseSetting::from_radians(f64::NAN).is_err());
        assert!((PhaseSetting::from_degrees(450.0).unwrap().degrees() - 90.0).abs() < 1e-12);
    }

    #[test]
    fn beam_splitter_on_path1() {
        let out = beam_splitter_5050(0).apply(&path1()).unwrap();
        let r = FRAC_1_SQRT_2;
        assert!((out.amplitudes()[0] - Complex64::new(r, 0.0)).norm() < 1e-15);
        assert!((out.amplitudes()[1] - Complex64::new(0.0, r)).norm() < 1e-15);
    }

    #[test]
    fn two_beam_splitters_recombine() {
        // BS·BS = i·X
        let m = beam_splitter_matrix()
            .matmul(&beam_splitter_matrix())
            .unwrap();
        let i = Complex64::new(0.0, 1.0);
        let expected =
            CMatrix::from_rows([[Complex64::new(0.0, 0.0), i], [i, Complex64::new(0.0, 0.0)]]);
        assert!(m.max_abs_diff(&expected) < 1e-15);
        assert!(beam_splitter_matrix().unitarity_deviation() < 1e-15);
    }

    #[test]
    fn phase_shifter_examples() {
        let zero = phase_shifter(0, 1, PhaseSetting::zero()).unwrap();
        assert_eq!(zero.matrix(), &CMatrix::identity(2));
        let r = FRAC_1_SQRT_2;
        let plus = PureState::new(vec![path()], vec![Complex64::new(r, 0.0); 2]).unwrap();
        let flipped = phase_shifter(0, 1, phase(PI))
            .unwrap()
            .apply(&plus)
            .unwrap();
        assert!((flipped.amplitudes()[1] + Complex64::new(r, 0.0)).norm() < 1e-15);
        let quarter = phase_shifter(0, 1, phase(PI / 2.0)).unwrap();
        let twice = quarter.matrix().matmul(quarter.matrix()).unwrap();
        let half = phase_shifter(0, 1, phase(PI)).unwrap();
        assert!(twice.max_abs_diff(half.matrix()) < 1e-15);
        assert!(phase_shifter(0, 2, phase(0.0)).is_err());
    }

    #[test]
    fn run_circuit_examples() {
        let empty = Circuit::new(vec![path()]);
        assert_eq!(empty.run(&path1()).unwrap(), path1());

        let split = Circuit::new(vec![path()])
            .with(beam_splitter_5050(0))
            .unwrap();
        let p = split.run(&path1()).unwrap().born_probabilities();
        assert!((p.probabilities()[0] - 0.5).abs() < 1e-15);
        assert!((p.probabilities()[1] - 0.5).abs() < 1e-15);

        // φ₁ = π: everything exits on the D2 port (mode index 0).
        let p = mz(PI, 0.0).run(&path1()).unwrap().born_probabilities();
        assert!((p.probabilities()[0] - 1.0).abs() < 1e-12);
        assert!(p.probabilities()[1].abs() < 1e-12);
    }

    #[test]
    fn layout_errors_name_the_element() {
        let mut c = Circuit::new(vec![path()]);
        let err = c.push(beam_splitter_5050(3).with_name("BSx")).unwrap_err();
        assert!(matches!(err, Error::Layout { ref element, .. } if element == "BSx"));

        let other =
            PureState::basis(vec![Subsystem::two_level("other", "a", "b")], &["a"]).unwrap();
        let err = mz(0.0, 0.0).run(&other).unwrap_err();
        assert!(matches!(err, Error::Layout { ref element, .. } if element == "BS1"));
    }

    #[cfg(feature = "serde")]
    #[test]
    fn circuit_document_round_trip() {
        use document::CircuitDocument;
        let c = mz(PI, 0.0);
        let json = serde_json::to_string(&CircuitDocument::from(&c)).unwrap();
        assert!(json.contains("\"elements\""));
        assert!(json.contains("\"kind\":\"phase_shifter\""));
        assert!(json.contains("\"phase_deg\":180.0"));
        let back: CircuitDocument = serde_json::from_str(&json).unwrap();
        let c2 = Circuit::try_from(back).unwrap();
        let a = c.run(&path1()).unwrap();
        let b = c2.run(&path1()).unwrap();
        assert!(a
            .amplitudes()
            .iter()
            .zip(b.amplitudes())
            .all(|(x, y)| (x - y).norm() < 1e-12));
    }

    proptest! {
        #[test]
        fn outcome_depends_only_on_phase_difference(p1 in 0.0..TAU, p2 in 0.0..TAU) {
            let a = mz(p1, p2).run(&path1()).unwrap().born_probabilities();
            let b = mz(p1 - p2, 0.0).run(&path1()).unwrap().born_probabilities();
            prop_assert!((a.probabilities()[1] - b.probabilities()[1]).abs() < 1e-12);
        }

        #[test]
        fn mirrors_do_not_change_outcomes(p in 0.0..TAU, at in 0usize..5) {
            let base = mz(p, 0.0);
            let mut with_mirror = Circuit::new(vec![path()]);
            for (i, e) in base.elements().iter().enumerate() {
                if i == at { with_mirror.push(mirror(0)).unwrap(); }
                with_mirror.push(e.clone()).unwrap();
            }
            if at == base.elements().len() { with_mirror.push(mirror(0)).unwrap(); }
            let a = base.run(&path1()).unwrap().born_probabilities();
            let b = with_mirror.run(&path1()).unwrap().born_probabilities();
            prop_assert!((a.probabilities()[0] - b.probabilities()[0]).abs() < 1e-12);
        }

        #[test]
        fn phase_shifters_on_different_paths_commute(p1 in 0.0..TAU, p2 in 0.0..TAU) {
            let a = phase_shifter(0, 0, phase(p1)).unwrap();
            let b = phase_shifter(0, 1, phase(p2)).unwrap();
            let ab = a.matrix().matmul(b.matrix()).unwrap();
            let ba = b.matrix().matmul(a.matrix()).unwrap();
            prop_assert!(ab.max_abs_diff(&ba) < 1e-15);
        }
    }
}
