//! Effects and POVMs in floating point.
//!
//! All matrix comparisons use the largest absolute entry deviation against a
//! tolerance, [`DEFAULT_TOL`] unless a caller passes its own.

mod cabello;
mod frames;
mod sequential;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cabello::{
    cabello_povms, noncontextual_assignment_search, three_qubit_commuting_sets, Assignment,
    AssignmentSearch, CommutingSetsReport, MAX_SEARCH_LABELS,
};
pub use frames::{
    born_rule, entwined, frame_function_check, ray_lookup, rays_equal, Frame, FrameFunctionReport,
};
pub use sequential::{
    post_measurement_state, sequential_povm, spin_projector, trace_distance, trace_distance_pure,
    ProjectiveMeasurement,
};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PovmError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("empty effect list")]
    Empty,
    #[error("not a rank-1 projector: {0}")]
    BadProjector(String),
    #[error("degenerate triple: {0}")]
    DegenerateTriple(String),
    #[error("label `{0}` names two different matrices")]
    LabelClash(String),
    #[error("search over {0} labels is too large")]
    SearchTooLarge(usize),
    #[error("not a projective measurement: {0}")]
    NotProjective(String),
    #[error("outcome branch has zero probability")]
    ZeroProbabilityBranch,
    #[error("not a frame: {0}")]
    BadFrame(String),
    #[error("no value for {0}")]
    MissingValue(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A labelled effect. Labels carry outcome identity; two effects may share a
/// matrix under different labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Effect {
    pub label: String,
    pub matrix: CMatrix,
}

impl Effect {
    pub fn new(label: impl Into<String>, matrix: CMatrix) -> Self {
        Effect {
            label: label.into(),
            matrix,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    effects: Vec<Effect>,
}

impl Povm {
    /// Wraps effects without checking positivity or completeness; see
    /// [`validate_povm`].
    pub fn new(effects: Vec<Effect>) -> Result<Self, PovmError> {
        common_dim(&effects)?;
        Ok(Povm { effects })
    }

    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }

    pub fn dim(&self) -> usize {
        self.effects[0].dim()
    }

    pub fn sum(&self) -> CMatrix {
        sum_of(&self.effects)
    }

    pub fn validate(&self, tol: f64) -> PovmDiagnostics {
        validate_povm(&self.effects, tol).expect("dimensions checked on construction")
    }
}

fn common_dim(effects: &[Effect]) -> Result<usize, PovmError> {
    let first = effects.first().ok_or(PovmError::Empty)?;
    let d = first.matrix.nrows();
    for e in effects {
        let (r, c) = e.matrix.shape();
        if r != c {
            return Err(PovmError::NotSquare { rows: r, cols: c });
        }
        if r != d {
            return Err(PovmError::DimensionMismatch { expected: d, found: r });
        }
    }
    Ok(d)
}

fn sum_of(effects: &[Effect]) -> CMatrix {
    let d = effects[0].dim();
    effects.iter().fold(CMatrix::zeros(d, d), |acc, e| acc + &e.matrix)
}

/// Largest absolute entry.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

/// Eigenvalues of the Hermitian part, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let h = (m + m.adjoint()).scale(0.5);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Kronecker product of a list of matrices, left to right.
pub fn kron_all(ms: &[&CMatrix]) -> CMatrix {
    ms.iter().skip(1).fold(ms[0].clone(), |acc, m| acc.kronecker(m))
}

/// Rank-1 projector onto the ray through `v`.
pub fn projector(v: &[Complex64]) -> CMatrix {
    let v = CVector::from_column_slice(v);
    let v = v.unscale(v.norm());
    &v * v.adjoint()
}

#[derive(Debug, Clone, Serialize)]
pub struct EffectDiagnostics {
    pub label: String,
    pub hermitian_deviation: f64,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PovmDiagnostics {
    pub effects: Vec<EffectDiagnostics>,
    /// Largest entry of `Σ E_i − I`.
    pub identity_deviation: f64,
    pub tol: f64,
}

impl PovmDiagnostics {
    pub fn hermitian(&self) -> bool {
        self.effects.iter().all(|e| e.hermitian_deviation <= self.tol)
    }

    pub fn bounded(&self) -> bool {
        self.effects
            .iter()
            .all(|e| e.min_eigenvalue >= -self.tol && e.max_eigenvalue <= 1.0 + self.tol)
    }

    pub fn complete(&self) -> bool {
        self.identity_deviation <= self.tol
    }

    pub fn is_valid(&self) -> bool {
        self.hermitian() && self.bounded() && self.complete()
    }

    /// Largest deviation from any of the three requirements.
    pub fn max_residual(&self) -> f64 {
        self.effects
            .iter()
            .map(|e| e.hermitian_deviation.max(-e.min_eigenvalue).max(e.max_eigenvalue - 1.0))
            .fold(self.identity_deviation, f64::max)
            .max(0.0)
    }
}

pub fn validate_povm(effects: &[Effect], tol: f64) -> Result<PovmDiagnostics, PovmError> {
    let d = common_dim(effects)?;
    let diagnostics = effects
        .iter()
        .map(|e| {
            let ev = hermitian_eigenvalues(&e.matrix);
            EffectDiagnostics {
                label: e.label.clone(),
                hermitian_deviation: max_abs(&(&e.matrix - e.matrix.adjoint())),
                min_eigenvalue: ev[0],
                max_eigenvalue: ev[ev.len() - 1],
            }
        })
        .collect();
    Ok(PovmDiagnostics {
        effects: diagnostics,
        identity_deviation: max_abs(&(sum_of(effects) - identity(d))),
        tol,
    })
}

/// JSON form of a POVM: matrices as rows of `[re, im]` entries.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PovmFile {
    pub effects: Vec<EffectEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EffectEntry {
    pub label: String,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl PovmFile {
    pub fn from_json(text: &str) -> Result<Self, PovmError> {
        serde_json::from_str(text).map_err(|e| PovmError::Parse(e.to_string()))
    }

    pub fn to_effects(&self) -> Result<Vec<Effect>, PovmError> {
        self.effects
            .iter()
            .map(|entry| {
                let rows = entry.matrix.len();
                let cols = entry.matrix.first().map_or(0, Vec::len);
                if let Some(bad) = entry.matrix.iter().find(|r| r.len() != cols) {
                    return Err(PovmError::Parse(format!(
                        "effect `{}` has ragged rows ({} vs {cols})",
                        entry.label,
                        bad.len()
                    )));
                }
                let m = CMatrix::from_fn(rows, cols, |i, j| {
                    let [re, im] = entry.matrix[i][j];
                    Complex64::new(re, im)
                });
                Ok(Effect::new(entry.label.clone(), m))
            })
            .collect()
    }

    pub fn from_effects(effects: &[Effect]) -> Self {
        PovmFile {
            effects: effects
                .iter()
                .map(|e| EffectEntry {
                    label: e.label.clone(),
                    matrix: e
                        .matrix
                        .row_iter()
                        .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                        .collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn identity_and_halves_are_povms() {
        let i2 = identity(2);
        assert!(validate_povm(&[Effect::new("I", i2.clone())], DEFAULT_TOL).unwrap().is_valid());
        let half = i2.scale(0.5);
        let d = validate_povm(&[Effect::new("x", half.clone()), Effect::new("y", half)], DEFAULT_TOL).unwrap();
        assert!(d.is_valid());
        assert!(d.max_residual() < 1e-15);
    }

    #[test]
    fn doubled_projector_is_not() {
        let p = projector(&[c(1.0), c(0.0)]);
        let d = validate_povm(&[Effect::new("p", p.clone()), Effect::new("q", p)], DEFAULT_TOL).unwrap();
        assert!(d.hermitian() && d.bounded());
        assert!(!d.complete());
        assert!((d.identity_deviation - 1.0).abs() < 1e-15);
    }

    #[test]
    fn spectrum_violations() {
        let big = identity(2).scale(1.5);
        let neg = identity(2).scale(-0.5);
        let d = validate_povm(&[Effect::new("big", big), Effect::new("neg", neg)], DEFAULT_TOL).unwrap();
        assert!(d.complete());
        assert!(!d.bounded());
    }

    #[test]
    fn shape_errors() {
        assert_eq!(validate_povm(&[], DEFAULT_TOL).unwrap_err(), PovmError::Empty);
        let e = validate_povm(&[Effect::new("a", identity(2)), Effect::new("b", identity(3))], DEFAULT_TOL);
        assert_eq!(e.unwrap_err(), PovmError::DimensionMismatch { expected: 2, found: 3 });
        let e = validate_povm(&[Effect::new("a", CMatrix::zeros(2, 3))], DEFAULT_TOL);
        assert!(matches!(e, Err(PovmError::NotSquare { .. })));
    }

    #[test]
    fn file_roundtrip() {
        let p = projector(&[c(1.0), Complex64::new(0.0, 1.0)]);
        let q = identity(2) - &p;
        let effects = vec![Effect::new("p", p), Effect::new("q", q)];
        let text = serde_json::to_string(&PovmFile::from_effects(&effects)).unwrap();
        let back = PovmFile::from_json(&text).unwrap().to_effects().unwrap();
        assert_eq!(back, effects);
        assert!(PovmFile::from_json(r#"{"effects":[{"label":"x","matrix":[[[1,0]],[]]}]}"#)
            .unwrap()
            .to_effects()
            .is_err());
    }
}
