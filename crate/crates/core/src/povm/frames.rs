use num_complex::Complex64;
use serde::Serialize;

use super::{CMatrix, CVector, PovmError};

/// An orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    vectors: Vec<CVector>,
}

impl Frame {
    pub fn new(vectors: Vec<CVector>, tol: f64) -> Result<Self, PovmError> {
        let d = vectors.first().map_or(0, |v| v.len());
        if d == 0 || vectors.len() != d {
            return Err(PovmError::BadFrame(format!("{} vectors in dimension {d}", vectors.len())));
        }
        for (i, u) in vectors.iter().enumerate() {
            if u.len() != d {
                return Err(PovmError::DimensionMismatch { expected: d, found: u.len() });
            }
            if (u.norm() - 1.0).abs() > tol {
                return Err(PovmError::BadFrame(format!("vector {i} has norm {}", u.norm())));
            }
            for (j, v) in vectors.iter().enumerate().skip(i + 1) {
                if u.dotc(v).norm() > tol {
                    return Err(PovmError::BadFrame(format!("vectors {i} and {j} are not orthogonal")));
                }
            }
        }
        Ok(Frame { vectors })
    }

    /// Gram–Schmidt (via QR) on `d` columns of length `d`.
    pub fn orthonormalized(columns: &[Vec<Complex64>], tol: f64) -> Result<Self, PovmError> {
        let d = columns.len();
        if let Some(c) = columns.iter().find(|c| c.len() != d) {
            return Err(PovmError::DimensionMismatch { expected: d, found: c.len() });
        }
        let flat: Vec<Complex64> = columns.iter().flatten().copied().collect();
        let qr = CMatrix::from_column_slice(d, d, &flat).qr();
        if qr.r().diagonal().iter().any(|x| x.norm() <= tol) {
            return Err(PovmError::BadFrame("columns are linearly dependent".into()));
        }
        let q = qr.q();
        Self::new(q.column_iter().map(|c| c.into_owned()).collect(), tol)
    }

    pub fn standard(d: usize) -> Self {
        let vectors = (0..d)
            .map(|i| CVector::from_fn(d, |k, _| Complex64::new(if k == i { 1.0 } else { 0.0 }, 0.0)))
            .collect();
        Frame { vectors }
    }

    pub fn vectors(&self) -> &[CVector] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// `u` and `v` differ at most by a phase (after normalization).
pub fn rays_equal(u: &CVector, v: &CVector, tol: f64) -> bool {
    let overlap = u.dotc(v).norm() / (u.norm() * v.norm());
    (1.0 - overlap).abs() <= tol
}

/// Some but not all rays of `f1` occur in `f2` up to phase.
pub fn entwined(f1: &Frame, f2: &Frame, tol: f64) -> Result<bool, PovmError> {
    if f1.dim() != f2.dim() {
        return Err(PovmError::DimensionMismatch {
            expected: f1.dim(),
            found: f2.dim(),
        });
    }
    let shared = f1
        .vectors
        .iter()
        .filter(|u| f2.vectors.iter().any(|v| rays_equal(u, v, tol)))
        .count();
    Ok(shared > 0 && shared < f1.dim())
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameFunctionReport {
    /// The sum over the first context.
    pub r: f64,
    pub sums: Vec<f64>,
    /// Largest `|sum − r|` over contexts.
    pub max_residual: f64,
    pub min_value: f64,
    pub tol: f64,
}

impl FrameFunctionReport {
    pub fn is_frame_function(&self) -> bool {
        self.max_residual <= self.tol
    }

    /// Non-negative with `r = 1`.
    pub fn is_probability(&self) -> bool {
        self.is_frame_function() && self.min_value >= -self.tol && (self.r - 1.0).abs() <= self.tol
    }
}

/// Sums `f` over every context (a frame's vectors, a POVM's effects, ...)
/// and compares the sums.
pub fn frame_function_check<K>(
    contexts: &[Vec<K>],
    f: impl Fn(&K) -> Option<f64>,
    tol: f64,
) -> Result<FrameFunctionReport, PovmError> {
    if contexts.is_empty() {
        return Err(PovmError::Empty);
    }
    let mut sums = Vec::with_capacity(contexts.len());
    let mut min_value = f64::INFINITY;
    for (c, members) in contexts.iter().enumerate() {
        let mut sum = 0.0;
        for (m, k) in members.iter().enumerate() {
            let value = f(k).ok_or_else(|| PovmError::MissingValue(format!("member {m} of context {c}")))?;
            min_value = min_value.min(value);
            sum += value;
        }
        sums.push(sum);
    }
    let r = sums[0];
    let max_residual = sums.iter().map(|s| (s - r).abs()).fold(0.0, f64::max);
    Ok(FrameFunctionReport {
        r,
        sums,
        max_residual,
        min_value,
        tol,
    })
}

/// `α ↦ |⟨ψ|α⟩|²` on normalized vectors.
pub fn born_rule(psi: &CVector) -> impl Fn(&CVector) -> Option<f64> + '_ {
    move |alpha| {
        let amp = psi.dotc(alpha).norm() / (psi.norm() * alpha.norm());
        Some(amp * amp)
    }
}

/// Value of the first table entry whose ray equals `v`'s.
pub fn ray_lookup(table: &[(CVector, f64)], v: &CVector, tol: f64) -> Option<f64> {
    table.iter().find(|(u, _)| rays_equal(u, v, tol)).map(|&(_, x)| x)
}
