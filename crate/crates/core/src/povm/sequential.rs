use num_complex::Complex64;

use super::{hermitian_eigenvalues, identity, max_abs, CMatrix, CVector, Effect, Povm, PovmError};

/// A complete two-outcome projective measurement.
#[derive(Debug, Clone)]
pub struct ProjectiveMeasurement {
    labels: [String; 2],
    projectors: [CMatrix; 2],
}

impl ProjectiveMeasurement {
    pub fn new(labels: [&str; 2], projectors: [CMatrix; 2], tol: f64) -> Result<Self, PovmError> {
        let bad = |why: String| Err(PovmError::NotProjective(why));
        let d = projectors[0].nrows();
        for (l, p) in labels.iter().zip(&projectors) {
            if p.shape() != (d, d) {
                return bad(format!("`{l}` is not a {d}x{d} matrix"));
            }
            if max_abs(&(p - p.adjoint())) > tol || max_abs(&(p * p - p)) > tol {
                return bad(format!("`{l}` is not an orthogonal projector"));
            }
        }
        if max_abs(&(&projectors[0] + &projectors[1] - identity(d))) > tol {
            return bad("projectors do not sum to the identity".into());
        }
        Ok(ProjectiveMeasurement {
            labels: labels.map(String::from),
            projectors,
        })
    }

    /// Spin along z: outcomes `0` (|0⟩) and `1` (|1⟩).
    pub fn z_basis() -> Self {
        let p0 = CMatrix::from_diagonal(&CVector::from_column_slice(&[re(1.0), re(0.0)]));
        let p1 = identity(2) - &p0;
        Self::new(["0", "1"], [p0, p1], super::DEFAULT_TOL).expect("z basis is projective")
    }

    /// Spin along the direction at angle `theta` from z in the z–x plane:
    /// outcomes `+` and `-`.
    pub fn spin(theta: f64) -> Self {
        let plus = spin_projector(theta);
        let minus = identity(2) - &plus;
        Self::new(["+", "-"], [plus, minus], super::DEFAULT_TOL).expect("spin projectors are projective")
    }

    pub fn labels(&self) -> &[String; 2] {
        &self.labels
    }

    pub fn projectors(&self) -> &[CMatrix; 2] {
        &self.projectors
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].nrows()
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `½(I + n·σ)` with `n = (sin θ, 0, cos θ)`.
pub fn spin_projector(theta: f64) -> CMatrix {
    let (s, c) = theta.sin_cos();
    CMatrix::from_row_slice(2, 2, &[re(1.0 + c), re(s), re(s), re(1.0 - c)]).scale(0.5)
}

/// `E_(i,j) = P_i Q_j P_i` for `first = {P_i}`, `second = {Q_j}`, labelled
/// `(i,j)` and ordered with `i` outermost.
pub fn sequential_povm(first: &ProjectiveMeasurement, second: &ProjectiveMeasurement) -> Result<Povm, PovmError> {
    if first.dim() != second.dim() {
        return Err(PovmError::DimensionMismatch {
            expected: first.dim(),
            found: second.dim(),
        });
    }
    let mut effects = Vec::with_capacity(4);
    for (li, p) in first.labels.iter().zip(&first.projectors) {
        for (lj, q) in second.labels.iter().zip(&second.projectors) {
            effects.push(Effect::new(format!("({li},{lj})"), p * q * p));
        }
    }
    Povm::new(effects)
}

/// Lüders update by `P_i` then `Q_j`, renormalized.
pub fn post_measurement_state(
    state: &CVector,
    first: &ProjectiveMeasurement,
    second: &ProjectiveMeasurement,
    outcomes: (usize, usize),
    tol: f64,
) -> Result<CVector, PovmError> {
    if state.len() != first.dim() || first.dim() != second.dim() {
        return Err(PovmError::DimensionMismatch {
            expected: first.dim(),
            found: if state.len() != first.dim() { state.len() } else { second.dim() },
        });
    }
    let (i, j) = outcomes;
    if i > 1 || j > 1 {
        return Err(PovmError::Parse(format!("outcome pair {outcomes:?} out of range")));
    }
    let v = &second.projectors[j] * (&first.projectors[i] * state);
    let norm = v.norm();
    if norm <= tol {
        return Err(PovmError::ZeroProbabilityBranch);
    }
    Ok(v.unscale(norm))
}

/// `√(1 − |⟨ψ|φ⟩|²)` for pure states, inputs normalized first.
pub fn trace_distance_pure(psi: &CVector, phi: &CVector) -> f64 {
    let overlap = psi.dotc(phi).norm() / (psi.norm() * phi.norm());
    (1.0 - overlap * overlap).max(0.0).sqrt()
}

/// `½ Σ |λ_i(ρ − σ)|`.
pub fn trace_distance(rho: &CMatrix, sigma: &CMatrix) -> f64 {
    0.5 * hermitian_eigenvalues(&(rho - sigma)).iter().map(|l| l.abs()).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::super::DEFAULT_TOL;
    use super::*;
    use std::f64::consts::PI;

    fn ket0() -> CVector {
        CVector::from_column_slice(&[re(1.0), re(0.0)])
    }

    #[test]
    fn repeated_z_measurement() {
        let z = ProjectiveMeasurement::z_basis();
        let povm = sequential_povm(&z, &z).unwrap();
        let m: Vec<&CMatrix> = povm.effects().iter().map(|e| &e.matrix).collect();
        assert!(max_abs(&(m[0] - &z.projectors()[0])) < 1e-15);
        assert!(max_abs(m[1]) < 1e-15 && max_abs(m[2]) < 1e-15);
        assert!(max_abs(&(m[3] - &z.projectors()[1])) < 1e-15);
        let post = post_measurement_state(&ket0(), &z, &z, (0, 0), DEFAULT_TOL).unwrap();
        assert!((post - ket0()).norm() < 1e-15);
    }

    #[test]
    fn pi_over_six_weights() {
        let z = ProjectiveMeasurement::z_basis();
        let povm = sequential_povm(&z, &ProjectiveMeasurement::spin(PI / 6.0)).unwrap();
        assert!(povm.validate(DEFAULT_TOL).is_valid());
        let c2 = (PI / 12.0).cos().powi(2);
        let weights = [c2, 1.0 - c2, 1.0 - c2, c2];
        for (k, e) in povm.effects().iter().enumerate() {
            let p = &z.projectors()[k / 2];
            assert!(max_abs(&(&e.matrix - p.scale(weights[k]))) < 1e-12, "{}", e.label);
        }
        assert_eq!(povm.effects()[1].label, "(0,-)");
    }

    #[test]
    fn opposite_angles_same_povm_different_states() {
        let z = ProjectiveMeasurement::z_basis();
        let (plus, minus) = (ProjectiveMeasurement::spin(PI / 6.0), ProjectiveMeasurement::spin(-PI / 6.0));
        let (e1, e2) = (sequential_povm(&z, &plus).unwrap(), sequential_povm(&z, &minus).unwrap());
        for (x, y) in e1.effects().iter().zip(e2.effects()) {
            assert!(max_abs(&(&x.matrix - &y.matrix)) < 1e-12);
        }
        let s1 = post_measurement_state(&ket0(), &z, &plus, (0, 0), DEFAULT_TOL).unwrap();
        let s2 = post_measurement_state(&ket0(), &z, &minus, (0, 0), DEFAULT_TOL).unwrap();
        assert!((trace_distance_pure(&s1, &s2) - 0.5).abs() < 1e-12);
        let (r1, r2) = (&s1 * s1.adjoint(), &s2 * s2.adjoint());
        assert!((trace_distance(&r1, &r2) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn post_state_is_spin_direction() {
        let z = ProjectiveMeasurement::z_basis();
        let spin = ProjectiveMeasurement::spin(PI / 6.0);
        let s = post_measurement_state(&ket0(), &z, &spin, (0, 0), DEFAULT_TOL).unwrap();
        let up = CVector::from_column_slice(&[re((PI / 12.0).cos()), re((PI / 12.0).sin())]);
        assert!(trace_distance_pure(&s, &up) < 1e-9);
    }

    #[test]
    fn errors() {
        let z = ProjectiveMeasurement::z_basis();
        assert_eq!(
            post_measurement_state(&ket0(), &z, &z, (1, 0), DEFAULT_TOL).unwrap_err(),
            PovmError::ZeroProbabilityBranch
        );
        let half = identity(2).scale(0.5);
        assert!(matches!(
            ProjectiveMeasurement::new(["a", "b"], [half.clone(), half], DEFAULT_TOL),
            Err(PovmError::NotProjective(_))
        ));
    }
}
