use num_traits::Zero;

use super::subspace::{rank, ExactVector, Subspace};
use super::{ExactError, GaussianRational};

/// Kronecker product; index `(i, j)` lands at `i * w.len() + j`.
pub fn tensor_vector(v: &[GaussianRational], w: &[GaussianRational]) -> ExactVector {
    v.iter().flat_map(|a| w.iter().map(move |b| a * b)).collect()
}

/// Span of all products of basis vectors.
pub fn tensor_subspace(s: &Subspace, t: &Subspace) -> Subspace {
    let dim = s.ambient_dim() * t.ambient_dim();
    let vectors: Vec<ExactVector> = s
        .basis()
        .iter()
        .flat_map(|v| t.basis().iter().map(move |w| tensor_vector(v, w)))
        .collect();
    Subspace::span(dim, &vectors).expect("products have the product dimension")
}

/// `S ⊗ V_B`, the image of a first-factor subspace in the product.
pub fn lift_first(s: &Subspace, dim_b: usize) -> Subspace {
    tensor_subspace(s, &Subspace::full(dim_b))
}

/// `V_A ⊗ T`.
pub fn lift_second(dim_a: usize, t: &Subspace) -> Subspace {
    tensor_subspace(&Subspace::full(dim_a), t)
}

/// Rank of the `m × n` coefficient matrix of `v`; 1 exactly for products.
pub fn schmidt_rank(v: &[GaussianRational], m: usize, n: usize) -> Result<usize, ExactError> {
    if v.len() != m * n {
        return Err(ExactError::DimensionMismatch {
            expected: m * n,
            found: v.len(),
        });
    }
    if v.iter().all(Zero::is_zero) {
        return Err(ExactError::ZeroVector);
    }
    let rows: Vec<ExactVector> = v.chunks(n).map(<[_]>::to_vec).collect();
    Ok(rank(&rows, n))
}

#[cfg(test)]
mod tests {
    use super::super::subspace::int_vector;
    use super::*;

    #[test]
    fn kronecker_convention() {
        assert_eq!(tensor_vector(&int_vector(&[1, 0]), &int_vector(&[1, 0])), int_vector(&[1, 0, 0, 0]));
        assert_eq!(
            tensor_vector(&int_vector(&[1, 1]), &int_vector(&[1, -1])),
            int_vector(&[1, -1, 1, -1])
        );
    }

    #[test]
    fn lifted_ray() {
        let s = Subspace::ray(&int_vector(&[1, 0])).unwrap();
        let lifted = tensor_subspace(&s, &Subspace::full(2));
        let expected = Subspace::span(4, &[int_vector(&[1, 0, 0, 0]), int_vector(&[0, 1, 0, 0])]).unwrap();
        assert_eq!(lifted, expected);
        assert_eq!(lift_first(&s, 2), expected);
        assert_eq!(lift_second(2, &s).dim(), 2);
    }

    #[test]
    fn schmidt_ranks() {
        assert_eq!(schmidt_rank(&int_vector(&[1, 0, 0, 0]), 2, 2), Ok(1));
        assert_eq!(schmidt_rank(&int_vector(&[1, 0, 0, 1]), 2, 2), Ok(2));
        assert_eq!(schmidt_rank(&int_vector(&[1, 1, 1, 1]), 2, 2), Ok(1));
        assert_eq!(schmidt_rank(&int_vector(&[0, 0, 0, 0]), 2, 2), Err(ExactError::ZeroVector));
        assert!(schmidt_rank(&int_vector(&[1, 0, 0]), 2, 2).is_err());
    }
}
