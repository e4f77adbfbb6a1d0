use std::fmt;

use num_traits::{One, Zero};

use super::{ExactError, GaussianRational};
use crate::ortho::Ortholattice;

pub type ExactVector = Vec<GaussianRational>;

/// Hermitian inner product `⟨x, y⟩ = Σ conj(x_i) y_i`.
pub fn inner(x: &[GaussianRational], y: &[GaussianRational]) -> GaussianRational {
    x.iter()
        .zip(y)
        .fold(GaussianRational::zero(), |acc, (a, b)| &acc + &(&a.conj() * b))
}

/// Vector from integer coordinates, real parts only.
pub fn int_vector(coords: &[i64]) -> ExactVector {
    coords.iter().map(|&c| GaussianRational::int(c)).collect()
}

pub fn basis_vector(dim: usize, i: usize) -> ExactVector {
    (0..dim)
        .map(|k| if k == i { GaussianRational::one() } else { GaussianRational::zero() })
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(rows: &mut Vec<ExactVector>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for j in 0..ncols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : M x = 0}` for `M` given by rows of length `ncols`.
pub fn kernel(rows: &[ExactVector], ncols: usize) -> Vec<ExactVector> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free = (0..ncols).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut v = vec![GaussianRational::zero(); ncols];
        v[f] = GaussianRational::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -&row[f];
        }
        v
    })
    .collect()
}

pub fn rank(rows: &[ExactVector], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// A subspace of ℚ(i)^n stored by its reduced row echelon basis, which is
/// unique per subspace; derived equality and hashing are subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<ExactVector>,
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: &[ExactVector]) -> Result<Self, ExactError> {
        if ambient_dim == 0 {
            return Err(ExactError::ZeroDimension);
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(ExactError::DimensionMismatch {
                expected: ambient_dim,
                found: v.len(),
            });
        }
        let mut basis = vectors.to_vec();
        rref(&mut basis, ambient_dim);
        Ok(Subspace { ambient_dim, basis })
    }

    /// The ray through a nonzero vector.
    pub fn ray(v: &[GaussianRational]) -> Result<Self, ExactError> {
        if v.iter().all(Zero::is_zero) {
            return Err(ExactError::ZeroVector);
        }
        Self::span(v.len(), &[v.to_vec()])
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| basis_vector(ambient_dim, i)).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ExactVector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    fn same_space(&self, other: &Subspace) -> Result<(), ExactError> {
        if self.ambient_dim == other.ambient_dim {
            Ok(())
        } else {
            Err(ExactError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            })
        }
    }

    pub fn contains(&self, v: &[GaussianRational]) -> bool {
        let mut rest = v.to_vec();
        for row in &self.basis {
            let pivot = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            if rest[pivot].is_zero() {
                continue;
            }
            let factor = rest[pivot].clone();
            for (x, r) in rest.iter_mut().zip(row) {
                *x = &*x - &(&factor * r);
            }
        }
        rest.iter().all(Zero::is_zero)
    }

    /// Containment `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, ExactError> {
        self.same_space(other)?;
        Ok(self.basis.iter().all(|v| other.contains(v)))
    }

    /// Lattice join: span of the union.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        self.same_space(other)?;
        let vectors: Vec<ExactVector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.ambient_dim, &vectors)
    }

    /// Lattice meet, by the kernel of `[S | -T]`: coefficient vectors
    /// `(α, β)` with `Σ α_i s_i = Σ β_j t_j`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        self.same_space(other)?;
        let (k, l) = (self.dim(), other.dim());
        if k == 0 || l == 0 {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let rows: Vec<ExactVector> = (0..self.ambient_dim)
            .map(|i| {
                self.basis
                    .iter()
                    .map(|s| s[i].clone())
                    .chain(other.basis.iter().map(|t| -&t[i]))
                    .collect()
            })
            .collect();
        let vectors: Vec<ExactVector> = kernel(&rows, k + l)
            .into_iter()
            .map(|coeffs| {
                let mut v = vec![GaussianRational::zero(); self.ambient_dim];
                for (c, s) in coeffs[..k].iter().zip(&self.basis) {
                    for (x, y) in v.iter_mut().zip(s) {
                        *x = &*x + &(c * y);
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.ambient_dim, &vectors)
    }

    /// Orthogonal complement under the Hermitian inner product.
    pub fn ortho(&self) -> Subspace {
        let rows: Vec<ExactVector> = self
            .basis
            .iter()
            .map(|v| v.iter().map(GaussianRational::conj).collect())
            .collect();
        let k = kernel(&rows, self.ambient_dim);
        Subspace::span(self.ambient_dim, &k).expect("kernel vectors have ambient length")
    }
}

/// `<(1,0,0,0),(0,0,0,1)>`; the zero subspace prints as `<>`.
impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, v) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", fmt_vector(v))?;
        }
        write!(f, ">")
    }
}

/// Serializes as the display string.
impl serde::Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn fmt_vector(v: &[GaussianRational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// The full lattice of subspaces of ℚ(i)^n, operated on directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubspaceLattice {
    pub dim: usize,
}

impl SubspaceLattice {
    pub fn new(dim: usize) -> Self {
        SubspaceLattice { dim }
    }
}

impl Ortholattice for SubspaceLattice {
    type Elem = Subspace;

    fn meet(&self, a: &Subspace, b: &Subspace) -> Subspace {
        a.intersect(b).expect("subspaces of one lattice share a dimension")
    }
    fn join(&self, a: &Subspace, b: &Subspace) -> Subspace {
        a.sum(b).expect("subspaces of one lattice share a dimension")
    }
    fn ortho(&self, a: &Subspace) -> Subspace {
        a.ortho()
    }
    fn leq(&self, a: &Subspace, b: &Subspace) -> bool {
        a.is_subspace_of(b).expect("subspaces of one lattice share a dimension")
    }
    fn zero(&self) -> Subspace {
        Subspace::zero(self.dim)
    }
    fn one(&self) -> Subspace {
        Subspace::full(self.dim)
    }
    fn is_orthomodular(&self) -> bool {
        true
    }
}
