//! The ortholattice interface shared by the finite tables, the subspace
//! lattices and the power-set algebras.

use std::fmt::Debug;

/// A bounded lattice with an orthocomplement.
///
/// Implementations must satisfy the ortholattice laws; generic code in this
/// crate (commutation, distributive triples, correlation polynomials) relies
/// on them without re-checking.
pub trait Ortholattice {
    type Elem: Clone + PartialEq + Debug;

    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn ortho(&self, a: &Self::Elem) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_orthomodular(&self) -> bool;
}

/// `a C b`: `a = (a ∧ b) ∨ (a ∧ b⊥)`.
pub fn commutes<L: Ortholattice>(l: &L, a: &L::Elem, b: &L::Elem) -> bool {
    l.join(&l.meet(a, b), &l.meet(a, &l.ortho(b))) == *a
}

/// The Boolean algebra of all subsets of `atoms` points, elements as bit
/// masks. Used for classical hosts far too large for explicit tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowersetAlgebra {
    atoms: u32,
}

impl PowersetAlgebra {
    pub fn new(atoms: u32) -> Self {
        assert!((1..=64).contains(&atoms), "power-set algebra needs 1..=64 atoms");
        PowersetAlgebra { atoms }
    }

    pub fn atom_count(&self) -> u32 {
        self.atoms
    }

    /// The event containing every point for which `pred` holds.
    pub fn event(&self, pred: impl Fn(u32) -> bool) -> u64 {
        (0..self.atoms).filter(|&i| pred(i)).fold(0, |m, i| m | 1 << i)
    }

    fn full(&self) -> u64 {
        if self.atoms == 64 {
            u64::MAX
        } else {
            (1u64 << self.atoms) - 1
        }
    }
}

impl Ortholattice for PowersetAlgebra {
    type Elem = u64;

    fn meet(&self, a: &u64, b: &u64) -> u64 {
        a & b
    }
    fn join(&self, a: &u64, b: &u64) -> u64 {
        a | b
    }
    fn ortho(&self, a: &u64) -> u64 {
        !a & self.full()
    }
    fn leq(&self, a: &u64, b: &u64) -> bool {
        a & !b == 0
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        self.full()
    }
    fn is_orthomodular(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powerset_complements() {
        let p = PowersetAlgebra::new(16);
        let even = p.event(|i| i % 2 == 0);
        assert_eq!(p.meet(&even, &p.ortho(&even)), 0);
        assert_eq!(p.join(&even, &p.ortho(&even)), 0xffff);
        assert!(commutes(&p, &even, &p.event(|i| i < 3)));
    }

    #[test]
    fn full_width() {
        let p = PowersetAlgebra::new(64);
        assert_eq!(p.ortho(&0), u64::MAX);
    }
}
