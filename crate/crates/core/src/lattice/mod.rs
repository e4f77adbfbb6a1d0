//! Finite ortholattices given by an explicit order relation.
//!
//! A [`FiniteOml`] is built from a list of element names, a (generating)
//! order relation and an orthocomplement map. Meet and join tables are derived
//! from the order by brute force and every ortholattice law is checked at
//! construction time, so a value of this type is always a bounded
//! ortholattice. Orthomodularity is *not* required: it is a predicate, see
//! [`FiniteOml::check_orthomodular`].

pub(crate) mod bits;
pub mod format;
pub mod generators;
mod predicates;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ortho::Ortholattice;
use bits::BitMatrix;

pub use predicates::{
    distributive_identities, is_distributive_triple, Check, PironReport,
};

/// Index of an element inside a particular [`FiniteOml`].
///
/// Handles are only meaningful for the lattice that produced them; using a
/// handle from a larger lattice panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Elem(usize);

impl Elem {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("not a lattice: `{a}` and `{b}` have no unique {bound}")]
    NotALattice {
        a: String,
        b: String,
        bound: &'static str,
    },
    #[error("bad orthocomplement at `{element}`: {reason}")]
    BadOrtho { element: String, reason: String },
    #[error("inconsistent order: `{a}` <= `{b}` and `{b}` <= `{a}`")]
    InconsistentOrder { a: String, b: String },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),
    #[error("a lattice needs 0 != 1 (got {0} element(s))")]
    Degenerate(usize),
    #[error("lattice is not orthomodular")]
    NotOrthomodular,
    #[error("bad generator: {0}")]
    BadGenerator(String),
}

/// A finite bounded ortholattice.
#[derive(Clone)]
pub struct FiniteOml {
    names: Vec<String>,
    by_name: HashMap<String, usize>,
    leq: BitMatrix,
    meet: Vec<u32>,
    join: Vec<u32>,
    ortho: Vec<usize>,
    zero: usize,
    one: usize,
    orthomodular: bool,
}

impl FiniteOml {
    /// Builds a lattice from names, generating order pairs `(a, b)` meaning
    /// `a <= b`, and the orthocomplement as a permutation of indices.
    ///
    /// The order is closed reflexively and transitively before checking, so
    /// covering pairs are enough.
    pub fn new(
        names: Vec<String>,
        leq_pairs: &[(usize, usize)],
        ortho: Vec<usize>,
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        let mut leq = BitMatrix::new(n);
        for &(a, b) in leq_pairs {
            if a >= n || b >= n {
                return Err(LatticeError::UnknownElement(format!("#{}", a.max(b))));
            }
            leq.set(a, b);
        }
        leq.transitive_closure();
        Self::from_order(names, leq, ortho)
    }

    /// Same as [`FiniteOml::new`] with element names in the pairs and map.
    pub fn from_named(
        names: Vec<String>,
        leq_pairs: &[(String, String)],
        ortho: &[(String, String)],
    ) -> Result<Self, LatticeError> {
        let by_name = index_names(&names)?;
        let lookup = |s: &String| {
            by_name
                .get(s)
                .copied()
                .ok_or_else(|| LatticeError::UnknownElement(s.clone()))
        };
        let pairs = leq_pairs
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, LatticeError>>()?;
        let mut map = vec![usize::MAX; names.len()];
        for (a, b) in ortho {
            let (a, b) = (lookup(a)?, lookup(b)?);
            if map[a] != usize::MAX && map[a] != b {
                return Err(LatticeError::BadOrtho {
                    element: names[a].clone(),
                    reason: "orthocomplement given twice".into(),
                });
            }
            map[a] = b;
        }
        for (i, &m) in map.iter().enumerate() {
            if m == usize::MAX {
                return Err(LatticeError::BadOrtho {
                    element: names[i].clone(),
                    reason: "no orthocomplement given".into(),
                });
            }
        }
        Self::new(names, &pairs, map)
    }

    /// Builds from an already reflexive and transitive relation.
    pub(crate) fn from_order(
        names: Vec<String>,
        mut leq: BitMatrix,
        ortho: Vec<usize>,
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        if n < 2 {
            return Err(LatticeError::Degenerate(n));
        }
        let by_name = index_names(&names)?;
        for i in 0..n {
            leq.set(i, i);
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if leq.get(a, b) && leq.get(b, a) {
                    return Err(LatticeError::InconsistentOrder {
                        a: names[a].clone(),
                        b: names[b].clone(),
                    });
                }
            }
        }

        let geq = leq.transpose();
        let down_size: Vec<u32> = (0..n).map(|g| geq.row_count(g)).collect();
        let up_size: Vec<u32> = (0..n).map(|g| leq.row_count(g)).collect();
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let m = extremal(&geq, &down_size, a, b).ok_or_else(|| {
                    LatticeError::NotALattice {
                        a: names[a].clone(),
                        b: names[b].clone(),
                        bound: "greatest lower bound",
                    }
                })?;
                let j = extremal(&leq, &up_size, a, b).ok_or_else(|| {
                    LatticeError::NotALattice {
                        a: names[a].clone(),
                        b: names[b].clone(),
                        bound: "least upper bound",
                    }
                })?;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
            }
        }
        let zero = (0..n).fold(0, |acc, x| meet[acc * n + x] as usize);
        let one = (0..n).fold(0, |acc, x| join[acc * n + x] as usize);

        if ortho.len() != n {
            return Err(LatticeError::BadOrtho {
                element: names[0].clone(),
                reason: format!("map has {} entries for {} elements", ortho.len(), n),
            });
        }
        let bad = |i: usize, reason: &str| LatticeError::BadOrtho {
            element: names[i].clone(),
            reason: reason.to_string(),
        };
        for a in 0..n {
            let o = ortho[a];
            if o >= n {
                return Err(bad(a, "maps outside the lattice"));
            }
            if ortho[o] != a {
                return Err(bad(a, "not an involution"));
            }
            if meet[a * n + o] as usize != zero || join[a * n + o] as usize != one {
                return Err(bad(a, "not a complement"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if leq.get(a, b) && !leq.get(ortho[b], ortho[a]) {
                    return Err(bad(a, &format!("not order-reversing against `{}`", names[b])));
                }
            }
        }

        let mut lattice = FiniteOml {
            names,
            by_name,
            leq,
            meet,
            join,
            ortho,
            zero,
            one,
            orthomodular: false,
        };
        lattice.orthomodular = lattice.check_orthomodular().holds();
        Ok(lattice)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = Elem> + '_ {
        (0..self.names.len()).map(Elem)
    }

    pub fn element(&self, name: &str) -> Result<Elem, LatticeError> {
        self.by_name
            .get(name)
            .map(|&i| Elem(i))
            .ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
    }

    pub fn element_at(&self, index: usize) -> Option<Elem> {
        (index < self.len()).then_some(Elem(index))
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn zero(&self) -> Elem {
        Elem(self.zero)
    }

    pub fn one(&self) -> Elem {
        Elem(self.one)
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq.get(a.0, b.0)
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.meet[a.0 * self.len() + b.0] as usize)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.join[a.0 * self.len() + b.0] as usize)
    }

    pub fn ortho(&self, a: Elem) -> Elem {
        Elem(self.ortho[a.0])
    }

    /// Name-checked meet, for callers holding element names.
    pub fn meet_named(&self, a: &str, b: &str) -> Result<Elem, LatticeError> {
        Ok(self.meet(self.element(a)?, self.element(b)?))
    }

    pub fn join_named(&self, a: &str, b: &str) -> Result<Elem, LatticeError> {
        Ok(self.join(self.element(a)?, self.element(b)?))
    }

    pub fn ortho_named(&self, a: &str) -> Result<Elem, LatticeError> {
        Ok(self.ortho(self.element(a)?))
    }

    /// `a C b`: `a = (a ∧ b) ∨ (a ∧ b⊥)`.
    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.join(self.meet(a, b), self.meet(a, self.ortho(b))) == a
    }

    pub fn is_orthomodular(&self) -> bool {
        self.orthomodular
    }

    /// Atoms in construction order.
    pub fn atoms(&self) -> Vec<Elem> {
        let zero = self.zero();
        self.elements()
            .filter(|&p| p != zero && self.elements().all(|x| x == zero || x == p || !self.lt(x, p)))
            .collect()
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.lt(a, b) && !self.elements().any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Smallest subset containing `seed`, 0 and 1 and closed under meet,
    /// join and orthocomplement. Returned sorted.
    pub fn generated(&self, seed: impl IntoIterator<Item = Elem>) -> Vec<Elem> {
        let mut present = vec![false; self.len()];
        let mut members = Vec::new();
        let push = |e: Elem, present: &mut Vec<bool>, members: &mut Vec<Elem>| {
            if !present[e.0] {
                present[e.0] = true;
                members.push(e);
            }
        };
        push(self.zero(), &mut present, &mut members);
        push(self.one(), &mut present, &mut members);
        for e in seed {
            push(e, &mut present, &mut members);
        }
        let mut done = 0;
        while done < members.len() {
            let x = members[done];
            push(self.ortho(x), &mut present, &mut members);
            for i in 0..=done {
                let y = members[i];
                push(self.meet(x, y), &mut present, &mut members);
                push(self.join(x, y), &mut present, &mut members);
            }
            done += 1;
        }
        members.sort();
        members
    }
}

impl fmt::Debug for FiniteOml {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteOml")
            .field("elements", &self.names)
            .field("orthomodular", &self.orthomodular)
            .finish()
    }
}

/// Structural equality: same names in the same order, same order relation
/// and same orthocomplement.
impl PartialEq for FiniteOml {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.leq == other.leq && self.ortho == other.ortho
    }
}

impl Eq for FiniteOml {}

impl Ortholattice for FiniteOml {
    type Elem = Elem;

    fn meet(&self, a: &Elem, b: &Elem) -> Elem {
        FiniteOml::meet(self, *a, *b)
    }
    fn join(&self, a: &Elem, b: &Elem) -> Elem {
        FiniteOml::join(self, *a, *b)
    }
    fn ortho(&self, a: &Elem) -> Elem {
        FiniteOml::ortho(self, *a)
    }
    fn leq(&self, a: &Elem, b: &Elem) -> bool {
        FiniteOml::leq(self, *a, *b)
    }
    fn zero(&self) -> Elem {
        FiniteOml::zero(self)
    }
    fn one(&self) -> Elem {
        FiniteOml::one(self)
    }
    fn is_orthomodular(&self) -> bool {
        self.orthomodular
    }
}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>, LatticeError> {
    let mut by_name = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if by_name.insert(name.clone(), i).is_some() {
            return Err(LatticeError::DuplicateElement(name.clone()));
        }
    }
    Ok(by_name)
}

/// Extremal element of `rel[a] & rel[b]`: the member whose own row is the
/// whole intersection. Rows of members are subsets by transitivity, so
/// comparing sizes suffices.
fn extremal(rel: &BitMatrix, sizes: &[u32], a: usize, b: usize) -> Option<usize> {
    let common = rel.row_and(a, b);
    let total: u32 = common.iter().map(|w| w.count_ones()).sum();
    let found = bits::iter_ones(&common).find(|&g| sizes[g] == total);
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn two_element_chain() {
        let l = FiniteOml::new(names(&["0", "1"]), &[(0, 1)], vec![1, 0]).unwrap();
        assert_eq!(l.meet(l.zero(), l.one()), l.zero());
        assert_eq!(l.ortho(l.zero()), l.one());
        assert!(l.is_orthomodular());
    }

    #[test]
    fn rejects_single_element() {
        let err = FiniteOml::new(names(&["0"]), &[], vec![0]).unwrap_err();
        assert_eq!(err, LatticeError::Degenerate(1));
    }

    #[test]
    fn rejects_cycle() {
        let err = FiniteOml::new(names(&["0", "x", "y", "1"]), &[(1, 2), (2, 1)], vec![3, 2, 1, 0])
            .unwrap_err();
        assert!(matches!(err, LatticeError::InconsistentOrder { .. }));
    }

    #[test]
    fn rejects_non_lattice() {
        // 0 < x, y < u, v < 1: x and y have two minimal upper bounds
        let n = names(&["0", "x", "y", "u", "v", "1"]);
        let pairs = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)];
        let err = FiniteOml::new(n, &pairs, vec![5, 4, 3, 2, 1, 0]).unwrap_err();
        assert!(matches!(err, LatticeError::NotALattice { .. }), "{err}");
    }

    #[test]
    fn rejects_bad_ortho() {
        // chain 0 < x < 1 with x ↦ x is not a complement
        let err = FiniteOml::new(names(&["0", "x", "1"]), &[(0, 1), (1, 2)], vec![2, 1, 0])
            .unwrap_err();
        assert!(matches!(err, LatticeError::BadOrtho { .. }));
        // not an involution
        let n = names(&["0", "a", "b", "c", "1"]);
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)];
        let err = FiniteOml::new(n, &pairs, vec![4, 2, 3, 1, 0]).unwrap_err();
        assert!(matches!(err, LatticeError::BadOrtho { .. }));
    }

    #[test]
    fn unknown_names() {
        let l = generators::boolean(2).unwrap();
        assert_eq!(
            l.meet_named("a1", "zz").unwrap_err(),
            LatticeError::UnknownElement("zz".into())
        );
    }

    #[test]
    fn duplicate_names() {
        let err = FiniteOml::new(names(&["0", "0"]), &[(0, 1)], vec![1, 0]).unwrap_err();
        assert_eq!(err, LatticeError::DuplicateElement("0".into()));
    }
}
