use serde::Serialize;

use super::{Elem, FiniteOml, LatticeError};
use crate::ortho::{commutes, Ortholattice};

/// Outcome of one predicate: holds iff there are no failure witnesses.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Check {
    pub witnesses: Vec<Vec<Elem>>,
}

impl Check {
    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
    }

    fn push(&mut self, w: impl Into<Vec<Elem>>) {
        self.witnesses.push(w.into());
    }
}

/// Every predicate in the Piron-lattice bundle.
///
/// `lattice` and `ortho` are guaranteed by construction of [`FiniteOml`] and
/// `complete` is automatic for finite lattices; they are reported anyway so
/// the bundle is complete.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PironReport {
    pub lattice: Check,
    pub ortho: Check,
    pub orthomodular: Check,
    pub atomic: Check,
    pub complete: Check,
    pub irreducible: Check,
    pub covering: Check,
}

impl PironReport {
    pub fn is_piron(&self) -> bool {
        self.entries().iter().all(|(_, c)| c.holds())
    }

    pub fn entries(&self) -> [(&'static str, &Check); 7] {
        [
            ("lattice", &self.lattice),
            ("ortho", &self.ortho),
            ("orthomodular", &self.orthomodular),
            ("atomic", &self.atomic),
            ("complete", &self.complete),
            ("irreducible", &self.irreducible),
            ("covering", &self.covering),
        ]
    }
}

impl FiniteOml {
    /// Pairs `a <= b` with `b != a ∨ (b ∧ a⊥)`.
    pub fn check_orthomodular(&self) -> Check {
        let mut c = Check::default();
        for a in self.elements() {
            for b in self.elements() {
                if self.leq(a, b) && self.join(a, self.meet(b, self.ortho(a))) != b {
                    c.push([a, b]);
                }
            }
        }
        c
    }

    /// Pairs with `a C b` but not `b C a`.
    pub fn check_commutation_symmetry(&self) -> Check {
        let mut c = Check::default();
        for a in self.elements() {
            for b in self.elements() {
                if self.commutes(a, b) && !self.commutes(b, a) {
                    c.push([a, b]);
                }
            }
        }
        c
    }

    /// Nonzero elements lying over no atom.
    pub fn check_atomic(&self) -> Check {
        let atoms = self.atoms();
        let mut c = Check::default();
        for x in self.elements() {
            if x != self.zero() && !atoms.iter().any(|&p| self.leq(p, x)) {
                c.push([x]);
            }
        }
        c
    }

    /// Elements commuting (both ways) with everything.
    pub fn center(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&c| {
                self.elements()
                    .all(|x| self.commutes(c, x) && self.commutes(x, c))
            })
            .collect()
    }

    /// Central elements other than 0 and 1.
    pub fn check_irreducible(&self) -> Check {
        let mut c = Check::default();
        for z in self.center() {
            if z != self.zero() && z != self.one() {
                c.push([z]);
            }
        }
        c
    }

    /// Triples `(p, q, r)` with `p` an atom, `p ≰ q` and `q < r < p ∨ q`.
    pub fn check_covering(&self) -> Check {
        let mut c = Check::default();
        for p in self.atoms() {
            for q in self.elements() {
                if self.leq(p, q) {
                    continue;
                }
                let top = self.join(p, q);
                for r in self.elements() {
                    if self.lt(q, r) && self.lt(r, top) {
                        c.push([p, q, r]);
                    }
                }
            }
        }
        c
    }

    pub fn check_piron(&self) -> PironReport {
        PironReport {
            lattice: Check::default(),
            ortho: Check::default(),
            orthomodular: self.check_orthomodular(),
            atomic: self.check_atomic(),
            complete: Check::default(),
            irreducible: self.check_irreducible(),
            covering: self.check_covering(),
        }
    }

    /// Maximal Boolean subalgebras, each sorted, in lexicographic order.
    ///
    /// In an orthomodular lattice these are exactly the maximal sets of
    /// pairwise commuting elements, found here as maximal cliques of the
    /// commutation graph.
    pub fn maximal_boolean_blocks(&self) -> Result<Vec<Vec<Elem>>, LatticeError> {
        if !self.is_orthomodular() {
            return Err(LatticeError::NotOrthomodular);
        }
        let n = self.len();
        let adj: Vec<Vec<bool>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| a != b && self.commutes(Elem(a), Elem(b)))
                    .collect()
            })
            .collect();
        let mut blocks = Vec::new();
        bron_kerbosch(&adj, Vec::new(), (0..n).collect(), Vec::new(), &mut blocks);
        let mut blocks: Vec<Vec<Elem>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort();
                b.into_iter().map(Elem).collect()
            })
            .collect();
        blocks.sort();
        Ok(blocks)
    }

    /// Is `subset` closed under the operations and distributive?
    pub fn is_boolean_subalgebra(&self, subset: &[Elem]) -> bool {
        let inside = |e: Elem| subset.contains(&e);
        subset.iter().all(|&x| inside(self.ortho(x)))
            && subset.iter().all(|&x| {
                subset
                    .iter()
                    .all(|&y| inside(self.meet(x, y)) && inside(self.join(x, y)))
            })
            && subset.iter().all(|x| {
                subset.iter().all(|y| {
                    subset
                        .iter()
                        .all(|z| distributive_identities(self, x, y, z).iter().all(|&ok| ok))
                })
            })
    }

    /// Atoms of a sub-collection: its minimal nonzero members.
    pub fn atoms_within(&self, subset: &[Elem]) -> Vec<Elem> {
        let zero = self.zero();
        subset
            .iter()
            .copied()
            .filter(|&p| p != zero && !subset.iter().any(|&x| x != zero && self.lt(x, p)))
            .collect()
    }
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    let pivot = p
        .iter()
        .chain(&x)
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| adj[u][v]).count())
        .expect("p or x is non-empty");
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
    for v in candidates {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&u| adj[v][u]).collect();
        let x2 = x.iter().copied().filter(|&u| adj[v][u]).collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.retain(|&u| u != v);
        x.push(v);
    }
}

/// The six distributive laws on `(a, b, c)`: for each element `x` with the
/// other two `y, z`, `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` and
/// `x ∨ (y ∧ z) = (x ∨ y) ∧ (x ∨ z)`.
pub fn distributive_identities<L: Ortholattice>(
    l: &L,
    a: &L::Elem,
    b: &L::Elem,
    c: &L::Elem,
) -> [bool; 6] {
    let laws = |x: &L::Elem, y: &L::Elem, z: &L::Elem| {
        let meet_over_join = l.meet(x, &l.join(y, z)) == l.join(&l.meet(x, y), &l.meet(x, z));
        let join_over_meet = l.join(x, &l.meet(y, z)) == l.meet(&l.join(x, y), &l.join(x, z));
        (meet_over_join, join_over_meet)
    };
    let (a1, a2) = laws(a, b, c);
    let (b1, b2) = laws(b, a, c);
    let (c1, c2) = laws(c, a, b);
    [a1, a2, b1, b2, c1, c2]
}

/// Foulis–Holland: in an orthomodular lattice a triple in which one element
/// commutes with the other two generates a distributive sublattice.
///
/// # Panics
/// If the commutation condition holds but a distributive law fails, which
/// would mean the host violates orthomodularity despite claiming it.
pub fn is_distributive_triple<L: Ortholattice>(
    l: &L,
    a: &L::Elem,
    b: &L::Elem,
    c: &L::Elem,
) -> Result<bool, LatticeError> {
    if !l.is_orthomodular() {
        return Err(LatticeError::NotOrthomodular);
    }
    let hub = |x: &L::Elem, y: &L::Elem, z: &L::Elem| commutes(l, x, y) && commutes(l, x, z);
    let triple = hub(a, b, c) || hub(b, a, c) || hub(c, a, b);
    if triple {
        let laws = distributive_identities(l, a, b, c);
        assert!(laws.iter().all(|&ok| ok), "distributive law failed: {laws:?}");
    }
    Ok(triple)
}
