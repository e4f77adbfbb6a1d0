use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::subspace::{inner, ExactVector, Subspace};
use super::{parse_rational, ExactError, GaussianRational};
use crate::lattice::bits::BitMatrix;
use crate::lattice::{Elem, FiniteOml};

pub const DEFAULT_CLOSURE_CAP: usize = 512;

/// Rays generating a finite fragment of the subspace lattice, and how many
/// meet/join/orthocomplement rounds to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaySeed {
    pub ambient_dim: usize,
    pub rays: Vec<ExactVector>,
    pub closure_depth: usize,
}

impl RaySeed {
    pub fn new(ambient_dim: usize, rays: Vec<ExactVector>, closure_depth: usize) -> Self {
        RaySeed {
            ambient_dim,
            rays,
            closure_depth,
        }
    }
}

/// One coordinate in a seed file: `"p/q"`, an integer, or `[re, im]` with
/// each part in either form.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Int(i64),
    Real(String),
    Complex([RationalRepr; 2]),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalRepr {
    Int(i64),
    Text(String),
}

impl RationalRepr {
    fn parse(&self) -> Result<num_rational::BigRational, ExactError> {
        match self {
            RationalRepr::Int(n) => Ok(num_rational::BigRational::from_integer((*n).into())),
            RationalRepr::Text(s) => parse_rational(s),
        }
    }
}

impl ScalarRepr {
    pub fn parse(&self) -> Result<GaussianRational, ExactError> {
        match self {
            ScalarRepr::Int(n) => Ok(GaussianRational::int(*n)),
            ScalarRepr::Real(s) => Ok(GaussianRational::new(parse_rational(s)?, Zero::zero())),
            ScalarRepr::Complex([re, im]) => {
                Ok(GaussianRational::new(re.parse()?, im.parse()?))
            }
        }
    }

    pub fn from_scalar(z: &GaussianRational) -> Self {
        let q = |r: &num_rational::BigRational| {
            RationalRepr::Text(if r.is_integer() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            })
        };
        ScalarRepr::Complex([q(&z.re), q(&z.im)])
    }
}

/// On-disk form of a [`RaySeed`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RaySeedFile {
    pub dim: usize,
    pub rays: Vec<Vec<ScalarRepr>>,
    #[serde(default = "default_depth")]
    pub closure_depth: usize,
}

fn default_depth() -> usize {
    1
}

pub fn parse_vector(entries: &[ScalarRepr]) -> Result<ExactVector, ExactError> {
    entries.iter().map(ScalarRepr::parse).collect()
}

impl RaySeedFile {
    pub fn to_seed(&self) -> Result<RaySeed, ExactError> {
        let rays = self
            .rays
            .iter()
            .map(|r| parse_vector(r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RaySeed::new(self.dim, rays, self.closure_depth))
    }

    pub fn from_seed(seed: &RaySeed) -> Self {
        RaySeedFile {
            dim: seed.ambient_dim,
            rays: seed
                .rays
                .iter()
                .map(|r| r.iter().map(ScalarRepr::from_scalar).collect())
                .collect(),
            closure_depth: seed.closure_depth,
        }
    }
}

/// A finite sublattice of subspaces together with the subspace behind each
/// element.
#[derive(Debug, Clone)]
pub struct SubspaceFragment {
    lattice: FiniteOml,
    subspaces: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
}

impl SubspaceFragment {
    pub fn lattice(&self) -> &FiniteOml {
        &self.lattice
    }

    pub fn into_lattice(self) -> FiniteOml {
        self.lattice
    }

    pub fn subspace(&self, e: Elem) -> &Subspace {
        &self.subspaces[e.index()]
    }

    pub fn element_of(&self, s: &Subspace) -> Option<Elem> {
        self.index.get(s).and_then(|&i| self.lattice.element_at(i))
    }

    pub fn ambient_dim(&self) -> usize {
        self.subspaces[0].ambient_dim()
    }

    /// True when meet, join and orthocomplement of the fragment agree with
    /// those of the full subspace lattice, i.e. the fragment is a genuine
    /// sublattice and not just a subposet.
    pub fn is_sublattice(&self) -> bool {
        let l = &self.lattice;
        l.elements().all(|a| {
            l.elements().all(|b| {
                let (sa, sb) = (self.subspace(a), self.subspace(b));
                self.subspace(l.meet(a, b)) == &sa.intersect(sb).expect("same dim")
                    && self.subspace(l.join(a, b)) == &sa.sum(sb).expect("same dim")
            })
        })
    }
}

/// Name of a subspace inside a fragment: `0`, `1`, or its canonical basis.
pub fn element_name(s: &Subspace) -> String {
    if s.is_zero() {
        "0".into()
    } else if s.is_full() {
        "1".into()
    } else {
        s.to_string()
    }
}

/// Closes the seed rays, together with `0` and the whole space, under
/// `closure_depth` rounds of pairwise meet and join and orthocomplement, then
/// adds any missing orthocomplements. Elements are numbered in discovery
/// order and ordered by containment.
pub fn subspace_lattice_closure(seed: &RaySeed, cap: usize) -> Result<SubspaceFragment, ExactError> {
    let dim = seed.ambient_dim;
    if dim == 0 {
        return Err(ExactError::ZeroDimension);
    }
    let mut rays = Vec::with_capacity(seed.rays.len());
    for r in &seed.rays {
        if r.len() != dim {
            return Err(ExactError::DimensionMismatch {
                expected: dim,
                found: r.len(),
            });
        }
        rays.push(Subspace::ray(r)?);
    }
    subspace_closure(dim, &rays, seed.closure_depth, cap)
}

/// [`subspace_lattice_closure`] seeded with arbitrary subspaces.
pub fn subspace_closure(
    dim: usize,
    seeds: &[Subspace],
    closure_depth: usize,
    cap: usize,
) -> Result<SubspaceFragment, ExactError> {
    if dim == 0 {
        return Err(ExactError::ZeroDimension);
    }
    let mut set = Closure::new(cap);
    set.insert(Subspace::zero(dim))?;
    set.insert(Subspace::full(dim))?;
    for s in seeds {
        if s.ambient_dim() != dim {
            return Err(ExactError::DimensionMismatch {
                expected: dim,
                found: s.ambient_dim(),
            });
        }
        set.insert(s.clone())?;
    }

    let mut settled = 0;
    for _ in 0..closure_depth {
        let current = set.items.len();
        for j in 0..current {
            set.ortho_of(j)?;
            for i in 0..j {
                if j < settled {
                    continue;
                }
                let m = set.items[i].intersect(&set.items[j])?;
                let s = set.items[i].sum(&set.items[j])?;
                set.insert(m)?;
                set.insert(s)?;
            }
        }
        settled = current;
        if set.items.len() == current {
            break;
        }
    }
    let mut k = 0;
    while k < set.items.len() {
        set.ortho_of(k)?;
        k += 1;
    }

    let n = set.items.len();
    let ortho_idx: Vec<usize> = (0..n).map(|i| set.ortho[i].expect("ortho completed")).collect();
    let mut leq = BitMatrix::new(n);
    for a in 0..n {
        for b in 0..n {
            let (sa, sb) = (&set.items[a], &set.items[b]);
            if sa.dim() > sb.dim() {
                continue;
            }
            // a ⊆ b iff a is orthogonal to b⊥
            let perp = &set.items[ortho_idx[b]];
            let inside = sa
                .basis()
                .iter()
                .all(|v| perp.basis().iter().all(|u| inner(u, v).is_zero()));
            if inside {
                leq.set(a, b);
            }
        }
    }
    let names = set.items.iter().map(element_name).collect();
    let lattice = FiniteOml::from_order(names, leq, ortho_idx)?;
    Ok(SubspaceFragment {
        lattice,
        subspaces: set.items,
        index: set.index,
    })
}

struct Closure {
    cap: usize,
    items: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
    ortho: Vec<Option<usize>>,
}

impl Closure {
    fn new(cap: usize) -> Self {
        Closure {
            cap,
            items: Vec::new(),
            index: HashMap::new(),
            ortho: Vec::new(),
        }
    }

    fn insert(&mut self, s: Subspace) -> Result<usize, ExactError> {
        if let Some(&i) = self.index.get(&s) {
            return Ok(i);
        }
        if self.items.len() >= self.cap {
            return Err(ExactError::ClosureCapExceeded { cap: self.cap });
        }
        let i = self.items.len();
        self.index.insert(s.clone(), i);
        self.items.push(s);
        self.ortho.push(None);
        Ok(i)
    }

    fn ortho_of(&mut self, i: usize) -> Result<usize, ExactError> {
        if let Some(o) = self.ortho[i] {
            return Ok(o);
        }
        let o = self.insert(self.items[i].ortho())?;
        self.ortho[i] = Some(o);
        self.ortho[o] = Some(i);
        Ok(o)
    }
}

#[cfg(test)]
mod tests {
    use super::super::subspace::int_vector;
    use super::*;
    use crate::lattice::generators::{boolean, mo};

    fn seed(dim: usize, rays: &[&[i64]], depth: usize) -> RaySeed {
        RaySeed::new(dim, rays.iter().map(|r| int_vector(r)).collect(), depth)
    }

    /// Isomorphism by brute force over permutations of small lattices.
    fn isomorphic(a: &FiniteOml, b: &FiniteOml) -> bool {
        fn search(a: &FiniteOml, b: &FiniteOml, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let k = map.len();
            if k == a.len() {
                return true;
            }
            for t in 0..b.len() {
                if used[t] {
                    continue;
                }
                let ok = (0..k).all(|i| {
                    let (ei, ek) = (a.element_at(i).unwrap(), a.element_at(k).unwrap());
                    let (fi, fk) = (b.element_at(map[i]).unwrap(), b.element_at(t).unwrap());
                    a.leq(ei, ek) == b.leq(fi, fk) && a.leq(ek, ei) == b.leq(fk, fi)
                });
                if ok {
                    map.push(t);
                    used[t] = true;
                    if search(a, b, map, used) {
                        return true;
                    }
                    map.pop();
                    used[t] = false;
                }
            }
            false
        }
        a.len() == b.len() && search(a, b, &mut Vec::new(), &mut vec![false; b.len()])
    }

    #[test]
    fn single_qubit_ray() {
        let f = subspace_lattice_closure(&seed(2, &[&[1, 0]], 1), DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(f.lattice().len(), 4);
        assert!(isomorphic(f.lattice(), &boolean(2).unwrap()));
    }

    #[test]
    fn two_qubit_axes_give_mo2() {
        for (rays, depth) in [(&[&[1i64, 0][..], &[1, 1]][..], 1), (&[&[1, 0][..], &[1, 2]][..], 2)] {
            let f = subspace_lattice_closure(&seed(2, rays, depth), DEFAULT_CLOSURE_CAP).unwrap();
            assert!(isomorphic(f.lattice(), &mo(2).unwrap()));
            assert!(f.is_sublattice());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let s = seed(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 1, 1], &[1, 2, 3, 4]], 3);
        assert_eq!(
            subspace_lattice_closure(&s, 20).unwrap_err(),
            ExactError::ClosureCapExceeded { cap: 20 }
        );
    }

    #[test]
    fn bad_seeds() {
        assert_eq!(
            subspace_lattice_closure(&seed(2, &[&[0, 0]], 1), 64).unwrap_err(),
            ExactError::ZeroVector
        );
        assert!(subspace_lattice_closure(&seed(2, &[&[1, 0, 0]], 1), 64).is_err());
    }

    #[test]
    fn seed_file_roundtrip() {
        let json = r#"{"dim":2,"rays":[[["1","0"],["1/2","-1"]], ["3", 0]],"closure_depth":2}"#;
        let file: RaySeedFile = serde_json::from_str(json).unwrap();
        let seed = file.to_seed().unwrap();
        assert_eq!(seed.rays[0][1].to_string(), "1/2-i");
        let again = RaySeedFile::from_seed(&seed).to_seed().unwrap();
        assert_eq!(again, seed);
    }
}
