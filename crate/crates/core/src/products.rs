//! Lattice products: the four product conditions, entangled atoms, strong
//! perspectivity and the lattice form of the no-cloning obstruction.
//!
//! Products of infinite subspace lattices are only available here as finite
//! fragments, so every report is relative to the fragment it was run on.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{
    lift_first, lift_second, schmidt_rank, tensor_subspace, tensor_vector, ExactError, Subspace,
    SubspaceFragment,
};
use crate::lattice::format::{FormatError, LatticeFile};
use crate::lattice::{Elem, FiniteOml, LatticeError, PironReport};

#[derive(Debug, Error)]
pub enum ProductError {
    #[error("embedding invariant violated: {0}")]
    EmbeddingInvariantViolated(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
}

/// Two factor lattices with injections into a candidate product.
#[derive(Debug, Clone)]
pub struct ProductEmbedding {
    factor_a: FiniteOml,
    factor_b: FiniteOml,
    product: FiniteOml,
    inj_a: Vec<Elem>,
    inj_b: Vec<Elem>,
}

impl ProductEmbedding {
    /// `inj_a[i]` is the image of the `i`-th element of `factor_a`.
    pub fn new(
        factor_a: FiniteOml,
        factor_b: FiniteOml,
        product: FiniteOml,
        inj_a: Vec<Elem>,
        inj_b: Vec<Elem>,
    ) -> Result<Self, ProductError> {
        check_embedding("first", &factor_a, &product, &inj_a)?;
        check_embedding("second", &factor_b, &product, &inj_b)?;
        Ok(ProductEmbedding {
            factor_a,
            factor_b,
            product,
            inj_a,
            inj_b,
        })
    }

    /// Embeds subspace fragments of `V_A` and `V_B` into a fragment of
    /// `V_A ⊗ V_B` by `α ↦ α ⊗ V_B` and `β ↦ V_A ⊗ β`.
    pub fn from_fragments(
        a: &SubspaceFragment,
        b: &SubspaceFragment,
        product: &SubspaceFragment,
    ) -> Result<Self, ProductError> {
        let (da, db) = (a.ambient_dim(), b.ambient_dim());
        if product.ambient_dim() != da * db {
            return Err(ProductError::EmbeddingInvariantViolated(format!(
                "product has dimension {}, factors {da} x {db}",
                product.ambient_dim()
            )));
        }
        let image = |s: Subspace| {
            product.element_of(&s).ok_or_else(|| {
                ProductError::EmbeddingInvariantViolated(format!("image {s} not in the product fragment"))
            })
        };
        let inj_a = a
            .lattice()
            .elements()
            .map(|e| image(lift_first(a.subspace(e), db)))
            .collect::<Result<Vec<_>, _>>()?;
        let inj_b = b
            .lattice()
            .elements()
            .map(|e| image(lift_second(da, b.subspace(e))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(
            a.lattice().clone(),
            b.lattice().clone(),
            product.lattice().clone(),
            inj_a,
            inj_b,
        )
    }

    /// `boolean(m) × boolean(n) → boolean(m·n)`, the classical product of
    /// outcome spaces: atom `(i, j)` of the product is `a{i·n + j + 1}`.
    pub fn boolean_product(m: usize, n: usize) -> Result<Self, ProductError> {
        use crate::lattice::generators::boolean;
        let (fa, fb, p) = (boolean(m)?, boolean(n)?, boolean(m * n)?);
        let elem = |mask: usize| p.element_at(mask).expect("mask in range");
        let inj_a = (0..1usize << m)
            .map(|sa| {
                let mask = (0..m * n).filter(|k| sa >> (k / n) & 1 == 1).fold(0, |acc, k| acc | 1 << k);
                elem(mask)
            })
            .collect();
        let inj_b = (0..1usize << n)
            .map(|sb| {
                let mask = (0..m * n).filter(|k| sb >> (k % n) & 1 == 1).fold(0, |acc, k| acc | 1 << k);
                elem(mask)
            })
            .collect();
        Self::new(fa, fb, p, inj_a, inj_b)
    }

    pub fn factor_a(&self) -> &FiniteOml {
        &self.factor_a
    }

    pub fn factor_b(&self) -> &FiniteOml {
        &self.factor_b
    }

    pub fn product(&self) -> &FiniteOml {
        &self.product
    }

    pub fn inj_a(&self, a: Elem) -> Elem {
        self.inj_a[a.index()]
    }

    pub fn inj_b(&self, b: Elem) -> Elem {
        self.inj_b[b.index()]
    }

    /// `i_A(α) ∧ i_B(β)`.
    pub fn product_meet(&self, a: Elem, b: Elem) -> Elem {
        self.product.meet(self.inj_a(a), self.inj_b(b))
    }
}

fn check_embedding(
    which: &str,
    factor: &FiniteOml,
    product: &FiniteOml,
    inj: &[Elem],
) -> Result<(), ProductError> {
    let fail = |msg: String| Err(ProductError::EmbeddingInvariantViolated(format!("{which} map: {msg}")));
    if inj.len() != factor.len() {
        return fail(format!("{} images for {} elements", inj.len(), factor.len()));
    }
    if let Some(bad) = inj.iter().find(|e| e.index() >= product.len()) {
        return fail(format!("image #{} outside the product", bad.index()));
    }
    let img = |e: Elem| inj[e.index()];
    if img(factor.zero()) != product.zero() || img(factor.one()) != product.one() {
        return fail("does not send 0 to 0 and 1 to 1".into());
    }
    for x in factor.elements() {
        if img(factor.ortho(x)) != product.ortho(img(x)) {
            return fail(format!("does not preserve the orthocomplement of `{}`", factor.name(x)));
        }
        for y in factor.elements() {
            if x != y && img(x) == img(y) {
                return fail(format!("`{}` and `{}` share an image", factor.name(x), factor.name(y)));
            }
            if factor.leq(x, y) != product.leq(img(x), img(y)) {
                return fail(format!(
                    "order between `{}` and `{}` not reflected",
                    factor.name(x),
                    factor.name(y)
                ));
            }
        }
    }
    Ok(())
}

/// Why a pair of factor blocks fails the Boolean-product condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BlockDefect {
    NotBoolean,
    AtomCount { expected: usize, found: usize },
    NotMaximal { extra: Elem },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockFailure {
    pub block_a: usize,
    pub block_b: usize,
    pub defect: BlockDefect,
}

/// The four product conditions, each with its failure witnesses.
#[derive(Debug, Clone, Serialize)]
pub struct ProductReport {
    /// Condition 1, the Piron predicates on the product.
    pub piron: PironReport,
    /// Condition 2: nonzero `(α, β)` with `i_A(α) ∧ i_B(β) = 0`.
    pub independence: Vec<(Elem, Elem)>,
    /// Condition 3, indexed by the factors' maximal Boolean blocks.
    pub boolean_blocks: Vec<BlockFailure>,
    /// Condition 4: product elements outside what the images generate.
    pub generation: Vec<Elem>,
}

impl ProductReport {
    pub fn piron_ok(&self) -> bool {
        self.piron.is_piron()
    }
    pub fn independence_ok(&self) -> bool {
        self.independence.is_empty()
    }
    pub fn boolean_block_ok(&self) -> bool {
        self.boolean_blocks.is_empty()
    }
    pub fn generation_ok(&self) -> bool {
        self.generation.is_empty()
    }
    pub fn all_ok(&self) -> bool {
        self.piron_ok() && self.independence_ok() && self.boolean_block_ok() && self.generation_ok()
    }
}

pub fn verify_product_conditions(pe: &ProductEmbedding) -> Result<ProductReport, ProductError> {
    let p = &pe.product;
    let piron = p.check_piron();

    let mut independence = Vec::new();
    for a in pe.factor_a.elements().filter(|&a| a != pe.factor_a.zero()) {
        for b in pe.factor_b.elements().filter(|&b| b != pe.factor_b.zero()) {
            if pe.product_meet(a, b) == p.zero() {
                independence.push((a, b));
            }
        }
    }

    let blocks_a = pe.factor_a.maximal_boolean_blocks()?;
    let blocks_b = pe.factor_b.maximal_boolean_blocks()?;
    let mut boolean_blocks = Vec::new();
    for (ia, ba) in blocks_a.iter().enumerate() {
        for (ib, bb) in blocks_b.iter().enumerate() {
            let images = ba.iter().map(|&x| pe.inj_a(x)).chain(bb.iter().map(|&y| pe.inj_b(y)));
            let generated = p.generated(images);
            let defect = block_defect(pe, ba, bb, &generated);
            if let Some(defect) = defect {
                boolean_blocks.push(BlockFailure {
                    block_a: ia,
                    block_b: ib,
                    defect,
                });
            }
        }
    }

    let images = pe
        .factor_a
        .elements()
        .map(|a| pe.inj_a(a))
        .chain(pe.factor_b.elements().map(|b| pe.inj_b(b)));
    let generated = p.generated(images);
    let generation = p.elements().filter(|e| generated.binary_search(e).is_err()).collect();

    Ok(ProductReport {
        piron,
        independence,
        boolean_blocks,
        generation,
    })
}

fn block_defect(pe: &ProductEmbedding, ba: &[Elem], bb: &[Elem], generated: &[Elem]) -> Option<BlockDefect> {
    let p = &pe.product;
    if !p.is_boolean_subalgebra(generated) {
        return Some(BlockDefect::NotBoolean);
    }
    let expected = pe.factor_a.atoms_within(ba).len() * pe.factor_b.atoms_within(bb).len();
    let found = p.atoms_within(generated).len();
    if expected != found {
        return Some(BlockDefect::AtomCount { expected, found });
    }
    // maximal iff nothing outside commutes with every member
    let extra = p.elements().find(|&x| {
        generated.binary_search(&x).is_err()
            && generated.iter().all(|&g| p.commutes(x, g) && p.commutes(g, x))
    });
    extra.map(|extra| BlockDefect::NotMaximal { extra })
}

/// Atoms of the product that are not `i_A(α) ∧ i_B(β)` for any atoms `α, β`.
pub fn find_entangled_atoms(pe: &ProductEmbedding) -> Vec<Elem> {
    let atoms_a = pe.factor_a.atoms();
    let atoms_b = pe.factor_b.atoms();
    pe.product
        .atoms()
        .into_iter()
        .filter(|&p| {
            !atoms_a
                .iter()
                .any(|&a| atoms_b.iter().any(|&b| pe.product_meet(a, b) == p))
        })
        .collect()
}

/// Witness that `x` and `y` are strongly perspective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Perspectivity {
    /// A common complement of `x` and `y` in the whole lattice.
    pub global: Elem,
    /// A nonzero common complement inside `[0, x ∨ y]`: the axis of
    /// perspectivity.
    pub axis: Elem,
}

/// First (in element order) global and in-span common complements of `x` and
/// `y`, or `None` when either is missing. The in-span complement must be
/// nonzero, so `x = y` never has a witness.
pub fn strong_perspectivity_witness(l: &FiniteOml, x: Elem, y: Elem) -> Option<Perspectivity> {
    let span = l.join(x, y);
    let global = l.elements().find(|&c| {
        l.meet(c, x) == l.zero() && l.meet(c, y) == l.zero() && l.join(c, x) == l.one() && l.join(c, y) == l.one()
    })?;
    let axis = axis_of_perspectivity(l, x, y, span)?;
    Some(Perspectivity { global, axis })
}

fn axis_of_perspectivity(l: &FiniteOml, x: Elem, y: Elem, span: Elem) -> Option<Elem> {
    l.elements().find(|&p| {
        p != l.zero()
            && l.meet(p, x) == l.zero()
            && l.meet(p, y) == l.zero()
            && l.join(p, x) == span
            && l.join(p, y) == span
    })
}

/// Is `p` a nonzero common complement of `x` and `y` within `x ∨ y`, in
/// the full subspace lattice?
pub fn is_axis_of_perspectivity(p: &Subspace, x: &Subspace, y: &Subspace) -> Result<bool, ExactError> {
    let span = x.sum(y)?;
    Ok(!p.is_zero()
        && p.intersect(x)?.is_zero()
        && p.intersect(y)?.is_zero()
        && p.sum(x)? == span
        && p.sum(y)? == span)
}

/// The two order facts that rule out a cloning automorphism on a pair of
/// qubit lattices, plus Schmidt-rank cross-checks.
#[derive(Debug, Clone, Serialize)]
pub struct ObstructionReport {
    /// `a2 ⊗ β ≤ (a1 ⊗ β) ∨ (a1⊥ ⊗ β)`.
    pub input_under_join: bool,
    /// `a2 ⊗ β` is an axis of perspectivity of `a1 ⊗ β` and `a1⊥ ⊗ β`.
    pub input_is_axis: bool,
    /// `a2 ⊗ a2 ≰ (a1 ⊗ a1) ∨ (a1⊥ ⊗ a1⊥)`.
    pub output_outside_join: bool,
    /// Schmidt rank of the would-be clone `a2 ⊗ a2`.
    pub clone_rank: usize,
    /// Schmidt rank of `v ⊗ v + w ⊗ w` for `v ∈ a1`, `w ∈ a1⊥`, a ray of the
    /// join other than its two endpoints.
    pub interior_rank: usize,
}

impl ObstructionReport {
    /// The cloning map would have to send an axis of the input pair to an
    /// axis of the output pair; the output pair has none of product form.
    pub fn established(&self) -> bool {
        self.input_under_join && self.input_is_axis && self.output_outside_join
    }
}

pub fn no_cloning_obstruction(a1: &Subspace, a2: &Subspace, beta: &Subspace) -> Result<ObstructionReport, ProductError> {
    for (name, s) in [("a1", a1), ("a2", a2), ("beta", beta)] {
        if s.ambient_dim() != 2 || s.dim() != 1 {
            return Err(ProductError::BadInput(format!("{name} must be a ray in dimension 2")));
        }
    }
    let a1_perp = a1.ortho();
    if a2 == a1 || *a2 == a1_perp {
        return Err(ProductError::BadInput(
            "a2 equals a1 or its orthocomplement; basis states clone without obstruction".into(),
        ));
    }
    let ab = tensor_subspace(a1, beta);
    let apb = tensor_subspace(&a1_perp, beta);
    let input = tensor_subspace(a2, beta);
    let input_under_join = input.is_subspace_of(&ab.sum(&apb)?)?;
    let input_is_axis = is_axis_of_perspectivity(&input, &ab, &apb)?;

    let clone_join = tensor_subspace(a1, a1).sum(&tensor_subspace(&a1_perp, &a1_perp))?;
    let clone = tensor_subspace(a2, a2);
    let output_outside_join = !clone.is_subspace_of(&clone_join)?;

    let v2 = &a2.basis()[0];
    let clone_rank = schmidt_rank(&tensor_vector(v2, v2), 2, 2)?;
    let (v, w) = (&a1.basis()[0], &a1_perp.basis()[0]);
    let interior: Vec<_> = tensor_vector(v, v)
        .iter()
        .zip(tensor_vector(w, w))
        .map(|(x, y)| x + &y)
        .collect();
    let interior_rank = schmidt_rank(&interior, 2, 2)?;

    Ok(ObstructionReport {
        input_under_join,
        input_is_axis,
        output_outside_join,
        clone_rank,
        interior_rank,
    })
}

/// A lattice inside an embedding file: a path (relative to the file) or an
/// inline lattice document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeRef {
    Path(String),
    Inline(serde_json::Value),
}

/// On-disk form of a [`ProductEmbedding`]; maps go by element name.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProductEmbeddingFile {
    pub factor_a: LatticeRef,
    pub factor_b: LatticeRef,
    pub product: LatticeRef,
    pub inj_a: BTreeMap<String, String>,
    pub inj_b: BTreeMap<String, String>,
}

impl ProductEmbeddingFile {
    pub fn load(&self, base: &Path, closure_cap: usize) -> Result<ProductEmbedding, ProductError> {
        let lattice = |r: &LatticeRef| -> Result<FiniteOml, ProductError> {
            let text = match r {
                LatticeRef::Path(p) => {
                    let path = base.join(p);
                    std::fs::read_to_string(&path).map_err(|e| ProductError::Io {
                        path: path.display().to_string(),
                        message: e.to_string(),
                    })?
                }
                LatticeRef::Inline(v) => v.to_string(),
            };
            Ok(LatticeFile::from_json(&text)?.build(closure_cap)?)
        };
        let (fa, fb, p) = (lattice(&self.factor_a)?, lattice(&self.factor_b)?, lattice(&self.product)?);
        let map = |factor: &FiniteOml, names: &BTreeMap<String, String>| -> Result<Vec<Elem>, ProductError> {
            factor
                .elements()
                .map(|e| {
                    let target = names.get(factor.name(e)).ok_or_else(|| {
                        ProductError::EmbeddingInvariantViolated(format!("no image for `{}`", factor.name(e)))
                    })?;
                    Ok(p.element(target)?)
                })
                .collect()
        };
        let inj_a = map(&fa, &self.inj_a)?;
        let inj_b = map(&fb, &self.inj_b)?;
        ProductEmbedding::new(fa, fb, p, inj_a, inj_b)
    }

    pub fn from_embedding(pe: &ProductEmbedding) -> Self {
        let inline = |l: &FiniteOml| {
            LatticeRef::Inline(serde_json::to_value(LatticeFile::from_lattice(l)).expect("serializable"))
        };
        let map = |factor: &FiniteOml, inj: &dyn Fn(Elem) -> Elem| {
            factor
                .elements()
                .map(|e| (factor.name(e).to_string(), pe.product.name(inj(e)).to_string()))
                .collect()
        };
        ProductEmbeddingFile {
            factor_a: inline(&pe.factor_a),
            factor_b: inline(&pe.factor_b),
            product: inline(&pe.product),
            inj_a: map(&pe.factor_a, &|e| pe.inj_a(e)),
            inj_b: map(&pe.factor_b, &|e| pe.inj_b(e)),
        }
    }
}
