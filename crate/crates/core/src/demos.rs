//! Ready-made pipelines that replay each result as a [`Report`].
//!
//! Every demo runs with built-in defaults; most accept a JSON config that
//! overrides the rays or angles.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::correlations::{
    boolean_prbox_analysis_with, boolean_prbox_host, parities_with_anti, quantum_prbox_meet,
    CorrelationError, QuantumConfig, QuantumConfigFile, SETTING_LABELS,
};
use crate::exactlin::{
    fmt_vector, int_vector, parse_vector, schmidt_rank, subspace_lattice_closure, ExactError, RaySeed,
    RaySeedFile, ScalarRepr, Subspace, SubspaceFragment, DEFAULT_CLOSURE_CAP,
};
use crate::lattice::{Check, Elem, FiniteOml};
use crate::povm::{
    born_rule, cabello_povms, entwined, frame_function_check, noncontextual_assignment_search,
    post_measurement_state, projector, ray_lookup, sequential_povm, three_qubit_commuting_sets,
    trace_distance_pure, CMatrix, CVector, Frame, PovmError, ProjectiveMeasurement, DEFAULT_TOL,
};
use crate::products::{
    find_entangled_atoms, no_cloning_obstruction, strong_perspectivity_witness, verify_product_conditions,
    ProductEmbedding, ProductError,
};
use crate::report::{fmt_f64, Report};

pub const DEMOS: [&str; 9] = [
    "prbox-boolean",
    "prbox-quantum",
    "entangled-atom",
    "no-cloning",
    "cabello",
    "cabello-commuting",
    "sequential-povm",
    "entwinement",
    "gleason-2d",
];

#[derive(Debug, Error)]
pub enum DemoError {
    #[error("unknown demo `{0}`; expected one of: {list}", list = DEMOS.join(", "))]
    UnknownDemo(String),
    #[error("bad config: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Correlation(#[from] CorrelationError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Povm(#[from] PovmError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, Default)]
pub struct DemoOptions {
    /// JSON config text.
    pub config: Option<String>,
    /// Angle for `sequential-povm`, in radians.
    pub theta: Option<f64>,
    pub closure_cap: Option<usize>,
}

pub fn run_demo(name: &str, opts: &DemoOptions) -> Result<Report, DemoError> {
    let config = opts.config.as_deref();
    match name {
        "prbox-boolean" => prbox_boolean(config),
        "prbox-quantum" => prbox_quantum(config),
        "entangled-atom" => entangled_atom(config, opts.closure_cap.unwrap_or(DEFAULT_CLOSURE_CAP)),
        "no-cloning" => no_cloning(config),
        "cabello" => cabello(config),
        "cabello-commuting" => cabello_commuting(config),
        "sequential-povm" => sequential(opts.theta.unwrap_or(PI / 6.0)),
        "entwinement" => entwinement(),
        "gleason-2d" => gleason_2d(),
        other => Err(DemoError::UnknownDemo(other.into())),
    }
}

fn parse_config<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, DemoError> {
    serde_json::from_str(text).map_err(|e| DemoError::BadConfig(e.to_string()))
}

fn tuple_names(l: &FiniteOml, w: &[Elem]) -> String {
    let names: Vec<&str> = w.iter().map(|&e| l.name(e)).collect();
    format!("({})", names.join(", "))
}

/// Witness list for a predicate, the first few in full.
pub fn describe_check(l: &FiniteOml, c: &Check) -> String {
    const SHOWN: usize = 6;
    let mut parts: Vec<String> = c.witnesses.iter().take(SHOWN).map(|w| tuple_names(l, w)).collect();
    if c.witnesses.len() > SHOWN {
        parts.push(format!("... {} in total", c.witnesses.len()));
    }
    parts.join("; ")
}

/// Lattice predicates the `check` front ends can request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    Orthomodular,
    CommutationSymmetry,
    Atomic,
    Complete,
    Irreducible,
    Covering,
    /// The whole Piron bundle.
    Piron,
}

impl Predicate {
    pub fn name(self) -> &'static str {
        match self {
            Predicate::Orthomodular => "orthomodular",
            Predicate::CommutationSymmetry => "commutation-symmetry",
            Predicate::Atomic => "atomic",
            Predicate::Complete => "complete",
            Predicate::Irreducible => "irreducible",
            Predicate::Covering => "covering",
            Predicate::Piron => "piron",
        }
    }
}

/// Runs `predicates` (the full Piron bundle when empty) on `l`.
pub fn check_lattice(name: &str, l: &FiniteOml, predicates: &[Predicate]) -> Report {
    let mut r = Report::new(format!("check {name}"), "definitions/Piron lattices");
    r.step(
        "FiniteOml::from_order",
        format!("{} elements, {} atoms", l.len(), l.atoms().len()),
        "a bounded ortholattice",
        true,
        "",
    );
    let all = [Predicate::Piron];
    let predicates = if predicates.is_empty() { &all[..] } else { predicates };
    let push = |r: &mut Report, label: &str, op: &str, c: &Check| {
        r.step(op, label.to_string(), format!("{label} holds"), c.holds(), describe_check(l, c));
    };
    for &p in predicates {
        match p {
            Predicate::Orthomodular => push(&mut r, "orthomodular", "check_orthomodular", &l.check_orthomodular()),
            Predicate::CommutationSymmetry => push(
                &mut r,
                "commutation-symmetry",
                "check_commutation_symmetry",
                &l.check_commutation_symmetry(),
            ),
            Predicate::Atomic => push(&mut r, "atomic", "check_atomic", &l.check_atomic()),
            Predicate::Complete => push(&mut r, "complete", "check_piron", &l.check_piron().complete),
            Predicate::Irreducible => push(&mut r, "irreducible", "check_irreducible", &l.check_irreducible()),
            Predicate::Covering => push(&mut r, "covering", "check_covering", &l.check_covering()),
            Predicate::Piron => {
                let report = l.check_piron();
                for (label, c) in report.entries() {
                    push(&mut r, label, "check_piron", c);
                }
            }
        }
    }
    r
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AntiConfig {
    anti_correlated: usize,
}

fn prbox_boolean(config: Option<&str>) -> Result<Report, DemoError> {
    let (host, mut spec) = boolean_prbox_host();
    if let Some(text) = config {
        let c: AntiConfig = parse_config(text)?;
        if !(1..=4).contains(&c.anti_correlated) {
            return Err(DemoError::BadConfig("anti_correlated must be 1..=4".into()));
        }
        spec.parities = parities_with_anti(c.anti_correlated - 1);
    }
    let result = boolean_prbox_analysis_with(&host, &spec);
    let points = |event: u64| {
        let pts: Vec<String> = (0..16)
            .filter(|p| event >> p & 1 == 1)
            .map(|p: u32| SETTING_LABELS.iter().enumerate().map(|(k, l)| format!("{l}={}", p >> k & 1)).collect::<Vec<_>>().join(" "))
            .collect();
        pts.join("; ")
    };
    let mut r = Report::new("prbox-boolean", "correlations/PR box, Boolean host");
    for (k, p) in spec.polynomials(&host).iter().enumerate() {
        r.step(
            "correlation_polynomial",
            format!("correlation {} as an event over 16 outcome assignments", k + 1),
            "half of the assignments satisfy it",
            p.count_ones() == 8,
            format!("{} assignments", p.count_ones()),
        );
    }
    r.step(
        "boolean_prbox_analysis",
        "meet of all four correlations",
        "the meet is 0",
        result.all_four == 0,
        format!("{} satisfying assignments", result.all_four.count_ones()),
    );
    for t in &result.triples {
        let [x, y, z] = t.correlations;
        r.step(
            "boolean_prbox_analysis",
            format!("meet of correlations {x}, {y}, {z}"),
            "nonzero with exactly 2 satisfying assignments",
            t.satisfying == 2,
            points(t.event),
        );
    }
    Ok(r)
}

fn prbox_quantum(config: Option<&str>) -> Result<Report, DemoError> {
    let cfg = match config {
        Some(text) => parse_config::<QuantumConfigFile>(text)?.to_config()?,
        None => QuantumConfig::default(),
    };
    let q = quantum_prbox_meet(&cfg)?;
    let mut r = Report::new("prbox-quantum", "correlations/PR box, two qubits");
    let settings = [&cfg.a1, &cfg.a2, &cfg.b1, &cfg.b2];
    r.step(
        "quantum_prbox_meet",
        "settings",
        "A settings and B settings are non-commuting qubit rays",
        true,
        SETTING_LABELS
            .iter()
            .zip(settings)
            .map(|(l, v)| format!("{l}={}", fmt_vector(v)))
            .collect::<Vec<_>>()
            .join(" "),
    );
    for k in 0..4 {
        r.step(
            "commutes",
            format!("correlation {}: constituents commute", k + 1),
            "each setting commutes with its partner",
            q.constituents_commute[k],
            format!("support {}", q.supports[k]),
        );
        r.step(
            "correlation_polynomial",
            format!("correlation {}: rewrite as a meet of joins", k + 1),
            "(x ∧ y) ∨ (x⊥ ∧ y⊥) = (x ∨ y⊥) ∧ (x⊥ ∨ y)",
            q.rewrites_hold[k],
            "",
        );
    }
    for p in &q.pairs {
        let (i, j) = p.pair;
        match &p.replay {
            Some(rep) => {
                r.step(
                    "is_distributive_triple",
                    format!("pair ({i},{j}) shares {}: distributive triple", rep.pivot),
                    format!("{0} commutes with both partner complements, and {0}⊥ with both partners", rep.pivot),
                    rep.triple && rep.dual_triple,
                    format!("{} ∨ u⊥ = {}; {} ∨ v⊥ = {}", rep.pivot, rep.joins[0], rep.pivot, rep.joins[1]),
                );
                r.step(
                    "distributive_identities",
                    format!("pair ({i},{j}): distribute {} over the partner meet", rep.pivot),
                    format!("{0} ∨ (u⊥ ∧ v⊥) = ({0} ∨ u⊥) ∧ ({0} ∨ v⊥) = {0}", rep.pivot),
                    rep.identity && rep.bounds_collapse,
                    format!("{}", rep.upper),
                );
                r.step(
                    "quantum_prbox_meet",
                    format!("pair ({i},{j}): dual bound"),
                    format!("{0}⊥ ∨ (u ∧ v) = {0}⊥, so a common atom lies under {0} ∧ {0}⊥ = 0", rep.pivot),
                    rep.bounds_collapse && rep.bound.is_zero(),
                    format!("{}", rep.lower),
                );
                r.step(
                    "Subspace::intersect",
                    format!("pair ({i},{j}): direct intersection of supports"),
                    "equals the derived bound 0",
                    p.agrees() && p.direct.is_zero(),
                    format!("{}", p.direct),
                );
            }
            None => {
                r.step(
                    "Subspace::intersect",
                    format!("pair ({i},{j}): no shared setting"),
                    "outside the argument; meet reported only",
                    true,
                    format!("{}", p.direct),
                );
            }
        }
    }
    r.step(
        "quantum_prbox_meet",
        "correlations 1 and 2",
        "no atom lies under both supports: the meet is 0",
        q.meet().is_zero() && q.exclusion_holds(),
        format!("{}", q.meet()),
    );
    Ok(r)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FragmentConfig {
    seed: RaySeedFile,
}

/// Rays `e00, e01, e10, e11, e00 + e11` closed twice: the two-qubit fragment
/// used for entangled atoms.
pub fn bell_fragment_seed() -> RaySeed {
    let rays = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 1]];
    RaySeed::new(4, rays.iter().map(|r| int_vector(r)).collect(), 2)
}

/// The qubit fragment `{0, e0, e1, V}`.
pub fn axis_fragment() -> SubspaceFragment {
    subspace_lattice_closure(&RaySeed::new(2, vec![int_vector(&[1, 0])], 1), DEFAULT_CLOSURE_CAP)
        .expect("four elements")
}

fn entangled_atom(config: Option<&str>, cap: usize) -> Result<Report, DemoError> {
    let seed = match config {
        Some(text) => parse_config::<FragmentConfig>(text)?.seed.to_seed()?,
        None => bell_fragment_seed(),
    };
    if seed.ambient_dim != 4 {
        return Err(DemoError::BadConfig("the product fragment must live in dimension 4".into()));
    }
    let product = subspace_lattice_closure(&seed, cap)?;
    let factor = axis_fragment();
    let pe = ProductEmbedding::from_fragments(&factor, &factor, &product)?;
    let l = pe.product();
    let mut r = Report::new("entangled-atom", "products/entangled atoms");
    r.step(
        "subspace_lattice_closure",
        format!("two-qubit fragment: {} subspaces", l.len()),
        "an orthomodular sublattice of the subspace lattice",
        l.is_orthomodular() && product.is_sublattice(),
        format!("{} atoms", l.atoms().len()),
    );
    let atoms = find_entangled_atoms(&pe);
    r.step(
        "find_entangled_atoms",
        "atoms not of the form i_A(α) ∧ i_B(β)",
        "at least one entangled atom",
        !atoms.is_empty(),
        atoms.iter().map(|&a| l.name(a)).collect::<Vec<_>>().join(" "),
    );
    for &a in &atoms {
        let v = &product.subspace(a).basis()[0];
        let rank = schmidt_rank(v, 2, 2)?;
        r.step(
            "schmidt_rank",
            format!("Schmidt rank of {}", l.name(a)),
            "rank 2, not a product vector",
            rank == 2,
            format!("rank {rank}"),
        );
    }
    let f = factor.lattice();
    let a = f.atoms()[0];
    let (x, y) = (pe.product_meet(a, a), pe.product_meet(f.ortho(a), f.ortho(a)));
    let witness = strong_perspectivity_witness(l, x, y);
    r.step(
        "strong_perspectivity_witness",
        format!("{} and {} are strongly perspective", l.name(x), l.name(y)),
        "a common complement globally and a nonzero one within their join",
        witness.is_some(),
        witness.map_or("none".into(), |w| format!("global {}; axis {}", l.name(w.global), l.name(w.axis))),
    );
    if let Some(w) = witness {
        let v = &product.subspace(w.axis).basis()[0];
        let rank = schmidt_rank(v, 2, 2)?;
        r.step(
            "schmidt_rank",
            "the axis of perspectivity is a superposition",
            "rank 2",
            rank == 2,
            format!("rank {rank}"),
        );
    }
    let report = verify_product_conditions(&pe)?;
    let flag = |ok: bool| if ok { "holds" } else { "fails" };
    r.step(
        "verify_product_conditions",
        "independence: i_A(α) ∧ i_B(β) ≠ 0 for nonzero α, β",
        "holds on the fragment",
        report.independence_ok(),
        format!("{} failures", report.independence.len()),
    );
    r.step(
        "verify_product_conditions",
        "block pairs generate maximal Boolean products",
        "holds on the fragment",
        report.boolean_block_ok(),
        format!("{} failures", report.boolean_blocks.len()),
    );
    r.step(
        "verify_product_conditions",
        "Piron conditions and generation on the fragment",
        "reported; a finite fragment need not satisfy either",
        true,
        format!(
            "Piron {}; images generate {} of {} elements",
            flag(report.piron_ok()),
            l.len() - report.generation.len(),
            l.len()
        ),
    );
    Ok(r)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CloningConfig {
    a1: Vec<ScalarRepr>,
    a2: Vec<ScalarRepr>,
    beta: Vec<ScalarRepr>,
}

fn no_cloning(config: Option<&str>) -> Result<Report, DemoError> {
    let (a1, a2, beta) = match config {
        Some(text) => {
            let c: CloningConfig = parse_config(text)?;
            (parse_vector(&c.a1)?, parse_vector(&c.a2)?, parse_vector(&c.beta)?)
        }
        None => (int_vector(&[1, 0]), int_vector(&[1, 1]), int_vector(&[1, 0])),
    };
    let (s1, s2, sb) = (Subspace::ray(&a1)?, Subspace::ray(&a2)?, Subspace::ray(&beta)?);
    let o = no_cloning_obstruction(&s1, &s2, &sb)?;
    let mut r = Report::new("no-cloning", "products/no-cloning");
    r.step(
        "no_cloning_obstruction",
        "configuration",
        "a2 is a superposition of a1 and a1⊥",
        true,
        format!("a1={} a2={} β={}", s1, s2, sb),
    );
    r.step(
        "Subspace::is_subspace_of",
        "input: a2⊗β under (a1⊗β) ∨ (a1⊥⊗β)",
        "holds",
        o.input_under_join,
        "",
    );
    r.step(
        "is_axis_of_perspectivity",
        "input: a2⊗β is an axis of perspectivity of a1⊗β and a1⊥⊗β",
        "holds",
        o.input_is_axis,
        "",
    );
    r.step(
        "Subspace::is_subspace_of",
        "output: a2⊗a2 under (a1⊗a1) ∨ (a1⊥⊗a1⊥)",
        "fails, so the clone cannot be an axis of the cloned pair",
        o.output_outside_join,
        "",
    );
    r.step(
        "schmidt_rank",
        "cross-check by Schmidt rank",
        "a2⊗a2 has rank 1 while the join's interior rays have rank 2",
        o.clone_rank == 1 && o.interior_rank == 2,
        format!("clone rank {}, interior rank {}", o.clone_rank, o.interior_rank),
    );
    r.step(
        "no_cloning_obstruction",
        "conclusion",
        "no order automorphism sends a1⊗β, a1⊥⊗β, a2⊗β to their clones",
        o.established(),
        "",
    );
    Ok(r)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleConfig {
    a: Vec<[f64; 2]>,
    b: Vec<[f64; 2]>,
    c: Vec<[f64; 2]>,
}

fn complex_vector(v: &[[f64; 2]]) -> Vec<Complex64> {
    v.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

/// `|0⟩⟨0|`, `|+⟩⟨+|` and the projector onto `(1, i)/√2`.
pub fn standard_triple() -> [CMatrix; 3] {
    let (o, l, i) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
    [projector(&[l, o]), projector(&[l, l]), projector(&[l, i])]
}

fn triple(config: Option<&str>) -> Result<[CMatrix; 3], DemoError> {
    match config {
        None => Ok(standard_triple()),
        Some(text) => {
            let c: TripleConfig = parse_config(text)?;
            let p = |v: &[[f64; 2]]| {
                if v.len() != 2 || v.iter().all(|&[re, im]| re == 0.0 && im == 0.0) {
                    Err(DemoError::BadConfig("each vector must be a nonzero 2-vector".into()))
                } else {
                    Ok(projector(&complex_vector(v)))
                }
            };
            Ok([p(&c.a)?, p(&c.b)?, p(&c.c)?])
        }
    }
}

fn cabello(config: Option<&str>) -> Result<Report, DemoError> {
    let [a, b, c] = triple(config)?;
    let povms = cabello_povms(&a, &b, &c, DEFAULT_TOL)?;
    let mut r = Report::new("cabello", "POVMs/Cabello");
    for (k, p) in povms.iter().enumerate() {
        let d = p.validate(DEFAULT_TOL);
        let labels: Vec<&str> = p.effects().iter().map(|e| e.label.as_str()).collect();
        r.step(
            "validate_povm",
            format!("POVM {}: {{{}}}", k + 1, labels.join(", ")),
            "positive, bounded by I, sums to I",
            d.is_valid(),
            format!("max residual {}", fmt_f64(d.max_residual())),
        );
    }
    let s = noncontextual_assignment_search(&povms, DEFAULT_TOL)?;
    r.step(
        "noncontextual_assignment_search",
        "shared labels across the three POVMs",
        "6 distinct effect labels",
        s.labels.len() == 6,
        s.labels.join(" "),
    );
    r.step(
        "noncontextual_assignment_search",
        "exactly one effect per POVM, same value for shared labels",
        "no valid assignment",
        s.valid.is_empty(),
        format!("{}/{} assignments valid", s.valid.len(), s.total),
    );
    Ok(r)
}

fn cabello_commuting(config: Option<&str>) -> Result<Report, DemoError> {
    let [a, b, c] = triple(config)?;
    let rep = three_qubit_commuting_sets(&a, &b, &c, DEFAULT_TOL)?;
    let mut r = Report::new("cabello-commuting", "POVMs/Cabello, three qubits");
    for (k, (p, d)) in rep.povms.iter().zip(&rep.diagnostics).enumerate() {
        let labels: Vec<&str> = p.effects().iter().map(|e| e.label.as_str()).collect();
        r.step(
            "validate_povm",
            format!("POVM {}: {{{}}}", k + 4, labels.join(", ")),
            "sums to I⊗I⊗I within 1e-12",
            d.is_valid() && d.identity_deviation < 1e-12,
            format!("sum deviation {}", fmt_f64(d.identity_deviation)),
        );
    }
    r.step(
        "three_qubit_commuting_sets",
        format!("{} commutators among the six operators", rep.commutators.len()),
        "all vanish within 1e-12",
        rep.commutators.len() == 15 && rep.max_commutator() < 1e-12,
        format!("max commutator entry {}", fmt_f64(rep.max_commutator())),
    );
    r.step(
        "noncontextual_assignment_search",
        "exactly one effect per POVM, same value for shared labels",
        "no valid assignment",
        rep.search.valid.is_empty(),
        format!("{}/{} assignments valid", rep.search.valid.len(), rep.search.total),
    );
    Ok(r)
}

fn sequential(theta: f64) -> Result<Report, DemoError> {
    if !theta.is_finite() {
        return Err(DemoError::BadConfig("theta must be finite".into()));
    }
    let z = ProjectiveMeasurement::z_basis();
    let (plus, minus) = (ProjectiveMeasurement::spin(theta), ProjectiveMeasurement::spin(-theta));
    let (e_plus, e_minus) = (sequential_povm(&z, &plus)?, sequential_povm(&z, &minus)?);
    let mut r = Report::new("sequential-povm", "POVMs/sequential measurement");
    for (sign, p) in [("+", &e_plus), ("-", &e_minus)] {
        let d = p.validate(DEFAULT_TOL);
        r.step(
            "sequential_povm",
            format!("z then spin at {sign}θ, θ = {}", fmt_f64(theta)),
            "E(i,j) = P_i Q_j P_i is a POVM",
            d.is_valid(),
            format!("max residual {}", fmt_f64(d.max_residual())),
        );
    }
    let residual = e_plus
        .effects()
        .iter()
        .zip(e_minus.effects())
        .map(|(x, y)| crate::povm::max_abs(&(&x.matrix - &y.matrix)))
        .fold(0.0, f64::max);
    r.step(
        "sequential_povm",
        "compare the +θ and −θ POVMs",
        "identical within 1e-9",
        residual < DEFAULT_TOL,
        format!("max entry difference {}", fmt_f64(residual)),
    );
    let c2 = (theta / 2.0).cos().powi(2);
    let weights = [c2, 1.0 - c2, 1.0 - c2, c2];
    let weight_dev = e_plus
        .effects()
        .iter()
        .enumerate()
        .map(|(k, e)| crate::povm::max_abs(&(&e.matrix - z.projectors()[k / 2].scale(weights[k]))))
        .fold(0.0, f64::max);
    r.step(
        "sequential_povm",
        "effect weights",
        "E(0,+) = cos²(θ/2) P0, E(0,−) = sin²(θ/2) P0, E(1,+) = sin²(θ/2) P1, E(1,−) = cos²(θ/2) P1",
        weight_dev < 1e-12,
        format!("cos²(θ/2) = {}, sin²(θ/2) = {}", fmt_f64(c2), fmt_f64(1.0 - c2)),
    );
    let ket0 = CVector::from_column_slice(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
    let s_plus = post_measurement_state(&ket0, &z, &plus, (0, 0), DEFAULT_TOL)?;
    let s_minus = post_measurement_state(&ket0, &z, &minus, (0, 0), DEFAULT_TOL)?;
    let distance = trace_distance_pure(&s_plus, &s_minus);
    let expected = theta.sin().abs();
    r.step(
        "post_measurement_state",
        "states after outcome (0,+) on |0⟩",
        "trace distance |sin θ|",
        (distance - expected).abs() < DEFAULT_TOL,
        format!("trace distance {}", fmt_f64(distance)),
    );
    r.step(
        "trace_distance_pure",
        "same effect, different outcome states",
        "the post-measurement states differ",
        distance > DEFAULT_TOL,
        "",
    );
    Ok(r)
}

fn cv(entries: &[f64]) -> CVector {
    CVector::from_iterator(entries.len(), entries.iter().map(|&x| Complex64::new(x, 0.0)))
}

/// The standard basis of dimension 3 and the frame that keeps `e1` and
/// rotates the other two by 45°.
pub fn shared_ray_frames() -> (Frame, Frame) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let f2 = Frame::new(vec![cv(&[1.0, 0.0, 0.0]), cv(&[0.0, s, s]), cv(&[0.0, s, -s])], DEFAULT_TOL)
        .expect("orthonormal");
    (Frame::standard(3), f2)
}

/// Real rotation of the standard qubit frame by `phi`, with a phase on the
/// second vector.
pub fn qubit_frame(phi: f64, phase: f64) -> Frame {
    let (s, c) = phi.sin_cos();
    let w = Complex64::from_polar(1.0, phase);
    let v1 = CVector::from_column_slice(&[Complex64::new(c, 0.0), Complex64::new(s, 0.0)]);
    let v2 = CVector::from_column_slice(&[w * -s, w * c]);
    Frame::new(vec![v1, v2], DEFAULT_TOL).expect("orthonormal")
}

fn entwinement() -> Result<Report, DemoError> {
    let mut r = Report::new("entwinement", "POVMs/entwinement");
    let (f1, f2) = shared_ray_frames();
    let e = entwined(&f1, &f2, DEFAULT_TOL)?;
    r.step(
        "entwined",
        "dimension 3: {e1, e2, e3} and {e1, (e2+e3)/√2, (e2−e3)/√2}",
        "entwined: one shared ray",
        e && entwined(&f2, &f1, DEFAULT_TOL)?,
        "",
    );
    let frames: Vec<Frame> = (0..8).map(|k| qubit_frame(k as f64 * PI / 9.0, k as f64 * 0.7)).collect();
    let mut pairs = 0;
    let mut found = 0;
    for f in &frames {
        for g in &frames {
            pairs += 1;
            found += entwined(f, g, DEFAULT_TOL)? as usize;
        }
    }
    r.step(
        "entwined",
        format!("dimension 2: {} frames, all {pairs} ordered pairs", frames.len()),
        "no pair is entwined",
        found == 0,
        format!("{found} entwined pairs"),
    );
    let psi = CVector::from_column_slice(&[
        Complex64::new(0.6, 0.0),
        Complex64::new(0.0, 0.48),
        Complex64::new(0.64, 0.0),
    ]);
    let contexts = vec![f1.vectors().to_vec(), f2.vectors().to_vec()];
    let ff = frame_function_check(&contexts, born_rule(&psi), DEFAULT_TOL)?;
    r.step(
        "frame_function_check",
        "Born rule on the entwined frames",
        "a probability frame function, r = 1",
        ff.is_probability(),
        format!("r = {}, max residual {}", fmt_f64(ff.r), fmt_f64(ff.max_residual)),
    );
    Ok(r)
}

fn gleason_2d() -> Result<Report, DemoError> {
    let mut r = Report::new("gleason-2d", "POVMs/frame functions");
    let (f, g) = (qubit_frame(0.0, 0.0), qubit_frame(PI / 4.0, 0.0));
    r.step("entwined", "two qubit frames", "not entwined", !entwined(&f, &g, DEFAULT_TOL)?, "");
    let table: Vec<(CVector, f64)> = vec![
        (f.vectors()[0].clone(), 0.7),
        (f.vectors()[1].clone(), 0.3),
        (g.vectors()[0].clone(), 0.1),
        (g.vectors()[1].clone(), 0.9),
    ];
    let contexts = vec![f.vectors().to_vec(), g.vectors().to_vec()];
    let ff = frame_function_check(&contexts, |v| ray_lookup(&table, v, DEFAULT_TOL), DEFAULT_TOL)?;
    r.step(
        "frame_function_check",
        "values chosen independently on each frame: 0.7, 0.3 and 0.1, 0.9",
        "a probability frame function",
        ff.is_probability(),
        format!("r = {}", fmt_f64(ff.r)),
    );
    let (h1, h2) = shared_ray_frames();
    let mut table3: Vec<(CVector, f64)> = Vec::new();
    for (frame, values) in [(&h1, [0.5, 0.3, 0.2]), (&h2, [0.2, 0.4, 0.4])] {
        for (v, x) in frame.vectors().iter().zip(values) {
            table3.push((v.clone(), x));
        }
    }
    let conflicts = table3
        .iter()
        .filter(|(v, x)| ray_lookup(&table3, v, DEFAULT_TOL).is_some_and(|first| first != *x))
        .count();
    r.step(
        "ray_lookup",
        "the same recipe in dimension 3 on entwined frames",
        "the shared ray receives two values, so it is not a function on rays",
        conflicts > 0,
        format!("{conflicts} conflicting entries"),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_demo_passes_on_defaults() {
        for name in DEMOS {
            let r = run_demo(name, &DemoOptions::default()).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn unknown_demo() {
        assert!(matches!(run_demo("nope", &DemoOptions::default()), Err(DemoError::UnknownDemo(_))));
    }

    #[test]
    fn configs() {
        let opts = |c: &str| DemoOptions {
            config: Some(c.into()),
            ..Default::default()
        };
        assert!(run_demo("prbox-boolean", &opts(r#"{"anti_correlated":1}"#)).unwrap().passed());
        let bad = run_demo("prbox-quantum", &opts(r#"{"a1":[1,0],"a2":[1,0],"b1":[1,0],"b2":[1,1]}"#));
        assert!(matches!(bad, Err(DemoError::Correlation(CorrelationError::BadConfig(_)))));
        assert!(run_demo("no-cloning", &opts(r#"{"a1":[1,0],"a2":[1,-1],"beta":[0,1]}"#)).unwrap().passed());
        assert!(run_demo("cabello", &opts(r#"{"a":[[1,0],[0,0]],"b":[[1,0],[1,0]],"c":[[1,0],[0,1]]}"#))
            .unwrap()
            .passed());
        assert!(matches!(run_demo("cabello", &opts("{")), Err(DemoError::BadConfig(_))));
    }

    #[test]
    fn check_reports() {
        let o6 = crate::lattice::generators::o6();
        let r = check_lattice("o6", &o6, &[Predicate::Orthomodular]);
        assert!(!r.passed());
        assert_eq!(r.steps[1].witness.split("; ").next(), Some("(a, b)"));
        let m2 = crate::lattice::generators::mo(2).unwrap();
        assert!(check_lattice("mo:2", &m2, &[]).passed());
    }
}
