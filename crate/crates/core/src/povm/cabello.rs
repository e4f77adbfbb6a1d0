use std::collections::BTreeMap;

use serde::Serialize;

use super::{identity, kron_all, max_abs, CMatrix, Effect, Povm, PovmDiagnostics, PovmError};

/// Exhaustive search refuses more labels than this.
pub const MAX_SEARCH_LABELS: usize = 24;

const NAMES: [&str; 3] = ["A", "B", "C"];

fn check_rank_one(name: &str, p: &CMatrix, tol: f64) -> Result<(), PovmError> {
    let bad = |why: &str| Err(PovmError::BadProjector(format!("{name}: {why}")));
    if p.shape() != (2, 2) {
        return bad("not a 2x2 matrix");
    }
    if max_abs(&(p - p.adjoint())) > tol {
        return bad("not Hermitian");
    }
    if max_abs(&(p * p - p)) > tol {
        return bad("not idempotent");
    }
    if (p.trace().re - 1.0).abs() > tol {
        return bad("trace is not 1");
    }
    Ok(())
}

fn check_triple(ps: [&CMatrix; 3], tol: f64) -> Result<(), PovmError> {
    for (i, p) in ps.iter().enumerate() {
        check_rank_one(NAMES[i], p, tol)?;
    }
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        let (x, y) = (NAMES[i], NAMES[j]);
        if max_abs(&(ps[i] - ps[j])) <= tol {
            return Err(PovmError::DegenerateTriple(format!("{x} and {y} project onto the same ray")));
        }
        if max_abs(&(ps[i] * ps[j])) <= tol {
            return Err(PovmError::DegenerateTriple(format!("{x} and {y} are orthogonal")));
        }
    }
    Ok(())
}

/// The halved projector pair for one of `A, B, C`: effects `X/2`, `X'/2`.
fn halves(name: &str, p: &CMatrix) -> [Effect; 2] {
    let perp = identity(p.nrows()) - p;
    [
        Effect::new(format!("{name}/2"), p.scale(0.5)),
        Effect::new(format!("{name}'/2"), perp.scale(0.5)),
    ]
}

/// `{A/2, A'/2, B/2, B'/2}`, `{B/2, B'/2, C/2, C'/2}`, `{C/2, C'/2, A/2, A'/2}`
/// for rank-1 qubit projectors onto mutually non-orthogonal, distinct rays.
pub fn cabello_povms(a: &CMatrix, b: &CMatrix, c: &CMatrix, tol: f64) -> Result<[Povm; 3], PovmError> {
    check_triple([a, b, c], tol)?;
    let h = [halves("A", a), halves("B", b), halves("C", c)];
    Ok(std::array::from_fn(|k| {
        let (x, y) = (k, (k + 1) % 3);
        Povm::new(h[x].iter().chain(&h[y]).cloned().collect()).expect("2x2 effects")
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub values: BTreeMap<String, u8>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AssignmentSearch {
    /// Distinct labels in sorted order.
    pub labels: Vec<String>,
    /// Number of 0/1 assignments examined, `2^labels`.
    pub total: u64,
    /// Assignments giving exactly one value-1 effect in every POVM, in
    /// binary counting order over `labels`.
    pub valid: Vec<Assignment>,
}

/// Exhausts 0/1 valuations of the distinct labels. Equal labels are forced
/// to equal values, which is the noncontextuality assumption; equal labels
/// must therefore name equal matrices.
pub fn noncontextual_assignment_search(povms: &[Povm], tol: f64) -> Result<AssignmentSearch, PovmError> {
    let mut seen: BTreeMap<&str, &CMatrix> = BTreeMap::new();
    for e in povms.iter().flat_map(Povm::effects) {
        match seen.get(e.label.as_str()) {
            Some(m) if m.shape() != e.matrix.shape() || max_abs(&(*m - &e.matrix)) > tol => {
                return Err(PovmError::LabelClash(e.label.clone()));
            }
            Some(_) => {}
            None => {
                seen.insert(&e.label, &e.matrix);
            }
        }
    }
    let labels: Vec<String> = seen.keys().map(|s| s.to_string()).collect();
    if labels.len() > MAX_SEARCH_LABELS {
        return Err(PovmError::SearchTooLarge(labels.len()));
    }
    let index = |l: &str| labels.binary_search_by(|x| x.as_str().cmp(l)).expect("collected above");
    let members: Vec<Vec<usize>> = povms
        .iter()
        .map(|p| p.effects().iter().map(|e| index(&e.label)).collect())
        .collect();

    let total = 1u64 << labels.len();
    let valid = (0..total)
        .filter(|mask| {
            members
                .iter()
                .all(|m| m.iter().filter(|&&i| mask >> i & 1 == 1).count() == 1)
        })
        .map(|mask| Assignment {
            values: labels
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), (mask >> i & 1) as u8))
                .collect(),
        })
        .collect();
    Ok(AssignmentSearch { labels, total, valid })
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutatorEntry {
    pub left: String,
    pub right: String,
    /// Largest entry of `XY − YX`.
    pub norm: f64,
}

#[derive(Debug, Clone)]
pub struct CommutingSetsReport {
    pub povms: [Povm; 3],
    pub diagnostics: [PovmDiagnostics; 3],
    /// All pairs among the six distinct operators.
    pub commutators: Vec<CommutatorEntry>,
    pub search: AssignmentSearch,
}

impl CommutingSetsReport {
    pub fn max_commutator(&self) -> f64 {
        self.commutators.iter().map(|c| c.norm).fold(0.0, f64::max)
    }

    pub fn max_sum_deviation(&self) -> f64 {
        self.diagnostics.iter().map(|d| d.identity_deviation).fold(0.0, f64::max)
    }
}

/// The three-qubit counterpart: `A` on the first qubit, `B` on the second,
/// `C` on the third, each padded with identities.
pub fn three_qubit_commuting_sets(
    a: &CMatrix,
    b: &CMatrix,
    c: &CMatrix,
    tol: f64,
) -> Result<CommutingSetsReport, PovmError> {
    check_triple([a, b, c], tol)?;
    let i2 = identity(2);
    let slot = |k: usize, name: &str, p: &CMatrix| -> [Effect; 2] {
        let [e, ep] = halves(name, p);
        let lift = |e: Effect| {
            let mut factors = [&i2, &i2, &i2];
            factors[k] = &e.matrix;
            let tag: Vec<&str> = (0..3).map(|s| if s == k { e.label.trim_end_matches("/2") } else { "I" }).collect();
            Effect::new(format!("{}/2", tag.join("⊗")), kron_all(&factors))
        };
        [lift(e), lift(ep)]
    };
    let h = [slot(0, "A", a), slot(1, "B", b), slot(2, "C", c)];
    let povms: [Povm; 3] = std::array::from_fn(|k| {
        let (x, y) = (k, (k + 1) % 3);
        Povm::new(h[x].iter().chain(&h[y]).cloned().collect()).expect("8x8 effects")
    });
    let diagnostics = std::array::from_fn(|k| povms[k].validate(tol));

    let ops: Vec<&Effect> = h.iter().flatten().collect();
    let mut commutators = Vec::new();
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            let (x, y) = (&ops[i].matrix, &ops[j].matrix);
            commutators.push(CommutatorEntry {
                left: ops[i].label.clone(),
                right: ops[j].label.clone(),
                norm: max_abs(&(x * y - y * x)),
            });
        }
    }
    let search = noncontextual_assignment_search(&povms, tol)?;
    Ok(CommutingSetsReport {
        povms,
        diagnostics,
        commutators,
        search,
    })
}
