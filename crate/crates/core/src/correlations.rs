//! PR-box correlations as lattice polynomials.
//!
//! The four correlations are, in order, `a1 ↔ b1`, `a1 ↔ b2`, `a2 ↔ b1` and
//! `a2 ↔ b2`, with one of them (by default the last) anti-correlated.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{
    lift_first, lift_second, parse_vector, ExactError, ExactVector, ScalarRepr, Subspace,
    SubspaceLattice,
};
use crate::lattice::{is_distributive_triple, Elem, FiniteOml, LatticeError};
use crate::ortho::{commutes, Ortholattice, PowersetAlgebra};

#[derive(Debug, Error)]
pub enum CorrelationError {
    #[error("bad configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Positive,
    Negative,
}

/// Setting indices of each correlation: `(A setting, B setting)`.
pub const CORRELATION_SETTINGS: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];
pub const SETTING_LABELS: [&str; 4] = ["a1", "a2", "b1", "b2"];

/// `(x ∧ y) ∨ (x⊥ ∧ y⊥)` for positive parity, `(x ∧ y⊥) ∨ (x⊥ ∧ y)` for
/// negative.
pub fn correlation_polynomial<L: Ortholattice>(l: &L, x: &L::Elem, y: &L::Elem, parity: Parity) -> L::Elem {
    let (xp, yp) = (l.ortho(x), l.ortho(y));
    match parity {
        Parity::Positive => l.join(&l.meet(x, y), &l.meet(&xp, &yp)),
        Parity::Negative => l.join(&l.meet(x, &yp), &l.meet(&xp, y)),
    }
}

pub fn correlation_polynomial_named(
    l: &FiniteOml,
    x: &str,
    y: &str,
    parity: Parity,
) -> Result<Elem, LatticeError> {
    Ok(correlation_polynomial(l, &l.element(x)?, &l.element(y)?, parity))
}

/// The four settings as elements of a host, with the four parities.
#[derive(Debug, Clone)]
pub struct CorrelationSpec<E> {
    pub a1: E,
    pub a2: E,
    pub b1: E,
    pub b2: E,
    pub parities: [Parity; 4],
}

pub fn standard_parities() -> [Parity; 4] {
    parities_with_anti(3)
}

/// All positive except correlation `k` (0-based).
pub fn parities_with_anti(k: usize) -> [Parity; 4] {
    let mut p = [Parity::Positive; 4];
    p[k] = Parity::Negative;
    p
}

impl<E: Clone> CorrelationSpec<E> {
    fn settings(&self) -> [&E; 4] {
        [&self.a1, &self.a2, &self.b1, &self.b2]
    }

    /// The four correlation polynomials in order.
    pub fn polynomials<L: Ortholattice<Elem = E>>(&self, l: &L) -> [E; 4] {
        let s = self.settings();
        std::array::from_fn(|k| {
            let (i, j) = CORRELATION_SETTINGS[k];
            correlation_polynomial(l, s[i], s[2 + j], self.parities[k])
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TripleResult {
    /// 1-based correlation numbers.
    pub correlations: [usize; 3],
    pub event: u64,
    pub satisfying: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct BooleanPrBoxReport {
    pub all_four: u64,
    pub triples: Vec<TripleResult>,
}

impl BooleanPrBoxReport {
    pub fn holds(&self) -> bool {
        self.all_four == 0 && self.triples.iter().all(|t| t.event != 0)
    }
}

/// The classical host: 16 points, one per assignment of outcomes to the four
/// settings; bit `k` of a point is the outcome of setting `k` in
/// `a1, a2, b1, b2` order.
pub fn boolean_prbox_host() -> (PowersetAlgebra, CorrelationSpec<u64>) {
    let host = PowersetAlgebra::new(16);
    let bit = |k: u32| host.event(|p| p >> k & 1 == 1);
    let spec = CorrelationSpec {
        a1: bit(0),
        a2: bit(1),
        b1: bit(2),
        b2: bit(3),
        parities: standard_parities(),
    };
    (host, spec)
}

pub fn boolean_prbox_analysis() -> BooleanPrBoxReport {
    let (host, spec) = boolean_prbox_host();
    boolean_prbox_analysis_with(&host, &spec)
}

pub fn boolean_prbox_analysis_with(host: &PowersetAlgebra, spec: &CorrelationSpec<u64>) -> BooleanPrBoxReport {
    let polys = spec.polynomials(host);
    let all_four = polys.iter().fold(host.one(), |acc, p| host.meet(&acc, p));
    let triples = (0..4)
        .map(|skip| {
            let idx: Vec<usize> = (0..4).filter(|&k| k != skip).collect();
            let event = idx.iter().fold(host.one(), |acc, &k| host.meet(&acc, &polys[k]));
            TripleResult {
                correlations: [idx[0] + 1, idx[1] + 1, idx[2] + 1],
                event,
                satisfying: event.count_ones(),
            }
        })
        .collect();
    BooleanPrBoxReport { all_four, triples }
}

/// Qubit rays for the four settings, with parities.
#[derive(Debug, Clone)]
pub struct QuantumConfig {
    pub a1: ExactVector,
    pub a2: ExactVector,
    pub b1: ExactVector,
    pub b2: ExactVector,
    pub parities: [Parity; 4],
}

impl Default for QuantumConfig {
    fn default() -> Self {
        use crate::exactlin::int_vector;
        QuantumConfig {
            a1: int_vector(&[1, 0]),
            a2: int_vector(&[1, 1]),
            b1: int_vector(&[1, 0]),
            b2: int_vector(&[1, 1]),
            parities: standard_parities(),
        }
    }
}

/// JSON form: `{"a1": ["1","0"], "a2": ["1","1"], "b1": ..., "b2": ...,
/// "anti_correlated": 4}` with entries as in ray seed files.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantumConfigFile {
    pub a1: Vec<ScalarRepr>,
    pub a2: Vec<ScalarRepr>,
    pub b1: Vec<ScalarRepr>,
    pub b2: Vec<ScalarRepr>,
    #[serde(default = "default_anti")]
    pub anti_correlated: usize,
}

fn default_anti() -> usize {
    4
}

impl QuantumConfigFile {
    pub fn to_config(&self) -> Result<QuantumConfig, CorrelationError> {
        if !(1..=4).contains(&self.anti_correlated) {
            return Err(CorrelationError::BadConfig("anti_correlated must be 1..=4".into()));
        }
        Ok(QuantumConfig {
            a1: parse_vector(&self.a1)?,
            a2: parse_vector(&self.a2)?,
            b1: parse_vector(&self.b1)?,
            b2: parse_vector(&self.b2)?,
            parities: parities_with_anti(self.anti_correlated - 1),
        })
    }
}

/// The replayed derivation for a pair of correlations sharing a setting.
#[derive(Debug, Clone, Serialize)]
pub struct PairReplay {
    /// The shared setting, e.g. `"a1"`.
    pub pivot: String,
    /// Joins bounding the support from above: `pivot ∨ u⊥`, `pivot ∨ v⊥`.
    pub joins: [Subspace; 2],
    /// `(pivot, u⊥, v⊥)` is a distributive triple.
    pub triple: bool,
    /// `(pivot⊥, u, v)` is a distributive triple.
    pub dual_triple: bool,
    /// `pivot ∨ (u⊥ ∧ v⊥) = (pivot ∨ u⊥) ∧ (pivot ∨ v⊥)`.
    pub identity: bool,
    /// `pivot ∨ (u⊥ ∧ v⊥)`, which should be the pivot itself.
    pub upper: Subspace,
    /// `pivot⊥ ∨ (u ∧ v)`, which should be the pivot's complement.
    pub lower: Subspace,
    /// `upper = pivot` and `lower = pivot⊥`.
    pub bounds_collapse: bool,
    /// `upper ∧ lower`: the derived bound on any common atom.
    pub bound: Subspace,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairResult {
    /// 1-based correlation numbers.
    pub pair: (usize, usize),
    pub direct: Subspace,
    pub replay: Option<PairReplay>,
}

impl PairResult {
    /// Replay and direct intersection give the same subspace.
    pub fn agrees(&self) -> bool {
        self.replay.as_ref().is_none_or(|r| r.bound == self.direct)
    }

    pub fn excluded(&self) -> bool {
        match &self.replay {
            Some(r) => {
                self.direct.is_zero() && r.bound.is_zero() && r.triple && r.dual_triple && r.identity && r.bounds_collapse
            }
            None => self.direct.is_zero(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuantumPrBoxReport {
    pub supports: [Subspace; 4],
    /// Each correlation's two settings commute in the two-qubit lattice.
    pub constituents_commute: [bool; 4],
    /// Each correlation equals its `∧`-of-`∨` rewrite.
    pub rewrites_hold: [bool; 4],
    /// All six pairs in lexicographic order.
    pub pairs: Vec<PairResult>,
    pub all_four: Subspace,
}

impl QuantumPrBoxReport {
    /// The support meet of correlations 1 and 2.
    pub fn meet(&self) -> &Subspace {
        &self.pairs[0].direct
    }

    pub fn sharing_pairs(&self) -> impl Iterator<Item = &PairResult> {
        self.pairs.iter().filter(|p| p.replay.is_some())
    }

    /// Every setting-sharing pair has a zero support meet by both routes.
    pub fn exclusion_holds(&self) -> bool {
        self.constituents_commute.iter().all(|&b| b)
            && self.rewrites_hold.iter().all(|&b| b)
            && self.sharing_pairs().all(|p| p.excluded() && p.agrees())
    }
}

pub fn quantum_prbox_meet(config: &QuantumConfig) -> Result<QuantumPrBoxReport, CorrelationError> {
    let rays = [&config.a1, &config.a2, &config.b1, &config.b2]
        .iter()
        .zip(SETTING_LABELS)
        .map(|(v, name)| {
            if v.len() != 2 {
                return Err(CorrelationError::BadConfig(format!("{name} must be a vector in dimension 2")));
            }
            Ok(Subspace::ray(v)?)
        })
        .collect::<Result<Vec<_>, _>>()?;
    for (x, y, side) in [(0, 1, "A"), (2, 3, "B")] {
        if rays[x] == rays[y] || rays[x] == rays[y].ortho() {
            return Err(CorrelationError::BadConfig(format!(
                "the two {side} settings commute; the exclusion argument needs non-commuting settings"
            )));
        }
    }

    let host = SubspaceLattice::new(4);
    let spec = CorrelationSpec {
        a1: lift_first(&rays[0], 2),
        a2: lift_first(&rays[1], 2),
        b1: lift_second(2, &rays[2]),
        b2: lift_second(2, &rays[3]),
        parities: config.parities,
    };
    let supports = spec.polynomials(&host);
    let settings = spec.settings();

    let mut constituents_commute = [false; 4];
    let mut rewrites_hold = [false; 4];
    for k in 0..4 {
        let (i, j) = CORRELATION_SETTINGS[k];
        let (x, y) = (settings[i], settings[2 + j]);
        constituents_commute[k] = commutes(&host, x, y) && commutes(&host, y, x);
        let y_eff = effective(&host, y, config.parities[k]);
        rewrites_hold[k] = rewrite(&host, x, &y_eff) == supports[k];
    }

    let mut pairs = Vec::new();
    for p in 0..4 {
        for q in p + 1..4 {
            let direct = host.meet(&supports[p], &supports[q]);
            let replay = replay_pair(&host, &spec, p, q)?;
            pairs.push(PairResult {
                pair: (p + 1, q + 1),
                direct,
                replay,
            });
        }
    }
    let all_four = supports.iter().fold(host.one(), |acc, s| host.meet(&acc, s));
    Ok(QuantumPrBoxReport {
        supports,
        constituents_commute,
        rewrites_hold,
        pairs,
        all_four,
    })
}

/// The partner element a correlation pairs with `x`: `y` itself for positive
/// parity, `y⊥` for negative, so every correlation reads
/// `(x ∧ y') ∨ (x⊥ ∧ y'⊥)`.
fn effective(l: &SubspaceLattice, y: &Subspace, parity: Parity) -> Subspace {
    match parity {
        Parity::Positive => y.clone(),
        Parity::Negative => l.ortho(y),
    }
}

/// `(x ∨ y⊥) ∧ (x⊥ ∨ y)`.
fn rewrite(l: &SubspaceLattice, x: &Subspace, y: &Subspace) -> Subspace {
    l.meet(&l.join(x, &l.ortho(y)), &l.join(&l.ortho(x), y))
}

fn replay_pair(
    l: &SubspaceLattice,
    spec: &CorrelationSpec<Subspace>,
    p: usize,
    q: usize,
) -> Result<Option<PairReplay>, CorrelationError> {
    let settings = spec.settings();
    let (pa, pb) = CORRELATION_SETTINGS[p];
    let (qa, qb) = CORRELATION_SETTINGS[q];
    // pivot index into settings, and the other settings of each correlation
    let (pivot, u, v) = if pa == qa {
        (pa, 2 + pb, 2 + qb)
    } else if pb == qb {
        (2 + pb, pa, qa)
    } else {
        return Ok(None);
    };
    let x = settings[pivot];
    let u = effective(l, settings[u], spec.parities[p]);
    let v = effective(l, settings[v], spec.parities[q]);
    let (xp, up, vp) = (l.ortho(x), l.ortho(&u), l.ortho(&v));

    let joins = [l.join(x, &up), l.join(x, &vp)];
    let triple = is_distributive_triple(l, x, &up, &vp)?;
    let dual_triple = is_distributive_triple(l, &xp, &u, &v)?;
    let upper = l.join(x, &l.meet(&up, &vp));
    let identity = upper == l.meet(&joins[0], &joins[1]);
    let lower = l.join(&xp, &l.meet(&u, &v));
    let bound = l.meet(&upper, &lower);
    let bounds_collapse = upper == *x && lower == xp;
    Ok(Some(PairReplay {
        pivot: SETTING_LABELS[pivot].to_string(),
        joins,
        triple,
        dual_triple,
        identity,
        upper,
        lower,
        bounds_collapse,
        bound,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int_vector, GaussianRational};
    use crate::lattice::generators::boolean;

    #[test]
    fn boolean_facts() {
        let r = boolean_prbox_analysis();
        assert_eq!(r.all_four, 0);
        assert!(r.triples.iter().all(|t| t.satisfying == 2));
        assert!(r.holds());
    }

    #[test]
    fn first_polynomial_is_agreement_event() {
        let (host, spec) = boolean_prbox_host();
        let p = spec.polynomials(&host)[0];
        let oracle = (0..16u32).filter(|a| a & 1 == (a >> 2) & 1).fold(0u64, |m, a| m | 1 << a);
        assert_eq!(p, oracle);
        assert_eq!(p.count_ones(), 8);
    }

    #[test]
    fn self_anti_correlation_is_zero() {
        let b = boolean(2).unwrap();
        let e = correlation_polynomial_named(&b, "a1", "a1", Parity::Negative).unwrap();
        assert_eq!(e, b.zero());
        assert!(correlation_polynomial_named(&b, "a1", "zz", Parity::Negative).is_err());
    }

    #[test]
    fn qubit_support_is_bell_plane() {
        let r = quantum_prbox_meet(&QuantumConfig::default()).unwrap();
        let bell = Subspace::span(4, &[int_vector(&[1, 0, 0, 0]), int_vector(&[0, 0, 0, 1])]).unwrap();
        assert_eq!(r.supports[0], bell);
        assert!(r.meet().is_zero());
        assert!(r.exclusion_holds());
    }

    #[test]
    fn non_sharing_pairs_are_not_excluded() {
        let r = quantum_prbox_meet(&QuantumConfig::default()).unwrap();
        let nonzero: Vec<_> = r.pairs.iter().filter(|p| p.replay.is_none()).collect();
        assert_eq!(nonzero.len(), 2);
        assert!(nonzero.iter().all(|p| p.direct.dim() == 1));
        assert_eq!(r.sharing_pairs().count(), 4);
    }

    #[test]
    fn commuting_settings_are_rejected() {
        let d = QuantumConfig::default();
        let c = QuantumConfig { b2: d.b1.clone(), ..d };
        assert!(matches!(quantum_prbox_meet(&c), Err(CorrelationError::BadConfig(_))));
        let c = QuantumConfig { a2: int_vector(&[0, 5]), ..QuantumConfig::default() };
        assert!(matches!(quantum_prbox_meet(&c), Err(CorrelationError::BadConfig(_))));
    }

    #[test]
    fn alternate_and_complex_configs() {
        let c = QuantumConfig {
            a1: int_vector(&[1, 0]),
            a2: int_vector(&[1, 2]),
            b1: int_vector(&[0, 1]),
            b2: int_vector(&[1, -1]),
            parities: standard_parities(),
        };
        assert!(quantum_prbox_meet(&c).unwrap().exclusion_holds());
        let c = QuantumConfig {
            a2: vec![GaussianRational::int(1), GaussianRational::i()],
            b1: int_vector(&[1, 1]),
            b2: vec![GaussianRational::int(1), GaussianRational::i()],
            ..QuantumConfig::default()
        };
        assert!(quantum_prbox_meet(&c).unwrap().exclusion_holds());
    }

    #[test]
    fn anti_correlation_placement_does_not_matter() {
        for k in 0..4 {
            let c = QuantumConfig {
                parities: parities_with_anti(k),
                ..QuantumConfig::default()
            };
            assert!(quantum_prbox_meet(&c).unwrap().exclusion_holds(), "anti on {k}");
        }
    }

    #[test]
    fn config_file() {
        let text = r#"{"a1":["1","0"],"a2":[1,1],"b1":["1","0"],"b2":[["1","0"],["0","1"]],"anti_correlated":2}"#;
        let f: QuantumConfigFile = serde_json::from_str(text).unwrap();
        let c = f.to_config().unwrap();
        assert_eq!(c.parities[1], Parity::Negative);
        assert!(quantum_prbox_meet(&c).unwrap().exclusion_holds());
    }
}
