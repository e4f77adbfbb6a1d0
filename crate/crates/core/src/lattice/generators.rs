//! Standard small ortholattices.

use super::{FiniteOml, LatticeError};

/// Largest Boolean algebra we tabulate (2^8 = 256 elements).
pub const MAX_BOOLEAN_ATOMS: usize = 8;

/// Boolean algebra on `n` atoms.
///
/// Elements are subsets of `{a1, .., an}` listed by bit mask; names join the
/// atoms with `+`, with `0` and `1` for the empty and full sets. In
/// `boolean(2)` the atoms `a1` and `a2` are each other's complement.
pub fn boolean(n: usize) -> Result<FiniteOml, LatticeError> {
    if n == 0 || n > MAX_BOOLEAN_ATOMS {
        return Err(LatticeError::BadGenerator(format!(
            "boolean needs 1..={MAX_BOOLEAN_ATOMS} atoms, got {n}"
        )));
    }
    let size = 1usize << n;
    let full = size - 1;
    let names = (0..size).map(|m| subset_name(m, n, "")).collect();
    let mut pairs = Vec::new();
    for m in 0..size {
        for i in 0..n {
            if m & (1 << i) == 0 {
                pairs.push((m, m | 1 << i));
            }
        }
    }
    let ortho = (0..size).map(|m| full & !m).collect();
    FiniteOml::new(names, &pairs, ortho)
}

fn subset_name(mask: usize, n: usize, prefix: &str) -> String {
    if mask == 0 {
        return "0".into();
    }
    if mask == (1 << n) - 1 {
        return "1".into();
    }
    (0..n)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| format!("{prefix}a{}", i + 1))
        .collect::<Vec<_>>()
        .join("+")
}

/// Horizontal sum of `n` four-element Boolean algebras: `0`, `1` and the
/// atoms `a1, a1', .., an, an'`, all pairwise incomparable.
pub fn mo(n: usize) -> Result<FiniteOml, LatticeError> {
    if n == 0 {
        return Err(LatticeError::BadGenerator("mo needs n >= 1".into()));
    }
    let mut names = vec!["0".to_string()];
    for i in 1..=n {
        names.push(format!("a{i}"));
        names.push(format!("a{i}'"));
    }
    names.push("1".into());
    let top = 2 * n + 1;
    let mut pairs = Vec::new();
    let mut ortho = vec![top; top + 1];
    ortho[top] = 0;
    for k in 1..top {
        pairs.push((0, k));
        pairs.push((k, top));
        ortho[k] = if k % 2 == 1 { k + 1 } else { k - 1 };
    }
    FiniteOml::new(names, &pairs, ortho)
}

/// The benzene ring: `0 < a < b < 1`, `0 < b' < a' < 1`.
/// An ortholattice that is not orthomodular.
pub fn o6() -> FiniteOml {
    let names = ["0", "a", "b", "b'", "a'", "1"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let pairs = [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)];
    FiniteOml::new(names, &pairs, vec![5, 4, 3, 2, 1, 0]).expect("o6 is an ortholattice")
}

/// Horizontal sum of Boolean algebras with the given atom counts (each at
/// least 2), glued at `0` and `1`. Always orthomodular; its blocks are the
/// summands. Names are `b<k>.<subset>`.
pub fn pasted(blocks: &[usize]) -> Result<FiniteOml, LatticeError> {
    if blocks.is_empty() || blocks.iter().any(|&k| !(2..=MAX_BOOLEAN_ATOMS).contains(&k)) {
        return Err(LatticeError::BadGenerator(format!(
            "pasted needs block sizes in 2..={MAX_BOOLEAN_ATOMS}, got {blocks:?}"
        )));
    }
    let mut names = vec!["0".to_string()];
    let mut pairs = Vec::new();
    let mut ortho = vec![0usize];
    let mut offsets = Vec::new();
    for (b, &k) in blocks.iter().enumerate() {
        let full = (1usize << k) - 1;
        let offset = names.len() - 1;
        offsets.push(offset);
        for m in 1..full {
            names.push(subset_name(m, k, &format!("b{}.", b + 1)));
            ortho.push(offset + (full & !m));
        }
        for m in 1..full {
            for i in 0..k {
                if m & (1 << i) == 0 && (m | 1 << i) != full {
                    pairs.push((offset + m, offset + (m | 1 << i)));
                }
            }
        }
    }
    let top = names.len();
    names.push("1".into());
    ortho[0] = top;
    ortho.push(0);
    for k in 1..top {
        pairs.push((0, k));
        pairs.push((k, top));
    }
    FiniteOml::new(names, &pairs, ortho)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_one_is_a_chain() {
        let l = boolean(1).unwrap();
        assert_eq!(l.names(), ["0", "1"]);
        assert_eq!(l.ortho(l.zero()), l.one());
    }

    #[test]
    fn mo2_shape() {
        let l = mo(2).unwrap();
        assert_eq!(l.len(), 6);
        assert_eq!(l.atoms().len(), 4);
        let a = l.element("a1").unwrap();
        let b = l.element("a2").unwrap();
        assert_eq!(l.join(a, b), l.one());
        assert_eq!(l.ortho_named("a2'").unwrap(), b);
    }

    #[test]
    fn o6_order() {
        let l = o6();
        let [a, b, bp, ap] = ["a", "b", "b'", "a'"].map(|n| l.element(n).unwrap());
        assert!(l.lt(a, b) && l.lt(bp, ap));
        assert_eq!(l.ortho(b), bp);
        assert!(!l.is_orthomodular());
    }

    #[test]
    fn pasted_sizes() {
        let l = pasted(&[2, 3]).unwrap();
        assert_eq!(l.len(), 2 + 2 + 6);
        assert!(l.is_orthomodular());
        assert_eq!(pasted(&[2, 2]).unwrap().len(), mo(2).unwrap().len());
        assert!(pasted(&[1]).is_err());
    }

    #[test]
    fn bad_sizes() {
        assert!(boolean(0).is_err());
        assert!(boolean(9).is_err());
        assert!(mo(0).is_err());
    }
}
