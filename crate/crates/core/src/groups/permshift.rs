//! The permutational wreath-type group G = S_inf ⋊ Z, where S_inf is the
//! group of finitely supported permutations of Z and Z acts by shifting.
//! Generated by the involution a = (1,2) and the shift b.
//!
//! An element is written b^s p with p finitely supported; multiplication
//! follows from the commutation rule p b^m = b^m p(m), where p(m) shifts
//! every number in p by m.

use crate::engine::Group;
use crate::groups::GroupError;

/// Finitely supported permutation as a sorted point -> image list without
/// fixed points; doubles as its own canonical key.
pub type SupportMap = Vec<(i64, i64)>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermShiftElement {
    pub shift: i64,
    pub perm: SupportMap,
}

fn apply(perm: &SupportMap, x: i64) -> i64 {
    match perm.binary_search_by_key(&x, |&(p, _)| p) {
        Ok(i) => perm[i].1,
        Err(_) => x,
    }
}

/// `p` then `q` as functions on Z.
fn compose(p: &SupportMap, q: &SupportMap) -> SupportMap {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let mut points: Vec<i64> = p.iter().map(|&(x, _)| x).collect();
    points.extend(q.iter().map(|&(x, _)| x));
    points.sort_unstable();
    points.dedup();
    for x in points {
        let y = apply(q, apply(p, x));
        if y != x {
            out.push((x, y));
        }
    }
    out
}

fn shifted(perm: &SupportMap, m: i64) -> SupportMap {
    perm.iter().map(|&(x, y)| (x + m, y + m)).collect()
}

fn inverted(perm: &SupportMap) -> SupportMap {
    let mut out: SupportMap = perm.iter().map(|&(x, y)| (y, x)).collect();
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PermShiftGroup;

impl PermShiftGroup {
    pub fn new() -> Self {
        PermShiftGroup
    }

    /// The involution a = (1,2).
    pub fn a(&self) -> PermShiftElement {
        PermShiftElement {
            shift: 0,
            perm: vec![(1, 2), (2, 1)],
        }
    }

    /// The shift b.
    pub fn b(&self) -> PermShiftElement {
        PermShiftElement {
            shift: 1,
            perm: Vec::new(),
        }
    }

    pub fn b_power(&self, m: i64) -> PermShiftElement {
        PermShiftElement {
            shift: m,
            perm: Vec::new(),
        }
    }

    /// Support window predicate of the witness family: every point moved
    /// by the permutation lies in [1, shift+1].
    pub fn in_support_window(&self, e: &PermShiftElement) -> bool {
        e.shift > 0
            && e.perm
                .iter()
                .all(|&(x, y)| (1..=e.shift + 1).contains(&x) && (1..=e.shift + 1).contains(&y))
    }
}

impl Group for PermShiftGroup {
    type Elem = PermShiftElement;
    type ConjKey = PermShiftElement;

    fn identity(&self) -> Self::Elem {
        PermShiftElement {
            shift: 0,
            perm: Vec::new(),
        }
    }

    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        // b^s p b^s' p' = b^(s+s') p(s') p'
        PermShiftElement {
            shift: a.shift + b.shift,
            perm: compose(&shifted(&a.perm, b.shift), &b.perm),
        }
    }

    fn invert(&self, a: &Self::Elem) -> Self::Elem {
        PermShiftElement {
            shift: -a.shift,
            perm: shifted(&inverted(&a.perm), -a.shift),
        }
    }

    fn generators(&self) -> Vec<(String, Self::Elem)> {
        // a is its own inverse
        vec![
            ("a".into(), self.a()),
            ("b".into(), self.b()),
            ("b'".into(), self.invert(&self.b())),
        ]
    }

    fn display(&self, e: &Self::Elem) -> String {
        let cycles: Vec<String> = e
            .perm
            .iter()
            .filter(|&&(x, y)| x < y || apply(&e.perm, y) != x)
            .map(|&(x, y)| format!("{x}->{y}"))
            .collect();
        format!("b^{}[{}]", e.shift, cycles.join(","))
    }
}

/// Witness element b^{n0} a b^{n1} a ... b^{nk} a for positive even parts,
/// together with the data reported alongside it.
#[derive(Debug, Clone)]
pub struct LampWitness {
    pub parts: Vec<u64>,
    pub element: PermShiftElement,
    /// Letters in the defining word: part sum + number of parts.
    pub word_letters: u64,
    /// The off-by-one smaller classical bound: part sum + (parts - 1).
    pub classical_bound: u64,
}

/// Evaluates the witness word and cross-checks the closed form: shift is
/// the part sum and the permutation is the commuting product of the
/// transpositions (1+T, 2+T) over the tail sums T.
pub fn lamp_witness(group: &PermShiftGroup, parts: &[u64]) -> Result<LampWitness, GroupError> {
    if parts.is_empty() {
        return Err(GroupError::InvalidParameter(
            "witness needs at least one part".into(),
        ));
    }
    if let Some(&bad) = parts.iter().find(|&&p| p == 0 || p % 2 != 0) {
        return Err(GroupError::InvalidParameter(format!(
            "witness parts must be positive even integers, got {bad}"
        )));
    }
    let mut e = group.identity();
    for &p in parts {
        e = group.multiply(&e, &group.b_power(p as i64));
        e = group.multiply(&e, &group.a());
    }
    let total: u64 = parts.iter().sum();
    // closed form
    let mut expected: SupportMap = Vec::new();
    let mut tail = 0i64;
    for i in (0..parts.len()).rev() {
        expected.push((1 + tail, 2 + tail));
        expected.push((2 + tail, 1 + tail));
        tail += parts[i] as i64;
        let _ = i;
    }
    expected.sort_unstable();
    assert_eq!(e.shift, total as i64, "witness shift must be the part sum");
    assert_eq!(e.perm, expected, "witness permutation must match the closed form");
    assert!(
        group.in_support_window(&e),
        "witness support must lie in [1, N+1]"
    );
    Ok(LampWitness {
        parts: parts.to_vec(),
        element: e,
        word_letters: total + parts.len() as u64,
        classical_bound: total + parts.len() as u64 - 1,
    })
}

/// Identity key on the witness family: within the support-window class,
/// equal elements are conjugate only to themselves.
pub fn lamp_witness_key(
    group: &PermShiftGroup,
    e: &PermShiftElement,
) -> Result<PermShiftElement, GroupError> {
    if !group.in_support_window(e) {
        return Err(GroupError::UnsupportedElement(format!(
            "element {} violates the support-window predicate",
            group.display(e)
        )));
    }
    Ok(e.clone())
}
