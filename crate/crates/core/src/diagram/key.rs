//! Conjugacy invariants for spherical diagrams.
//!
//! The key of a diagram is computed from an absolutely reduced conjugate:
//! the ordered list of summands, trivial runs contributing the equivalence
//! handle of their word modulo the presentation and spherical summands
//! contributing their cell count. Conjugate diagrams receive equal keys;
//! the key is not complete in general, so distinct keys certify
//! non-conjugacy (for trivial handles: when the class search completed).

use super::{Component, Diagram, DiagramError, Presentation, Word};
use std::collections::{HashSet, VecDeque};

/// Budget for the bounded rewriting search deciding word equivalence
/// modulo the presentation. Word classes can be infinite; the search
/// explores up to `max_visited` words of length at most
/// `start length + len_slack`.
#[derive(Debug, Clone, Copy)]
pub struct PClassBudget {
    pub max_visited: usize,
    pub len_slack: usize,
}

impl Default for PClassBudget {
    fn default() -> Self {
        PClassBudget {
            max_visited: 100_000,
            len_slack: 8,
        }
    }
}

/// Canonical handle of a word's equivalence class modulo the
/// presentation: the least word visited by the bounded search.
/// `Budgeted` marks an exhausted budget (indeterminate): equal handles
/// still certify equivalence of what was explored, but distinct budgeted
/// handles do not certify distinct classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WordHandle {
    Complete(Word),
    Budgeted(Word),
}

impl WordHandle {
    pub fn word(&self) -> &Word {
        match self {
            WordHandle::Complete(w) | WordHandle::Budgeted(w) => w,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, WordHandle::Complete(_))
    }
}

fn rewrite_neighbors(pres: &Presentation, w: &Word, out: &mut Vec<Word>) {
    out.clear();
    let lits = w.lits();
    for cell in pres.cells() {
        for (src, dst) in [(&cell.top, &cell.bottom), (&cell.bottom, &cell.top)] {
            let sl = src.len();
            if sl > lits.len() {
                continue;
            }
            for p in 0..=lits.len() - sl {
                if &lits[p..p + sl] == src.lits() {
                    let mut v = Vec::with_capacity(lits.len() - sl + dst.len());
                    v.extend_from_slice(&lits[..p]);
                    v.extend_from_slice(dst.lits());
                    v.extend_from_slice(&lits[p + sl..]);
                    out.push(Word::from_lits(v));
                }
            }
        }
    }
}

struct ClassSearch {
    visited: HashSet<Word>,
    min_word: Word,
    complete: bool,
}

fn explore_class(pres: &Presentation, start: &Word, budget: &PClassBudget) -> ClassSearch {
    let len_cap = start.len() + budget.len_slack;
    let mut visited = HashSet::new();
    let mut min_word = start.clone();
    let mut complete = true;
    let mut queue = VecDeque::new();
    visited.insert(start.clone());
    queue.push_back(start.clone());
    let mut neighbors = Vec::new();
    while let Some(w) = queue.pop_front() {
        rewrite_neighbors(pres, &w, &mut neighbors);
        for nb in neighbors.drain(..) {
            if nb.len() > len_cap {
                complete = false;
                continue;
            }
            if visited.contains(&nb) {
                continue;
            }
            if visited.len() >= budget.max_visited {
                complete = false;
                continue;
            }
            if shortlex_less(&nb, &min_word) {
                min_word = nb.clone();
            }
            visited.insert(nb.clone());
            queue.push_back(nb);
        }
    }
    ClassSearch {
        visited,
        min_word,
        complete,
    }
}

fn shortlex_less(a: &Word, b: &Word) -> bool {
    (a.len(), a.lits()) < (b.len(), b.lits())
}

/// Handle of the equivalence class of `w` modulo the presentation.
pub fn p_class_handle(pres: &Presentation, w: &Word, budget: &PClassBudget) -> WordHandle {
    let search = explore_class(pres, w, budget);
    if search.complete {
        WordHandle::Complete(search.min_word)
    } else {
        WordHandle::Budgeted(search.min_word)
    }
}

/// Bounded decision of `u = v` modulo the presentation: `Some(true)` when
/// the searches connect, `Some(false)` when a completed class excludes the
/// other word, `None` when the budget ran out undecided.
pub fn words_equal_mod_p(
    pres: &Presentation,
    u: &Word,
    v: &Word,
    budget: &PClassBudget,
) -> Option<bool> {
    if u == v {
        return Some(true);
    }
    let su = explore_class(pres, u, budget);
    if su.visited.contains(v) {
        return Some(true);
    }
    if su.complete {
        return Some(false);
    }
    let sv = explore_class(pres, v, budget);
    if sv.visited.contains(u) || su.visited.iter().any(|w| sv.visited.contains(w)) {
        return Some(true);
    }
    if sv.complete {
        return Some(false);
    }
    None
}

/// Per-summand key datum of the canonical decomposition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentKey {
    Trivial(WordHandle),
    Spherical(usize),
}

/// Sound conjugacy key: component count with per-position tags, computed
/// from an absolutely reduced conjugate with maximal trivial runs merged.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagramConjKey {
    pub components: Vec<ComponentKey>,
}

impl DiagramConjKey {
    /// True when every trivial handle completed its class search, so
    /// distinct keys certify non-conjugacy unconditionally.
    pub fn is_determinate(&self) -> bool {
        self.components.iter().all(|c| match c {
            ComponentKey::Trivial(h) => h.is_complete(),
            ComponentKey::Spherical(_) => true,
        })
    }

    /// Compact rendering: trivial runs as `eps(word)` (with a trailing
    /// `?` when the class search was budgeted), spherical summands by
    /// cell count.
    pub fn display_with(&self, alphabet: &crate::word::Alphabet) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| match c {
                ComponentKey::Trivial(h) => format!(
                    "eps({}){}",
                    alphabet.format_word(h.word()),
                    if h.is_complete() { "" } else { "?" }
                ),
                ComponentKey::Spherical(cells) => format!("{cells}cells"),
            })
            .collect();
        parts.join(" + ")
    }
}

/// Key of a spherical diagram: cyclically reduce, decompose, merge
/// adjacent trivial edges into runs, then tag each position.
pub fn diagram_conj_key(d: &Diagram, budget: &PClassBudget) -> Result<DiagramConjKey, DiagramError> {
    let (reduced, _gamma) = d.reduce().cyclic_reduce()?;
    let comps = reduced.sum_decompose()?;
    let mut components = Vec::new();
    let mut run: Option<Word> = None;
    let pres = d.presentation();
    for c in comps {
        match c {
            Component::Trivial(w) => {
                run = Some(match run.take() {
                    Some(prev) => prev.concat(&w),
                    None => w,
                });
            }
            Component::Spherical(s) => {
                if let Some(w) = run.take() {
                    components.push(ComponentKey::Trivial(p_class_handle(pres, &w, budget)));
                }
                components.push(ComponentKey::Spherical(s.cells()));
            }
        }
    }
    if let Some(w) = run.take() {
        components.push(ComponentKey::Trivial(p_class_handle(pres, &w, budget)));
    }
    Ok(DiagramConjKey { components })
}

#[cfg(test)]
mod tests {
    use super::super::{wreath_zz_witness, Presentation};
    use super::*;

    #[test]
    fn handles_of_wreath_words() {
        let p = Presentation::wreath_zz();
        let budget = PClassBudget::default();
        // class of b is just {b}: the (b,b)-cell rewrites it to itself
        let hb = p_class_handle(&p, &p.word("b").unwrap(), &budget);
        assert_eq!(hb, WordHandle::Complete(p.word("b").unwrap()));
        // class of a is {a, ab, abb, ...}: infinite, min is a
        let ha = p_class_handle(&p, &p.word("a").unwrap(), &budget);
        assert_eq!(ha, WordHandle::Budgeted(p.word("a").unwrap()));
        let hab = p_class_handle(&p, &p.word("ab").unwrap(), &budget);
        assert_eq!(ha.word(), hab.word());
    }

    #[test]
    fn word_equivalence() {
        let p = Presentation::wreath_zz();
        let budget = PClassBudget::default();
        let eq = |u: &str, v: &str| {
            words_equal_mod_p(&p, &p.word(u).unwrap(), &p.word(v).unwrap(), &budget)
        };
        assert_eq!(eq("ab", "a"), Some(true));
        assert_eq!(eq("abc", "ac"), Some(true));
        assert_eq!(eq("b", "bb"), Some(false));
        assert_eq!(eq("ac", "abbc"), Some(true));
    }

    #[test]
    fn keys_distinguish_witnesses() {
        let p = Presentation::wreath_zz();
        let budget = PClassBudget::default();
        let a21 = wreath_zz_witness(&p, &[2, 1]).unwrap();
        let a12 = wreath_zz_witness(&p, &[1, 2]).unwrap();
        let k21 = diagram_conj_key(&a21, &budget).unwrap();
        let k12 = diagram_conj_key(&a12, &budget).unwrap();
        assert_ne!(k21, k12);
        assert_eq!(
            k21.components,
            vec![
                ComponentKey::Trivial(p_class_handle(&p, &p.word("a").unwrap(), &budget)),
                ComponentKey::Spherical(2),
                ComponentKey::Spherical(1),
                ComponentKey::Trivial(p_class_handle(&p, &p.word("c").unwrap(), &budget)),
            ]
        );
    }

    #[test]
    fn trivial_diagram_keys_merge_p_equal_words() {
        let p = Presentation::wreath_zz();
        let budget = PClassBudget::default();
        let eab = Diagram::trivial(&p, &p.word("ab").unwrap()).unwrap();
        let ea = Diagram::trivial(&p, &p.word("a").unwrap()).unwrap();
        let kab = diagram_conj_key(&eab, &budget).unwrap();
        let ka = diagram_conj_key(&ea, &budget).unwrap();
        assert_eq!(kab, ka);
    }

    #[test]
    fn key_is_conjugation_invariant() {
        let p = Presentation::thompson_f();
        let budget = PClassBudget::default();
        let x0 = super::super::x0_diagram(&p);
        let x1 = super::super::x1_diagram(&p);
        let g = x1.group_multiply(&x0.inverse()).unwrap();
        let d = x0.group_multiply(&x0).unwrap();
        let conj = g
            .inverse()
            .group_multiply(&d)
            .unwrap()
            .group_multiply(&g)
            .unwrap();
        assert_eq!(
            diagram_conj_key(&d, &budget).unwrap(),
            diagram_conj_key(&conj, &budget).unwrap()
        );
    }
}
