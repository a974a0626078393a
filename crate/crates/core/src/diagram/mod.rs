//! Semigroup diagrams over a presentation and the diagram group calculus:
//! sum, composition, inversion, dipole elimination to the unique reduced
//! form, canonical sum decomposition, cyclic (conjugacy) reduction, sound
//! conjugacy keys, diagram morphisms, and ball enumeration in diagram
//! groups.
//!
//! A diagram is stored as its top word plus a derivation: a sequence of
//! cell applications `(cell, direction, offset)`, each rewriting a factor
//! of the current word. Two derivations describe the same diagram exactly
//! when they differ by swapping adjacent steps acting on disjoint factors,
//! so the derivation is kept in a commutation normal form: greedy
//! level-by-level extraction of front-movable steps with each level sorted
//! left to right. Equality of diagrams is structural equality of the
//! normalized data; the property suite validates that equivalent
//! derivations normalize identically.

mod ball;
mod decompose;
mod key;
mod morphism;
mod thompson;
mod witness;

pub use ball::{dg_ball_lower_bound, DgBallReport, DiagramGroup};
pub use decompose::Component;
pub use key::{diagram_conj_key, p_class_handle, words_equal_mod_p, ComponentKey, DiagramConjKey, PClassBudget, WordHandle};
pub use morphism::DiagramMorphism;
pub use thompson::{thompson_f_group, x0_diagram, x1_diagram};
pub use witness::{wreath_delta, wreath_gamma, wreath_zz_witness};

use crate::word::{Alphabet, Lit, Word};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("empty word is not allowed here")]
    EmptyWord,
    #[error("letter {0:?} is not in the presentation alphabet")]
    UnknownLetter(char),
    #[error("cell index {0} out of range")]
    BadCellIndex(usize),
    #[error("step does not match the current word: {0}")]
    InvalidStep(String),
    #[error("cannot compose: bottom {bottom:?} differs from top {top:?}")]
    Composition { bottom: String, top: String },
    #[error("diagrams live over different presentations")]
    PresentationMismatch,
    #[error("diagram is not spherical (top {top:?}, bottom {bottom:?})")]
    NotSpherical { top: String, bottom: String },
    #[error("base word mismatch: {0:?} vs {1:?}")]
    BaseMismatch(String, String),
    #[error("cyclic reduction stalled: cell count did not decrease")]
    CyclicReductionStalled,
    #[error("morphism shape mismatch: {0}")]
    MorphismShape(String),
    #[error("presentation parse error: {0}")]
    Parse(String),
}

/// One rewriting cell `top -> bottom` of a semigroup presentation. Cells
/// with equal top and bottom are permitted and directional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub top: Word,
    pub bottom: Word,
}

/// A semigroup presentation: an alphabet plus an ordered list of cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    cells: Vec<Cell>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, cells: Vec<(Word, Word)>) -> Result<Presentation, DiagramError> {
        let mut checked = Vec::with_capacity(cells.len());
        for (top, bottom) in cells {
            if top.is_empty() || bottom.is_empty() {
                return Err(DiagramError::EmptyWord);
            }
            for lit in top.lits().iter().chain(bottom.lits()) {
                if lit.inv || lit.id as usize >= alphabet.len() {
                    return Err(DiagramError::Parse(format!(
                        "cell words must use plain alphabet letters, got {lit:?}"
                    )));
                }
            }
            checked.push(Cell { top, bottom });
        }
        Ok(Presentation {
            alphabet,
            cells: checked,
        })
    }

    /// Parses `u -> v` lines; `#` starts a comment. The alphabet order is
    /// the order of first appearance.
    pub fn parse(text: &str) -> Result<Presentation, DiagramError> {
        let mut letters: Vec<char> = Vec::new();
        let mut raw: Vec<(String, String)> = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (u, v) = line.split_once("->").ok_or_else(|| {
                DiagramError::Parse(format!("line {}: expected `u -> v`", no + 1))
            })?;
            let (u, v) = (u.trim().to_string(), v.trim().to_string());
            if u.is_empty() || v.is_empty() {
                return Err(DiagramError::EmptyWord);
            }
            for c in u.chars().chain(v.chars()) {
                if !letters.contains(&c) {
                    letters.push(c);
                }
            }
            raw.push((u, v));
        }
        let alphabet = Alphabet::plain(&letters);
        let mut cells = Vec::with_capacity(raw.len());
        for (u, v) in raw {
            let top = alphabet
                .parse_word(&u)
                .map_err(|e| DiagramError::Parse(e.to_string()))?;
            let bottom = alphabet
                .parse_word(&v)
                .map_err(|e| DiagramError::Parse(e.to_string()))?;
            cells.push((top, bottom));
        }
        Presentation::new(alphabet, cells)
    }

    /// The presentation `x -> xx` whose spherical diagram group over `x`
    /// is Thompson's group F.
    pub fn thompson_f() -> Arc<Presentation> {
        Arc::new(Presentation::parse("x -> xx").expect("valid"))
    }

    /// The presentation `{ab -> a, b -> b, bc -> c}` whose diagram group
    /// over `ac` is the wreath product Z wr Z.
    pub fn wreath_zz() -> Arc<Presentation> {
        Arc::new(Presentation::parse("ab -> a\nb -> b\nbc -> c").expect("valid"))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn word(&self, s: &str) -> Result<Word, DiagramError> {
        let w = self
            .alphabet
            .parse_word(s)
            .map_err(|e| DiagramError::Parse(e.to_string()))?;
        if w.lits().iter().any(|l| l.inv) {
            return Err(DiagramError::Parse("inverse letters not allowed".into()));
        }
        Ok(w)
    }

    fn step_src(&self, s: &Step) -> &Word {
        let cell = &self.cells[s.cell as usize];
        match s.dir {
            Dir::Forward => &cell.top,
            Dir::Inverse => &cell.bottom,
        }
    }

    fn step_dst(&self, s: &Step) -> &Word {
        let cell = &self.cells[s.cell as usize];
        match s.dir {
            Dir::Forward => &cell.bottom,
            Dir::Inverse => &cell.top,
        }
    }

    fn step_lens(&self, s: &Step) -> (u32, u32) {
        (
            self.step_src(s).len() as u32,
            self.step_dst(s).len() as u32,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dir {
    Forward,
    Inverse,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Forward => Dir::Inverse,
            Dir::Inverse => Dir::Forward,
        }
    }
}

/// One cell application: rewrite the factor of the current word starting
/// at `offset` (the cell's top for `Forward`, bottom for `Inverse`) by the
/// opposite side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Step {
    pub cell: u16,
    pub dir: Dir,
    pub offset: u32,
}

/// Attempts to swap adjacent steps `a` then `b`; succeeds iff their
/// factors are disjoint (they may touch at an endpoint), returning the
/// pair in the order `b` then `a` with adjusted offsets.
pub(crate) fn swap_adjacent(pres: &Presentation, a: &Step, b: &Step) -> Option<(Step, Step)> {
    let (la, ra) = pres.step_lens(a);
    let (lb, rb) = pres.step_lens(b);
    if b.offset + lb <= a.offset {
        Some((
            *b,
            Step {
                offset: a.offset + rb - lb,
                ..*a
            },
        ))
    } else if b.offset >= a.offset + ra {
        Some((
            Step {
                offset: b.offset - ra + la,
                ..*b
            },
            *a,
        ))
    } else {
        None
    }
}

pub(crate) fn apply_step(pres: &Presentation, w: &mut Vec<Lit>, s: &Step) -> Result<(), DiagramError> {
    let src = pres.step_src(s);
    let start = s.offset as usize;
    let end = start + src.len();
    if end > w.len() || w[start..end] != *src.lits() {
        return Err(DiagramError::InvalidStep(format!(
            "step {s:?} does not match its factor"
        )));
    }
    w.splice(start..end, pres.step_dst(s).lits().iter().copied());
    Ok(())
}

pub(crate) fn replay(pres: &Presentation, top: &Word, steps: &[Step]) -> Result<Word, DiagramError> {
    let mut w = top.lits().to_vec();
    for s in steps {
        apply_step(pres, &mut w, s)?;
    }
    Ok(Word::from_lits(w))
}

/// Commutation normal form: repeatedly peel the set of front-movable
/// steps (those commuting past every predecessor), sort each level left
/// to right, and continue with the remainder. The input must be a valid
/// derivation; validity is preserved by every swap.
fn foata_normalize(pres: &Presentation, steps: &mut Vec<Step>) {
    let mut out: Vec<Step> = Vec::with_capacity(steps.len());
    while !steps.is_empty() {
        let mut front = 0usize;
        for i in 0..steps.len() {
            // probe whether steps[i] commutes down to position `front`
            let mut probe = steps[i];
            let mut movable = true;
            for k in (front..i).rev() {
                match swap_adjacent(pres, &steps[k], &probe) {
                    Some((moved, _)) => probe = moved,
                    None => {
                        movable = false;
                        break;
                    }
                }
            }
            if movable {
                let mut j = i;
                while j > front {
                    let (b2, a2) = swap_adjacent(pres, &steps[j - 1], &steps[j])
                        .expect("probe verified independence");
                    steps[j - 1] = b2;
                    steps[j] = a2;
                    j -= 1;
                }
                front += 1;
            }
        }
        // sort the level left-to-right; level steps are pairwise disjoint
        loop {
            let mut swapped = false;
            for p in 0..front.saturating_sub(1) {
                let (lb, _) = pres.step_lens(&steps[p + 1]);
                if steps[p + 1].offset + lb <= steps[p].offset {
                    let (b2, a2) = swap_adjacent(pres, &steps[p], &steps[p + 1])
                        .expect("level steps are independent");
                    steps[p] = b2;
                    steps[p + 1] = a2;
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        out.extend(steps.drain(..front));
    }
    *steps = out;
}

/// A (top, bottom)-diagram over a presentation, held in commutation
/// normal form. Equality, ordering and hashing ignore the presentation
/// pointer; diagrams from different presentations must not be mixed.
#[derive(Clone)]
pub struct Diagram {
    pres: Arc<Presentation>,
    top: Word,
    steps: Vec<Step>,
    bottom: Word,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.top == other.top && self.steps == other.steps
    }
}

impl Eq for Diagram {}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Diagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.top
            .cmp(&other.top)
            .then_with(|| self.steps.cmp(&other.steps))
    }
}

impl Hash for Diagram {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.top.hash(state);
        self.steps.hash(state);
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Diagram({} => {}, {} cells: {:?})",
            self.pres.alphabet.format_word(&self.top),
            self.pres.alphabet.format_word(&self.bottom),
            self.steps.len(),
            self.steps
        )
    }
}

impl Diagram {
    /// Zero-cell diagram on a nonempty word.
    pub fn trivial(pres: &Arc<Presentation>, w: &Word) -> Result<Diagram, DiagramError> {
        if w.is_empty() {
            return Err(DiagramError::EmptyWord);
        }
        for lit in w.lits() {
            if lit.inv || lit.id as usize >= pres.alphabet.len() {
                return Err(DiagramError::UnknownLetter('?'));
            }
        }
        Ok(Diagram {
            pres: Arc::clone(pres),
            top: w.clone(),
            steps: Vec::new(),
            bottom: w.clone(),
        })
    }

    /// The atomic diagram of one cell, forward orientation.
    pub fn cell(pres: &Arc<Presentation>, index: usize) -> Result<Diagram, DiagramError> {
        if index >= pres.cells.len() {
            return Err(DiagramError::BadCellIndex(index));
        }
        let top = pres.cells[index].top.clone();
        Diagram::from_steps(
            pres,
            top,
            vec![Step {
                cell: index as u16,
                dir: Dir::Forward,
                offset: 0,
            }],
        )
    }

    /// Builds and normalizes a diagram from a raw derivation, validating
    /// every step against the replayed word.
    pub fn from_steps(
        pres: &Arc<Presentation>,
        top: Word,
        mut steps: Vec<Step>,
    ) -> Result<Diagram, DiagramError> {
        if top.is_empty() {
            return Err(DiagramError::EmptyWord);
        }
        let bottom = replay(pres, &top, &steps)?;
        foata_normalize(pres, &mut steps);
        debug_assert_eq!(replay(pres, &top, &steps).as_ref(), Ok(&bottom));
        Ok(Diagram {
            pres: Arc::clone(pres),
            top,
            steps,
            bottom,
        })
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn top(&self) -> &Word {
        &self.top
    }

    pub fn bottom(&self) -> &Word {
        &self.bottom
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn cells(&self) -> usize {
        self.steps.len()
    }

    pub fn is_spherical(&self) -> bool {
        self.top == self.bottom
    }

    fn check_same_presentation(&self, other: &Diagram) -> Result<(), DiagramError> {
        if Arc::ptr_eq(&self.pres, &other.pres) || self.pres == other.pres {
            Ok(())
        } else {
            Err(DiagramError::PresentationMismatch)
        }
    }

    /// Sum: diagrams side by side; top and bottom words concatenate.
    pub fn sum(&self, other: &Diagram) -> Result<Diagram, DiagramError> {
        self.check_same_presentation(other)?;
        let top = self.top.concat(&other.top);
        let mut steps = self.steps.clone();
        let shift = self.bottom.len() as u32;
        steps.extend(other.steps.iter().map(|s| Step {
            offset: s.offset + shift,
            ..*s
        }));
        Diagram::from_steps(&self.pres, top, steps)
    }

    /// Unreduced composition: identify this diagram's bottom with the
    /// other's top. Cell counts add; no dipole is cancelled.
    pub fn compose(&self, other: &Diagram) -> Result<Diagram, DiagramError> {
        self.check_same_presentation(other)?;
        if self.bottom != other.top {
            return Err(DiagramError::Composition {
                bottom: self.pres.alphabet.format_word(&self.bottom),
                top: other.pres.alphabet.format_word(&other.top),
            });
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Diagram::from_steps(&self.pres, self.top.clone(), steps)
    }

    /// Mirror about the horizontal axis: top and bottom swap, every cell
    /// flips orientation.
    pub fn inverse(&self) -> Diagram {
        let steps: Vec<Step> = self
            .steps
            .iter()
            .rev()
            .map(|s| Step {
                dir: s.dir.flip(),
                ..*s
            })
            .collect();
        Diagram::from_steps(&self.pres, self.bottom.clone(), steps)
            .expect("inverse of a valid derivation is valid")
    }

    /// Finds the first cancelling pair in scan order: steps i < j of the
    /// same cell in opposite orientations such that j commutes down to
    /// i+1 and lands on i's offset (the second cell consumes exactly what
    /// the first produced).
    fn find_dipole(&self, steps: &[Step]) -> Option<(usize, usize)> {
        for i in 0..steps.len() {
            'next_j: for j in i + 1..steps.len() {
                if steps[j].cell != steps[i].cell || steps[j].dir != steps[i].dir.flip() {
                    continue;
                }
                let mut probe = steps[j];
                for k in (i + 1..j).rev() {
                    match swap_adjacent(&self.pres, &steps[k], &probe) {
                        Some((moved, _)) => probe = moved,
                        None => continue 'next_j,
                    }
                }
                if probe.offset == steps[i].offset {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn is_reduced_steps(&self, steps: &[Step]) -> bool {
        self.find_dipole(steps).is_none()
    }

    pub fn is_reduced(&self) -> bool {
        self.is_reduced_steps(&self.steps)
    }

    /// The unique reduced diagram equivalent to this one: repeatedly
    /// cancel the first dipole found after commutation, renormalizing
    /// after every cancellation.
    pub fn reduce(&self) -> Diagram {
        let mut steps = self.steps.clone();
        while let Some((i, j)) = self.find_dipole(&steps) {
            // bubble j down next to i, then drop both
            let mut j = j;
            while j > i + 1 {
                let (b2, a2) = swap_adjacent(&self.pres, &steps[j - 1], &steps[j])
                    .expect("dipole scan verified independence");
                steps[j - 1] = b2;
                steps[j] = a2;
                j -= 1;
            }
            steps.drain(i..=i + 1);
            foata_normalize(&self.pres, &mut steps);
        }
        Diagram::from_steps(&self.pres, self.top.clone(), steps)
            .expect("cancelling a dipole preserves validity")
    }

    /// Group operation of the diagram group DG(P, base): compose, then
    /// remove all dipoles. Both operands must be spherical over the same
    /// base word.
    pub fn group_multiply(&self, other: &Diagram) -> Result<Diagram, DiagramError> {
        for d in [self, other] {
            if !d.is_spherical() {
                return Err(DiagramError::NotSpherical {
                    top: d.pres.alphabet.format_word(&d.top),
                    bottom: d.pres.alphabet.format_word(&d.bottom),
                });
            }
        }
        if self.top != other.top {
            return Err(DiagramError::BaseMismatch(
                self.pres.alphabet.format_word(&self.top),
                other.pres.alphabet.format_word(&other.top),
            ));
        }
        Ok(self.compose(other)?.reduce())
    }

    /// Serialized form: top word and the normalized step list.
    pub fn to_json(&self) -> serde_json::Value {
        let al = &self.pres.alphabet;
        serde_json::json!({
            "top": al.format_word(&self.top),
            "bottom": al.format_word(&self.bottom),
            "cells": self.cells(),
            "steps": self.steps.iter().map(|s| {
                serde_json::json!([s.cell, match s.dir { Dir::Forward => "f", Dir::Inverse => "i" }, s.offset])
            }).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f_pres() -> Arc<Presentation> {
        Presentation::thompson_f()
    }

    fn zz_pres() -> Arc<Presentation> {
        Presentation::wreath_zz()
    }

    #[test]
    fn presentation_parsing() {
        let p = zz_pres();
        assert_eq!(p.cells().len(), 3);
        assert_eq!(p.alphabet().letters(), &['a', 'b', 'c']);
        assert!(Presentation::parse("ab ->").is_err());
        assert!(Presentation::parse("abc").is_err());
    }

    #[test]
    fn trivial_diagrams() {
        let p = f_pres();
        let x = p.word("x").unwrap();
        let e = Diagram::trivial(&p, &x).unwrap();
        assert_eq!(e.cells(), 0);
        assert_eq!(e.top(), &x);
        assert_eq!(e.bottom(), &x);
        assert!(Diagram::trivial(&p, &Word::empty()).is_err());
        // sum of trivials is the trivial of the concatenation
        let zz = zz_pres();
        let a = Diagram::trivial(&zz, &zz.word("a").unwrap()).unwrap();
        let c = Diagram::trivial(&zz, &zz.word("c").unwrap()).unwrap();
        let ac = Diagram::trivial(&zz, &zz.word("ac").unwrap()).unwrap();
        assert_eq!(a.sum(&c).unwrap(), ac);
    }

    #[test]
    fn cell_and_inverse() {
        let p = f_pres();
        let c = Diagram::cell(&p, 0).unwrap();
        assert_eq!(c.cells(), 1);
        assert_eq!(p.alphabet().format_word(c.bottom()), "xx");
        let ci = c.inverse();
        assert_eq!(ci.top(), c.bottom());
        assert_eq!(ci.bottom(), c.top());
        assert_eq!(ci.inverse(), c);
        // an (u,u)-cell differs from its inverse
        let zz = zz_pres();
        let pi = Diagram::cell(&zz, 1).unwrap();
        assert_ne!(pi.inverse(), pi);
        assert_eq!(Diagram::trivial(&p, &p.word("x").unwrap()).unwrap().inverse().cells(), 0);
    }

    #[test]
    fn composition_and_errors() {
        let p = f_pres();
        let c = Diagram::cell(&p, 0).unwrap();
        let e = Diagram::trivial(&p, &p.word("x").unwrap()).unwrap();
        // eps(u) o d = d
        assert_eq!(e.compose(&c).unwrap(), c);
        // label mismatch
        match c.clone().compose(&c) {
            Err(DiagramError::Composition { bottom, top }) => {
                assert_eq!(bottom, "xx");
                assert_eq!(top, "x");
            }
            other => panic!("expected composition error, got {other:?}"),
        }
        // unreduced composition keeps both cells
        let two = c.compose(&c.inverse()).unwrap();
        assert_eq!(two.cells(), 2);
        assert!(!two.is_reduced());
        assert_eq!(two.reduce(), e);
    }

    #[test]
    fn sum_preserves_cells() {
        let zz = zz_pres();
        let pi = Diagram::cell(&zz, 1).unwrap();
        let a = Diagram::trivial(&zz, &zz.word("a").unwrap()).unwrap();
        let c = Diagram::trivial(&zz, &zz.word("c").unwrap()).unwrap();
        let d = a.sum(&pi).unwrap().sum(&c).unwrap();
        assert_eq!(d.cells(), 1);
        assert_eq!(zz.alphabet().format_word(d.top()), "abc");
        assert!(d.is_spherical());
    }

    #[test]
    fn x0_is_the_paper_product_and_is_reduced() {
        let p = f_pres();
        let x0 = x0_diagram(&p);
        assert_eq!(x0.cells(), 4);
        assert!(x0.is_spherical());
        assert!(x0.is_reduced());
        // the defining product
        let c = Diagram::cell(&p, 0).unwrap();
        let e = Diagram::trivial(&p, &p.word("x").unwrap()).unwrap();
        let prod = c
            .compose(&e.sum(&c).unwrap())
            .unwrap()
            .compose(&c.inverse().sum(&e).unwrap())
            .unwrap()
            .compose(&c.inverse())
            .unwrap();
        assert_eq!(prod, x0);
    }

    #[test]
    fn inverse_composition_reduces_to_identity() {
        let p = f_pres();
        let x0 = x0_diagram(&p);
        let e = Diagram::trivial(&p, &p.word("x").unwrap()).unwrap();
        assert_eq!(x0.group_multiply(&x0.inverse()).unwrap(), e);
        assert_eq!(x0.inverse().group_multiply(&x0).unwrap(), e);
    }

    #[test]
    fn powers_of_x0() {
        let p = f_pres();
        let x0 = x0_diagram(&p);
        let sq = x0.group_multiply(&x0).unwrap();
        assert_eq!(sq.cells(), 6);
        let cube = sq.group_multiply(&x0).unwrap();
        assert_eq!(cube.group_multiply(&x0.inverse()).unwrap(), sq);
    }
}
