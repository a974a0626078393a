//! Morphisms of diagrams induced by a letter map and a cell map:
//! every edge is replaced by the image path and every cell by the image
//! diagram. The image construction is functorial for sum, composition
//! and inversion.

use super::{Diagram, DiagramError, Dir, Presentation, Step};
use crate::word::{Lit, Word};
use std::sync::Arc;

pub struct DiagramMorphism {
    source: Arc<Presentation>,
    target: Arc<Presentation>,
    letter_images: Vec<Word>,
    cell_images: Vec<Diagram>,
}

impl DiagramMorphism {
    /// `letter_images[i]` is the image of source letter i; `cell_images[j]`
    /// must be a (psi(top_j), psi(bottom_j))-diagram over the target.
    pub fn new(
        source: &Arc<Presentation>,
        target: &Arc<Presentation>,
        letter_images: Vec<Word>,
        cell_images: Vec<Diagram>,
    ) -> Result<DiagramMorphism, DiagramError> {
        if letter_images.len() != source.alphabet().len()
            || cell_images.len() != source.cells().len()
        {
            return Err(DiagramError::MorphismShape(
                "one image per source letter and per source cell".into(),
            ));
        }
        for w in &letter_images {
            if w.is_empty() {
                return Err(DiagramError::EmptyWord);
            }
        }
        let morphism = DiagramMorphism {
            source: Arc::clone(source),
            target: Arc::clone(target),
            letter_images,
            cell_images,
        };
        for (j, cell) in source.cells().iter().enumerate() {
            let img = &morphism.cell_images[j];
            if img.top() != &morphism.word_image(&cell.top)
                || img.bottom() != &morphism.word_image(&cell.bottom)
            {
                return Err(DiagramError::MorphismShape(format!(
                    "cell {j} image is not a (psi(top), psi(bottom))-diagram"
                )));
            }
        }
        Ok(morphism)
    }

    pub fn word_image(&self, w: &Word) -> Word {
        let mut lits: Vec<Lit> = Vec::new();
        for l in w.lits() {
            lits.extend_from_slice(self.letter_images[l.id as usize].lits());
        }
        Word::from_lits(lits)
    }

    /// Functorial image: replay the source derivation, translating each
    /// step's offset through the letter-image lengths and splicing in the
    /// image diagram's derivation.
    pub fn apply(&self, d: &Diagram) -> Result<Diagram, DiagramError> {
        if d.presentation().as_ref() != self.source.as_ref() {
            return Err(DiagramError::PresentationMismatch);
        }
        let mut current: Vec<Lit> = d.top().lits().to_vec();
        let mut out_steps: Vec<Step> = Vec::new();
        for s in d.steps() {
            let target_offset: u32 = current[..s.offset as usize]
                .iter()
                .map(|l| self.letter_images[l.id as usize].len() as u32)
                .sum();
            let img = &self.cell_images[s.cell as usize];
            let img_steps: Vec<Step> = match s.dir {
                Dir::Forward => img.steps().to_vec(),
                Dir::Inverse => img.inverse().steps().to_vec(),
            };
            out_steps.extend(img_steps.into_iter().map(|t| Step {
                offset: t.offset + target_offset,
                ..t
            }));
            super::apply_step(&self.source, &mut current, s)?;
        }
        Diagram::from_steps(&self.target, self.word_image(d.top()), out_steps)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{wreath_zz_witness, x0_diagram};
    use super::*;

    /// Doubling morphism on the F presentation: x -> xx, the cell maps to
    /// the two-cell (xx, xxxx)-diagram.
    fn doubling() -> DiagramMorphism {
        let p = Presentation::thompson_f();
        let cell = Diagram::cell(&p, 0).unwrap();
        let image = cell.sum(&cell).unwrap();
        DiagramMorphism::new(&p, &p, vec![p.word("xx").unwrap()], vec![image]).unwrap()
    }

    #[test]
    fn identity_morphism_is_identity() {
        let p = Presentation::thompson_f();
        let psi = DiagramMorphism::new(
            &p,
            &p,
            vec![p.word("x").unwrap()],
            vec![Diagram::cell(&p, 0).unwrap()],
        )
        .unwrap();
        let x0 = x0_diagram(&p);
        assert_eq!(psi.apply(&x0).unwrap(), x0);
        let e = Diagram::trivial(&p, &p.word("xx").unwrap()).unwrap();
        assert_eq!(psi.apply(&e).unwrap(), e);
    }

    #[test]
    fn trivial_maps_to_trivial_of_image() {
        let p = Presentation::thompson_f();
        let psi = doubling();
        let e = Diagram::trivial(&p, &p.word("xx").unwrap()).unwrap();
        let img = psi.apply(&e).unwrap();
        assert_eq!(img, Diagram::trivial(&p, &p.word("xxxx").unwrap()).unwrap());
    }

    #[test]
    fn functoriality_on_products_and_inverses() {
        let p = Presentation::thompson_f();
        let psi = doubling();
        let x0 = x0_diagram(&p);
        let c = Diagram::cell(&p, 0).unwrap();
        let pairs = [
            (x0.clone(), x0.clone()),
            (c.clone(), c.inverse()),
            (x0.clone(), x0.inverse()),
        ];
        for (a, b) in pairs {
            if a.bottom() == b.top() {
                let lhs = psi.apply(&a.compose(&b).unwrap()).unwrap();
                let rhs = psi.apply(&a).unwrap().compose(&psi.apply(&b).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
            let li = psi.apply(&a.inverse()).unwrap();
            let ri = psi.apply(&a).unwrap().inverse();
            assert_eq!(li, ri);
        }
        // sums
        let lhs = psi.apply(&x0.sum(&c).unwrap()).unwrap();
        let rhs = psi.apply(&x0).unwrap().sum(&psi.apply(&c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn shape_validation() {
        let p = Presentation::thompson_f();
        let wrong = Diagram::cell(&p, 0).unwrap();
        // letter image xx but cell image is only (x,xx): shape mismatch
        assert!(DiagramMorphism::new(&p, &p, vec![p.word("xx").unwrap()], vec![wrong]).is_err());
    }

    #[test]
    fn cross_presentation_morphism() {
        // source: the one-cell presentation b -> b; target: wreath; the
        // cell maps to the 3-cell witness A(1) over ac.
        let src = Arc::new(Presentation::parse("b -> b").unwrap());
        let tgt = Presentation::wreath_zz();
        let a1 = wreath_zz_witness(&tgt, &[1]).unwrap();
        let psi = DiagramMorphism::new(&src, &tgt, vec![tgt.word("ac").unwrap()], vec![a1.clone()])
            .unwrap();
        let pi = Diagram::cell(&src, 0).unwrap();
        assert_eq!(psi.apply(&pi).unwrap(), a1);
        let pi3 = pi.compose(&pi).unwrap().compose(&pi).unwrap();
        let img = psi.apply(&pi3).unwrap();
        assert_eq!(img.cells(), 9);
        assert_eq!(
            img,
            a1.compose(&a1).unwrap().compose(&a1).unwrap()
        );
    }
}
