//! The exponential witness family in DG(P, ac) for
//! P = {ab -> a, b -> b, bc -> c}: one spherical diagram per composition
//! of n, pairwise non-conjugate, with at most 3n cells.

use super::{Diagram, DiagramError, Dir, Presentation, Step};
use std::sync::Arc;

const CELL_AB_A: usize = 0;
const CELL_B_B: usize = 1;

/// The absolutely reduced core: eps(a) + pi^{n_0} + ... + pi^{n_k} +
/// eps(c) over the base word a b^{k+1} c, where pi is the (b,b)-cell.
pub fn wreath_delta(pres: &Arc<Presentation>, parts: &[u32]) -> Result<Diagram, DiagramError> {
    check_parts(parts)?;
    let k1 = parts.len();
    let top = pres.word(&format!("a{}c", "b".repeat(k1)))?;
    let mut steps = Vec::new();
    for (i, &p) in parts.iter().enumerate() {
        for _ in 0..p {
            steps.push(Step {
                cell: CELL_B_B as u16,
                dir: Dir::Forward,
                offset: (1 + i) as u32,
            });
        }
    }
    Diagram::from_steps(pres, top, steps)
}

/// The conjugator: the product of k+1 layers, each inserting one b via
/// the inverse (a,ab)-cell; an (ac, a b^{k+1} c)-diagram with k+1 cells.
pub fn wreath_gamma(pres: &Arc<Presentation>, layers: usize) -> Result<Diagram, DiagramError> {
    let top = pres.word("ac")?;
    let steps = (0..layers)
        .map(|_| Step {
            cell: CELL_AB_A as u16,
            dir: Dir::Inverse,
            offset: 0,
        })
        .collect();
    Diagram::from_steps(pres, top, steps)
}

fn check_parts(parts: &[u32]) -> Result<(), DiagramError> {
    if parts.is_empty() {
        return Err(DiagramError::Parse("witness needs at least one part".into()));
    }
    if parts.iter().any(|&p| p == 0) {
        return Err(DiagramError::Parse("witness parts must be positive".into()));
    }
    Ok(())
}

/// The spherical (ac,ac)-witness for one composition: gamma . delta .
/// gamma^-1, reduced. With n the part sum and k+1 the number of parts it
/// has exactly n + 2(k+1) <= 3n cells.
pub fn wreath_zz_witness(pres: &Arc<Presentation>, parts: &[u32]) -> Result<Diagram, DiagramError> {
    let delta = wreath_delta(pres, parts)?;
    let gamma = wreath_gamma(pres, parts.len())?;
    let witness = gamma
        .compose(&delta)?
        .compose(&gamma.inverse())?
        .reduce();
    let n: u32 = parts.iter().sum();
    let expected = n as usize + 2 * parts.len();
    debug_assert_eq!(witness.cells(), expected);
    debug_assert!(witness.is_spherical());
    Ok(witness)
}
