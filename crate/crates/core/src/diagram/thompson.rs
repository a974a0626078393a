//! The standard generators of Thompson's group F as spherical
//! (x,x)-diagrams over the presentation {x -> xx}.

use super::{ball::DiagramGroup, Diagram, Dir, Presentation, Step};
use std::sync::Arc;

fn step(dir: Dir, offset: u32) -> Step {
    Step {
        cell: 0,
        dir,
        offset,
    }
}

/// x0 = (x->xx) o (eps(x)+(x->xx)) o ((x->xx)^-1+eps(x)) o (x->xx)^-1.
pub fn x0_diagram(pres: &Arc<Presentation>) -> Diagram {
    Diagram::from_steps(
        pres,
        pres.word("x").expect("x in alphabet"),
        vec![
            step(Dir::Forward, 0),
            step(Dir::Forward, 1),
            step(Dir::Inverse, 0),
            step(Dir::Inverse, 0),
        ],
    )
    .expect("valid derivation")
}

/// x1 = (x->xx) o (x0 + eps(x)) o (x->xx)^-1: one caret down, then x0 on
/// the left letter. This orientation matches the relators
/// [x0 x1^-1, x0^-1 x1 x0] and [x0 x1^-1, x0^-2 x1 x0^2] under the
/// compose-then-reduce product in written order.
pub fn x1_diagram(pres: &Arc<Presentation>) -> Diagram {
    Diagram::from_steps(
        pres,
        pres.word("x").expect("x in alphabet"),
        vec![
            step(Dir::Forward, 0),
            step(Dir::Forward, 0),
            step(Dir::Forward, 1),
            step(Dir::Inverse, 0),
            step(Dir::Inverse, 0),
            step(Dir::Inverse, 0),
        ],
    )
    .expect("valid derivation")
}

/// Thompson's group F as a diagram group with generators x0, x1.
pub fn thompson_f_group() -> DiagramGroup {
    let pres = Presentation::thompson_f();
    let x0 = x0_diagram(&pres);
    let x1 = x1_diagram(&pres);
    DiagramGroup::new(&pres, vec![("x0".into(), x0), ("x1".into(), x1)])
        .expect("x0, x1 are spherical over x")
}
