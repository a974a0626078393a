//! Discrete Heisenberg group H = <x,y,z | [x,y]=z, zx=xz, zy=yz>.
//!
//! Elements are triples (k,l,m) with the product
//! `(k,l,m)(k',l',m') = (k+k', l+l', m+m'+k*l')`; the triple coordinates
//! are the exponents of the normal form up to the fixed convention. The
//! generating set is {x, y} with inverses.

use crate::engine::Group;
use crate::int::Int;
use std::marker::PhantomData;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeisenbergElement<I: Int> {
    pub k: I,
    pub l: I,
    pub m: I,
}

impl<I: Int> HeisenbergElement<I> {
    pub fn new(k: i64, l: i64, m: i64) -> Self {
        HeisenbergElement {
            k: I::from_i64_exact(k),
            l: I::from_i64_exact(l),
            m: I::from_i64_exact(m),
        }
    }
}

/// Conjugacy invariant: (k, l) is preserved by conjugation and the central
/// coordinate moves by multiples of gcd(|k|,|l|), so the class of a
/// non-central element is pinned by m mod gcd; central elements are their
/// own classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeisenbergConjKey<I: Int> {
    pub k: I,
    pub l: I,
    pub m_residue: I,
}

pub struct HeisenbergGroup<I: Int> {
    _scalar: PhantomData<I>,
}

impl<I: Int> Default for HeisenbergGroup<I> {
    fn default() -> Self {
        Self::new()
    }
}

impl<I: Int> HeisenbergGroup<I> {
    pub fn new() -> Self {
        HeisenbergGroup {
            _scalar: PhantomData,
        }
    }

    pub fn x(&self) -> HeisenbergElement<I> {
        HeisenbergElement::new(1, 0, 0)
    }

    pub fn y(&self) -> HeisenbergElement<I> {
        HeisenbergElement::new(0, 1, 0)
    }

    pub fn z(&self) -> HeisenbergElement<I> {
        HeisenbergElement::new(0, 0, 1)
    }

    pub fn key(&self, e: &HeisenbergElement<I>) -> HeisenbergConjKey<I> {
        let d = e.k.gcd(&e.l);
        let m_residue = if d.is_zero() {
            e.m.clone()
        } else {
            e.m.mod_floor(&d)
        };
        HeisenbergConjKey {
            k: e.k.clone(),
            l: e.l.clone(),
            m_residue,
        }
    }
}

impl<I: Int> Group for HeisenbergGroup<I> {
    type Elem = HeisenbergElement<I>;
    type ConjKey = HeisenbergConjKey<I>;

    fn identity(&self) -> Self::Elem {
        HeisenbergElement::new(0, 0, 0)
    }

    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        HeisenbergElement {
            k: a.k.clone() + b.k.clone(),
            l: a.l.clone() + b.l.clone(),
            m: a.m.clone() + b.m.clone() + a.k.clone() * b.l.clone(),
        }
    }

    fn invert(&self, a: &Self::Elem) -> Self::Elem {
        HeisenbergElement {
            k: -a.k.clone(),
            l: -a.l.clone(),
            m: a.k.clone() * a.l.clone() - a.m.clone(),
        }
    }

    fn generators(&self) -> Vec<(String, Self::Elem)> {
        vec![
            ("x".into(), self.x()),
            ("x'".into(), self.invert(&self.x())),
            ("y".into(), self.y()),
            ("y'".into(), self.invert(&self.y())),
        ]
    }

    fn conjugacy_key(&self, e: &Self::Elem) -> Option<Self::ConjKey> {
        Some(self.key(e))
    }

    fn conjugacy_key_complete(&self) -> bool {
        true
    }

    fn display(&self, e: &Self::Elem) -> String {
        format!("({},{},{})", e.k, e.l, e.m)
    }
}
