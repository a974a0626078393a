//! BS(m,n) = <a,t | t^-1 a^m t = a^n> as an HNN extension of Z, with
//! Britton-reduced canonical words: syllable exponents are normalized to
//! the coset transversals {0..n-1} (after t) and {0..m-1} (after t^-1),
//! and no pinch t^-1 a^cm t or t a^cn t^-1 remains. Equality of canonical
//! forms is equality in the group.

use crate::engine::Group;
use crate::groups::GroupError;
use crate::int::Int;
use num_integer::Integer;
use crate::word::{cyclic_normal_form, Alphabet, CyclicWord, Word};
use std::collections::BTreeSet;
use std::marker::PhantomData;

/// a^head t^{e_1} a^{k_1} ... t^{e_r} a^{k_r} with e_i in {+1,-1}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BrittonWord<I: Int> {
    pub head: I,
    pub tail: Vec<(i8, I)>,
}

impl<I: Int> BrittonWord<I> {
    pub fn t_length(&self) -> usize {
        self.tail.len()
    }
}

pub struct BrittonGroup<I: Int> {
    m: u32,
    n: u32,
    _scalar: PhantomData<I>,
}

impl<I: Int> BrittonGroup<I> {
    pub fn new(m: u32, n: u32) -> Self {
        assert!(m >= 1 && n >= 1, "BS(m,n) needs m,n >= 1");
        BrittonGroup {
            m,
            n,
            _scalar: PhantomData,
        }
    }

    pub fn params(&self) -> (u32, u32) {
        (self.m, self.n)
    }

    /// Canonical form from an arbitrary alternating word. Processes the
    /// syllables right to left: each exponent splits off its multiple of
    /// the relevant modulus, which travels left across the t-letter via
    /// the defining relation, and zero residues next to an opposite
    /// t-letter pinch away.
    pub fn normalize(&self, head: I, tail: Vec<(i8, I)>) -> BrittonWord<I> {
        let m = I::from_i64_exact(self.m as i64);
        let n = I::from_i64_exact(self.n as i64);
        let mut out_rev: Vec<(i8, I)> = Vec::with_capacity(tail.len());
        let mut carry = I::zero();
        for (eps, k) in tail.into_iter().rev() {
            let k = k + std::mem::replace(&mut carry, I::zero());
            let (modulus, lifted) = if eps > 0 { (&n, &m) } else { (&m, &n) };
            let (c, r) = k.div_mod_floor(modulus);
            let crossed = c * lifted.clone();
            match out_rev.last() {
                Some(&(eps2, _)) if r.is_zero() && eps2 == -eps => {
                    let (_, k2) = out_rev.pop().unwrap();
                    carry = crossed + k2;
                }
                _ => {
                    out_rev.push((eps, r));
                    carry = crossed;
                }
            }
        }
        out_rev.reverse();
        BrittonWord {
            head: head + carry,
            tail: out_rev,
        }
    }

    pub fn a_power(&self, k: i64) -> BrittonWord<I> {
        BrittonWord {
            head: I::from_i64_exact(k),
            tail: Vec::new(),
        }
    }

    pub fn a(&self) -> BrittonWord<I> {
        self.a_power(1)
    }

    pub fn t(&self) -> BrittonWord<I> {
        BrittonWord {
            head: I::zero(),
            tail: vec![(1, I::zero())],
        }
    }

    /// Builds the canonical form of a word over letters named `a` and `t`
    /// (with `'` inverses) in the given alphabet.
    pub fn from_word(&self, alphabet: &Alphabet, w: &Word) -> Result<BrittonWord<I>, GroupError> {
        let mut head = I::zero();
        let mut tail: Vec<(i8, I)> = Vec::new();
        for lit in w.lits() {
            let name = alphabet.letter_name(lit.id);
            let sign = if lit.inv { -1i64 } else { 1 };
            match name {
                'a' => {
                    let delta = I::from_i64_exact(sign);
                    match tail.last_mut() {
                        Some((_, k)) => *k = k.clone() + delta,
                        None => head = head + delta,
                    }
                }
                't' => tail.push((sign as i8, I::zero())),
                other => {
                    return Err(GroupError::InvalidParameter(format!(
                        "letter {other:?} is not a or t"
                    )))
                }
            }
        }
        Ok(self.normalize(head, tail))
    }
}

impl<I: Int> Group for BrittonGroup<I> {
    type Elem = BrittonWord<I>;
    /// No general conjugacy invariant is implemented for BS(m,n).
    type ConjKey = ();

    fn identity(&self) -> Self::Elem {
        BrittonWord {
            head: I::zero(),
            tail: Vec::new(),
        }
    }

    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let head = a.head.clone();
        let mut tail = a.tail.clone();
        match tail.last_mut() {
            Some((_, k)) => {
                *k = k.clone() + b.head.clone();
                tail.extend(b.tail.iter().cloned());
                self.normalize(head, tail)
            }
            None => self.normalize(head + b.head.clone(), b.tail.clone()),
        }
    }

    fn invert(&self, a: &Self::Elem) -> Self::Elem {
        // (a^h t^e1 a^k1 ... t^er a^kr)^-1
        //   = a^-kr t^-er a^-k(r-1) ... a^-k1 t^-e1 a^-h
        let r = a.tail.len();
        if r == 0 {
            return BrittonWord {
                head: -a.head.clone(),
                tail: Vec::new(),
            };
        }
        let head = -a.tail[r - 1].1.clone();
        let mut tail = Vec::with_capacity(r);
        for j in (1..=r).rev() {
            let eps = -a.tail[j - 1].0;
            let exp = if j >= 2 {
                -a.tail[j - 2].1.clone()
            } else {
                -a.head.clone()
            };
            tail.push((eps, exp));
        }
        self.normalize(head, tail)
    }

    fn generators(&self) -> Vec<(String, Self::Elem)> {
        vec![
            ("a".into(), self.a()),
            ("a'".into(), self.a_power(-1)),
            ("t".into(), self.t()),
            ("t'".into(), self.invert(&self.t())),
        ]
    }

    fn display(&self, e: &Self::Elem) -> String {
        let mut s = String::new();
        let power = |s: &mut String, base: &str, k: &I| {
            if k.is_zero() {
                return;
            }
            if k.is_one() {
                s.push_str(base);
            } else {
                s.push_str(&format!("{base}^{k}"));
            }
        };
        power(&mut s, "a", &e.head);
        for (eps, k) in &e.tail {
            s.push_str(if *eps > 0 { " t " } else { " t' " });
            power(&mut s, "a", k);
        }
        let trimmed = s.trim().to_string();
        if trimmed.is_empty() {
            "1".into()
        } else {
            trimmed
        }
    }
}

/// The HNN witness construction applies when the chosen element a avoids
/// AB u BA; in BS(m,n) with A = mZ, B = nZ that set is gcd(m,n)Z, so the
/// instance qualifies exactly when gcd(m,n) >= 2.
pub fn theorem_gate(m: u32, n: u32) -> Result<(), GroupError> {
    if m.gcd(&n) >= 2 {
        Ok(())
    } else {
        Err(GroupError::UnsupportedInstance(format!(
            "BS({m},{n}): a lies in AB u BA = gcd(m,n)Z, the witness criterion needs gcd >= 2"
        )))
    }
}

/// Cyclic classes of the positive words over {t, ta}, grouped by letter
/// length. Distinct classes are pairwise non-conjugate, so cumulative
/// class counts are certified lower bounds on the conjugacy growth.
#[derive(Debug)]
pub struct HnnWitnesses {
    pub alphabet: Alphabet,
    /// classes_by_len[l] holds the classes of words of exact length l
    /// (index 0 unused).
    pub classes_by_len: Vec<BTreeSet<CyclicWord>>,
}

impl HnnWitnesses {
    /// Number of classes of words of length <= l for each l.
    pub fn cumulative_counts(&self) -> Vec<u64> {
        let mut acc = 0u64;
        self.classes_by_len
            .iter()
            .skip(1)
            .map(|s| {
                acc += s.len() as u64;
                acc
            })
            .collect()
    }

    pub fn all_classes(&self) -> impl Iterator<Item = &CyclicWord> {
        self.classes_by_len.iter().flatten()
    }
}

pub fn hnn_witness_classes(m: u32, n: u32, max_len: u32) -> Result<HnnWitnesses, GroupError> {
    theorem_gate(m, n)?;
    let alphabet = Alphabet::plain(&['a', 't']);
    let t_id = alphabet.letter_id('t').unwrap();
    let a_id = alphabet.letter_id('a').unwrap();
    let mut classes_by_len: Vec<BTreeSet<CyclicWord>> =
        vec![BTreeSet::new(); max_len as usize + 1];
    // depth-first over block sequences: block t (one letter) or ta (two)
    let mut stack: Vec<u16> = Vec::new();
    fn go(
        stack: &mut Vec<u16>,
        t_id: u16,
        a_id: u16,
        max_len: u32,
        out: &mut [BTreeSet<CyclicWord>],
    ) {
        let len = stack.len() as u32;
        if len > 0 {
            let w = Word::from_ids(stack);
            out[len as usize].insert(cyclic_normal_form(&w).expect("nonempty"));
        }
        if len + 1 <= max_len {
            stack.push(t_id);
            go(stack, t_id, a_id, max_len, out);
            stack.pop();
        }
        if len + 2 <= max_len {
            stack.push(t_id);
            stack.push(a_id);
            go(stack, t_id, a_id, max_len, out);
            stack.pop();
            stack.pop();
        }
    }
    go(&mut stack, t_id, a_id, max_len, &mut classes_by_len);
    Ok(HnnWitnesses {
        alphabet,
        classes_by_len,
    })
}
