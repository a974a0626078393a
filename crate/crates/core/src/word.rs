//! Words over finite alphabets: parsing, free reduction, canonical
//! rotation of cyclic words, and compositions of integers.
//!
//! A word is a flat sequence of signed letters; the sign marks a formal
//! inverse (printed with a `'` suffix, e.g. `aba'`). Alphabets without an
//! involution reject signed letters at parse time.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),
    #[error("alphabet has no involution; inverse letters are not allowed")]
    NoInvolution,
    #[error("word must be nonempty")]
    EmptyWord,
    #[error("n must be positive")]
    ZeroComposition,
    #[error("composition enumeration supports n <= 63, got {0}")]
    TooLargeForEnumeration(u64),
    #[error("alphabet letters must be distinct")]
    DuplicateLetter,
}

/// Ordered finite alphabet. Letter order is the declared order and fixes
/// the lexicographic order used for canonical rotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<char>,
    involutive: bool,
}

impl Alphabet {
    pub fn new(letters: &[char], involutive: bool) -> Result<Alphabet, WordError> {
        let mut seen = letters.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != letters.len() {
            return Err(WordError::DuplicateLetter);
        }
        Ok(Alphabet {
            letters: letters.to_vec(),
            involutive,
        })
    }

    /// Alphabet with formal inverses (`x` paired with `x'`).
    pub fn involutive(letters: &[char]) -> Alphabet {
        Alphabet::new(letters, true).expect("distinct letters")
    }

    /// Plain semigroup alphabet without inverses.
    pub fn plain(letters: &[char]) -> Alphabet {
        Alphabet::new(letters, false).expect("distinct letters")
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_involutive(&self) -> bool {
        self.involutive
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn letter_name(&self, id: u16) -> char {
        self.letters[id as usize]
    }

    pub fn letter_id(&self, c: char) -> Option<u16> {
        self.letters.iter().position(|&l| l == c).map(|i| i as u16)
    }

    /// Parses `aba'` style strings: one character per letter, `'` suffix
    /// for a formal inverse.
    pub fn parse_word(&self, s: &str) -> Result<Word, WordError> {
        let mut lits = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c == '\'' {
                return Err(WordError::UnknownSymbol('\''));
            }
            let id = self.letter_id(c).ok_or(WordError::UnknownSymbol(c))?;
            let inv = i + 1 < chars.len() && chars[i + 1] == '\'';
            if inv {
                if !self.involutive {
                    return Err(WordError::NoInvolution);
                }
                i += 1;
            }
            lits.push(Lit { id, inv });
            i += 1;
        }
        Ok(Word(lits))
    }

    pub fn format_word(&self, w: &Word) -> String {
        let mut s = String::new();
        for lit in &w.0 {
            s.push(self.letter_name(lit.id));
            if lit.inv {
                s.push('\'');
            }
        }
        s
    }

    /// Removes every adjacent letter/formal-inverse pair; the result is
    /// the unique reduced word representing the same free-group element.
    pub fn free_reduce(&self, w: &Word) -> Result<Word, WordError> {
        if !self.involutive {
            return Err(WordError::NoInvolution);
        }
        let mut stack: Vec<Lit> = Vec::with_capacity(w.len());
        for &lit in &w.0 {
            match stack.last() {
                Some(&top) if top.id == lit.id && top.inv != lit.inv => {
                    stack.pop();
                }
                _ => stack.push(lit),
            }
        }
        Ok(Word(stack))
    }
}

/// A single signed letter. Ordering is by letter id, plain before inverse,
/// which together with the alphabet's declared order gives the total order
/// on words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Lit {
    pub id: u16,
    pub inv: bool,
}

impl Lit {
    pub fn plain(id: u16) -> Lit {
        Lit { id, inv: false }
    }

    pub fn inverse(self) -> Lit {
        Lit {
            id: self.id,
            inv: !self.inv,
        }
    }
}

/// A word over some alphabet. Stores letter ids only; parsing and
/// formatting go through the [`Alphabet`].
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word(pub Vec<Lit>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_lits(lits: Vec<Lit>) -> Word {
        Word(lits)
    }

    /// Word of plain (uninverted) letters from raw ids.
    pub fn from_ids(ids: &[u16]) -> Word {
        Word(ids.iter().map(|&id| Lit::plain(id)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Formal inverse: reversed word with all signs flipped.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let n = self.len();
        let k = k % n;
        let mut v = Vec::with_capacity(n);
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }
}

impl fmt::Display for Word {
    /// Raw id rendering used in debug output; prefer
    /// [`Alphabet::format_word`] when the alphabet is at hand.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for lit in &self.0 {
            write!(f, "{}{}", lit.id, if lit.inv { "'" } else { "" })?;
        }
        Ok(())
    }
}

/// A cyclic word held by its rotation-minimal representative. Two words
/// map to equal `CyclicWord`s iff they are rotations of each other.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord(Word);

impl CyclicWord {
    pub fn representative(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }
}

/// Lexicographically least rotation of a nonempty word, computed with
/// Booth's least-rotation algorithm in linear time.
pub fn cyclic_normal_form(w: &Word) -> Result<CyclicWord, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    let k = least_rotation_index(&w.0);
    Ok(CyclicWord(w.rotate(k)))
}

/// Booth's algorithm: index of the least rotation of `s`.
fn least_rotation_index<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let at = |i: usize| &s[i % n];
    // failure function over the doubled word, NONE = -1
    const NONE: usize = usize::MAX;
    let mut f = vec![NONE; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != NONE && sj != at(k + i + 1) {
            if sj < at(k + i + 1) {
                k = j - i - 1;
            }
            i = f[i];
        }
        if i == NONE && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            f[j - k] = NONE;
        } else {
            f[j - k] = if i == NONE { 0 } else { i + 1 };
        }
    }
    k
}

/// Number of ordered compositions of `n >= 1` into positive parts: 2^(n-1).
pub fn count_compositions(n: u64) -> Result<BigUint, WordError> {
    if n == 0 {
        return Err(WordError::ZeroComposition);
    }
    Ok(BigUint::from(1u8) << (n - 1))
}

/// Iterator over all compositions of `n` into positive parts, in a fixed
/// deterministic order (by break-position bitmask).
pub fn compositions(n: u64) -> Result<CompositionIter, WordError> {
    if n == 0 {
        return Err(WordError::ZeroComposition);
    }
    if n > 63 {
        return Err(WordError::TooLargeForEnumeration(n));
    }
    Ok(CompositionIter {
        n: n as u32,
        mask: 0,
        done: false,
    })
}

pub struct CompositionIter {
    n: u32,
    mask: u64,
    done: bool,
}

impl Iterator for CompositionIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        // bit i of mask set = cut after position i+1
        let mut parts = Vec::new();
        let mut run = 1u32;
        for i in 0..self.n - 1 {
            if self.mask >> i & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        if self.n == 1 || self.mask == (1u64 << (self.n - 1)) - 1 {
            self.done = true;
        } else {
            self.mask += 1;
        }
        Some(parts)
    }
}
