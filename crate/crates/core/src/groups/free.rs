//! Free group of finite rank on reduced words. Conjugacy classes are
//! classified exactly by the cyclically reduced word up to rotation.

use crate::engine::Group;
use crate::word::{cyclic_normal_form, Alphabet, Word, WordError};

pub struct FreeGroup {
    alphabet: Alphabet,
}

impl FreeGroup {
    /// Rank between 1 and 26 (letters a..z).
    pub fn new(rank: u32) -> FreeGroup {
        assert!((1..=26).contains(&rank), "rank must be in 1..=26");
        let letters: Vec<char> = (0..rank).map(|i| (b'a' + i as u8) as char).collect();
        FreeGroup {
            alphabet: Alphabet::involutive(&letters),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn from_str_word(&self, s: &str) -> Result<Word, WordError> {
        let w = self.alphabet.parse_word(s)?;
        self.alphabet.free_reduce(&w)
    }

    fn cyclically_reduce(&self, w: &Word) -> Word {
        let mut lits = w.lits().to_vec();
        while lits.len() >= 2 {
            let first = lits[0];
            let last = *lits.last().unwrap();
            if first.id == last.id && first.inv != last.inv {
                lits.pop();
                lits.remove(0);
            } else {
                break;
            }
        }
        Word::from_lits(lits)
    }
}

impl Group for FreeGroup {
    type Elem = Word;
    type ConjKey = Word;

    fn identity(&self) -> Word {
        Word::empty()
    }

    fn multiply(&self, a: &Word, b: &Word) -> Word {
        self.alphabet
            .free_reduce(&a.concat(b))
            .expect("involutive alphabet")
    }

    fn invert(&self, a: &Word) -> Word {
        a.inverse()
    }

    fn generators(&self) -> Vec<(String, Word)> {
        let mut gens = Vec::new();
        for (i, &c) in self.alphabet.letters().iter().enumerate() {
            let w = Word::from_ids(&[i as u16]);
            gens.push((c.to_string(), w.clone()));
            gens.push((format!("{c}'"), w.inverse()));
        }
        gens
    }

    fn conjugacy_key(&self, e: &Word) -> Option<Word> {
        let core = self.cyclically_reduce(e);
        if core.is_empty() {
            return Some(Word::empty());
        }
        Some(cyclic_normal_form(&core).expect("nonempty").into_word())
    }

    fn conjugacy_key_complete(&self) -> bool {
        true
    }

    fn display(&self, e: &Word) -> String {
        if e.is_empty() {
            "1".into()
        } else {
            self.alphabet.format_word(e)
        }
    }
}
