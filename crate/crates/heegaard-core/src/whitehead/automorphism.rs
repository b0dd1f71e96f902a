use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::freegroup::{CyclicWord, Letter, Word};
use crate::{Error, Result};

/// Type-II Whitehead automorphism `(a, A)` with `a ∈ A`, `a⁻¹ ∉ A`.
///
/// A letter `v ∉ {a, a⁻¹}` maps to `v·a` if only `v ∈ A`, to `a⁻¹·v` if
/// only `v⁻¹ ∈ A`, to `a⁻¹·v·a` if both, and to itself otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WhiteheadMove {
    /// The multiplier `a`.
    pub multiplier: Letter,
    /// The set `A`, sorted.
    pub set: Vec<Letter>,
}

impl WhiteheadMove {
    /// Validates and normalizes a move.
    pub fn new(multiplier: Letter, set: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let mut set: Vec<Letter> = set.into_iter().collect();
        set.sort_unstable();
        set.dedup();
        if !set.contains(&multiplier) {
            return Err(Error::MalformedMove(format!("multiplier {multiplier:?} not in A")));
        }
        if set.contains(&multiplier.inv()) {
            return Err(Error::MalformedMove(format!("inverse of multiplier {multiplier:?} in A")));
        }
        Ok(WhiteheadMove { multiplier, set })
    }

    pub(crate) fn new_unchecked(multiplier: Letter, mut set: Vec<Letter>) -> Self {
        set.sort_unstable();
        set.dedup();
        WhiteheadMove { multiplier, set }
    }

    /// Largest generator index mentioned, plus one.
    pub fn min_rank(&self) -> usize {
        self.set.iter().chain(core::iter::once(&self.multiplier)).map(|l| l.generator + 1).max().unwrap_or(0)
    }

    /// Image of a single letter, unreduced.
    pub fn image(&self, l: Letter) -> Vec<Letter> {
        let a = self.multiplier;
        if l.generator == a.generator {
            return alloc::vec![l];
        }
        let mut out = Vec::with_capacity(3);
        if self.set.contains(&l.inv()) {
            out.push(a.inv());
        }
        out.push(l);
        if self.set.contains(&l) {
            out.push(a);
        }
        out
    }

    /// Image of a word, freely reduced.
    pub fn apply_word(&self, w: &Word) -> Word {
        Word::from_letters(w.letters().iter().flat_map(|&l| self.image(l)))
    }

    /// Image of a cyclic word, cyclically reduced.
    pub fn apply(&self, w: &CyclicWord) -> CyclicWord {
        CyclicWord::from_letters(w.letters().iter().flat_map(|&l| self.image(l)))
    }

    /// The inverse automorphism `(a⁻¹, A − {a} ∪ {a⁻¹})`.
    #[must_use]
    pub fn inverse(&self) -> WhiteheadMove {
        let a = self.multiplier;
        let set = self.set.iter().map(|&l| if l == a { a.inv() } else { l }).collect();
        WhiteheadMove::new_unchecked(a.inv(), set)
    }
}

/// Applies `m` to every word of `system`.
pub fn apply_move(m: &WhiteheadMove, system: &[CyclicWord]) -> Vec<CyclicWord> {
    system.iter().map(|w| m.apply(w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::Basis;

    #[test]
    fn singleton_set_is_identity() {
        let b = Basis::new(["a", "x", "y"]).unwrap();
        let m = WhiteheadMove::new(Letter::pos(0), [Letter::pos(0)]).unwrap();
        let w = b.parse_cyclic("x y^-1 a x^-1 y y").unwrap();
        assert_eq!(m.apply(&w).letters(), w.letters());
    }

    #[test]
    fn one_letter_rule() {
        let b = Basis::new(["a", "x"]).unwrap();
        let m = WhiteheadMove::new(Letter::pos(0), [Letter::pos(0), Letter::pos(1)]).unwrap();
        let w = b.parse("x").unwrap();
        assert_eq!(m.apply_word(&w).format(&b), "x a");
        let both = WhiteheadMove::new(Letter::pos(0), [Letter::pos(0), Letter::pos(1), Letter::neg(1)]).unwrap();
        assert_eq!(both.apply_word(&w).format(&b), "a^-1 x a");
    }

    #[test]
    fn malformed() {
        assert!(WhiteheadMove::new(Letter::pos(0), [Letter::pos(1)]).is_err());
        assert!(WhiteheadMove::new(Letter::pos(0), [Letter::pos(0), Letter::neg(0)]).is_err());
    }

    #[test]
    fn inverse_round_trips() {
        let b = Basis::new(["a", "x", "y"]).unwrap();
        let m = WhiteheadMove::new(Letter::neg(0), [Letter::neg(0), Letter::pos(1), Letter::neg(2), Letter::pos(2)])
            .unwrap();
        let w = b.parse("x y a x^-1 y^-1 y^-1 a^-1").unwrap();
        assert_eq!(m.inverse().apply_word(&m.apply_word(&w)), w);
    }
}
