#![allow(dead_code)]

use heegaard_core::freegroup::{CyclicWord, Letter, Word};
use proptest::prelude::*;

pub fn letter(rank: usize) -> impl Strategy<Value = Letter> {
    (0..rank, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i))
}

pub fn raw(rank: usize, max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(letter(rank), 0..=max)
}

pub fn word(rank: usize, max: usize) -> impl Strategy<Value = Word> {
    raw(rank, max).prop_map(Word::from_letters)
}

pub fn cyclic(rank: usize, max: usize) -> impl Strategy<Value = CyclicWord> {
    raw(rank, max).prop_map(CyclicWord::from_letters)
}

pub fn nonempty_cyclic(rank: usize, max: usize) -> impl Strategy<Value = CyclicWord> {
    cyclic(rank, max).prop_filter("nonempty", |w| !w.is_empty())
}

pub fn system(rank: usize, curves: usize, max: usize) -> impl Strategy<Value = Vec<CyclicWord>> {
    prop::collection::vec(nonempty_cyclic(rank, max), 1..=curves)
}
