//! Words in finitely generated free groups.
//!
//! A [`Basis`] names the generators; [`Word`] and [`CyclicWord`] hold
//! freely (respectively cyclically) reduced letter sequences that refer to
//! generators by index. Text uses the grammar
//!
//! ```text
//! word := term { term }
//! term := atom [ "^" integer ]
//! atom := name | "(" word ")"
//! ```
//!
//! so `(x^-1 y)^2 (x z^-1)` is a word over `{x, y, z}`.

mod homology;
mod parse;

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write as _;
use core::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use homology::{homology, HomologyResult};

const RESERVED: &[char] = &['^', '(', ')', '-'];

/// Returns true when `name` is usable as a generator name.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c))
}

/// An ordered set of generator names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Basis {
    names: Vec<String>,
}

impl Basis {
    /// Builds a basis, rejecting empty, duplicate or reserved names.
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_valid_name(n) || names[..i].contains(n) {
                return Err(Error::InvalidName(n.clone()));
            }
        }
        Ok(Basis { names })
    }

    /// `x1, …, xk`.
    pub fn numbered(k: usize) -> Self {
        Basis { names: (1..=k).map(|i| alloc::format!("x{i}")).collect() }
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// Generator names in order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Name of generator `g`.
    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    /// Index of a generator name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Parses `text` into a freely reduced word.
    pub fn parse(&self, text: &str) -> Result<Word> {
        parse::parse_word(text, self)
    }

    /// Parses `text` and cyclically reduces it.
    pub fn parse_cyclic(&self, text: &str) -> Result<CyclicWord> {
        Ok(self.parse(text)?.cyclic_reduce().0)
    }

    /// Formats a letter sequence as `x y^-1 z`.
    pub fn format(&self, letters: &[Letter]) -> String {
        let mut out = String::new();
        for (i, l) in letters.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(self.name(l.generator));
            if l.inverse {
                out.push_str("^-1");
            }
        }
        out
    }

    /// Formats a letter as a Whitehead-graph vertex name, `x+` or `x-`.
    pub fn vertex_name(&self, l: Letter) -> String {
        let mut s = String::from(self.name(l.generator));
        let _ = write!(s, "{}", if l.inverse { '-' } else { '+' });
        s
    }

    pub(crate) fn check(&self, letters: &[Letter]) -> Result<()> {
        match letters.iter().find(|l| l.generator >= self.rank()) {
            Some(l) => Err(Error::RankMismatch { expected: self.rank(), found: l.generator + 1 }),
            None => Ok(()),
        }
    }
}

impl TryFrom<Vec<String>> for Basis {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        Basis::new(v)
    }
}

impl From<Basis> for Vec<String> {
    fn from(b: Basis) -> Self {
        b.names
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    /// Index into the basis.
    pub generator: usize,
    /// True for the inverse letter.
    pub inverse: bool,
}

impl Letter {
    /// The generator `g`.
    pub const fn pos(g: usize) -> Self {
        Letter { generator: g, inverse: false }
    }

    /// The inverse of generator `g`.
    pub const fn neg(g: usize) -> Self {
        Letter { generator: g, inverse: true }
    }

    /// Builds a letter from a generator and a sign.
    pub const fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    /// The inverse letter.
    #[must_use]
    pub const fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    /// `+1` or `-1`.
    pub const fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// Vertex index `2g` for `g`, `2g + 1` for `g⁻¹`.
    pub const fn vertex(self) -> usize {
        2 * self.generator + self.inverse as usize
    }

    /// Inverse of [`Letter::vertex`].
    pub const fn from_vertex(v: usize) -> Self {
        Letter { generator: v / 2, inverse: v % 2 == 1 }
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inv()) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct Word {
    letters: Vec<Letter>,
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word::from_letters(v)
    }
}

impl From<Word> for Vec<Letter> {
    fn from(w: Word) -> Self {
        w.letters
    }
}

/// How far [`Word::reduce`] goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReduceMode {
    /// Cancel adjacent inverse pairs.
    Free,
    /// Also cancel across the wrap.
    Cyclic,
}

impl Word {
    /// The identity.
    pub fn empty() -> Self {
        Word::default()
    }

    /// Freely reduces a letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    /// A one-letter word.
    pub fn letter(l: Letter) -> Self {
        Word { letters: alloc::vec![l] }
    }

    /// The letters.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Length.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// True for the identity.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Inverse word.
    #[must_use]
    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// Product `self · other`.
    #[must_use]
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    /// `by⁻¹ · self · by`.
    #[must_use]
    pub fn conjugate(&self, by: &Word) -> Word {
        by.inverse().concat(self).concat(by)
    }

    /// `selfⁿ`; negative powers invert.
    #[must_use]
    pub fn power(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Splits off a conjugating prefix: `self = prefix · core · prefix⁻¹`
    /// with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (CyclicWord, Word) {
        let l = &self.letters;
        let mut i = 0;
        while i + 1 < l.len() - i && l[i] == l[l.len() - 1 - i].inv() {
            i += 1;
        }
        if l.is_empty() {
            return (CyclicWord::default(), Word::empty());
        }
        (CyclicWord { letters: l[i..l.len() - i].to_vec() }, Word { letters: l[..i].to_vec() })
    }

    /// Reduces in the given mode; the prefix is empty in free mode.
    pub fn reduce(&self, mode: ReduceMode) -> (Word, Word) {
        match mode {
            ReduceMode::Free => (Word::from_letters(self.letters.iter().copied()), Word::empty()),
            ReduceMode::Cyclic => {
                let (c, p) = self.cyclic_reduce();
                (c.to_word(), p)
            }
        }
    }

    /// Exponent sums, one per generator of a rank-`rank` basis.
    pub fn abelianize(&self, rank: usize) -> AbelianVector {
        let mut e = alloc::vec![0i64; rank.max(self.min_rank())];
        for l in &self.letters {
            e[l.generator] += l.sign();
        }
        AbelianVector { exponents: e }
    }

    /// Smallest rank whose basis contains every letter.
    pub fn min_rank(&self) -> usize {
        self.letters.iter().map(|l| l.generator + 1).max().unwrap_or(0)
    }

    /// Renders with the given basis.
    pub fn format(&self, basis: &Basis) -> String {
        basis.format(&self.letters)
    }

    /// Checks every letter lies in `basis`.
    pub fn check_basis(&self, basis: &Basis) -> Result<()> {
        basis.check(&self.letters)
    }
}

/// Group operation for [`word_algebra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordOp {
    /// `a · b`.
    Concat,
    /// `a⁻¹`.
    Invert,
    /// `b⁻¹ a b`.
    Conjugate,
    /// `aⁿ`.
    Power(i64),
}

/// Applies `op` to `a` (and `b` where relevant).
pub fn word_algebra(a: &Word, b: &Word, op: WordOp) -> Word {
    match op {
        WordOp::Concat => a.concat(b),
        WordOp::Invert => a.inverse(),
        WordOp::Conjugate => a.conjugate(b),
        WordOp::Power(n) => a.power(n),
    }
}

/// A cyclically reduced word; equality and order ignore rotation.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl From<Vec<Letter>> for CyclicWord {
    fn from(v: Vec<Letter>) -> Self {
        Word::from_letters(v).cyclic_reduce().0
    }
}

impl From<CyclicWord> for Vec<Letter> {
    fn from(w: CyclicWord) -> Self {
        w.letters
    }
}

impl From<Word> for CyclicWord {
    fn from(w: Word) -> Self {
        w.cyclic_reduce().0
    }
}

fn least_rotation(l: &[Letter]) -> usize {
    let n = l.len();
    let mut best = 0;
    for s in 1..n {
        for k in 0..n {
            match l[(s + k) % n].cmp(&l[(best + k) % n]) {
                Ordering::Less => {
                    best = s;
                    break;
                }
                Ordering::Greater => break,
                Ordering::Equal => {}
            }
        }
    }
    best
}

impl CyclicWord {
    /// Reduces a letter sequence freely and cyclically.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        Word::from_letters(letters).cyclic_reduce().0
    }

    /// Letters in stored rotation.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Length.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// True for the trivial class.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The lexicographically least rotation.
    pub fn canonical(&self) -> Vec<Letter> {
        let s = least_rotation(&self.letters);
        let mut v = self.letters[s..].to_vec();
        v.extend_from_slice(&self.letters[..s]);
        v
    }

    /// Rotates left by `k`.
    #[must_use]
    pub fn rotate(&self, k: usize) -> CyclicWord {
        if self.letters.is_empty() {
            return self.clone();
        }
        let mut v = self.letters.clone();
        v.rotate_left(k % self.letters.len());
        CyclicWord { letters: v }
    }

    /// Inverse class.
    #[must_use]
    pub fn inverse(&self) -> CyclicWord {
        CyclicWord { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// Equal up to rotation or inversion.
    pub fn same_curve(&self, other: &CyclicWord) -> bool {
        self == other || *self == other.inverse()
    }

    /// As a linear word in stored rotation.
    pub fn to_word(&self) -> Word {
        Word { letters: self.letters.clone() }
    }

    /// Exponent sums.
    pub fn abelianize(&self, rank: usize) -> AbelianVector {
        self.to_word().abelianize(rank)
    }

    /// Renders with the given basis.
    pub fn format(&self, basis: &Basis) -> String {
        basis.format(&self.letters)
    }

    /// Generators that occur.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.letters.iter().map(|l| l.generator).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Occurrences of generator `g` with either sign.
    pub fn occurrences(&self, g: usize) -> usize {
        self.letters.iter().filter(|l| l.generator == g).count()
    }
}

impl PartialEq for CyclicWord {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }
}

impl Eq for CyclicWord {}

impl Hash for CyclicWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical().cmp(&other.canonical())
    }
}

/// Exponent-sum vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianVector {
    /// One entry per generator.
    pub exponents: Vec<i64>,
}

impl AbelianVector {
    /// Sum of absolute values.
    pub fn l1(&self) -> u64 {
        self.exponents.iter().map(|e| e.unsigned_abs()).sum()
    }
}

impl core::ops::Add for &AbelianVector {
    type Output = AbelianVector;
    fn add(self, rhs: &AbelianVector) -> AbelianVector {
        let n = self.exponents.len().max(rhs.exponents.len());
        let get = |v: &AbelianVector, i: usize| v.exponents.get(i).copied().unwrap_or(0);
        AbelianVector { exponents: (0..n).map(|i| get(self, i) + get(rhs, i)).collect() }
    }
}

/// A named cyclic word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCurve {
    /// Curve name.
    pub name: String,
    /// Its word.
    pub word: CyclicWord,
}

/// Named curves over a common basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSystem {
    /// The basis.
    pub basis: Basis,
    /// The curves, in order.
    pub curves: Vec<NamedCurve>,
}

impl CurveSystem {
    /// Builds a system, checking names are distinct and words fit the basis.
    pub fn new(basis: Basis, curves: Vec<NamedCurve>) -> Result<Self> {
        for (i, c) in curves.iter().enumerate() {
            if curves[..i].iter().any(|d| d.name == c.name) {
                return Err(Error::DuplicateCurve(c.name.clone()));
            }
            basis.check(c.word.letters())?;
        }
        Ok(CurveSystem { basis, curves })
    }

    /// Parses `(name, word)` pairs.
    pub fn parse<'a, I>(basis: Basis, curves: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let curves = curves
            .into_iter()
            .map(|(n, w)| Ok(NamedCurve { name: String::from(n), word: basis.parse_cyclic(w)? }))
            .collect::<Result<Vec<_>>>()?;
        CurveSystem::new(basis, curves)
    }

    /// The words.
    pub fn words(&self) -> Vec<CyclicWord> {
        self.curves.iter().map(|c| c.word.clone()).collect()
    }

    /// The names.
    pub fn names(&self) -> Vec<String> {
        self.curves.iter().map(|c| c.name.clone()).collect()
    }

    /// Looks up a curve by name.
    pub fn get(&self, name: &str) -> Option<&CyclicWord> {
        self.curves.iter().find(|c| c.name == name).map(|c| &c.word)
    }

    /// The sub-system with the given names, in the given order.
    pub fn select(&self, names: &[&str]) -> Result<CurveSystem> {
        let curves = names
            .iter()
            .map(|n| {
                self.curves.iter().find(|c| c.name == *n).cloned().ok_or_else(|| Error::UnknownCurve(String::from(*n)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CurveSystem { basis: self.basis.clone(), curves })
    }
}

/// Parses `text` over `basis`.
pub fn parse_word(text: &str, basis: &Basis) -> Result<Word> {
    parse::parse_word(text, basis)
}

/// Free or cyclic reduction; returns the reduced word and the conjugating
/// prefix removed (empty in free mode).
pub fn reduce(word: &Word, mode: ReduceMode) -> (Word, Word) {
    word.reduce(mode)
}

/// Exponent sums of `word` in a rank-`rank` basis.
pub fn abelianize(word: &Word, rank: usize) -> AbelianVector {
    word.abelianize(rank)
}
