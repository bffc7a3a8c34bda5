//! Free-group words.
//!
//! A [`Word`] is always freely reduced. Letters are indexed generators with a
//! sign; the textual syntax spells generator `i` with the `i`-th entry of
//! [`ALPHABET`] and its inverse with the upper-case letter. `e` is reserved for
//! the identity, so the alphabet skips it.

mod term;

pub use term::{GroupTerm, Term, TermError};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Generator spellings, in generator order. `e` is the identity.
pub const ALPHABET: &[u8; 25] = b"abcdfghijklmnopqrstuvwxyz";

/// Number of generators expressible in the letter syntax.
pub const MAX_LETTER_GENERATORS: usize = ALPHABET.len();

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty input; write `e` or `1` for the identity")]
    Empty,
    #[error("character {ch:?} at position {pos} is not a generator letter")]
    InvalidCharacter { ch: char, pos: usize },
    #[error("letter {ch:?} names generator {index}, but only {generators} generators are available")]
    GeneratorOutOfRange {
        ch: char,
        index: usize,
        generators: usize,
    },
}

/// A generator or inverse generator.
///
/// Stored as `2 * generator + inverted`, which makes the derived ordering the
/// `a < A < b < B < ...` order used for deterministic tie-breaking.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub const fn new(generator: usize, inverted: bool) -> Self {
        Letter(((generator as u32) << 1) | inverted as u32)
    }

    pub const fn positive(generator: usize) -> Self {
        Self::new(generator, false)
    }

    pub const fn negative(generator: usize) -> Self {
        Self::new(generator, true)
    }

    pub const fn from_code(code: u32) -> Self {
        Letter(code)
    }

    pub const fn code(self) -> u32 {
        self.0
    }

    pub const fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub const fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    /// `+1` or `-1`.
    pub const fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    #[must_use]
    pub const fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    pub fn to_char(self) -> Option<char> {
        let c = *ALPHABET.get(self.generator())? as char;
        Some(if self.is_inverse() {
            c.to_ascii_uppercase()
        } else {
            c
        })
    }

    pub fn from_char(c: char) -> Option<Self> {
        let lower = c.to_ascii_lowercase();
        let index = ALPHABET.iter().position(|&b| b as char == lower)?;
        Some(Letter::new(index, c.is_ascii_uppercase()))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_char() {
            Some(c) => write!(f, "{c}"),
            // Outside the letter syntax; not parseable.
            None if self.is_inverse() => write!(f, "[-{}]", self.generator()),
            None => write!(f, "[{}]", self.generator()),
        }
    }
}

/// Cancels adjacent inverse pairs, returning the freely reduced word.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for letter in raw {
        if out.last() == Some(&letter.inverse()) {
            out.pop();
        } else {
            out.push(letter);
        }
    }
    Word(out)
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![Letter::positive(index)])
    }

    pub fn letter(letter: Letter) -> Self {
        Word(vec![letter])
    }

    /// Builds a word from raw letters, freely reducing them.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        free_reduce(raw)
    }

    pub fn parse(text: &str, generators: usize) -> Result<Self, WordError> {
        parse_word(text, generators)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// One more than the largest generator index used, or 0 for the identity.
    pub fn generator_bound(&self) -> usize {
        self.0.iter().map(|l| l.generator() + 1).max().unwrap_or(0)
    }

    pub fn contains_generator(&self, generator: usize) -> bool {
        self.0.iter().any(|l| l.generator() == generator)
    }

    #[must_use]
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// The reduced product `self * other`.
    #[must_use]
    pub fn concat(&self, other: &Word) -> Word {
        let (u, v) = (&self.0, &other.0);
        let mut cancel = 0;
        while cancel < u.len() && cancel < v.len() && u[u.len() - 1 - cancel] == v[cancel].inverse()
        {
            cancel += 1;
        }
        let mut out = Vec::with_capacity(u.len() + v.len() - 2 * cancel);
        out.extend_from_slice(&u[..u.len() - cancel]);
        out.extend_from_slice(&v[cancel..]);
        Word(out)
    }

    /// `u * self * u^-1`, reduced.
    #[must_use]
    pub fn conjugate(&self, u: &Word) -> Word {
        u.concat(self).concat(&u.inverse())
    }

    /// Splits `self = prefix * core * prefix^-1` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let w = &self.0;
        let mut k = 0;
        while 2 * k + 1 < w.len() && w[k] == w[w.len() - 1 - k].inverse() {
            k += 1;
        }
        (Word(w[k..w.len() - k].to_vec()), Word(w[..k].to_vec()))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&first), Some(&last)) => self.0.len() == 1 || first != last.inverse(),
            _ => true,
        }
    }

    /// The rotation starting at `offset`.
    #[must_use]
    pub fn rotate(&self, offset: usize) -> Word {
        if self.is_empty() {
            return Word::identity();
        }
        let offset = offset % self.len();
        let mut out = Vec::with_capacity(self.len());
        out.extend_from_slice(&self.0[offset..]);
        out.extend_from_slice(&self.0[..offset]);
        // A rotation of a reduced word is reduced only if the word is cyclically reduced.
        free_reduce(out)
    }

    /// Lexicographically least rotation of the cyclic reduction.
    #[must_use]
    pub fn min_cyclic_rotation(&self) -> Word {
        let (core, _) = self.cyclic_reduce();
        (0..core.len().max(1))
            .map(|k| core.rotate(k))
            .min_by(|a, b| a.0.cmp(&b.0))
            .unwrap_or_default()
    }

    #[must_use]
    pub fn power(&self, exponent: i64) -> Word {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        (0..exponent.unsigned_abs()).fold(Word::identity(), |acc, _| acc.concat(&base))
    }

    /// Signed letter counts per generator; the vector has at least `generators` entries.
    pub fn exponent_vector(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0; generators.max(self.generator_bound())];
        for l in &self.0 {
            v[l.generator()] += l.sign();
        }
        v
    }

    /// Shortlex order: length first, then letters under `a < A < b < B < ...`.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }

    pub fn to_term(&self) -> GroupTerm {
        GroupTerm::from_word(self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("e");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Parses letter syntax over `generators` generators and freely reduces it.
pub fn parse_word(text: &str, generators: usize) -> Result<Word, WordError> {
    let text = text.trim();
    match text {
        "" => return Err(WordError::Empty),
        "e" | "1" => return Ok(Word::identity()),
        _ => {}
    }
    let mut raw = Vec::with_capacity(text.len());
    for (pos, ch) in text.chars().enumerate() {
        let letter = Letter::from_char(ch).ok_or(WordError::InvalidCharacter { ch, pos })?;
        if letter.generator() >= generators {
            return Err(WordError::GeneratorOutOfRange {
                ch,
                index: letter.generator(),
                generators,
            });
        }
        raw.push(letter);
    }
    Ok(free_reduce(raw))
}

/// Parses with the full letter alphabet available.
impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s, MAX_LETTER_GENERATORS)
    }
}

/// Finds `w` with `w * p * w^-1 = q`, if `p` and `q` are conjugate.
///
/// The witness is the shortest one, ties broken by letter order.
pub fn find_conjugator(p: &Word, q: &Word) -> Option<Word> {
    let (p_core, p_prefix) = p.cyclic_reduce();
    let (q_core, q_prefix) = q.cyclic_reduce();
    if p_core.len() != q_core.len() {
        return None;
    }
    if p_core.is_empty() {
        return Some(Word::identity());
    }
    // q_core = x^-1 * p_core * x where p_core = x * y.
    let len = p_core.len();
    let split = (0..len).find(|&k| {
        p_core.0[k..]
            .iter()
            .chain(&p_core.0[..k])
            .eq(q_core.0.iter())
    })?;
    let x_inv = Word(p_core.0[..split].to_vec()).inverse();

    // Every witness is q_prefix * x^-1 * root^j * p_prefix^-1.
    let period = (1..=len)
        .find(|&d| len % d == 0 && (d..len).all(|i| p_core.0[i] == p_core.0[i - d]))
        .unwrap_or(len);
    let root = Word(p_core.0[..period].to_vec());
    let slack = 2 * (split + p_prefix.len() + q_prefix.len());
    let reach = (slack / period + 1) as i64;

    let head = q_prefix.concat(&x_inv);
    let tail = p_prefix.inverse();
    (-reach..=reach)
        .map(|j| head.concat(&root.power(j)).concat(&tail))
        .min_by(|a, b| a.shortlex_cmp(b))
}
