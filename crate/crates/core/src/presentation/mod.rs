//! Presentations and the elementary moves acting on them.

mod family;
mod moves;

pub use family::MoveFamily;
pub use moves::{Move, MoveKind, SignedPermutation};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::word::{parse_word, Letter, Word, WordError, MAX_LETTER_GENERATORS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("presentation text must look like `<gens> | <relator>, ...`: {0}")]
    Syntax(String),
    #[error("relator {index}: {source}")]
    Relator { index: usize, source: WordError },
    #[error("relator {index} uses generator {generator}, but there are only {generators} generators")]
    GeneratorOutOfRange {
        index: usize,
        generator: usize,
        generators: usize,
    },
    #[error("unknown presentation {0:?}; expected `<gens> | ...`, AK(n), P or T(n)")]
    UnknownBuiltin(String),
    #[error("AK(n) needs n >= 2, got {0}")]
    AkTooSmall(usize),
    #[error("T(n) needs n >= 1")]
    TrivialEmpty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("relator index {index} out of range for {count} relators")]
    RelatorOutOfRange { index: usize, count: usize },
    #[error("multiplication needs two distinct relators, got {0} twice")]
    SameRelator(usize),
    #[error("conjugator {word} uses generator {generator}, but there are only {generators} generators")]
    ConjugatorOutOfRange {
        word: Word,
        generator: usize,
        generators: usize,
    },
    #[error("automorphism acts on {got} generators, presentation has {expected}")]
    AutArity { expected: usize, got: usize },
    #[error("invalid automorphism: {0}")]
    InvalidAut(String),
    #[error("cannot remove a stabilization: {0}")]
    StabRemove(String),
}

/// Ordered relators over `generators` generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: usize,
    relators: Vec<Word>,
}

/// How [`Presentation::canonical_key`] identifies presentations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KeyMode {
    /// Generator count and relators exactly as stored.
    #[default]
    Exact,
    /// Each relator replaced by the least rotation of its cyclic reduction.
    /// Coarser: presentations that differ by conjugation share a key, so
    /// paths found with it are not exact replays.
    Cyclic,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (index, r) in relators.iter().enumerate() {
            if r.generator_bound() > generators {
                return Err(PresentationError::GeneratorOutOfRange {
                    index,
                    generator: r.generator_bound() - 1,
                    generators,
                });
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    pub(crate) fn new_unchecked(generators: usize, relators: Vec<Word>) -> Self {
        Presentation {
            generators,
            relators,
        }
    }

    /// Parses `<gens> | <relator>, <relator>, ...`, or one of the built-in
    /// names `AK(n)`, `P`, `T(n)`.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let text = text.trim();
        let Some((gens, rels)) = text.split_once('|') else {
            return builtin(text);
        };
        let generators: usize = gens
            .trim()
            .parse()
            .map_err(|_| PresentationError::Syntax(format!("bad generator count {:?}", gens.trim())))?;
        let relators = parse_relators(rels, generators)?;
        Presentation::new(generators, relators)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn relator(&self, index: usize) -> Option<&Word> {
        self.relators.get(index)
    }

    pub fn len(&self) -> usize {
        self.relators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relators.is_empty()
    }

    pub fn is_balanced(&self) -> bool {
        self.relators.len() == self.generators
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn max_relator_length(&self) -> usize {
        self.relators.iter().map(Word::len).max().unwrap_or(0)
    }

    /// Applies one move; every relator other than the one the move targets is untouched.
    pub fn apply(&self, m: &Move) -> Result<Presentation, MoveError> {
        moves::apply_move(self, m)
    }

    /// Self-delimiting byte encoding, injective on presentations for [`KeyMode::Exact`].
    pub fn canonical_key(&self, mode: KeyMode) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 + self.total_length() + self.relators.len());
        self.write_key(mode, &mut out);
        out
    }

    pub(crate) fn write_key(&self, mode: KeyMode, out: &mut Vec<u8>) {
        push_varint(out, self.generators as u64);
        push_varint(out, self.relators.len() as u64);
        for r in &self.relators {
            match mode {
                KeyMode::Exact => push_word(out, r),
                KeyMode::Cyclic => push_word(out, &r.min_cyclic_rotation()),
            }
        }
    }

    /// Inverse of [`canonical_key`](Self::canonical_key) for exact keys.
    pub(crate) fn from_key(key: &[u8]) -> Presentation {
        let mut pos = 0;
        let generators = read_varint(key, &mut pos) as usize;
        let count = read_varint(key, &mut pos) as usize;
        let relators = (0..count)
            .map(|_| {
                let len = read_varint(key, &mut pos) as usize;
                let letters: Vec<Letter> = (0..len)
                    .map(|_| Letter::from_code(read_varint(key, &mut pos) as u32))
                    .collect();
                Word::from_letters(letters)
            })
            .collect();
        Presentation::new_unchecked(generators, relators)
    }

    /// Row `i` is the exponent vector of relator `i`.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = r.exponent_vector(self.generators);
                row.truncate(self.generators);
                row
            })
            .collect()
    }

    /// |det| of the exponent matrix; `None` when the presentation is not balanced.
    pub fn abs_det(&self) -> Option<u128> {
        if !self.is_balanced() {
            return None;
        }
        Some(bareiss_abs_det(self.exponent_matrix()))
    }

    /// Renders only the relator list, `r1, r2, ...`.
    pub fn relators_text(&self) -> String {
        let parts: Vec<String> = self.relators.iter().map(|r| self.render_relator(r)).collect();
        parts.join(", ")
    }

    fn render_relator(&self, r: &Word) -> String {
        r.to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.generators, self.relators_text())
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Presentation::parse(s)
    }
}

/// Parses a comma-separated relator list over `generators` generators.
pub fn parse_relators(text: &str, generators: usize) -> Result<Vec<Word>, PresentationError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .enumerate()
        .map(|(index, part)| {
            parse_word(part, generators).map_err(|source| PresentationError::Relator { index, source })
        })
        .collect()
}

/// `AK(n) = <a, b | a^n b^-(n+1), abab^-1a^-1b^-1>`.
pub fn ak(n: usize) -> Result<Presentation, PresentationError> {
    if n < 2 {
        return Err(PresentationError::AkTooSmall(n));
    }
    let a = Letter::positive(0);
    let b_inv = Letter::negative(1);
    let first = Word::from_letters(
        std::iter::repeat(a)
            .take(n)
            .chain(std::iter::repeat(b_inv).take(n + 1)),
    );
    let second = "abaBAB".parse().expect("static word");
    Ok(Presentation::new_unchecked(2, vec![first, second]))
}

/// The presentation that the published greedy sequence carries to AK(3).
pub fn shehper_p() -> Presentation {
    Presentation::new_unchecked(
        2,
        vec![
            "ABaBAbaBBabAb".parse().expect("static word"),
            "BAbbABabaBBa".parse().expect("static word"),
        ],
    )
}

/// `<x1..xn | x1..xn>`.
pub fn trivial(n: usize) -> Result<Presentation, PresentationError> {
    if n == 0 {
        return Err(PresentationError::TrivialEmpty);
    }
    Ok(Presentation::new_unchecked(
        n,
        (0..n).map(Word::generator).collect(),
    ))
}

/// Resolves `AK(n)`, `P` and `T(n)`.
pub fn builtin(name: &str) -> Result<Presentation, PresentationError> {
    let name = name.trim();
    let unknown = || PresentationError::UnknownBuiltin(name.to_string());
    if name == "P" {
        return Ok(shehper_p());
    }
    let (head, rest) = name.split_once('(').ok_or_else(unknown)?;
    let arg: usize = rest
        .strip_suffix(')')
        .and_then(|a| a.trim().parse().ok())
        .ok_or_else(unknown)?;
    match head.trim() {
        "AK" => ak(arg),
        "T" => {
            if arg > MAX_LETTER_GENERATORS {
                return Err(unknown());
            }
            trivial(arg)
        }
        _ => Err(unknown()),
    }
}

/// Enumerates the family's moves applicable to `p`, paired with their results.
///
/// Order is the family's enumeration order; results with a relator longer
/// than `max_relator_len` are dropped.
pub fn neighbors(
    p: &Presentation,
    family: MoveFamily,
    max_relator_len: usize,
) -> Vec<(Move, Presentation)> {
    family
        .moves(p.generators())
        .into_iter()
        .filter_map(|m| {
            let q = p.apply(&m).ok()?;
            (q.max_relator_length() <= max_relator_len).then_some((m, q))
        })
        .collect()
}

fn push_varint(out: &mut Vec<u8>, mut v: u64) {
    while v >= 0x80 {
        out.push((v as u8) | 0x80);
        v >>= 7;
    }
    out.push(v as u8);
}

fn read_varint(buf: &[u8], pos: &mut usize) -> u64 {
    let mut v = 0u64;
    let mut shift = 0;
    loop {
        let b = buf[*pos];
        *pos += 1;
        v |= u64::from(b & 0x7f) << shift;
        if b < 0x80 {
            return v;
        }
        shift += 7;
    }
}

fn push_word(out: &mut Vec<u8>, w: &Word) {
    push_varint(out, w.len() as u64);
    for l in w.letters() {
        push_varint(out, u64::from(l.code()));
    }
}

/// Fraction-free Gaussian elimination.
fn bareiss_abs_det(rows: Vec<Vec<i64>>) -> u128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => m.swap(k, i),
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    m[n - 1][n - 1].unsigned_abs()
}
