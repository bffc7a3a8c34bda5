//! Group-term syntax used by prover tasks: infix `*`, postfix `'`, identity `e`.
//!
//! Identifiers starting with `u`..`z` are variables (prover convention), so
//! ground generator constants are the alphabet letters `a`..`t`.

use std::fmt;

use thiserror::Error;

use super::{free_reduce, Letter, Word, ALPHABET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("unexpected {found} at offset {offset}, expected {expected}")]
    Unexpected {
        found: String,
        offset: usize,
        expected: &'static str,
    },
    #[error("unknown function symbol {0:?}")]
    UnknownFunction(String),
    #[error("variable {0:?} in a ground term")]
    NotGround(String),
}

/// Ground group term over generator constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupTerm {
    Generator(usize),
    Identity,
    Product(Box<GroupTerm>, Box<GroupTerm>),
    Inverse(Box<GroupTerm>),
}

/// Term that may contain variables, for reading axioms and proof clauses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Variable(String),
    Generator(usize),
    Identity,
    Product(Box<Term>, Box<Term>),
    Inverse(Box<Term>),
}

impl GroupTerm {
    /// Left-associated product of the word's letters; the identity word maps to `e`.
    pub fn from_word(word: &Word) -> Self {
        let mut letters = word.letters().iter().map(|&l| Self::from_letter(l));
        match letters.next() {
            None => GroupTerm::Identity,
            Some(first) => letters.fold(first, |acc, t| {
                GroupTerm::Product(Box::new(acc), Box::new(t))
            }),
        }
    }

    fn from_letter(letter: Letter) -> Self {
        let g = GroupTerm::Generator(letter.generator());
        if letter.is_inverse() {
            GroupTerm::Inverse(Box::new(g))
        } else {
            g
        }
    }

    /// Evaluates the term in the free group.
    pub fn to_word(&self) -> Word {
        let mut raw = Vec::new();
        self.push_letters(false, &mut raw);
        free_reduce(raw)
    }

    fn push_letters(&self, inverted: bool, out: &mut Vec<Letter>) {
        match self {
            GroupTerm::Generator(g) => out.push(Letter::new(*g, inverted)),
            GroupTerm::Identity => {}
            GroupTerm::Inverse(t) => t.push_letters(!inverted, out),
            GroupTerm::Product(l, r) => {
                if inverted {
                    r.push_letters(true, out);
                    l.push_letters(true, out);
                } else {
                    l.push_letters(false, out);
                    r.push_letters(false, out);
                }
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self, TermError> {
        Term::parse(text)?.into_ground()
    }

    pub fn generator_bound(&self) -> usize {
        match self {
            GroupTerm::Generator(g) => g + 1,
            GroupTerm::Identity => 0,
            GroupTerm::Inverse(t) => t.generator_bound(),
            GroupTerm::Product(l, r) => l.generator_bound().max(r.generator_bound()),
        }
    }
}

impl From<&Word> for GroupTerm {
    fn from(word: &Word) -> Self {
        GroupTerm::from_word(word)
    }
}

impl fmt::Display for GroupTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTerm::Generator(g) => f.write_str(&constant_name(*g)),
            GroupTerm::Identity => f.write_str("e"),
            GroupTerm::Inverse(t) => match **t {
                GroupTerm::Product(..) => write!(f, "({t})'"),
                _ => write!(f, "{t}'"),
            },
            GroupTerm::Product(l, r) => {
                write_operand(f, l, matches!(**l, GroupTerm::Product(..)))?;
                f.write_str(" * ")?;
                write_operand(f, r, matches!(**r, GroupTerm::Product(..)))
            }
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, t: &impl fmt::Display, paren: bool) -> fmt::Result {
    if paren {
        write!(f, "({t})")
    } else {
        write!(f, "{t}")
    }
}

/// Constant symbol for a generator in term syntax.
pub(crate) fn constant_name(generator: usize) -> String {
    match ALPHABET.get(generator) {
        Some(&c) => (c as char).to_string(),
        None => format!("g{generator}"),
    }
}

fn is_variable_name(name: &str) -> bool {
    matches!(name.as_bytes().first(), Some(b'u'..=b'z'))
}

impl Term {
    pub fn parse(text: &str) -> Result<Self, TermError> {
        let mut p = Parser { src: text, pos: 0 };
        let t = p.expr()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(p.unexpected("end of term"));
        }
        Ok(t)
    }

    pub fn into_ground(self) -> Result<GroupTerm, TermError> {
        Ok(match self {
            Term::Variable(v) => return Err(TermError::NotGround(v)),
            Term::Generator(g) => GroupTerm::Generator(g),
            Term::Identity => GroupTerm::Identity,
            Term::Inverse(t) => GroupTerm::Inverse(Box::new(t.into_ground()?)),
            Term::Product(l, r) => {
                GroupTerm::Product(Box::new(l.into_ground()?), Box::new(r.into_ground()?))
            }
        })
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Variable(_) => false,
            Term::Generator(_) | Term::Identity => true,
            Term::Inverse(t) => t.is_ground(),
            Term::Product(l, r) => l.is_ground() && r.is_ground(),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn unexpected(&self, expected: &'static str) -> TermError {
        TermError::Unexpected {
            found: match self.peek() {
                Some(c) => format!("{c:?}"),
                None => "end of input".to_string(),
            },
            offset: self.pos,
            expected,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    // expr := postfix ('*' postfix)*, folded to the left.
    fn expr(&mut self) -> Result<Term, TermError> {
        let mut acc = self.postfix()?;
        while self.eat('*') {
            let rhs = self.postfix()?;
            acc = Term::Product(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn postfix(&mut self) -> Result<Term, TermError> {
        let mut t = self.primary()?;
        while self.eat('\'') {
            t = Term::Inverse(Box::new(t));
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<Term, TermError> {
        if self.eat('(') {
            let t = self.expr()?;
            if !self.eat(')') {
                return Err(self.unexpected("')'"));
            }
            return Ok(t);
        }
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let name = &self.src[start..self.pos];
        if name.is_empty() || !name.as_bytes()[0].is_ascii_alphabetic() {
            self.pos = start;
            return Err(self.unexpected("a constant, variable or '('"));
        }
        if self.eat('(') {
            // Function-call spelling of the inverse, `r(t)`.
            if name != "r" {
                return Err(TermError::UnknownFunction(name.to_string()));
            }
            let t = self.expr()?;
            if !self.eat(')') {
                return Err(self.unexpected("')'"));
            }
            return Ok(Term::Inverse(Box::new(t)));
        }
        if name == "e" {
            return Ok(Term::Identity);
        }
        if is_variable_name(name) {
            return Ok(Term::Variable(name.to_string()));
        }
        match ALPHABET.iter().position(|&c| name.len() == 1 && c == name.as_bytes()[0]) {
            Some(g) => Ok(Term::Generator(g)),
            None => match name.strip_prefix('g').and_then(|d| d.parse().ok()) {
                Some(g) => Ok(Term::Generator(g)),
                None => Err(TermError::UnknownFunction(name.to_string())),
            },
        }
    }
}
