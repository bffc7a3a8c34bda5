use std::fmt;

use super::{MoveError, Presentation};
use crate::word::{Letter, Word};

/// Elementary transformation of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    /// `r_i := r_i^-1`
    Inv(usize),
    /// `r_i := r_i * r_j`
    Mul(usize, usize),
    /// `r_i := r_i * r_j^-1`
    MulInv(usize, usize),
    /// `r_i := w * r_i * w^-1`
    Conj(usize, Word),
    /// Signed generator permutation applied to every relator.
    Aut(SignedPermutation),
    /// Adds generator `x_{n+1}` with relator `x_{n+1}`.
    StabAdd,
    /// Removes the last generator and its relator.
    StabRemove,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Inv,
    Mul,
    MulInv,
    Conj,
    Aut,
    StabAdd,
    StabRemove,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::Inv => "INV",
            MoveKind::Mul => "MUL",
            MoveKind::MulInv => "MULINV",
            MoveKind::Conj => "CONJ",
            MoveKind::Aut => "AUT",
            MoveKind::StabAdd => "STAB+",
            MoveKind::StabRemove => "STAB-",
        })
    }
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::Inv(_) => MoveKind::Inv,
            Move::Mul(..) => MoveKind::Mul,
            Move::MulInv(..) => MoveKind::MulInv,
            Move::Conj(..) => MoveKind::Conj,
            Move::Aut(_) => MoveKind::Aut,
            Move::StabAdd => MoveKind::StabAdd,
            Move::StabRemove => MoveKind::StabRemove,
        }
    }

    /// The relator a move rewrites, for the moves that rewrite exactly one.
    pub fn target(&self) -> Option<usize> {
        match *self {
            Move::Inv(i) | Move::Mul(i, _) | Move::MulInv(i, _) | Move::Conj(i, _) => Some(i),
            _ => None,
        }
    }

    /// A move undoing `self` when applied after it to `before`.
    pub fn inverse(&self, before: &Presentation) -> Result<Move, MoveError> {
        apply_move(before, self)?;
        Ok(match self {
            Move::Inv(i) => Move::Inv(*i),
            Move::Mul(i, j) => Move::MulInv(*i, *j),
            Move::MulInv(i, j) => Move::Mul(*i, *j),
            Move::Conj(i, w) => Move::Conj(*i, w.inverse()),
            Move::Aut(map) => Move::Aut(map.inverse()),
            Move::StabAdd => Move::StabRemove,
            Move::StabRemove => Move::StabAdd,
        })
    }
}

/// Automorphism sending each generator to a distinct generator or its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    images: Vec<Letter>,
}

impl SignedPermutation {
    pub fn new(images: Vec<Letter>) -> Result<Self, MoveError> {
        let mut seen = vec![false; images.len()];
        for (g, image) in images.iter().enumerate() {
            let h = image.generator();
            if h >= images.len() {
                return Err(MoveError::InvalidAut(format!(
                    "generator {g} maps outside the {} generators",
                    images.len()
                )));
            }
            if std::mem::replace(&mut seen[h], true) {
                return Err(MoveError::InvalidAut(format!(
                    "two generators map to generator {h}"
                )));
            }
        }
        Ok(SignedPermutation { images })
    }

    pub fn identity(generators: usize) -> Self {
        SignedPermutation {
            images: (0..generators).map(Letter::positive).collect(),
        }
    }

    /// `a <-> b`.
    pub fn swap(generators: usize, x: usize, y: usize) -> Result<Self, MoveError> {
        let mut images: Vec<Letter> = (0..generators).map(Letter::positive).collect();
        if x >= generators || y >= generators {
            return Err(MoveError::InvalidAut(format!(
                "cannot swap {x} and {y} among {generators} generators"
            )));
        }
        images.swap(x, y);
        Ok(SignedPermutation { images })
    }

    /// Parses `a->b,b->a` style maps; generators not mentioned are fixed.
    pub fn parse(text: &str, generators: usize) -> Result<Self, MoveError> {
        let mut images: Vec<Option<Letter>> = vec![None; generators];
        let body = text.trim().trim_start_matches('[').trim_end_matches([']', ')']);
        for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (from, to) = part
                .split_once("->")
                .ok_or_else(|| MoveError::InvalidAut(format!("expected `x->y`, got {part:?}")))?;
            let letter = |s: &str| {
                let mut chars = s.trim().chars();
                match (chars.next().and_then(Letter::from_char), chars.next()) {
                    (Some(l), None) if l.generator() < generators => Ok(l),
                    _ => Err(MoveError::InvalidAut(format!("bad generator {s:?}"))),
                }
            };
            let (from, to) = (letter(from)?, letter(to)?);
            // `A->b` means a -> B.
            let to = if from.is_inverse() { to.inverse() } else { to };
            if images[from.generator()].replace(to).is_some() {
                return Err(MoveError::InvalidAut(format!(
                    "generator {from} mapped twice"
                )));
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(g, l)| l.unwrap_or(Letter::positive(g)))
            .collect();
        SignedPermutation::new(images)
    }

    pub fn generators(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Letter] {
        &self.images
    }

    pub fn image(&self, letter: Letter) -> Letter {
        let image = self.images[letter.generator()];
        if letter.is_inverse() {
            image.inverse()
        } else {
            image
        }
    }

    pub fn apply(&self, word: &Word) -> Word {
        Word::from_letters(word.letters().iter().map(|&l| self.image(l)))
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        let mut images = vec![Letter::positive(0); self.images.len()];
        for (g, image) in self.images.iter().enumerate() {
            images[image.generator()] = Letter::new(g, image.is_inverse());
        }
        SignedPermutation { images }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, image) in self.images.iter().enumerate() {
            if g > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}->{}", Letter::positive(g), image)?;
        }
        Ok(())
    }
}

fn check_index(p: &Presentation, i: usize) -> Result<(), MoveError> {
    if i < p.relators.len() {
        Ok(())
    } else {
        Err(MoveError::RelatorOutOfRange {
            index: i,
            count: p.relators.len(),
        })
    }
}

fn check_pair(p: &Presentation, i: usize, j: usize) -> Result<(), MoveError> {
    check_index(p, i)?;
    check_index(p, j)?;
    if i == j {
        return Err(MoveError::SameRelator(i));
    }
    Ok(())
}

fn replace(p: &Presentation, i: usize, r: Word) -> Presentation {
    let mut relators = p.relators.clone();
    relators[i] = r;
    Presentation::new_unchecked(p.generators, relators)
}

pub(super) fn apply_move(p: &Presentation, m: &Move) -> Result<Presentation, MoveError> {
    match m {
        Move::Inv(i) => {
            check_index(p, *i)?;
            Ok(replace(p, *i, p.relators[*i].inverse()))
        }
        Move::Mul(i, j) => {
            check_pair(p, *i, *j)?;
            Ok(replace(p, *i, p.relators[*i].concat(&p.relators[*j])))
        }
        Move::MulInv(i, j) => {
            check_pair(p, *i, *j)?;
            Ok(replace(
                p,
                *i,
                p.relators[*i].concat(&p.relators[*j].inverse()),
            ))
        }
        Move::Conj(i, w) => {
            check_index(p, *i)?;
            if w.generator_bound() > p.generators {
                return Err(MoveError::ConjugatorOutOfRange {
                    word: w.clone(),
                    generator: w.generator_bound() - 1,
                    generators: p.generators,
                });
            }
            Ok(replace(p, *i, p.relators[*i].conjugate(w)))
        }
        Move::Aut(map) => {
            if map.generators() != p.generators {
                return Err(MoveError::AutArity {
                    expected: p.generators,
                    got: map.generators(),
                });
            }
            Ok(Presentation::new_unchecked(
                p.generators,
                p.relators.iter().map(|r| map.apply(r)).collect(),
            ))
        }
        Move::StabAdd => {
            let mut relators = p.relators.clone();
            relators.push(Word::generator(p.generators));
            Ok(Presentation::new_unchecked(p.generators + 1, relators))
        }
        Move::StabRemove => {
            let n = p.generators;
            if n == 0 || p.relators.is_empty() {
                return Err(MoveError::StabRemove("no generator to remove".into()));
            }
            let last = p.relators.len() - 1;
            if p.relators[last] != Word::generator(n - 1) {
                return Err(MoveError::StabRemove(format!(
                    "last relator is {}, not the generator {}",
                    p.relators[last],
                    Letter::positive(n - 1)
                )));
            }
            if let Some(k) = p.relators[..last]
                .iter()
                .position(|r| r.contains_generator(n - 1))
            {
                return Err(MoveError::StabRemove(format!(
                    "generator {} still occurs in relator {k}",
                    Letter::positive(n - 1)
                )));
            }
            Ok(Presentation::new_unchecked(
                n - 1,
                p.relators[..last].to_vec(),
            ))
        }
    }
}
