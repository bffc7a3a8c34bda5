use std::fmt;
use std::str::FromStr;

use super::Move;
use crate::word::{Letter, Word};

/// A named set of allowed moves.
///
/// Families are defined at any generator count; the two-generator instances
/// are the rule systems they are named after. Relator 0 is the "left" relator.
///
/// | family       | inversion | products          | conjugation                     |
/// |--------------|-----------|-------------------|---------------------------------|
/// | `RACT2`      | r0        | r_i r_j           | r0 by a positive generator      |
/// | `FULL_ACT2`  | any r_i   | r_i r_j           | any r_i by a positive generator |
/// | `PAPER_S2`   | r0        | r_i r_j           | r0 by any word                  |
/// | `MODIFIED12` | none      | r_i r_j^{+-1}     | any r_i by a signed generator   |
/// | `EXTENDED`   | any r_i   | r_i r_j^{+-1}     | any r_i by any word; plus `Aut` |
/// | `STABLE`     | as `EXTENDED`, plus stabilizations                             |
///
/// Enumeration ([`moves`](Self::moves)) only proposes single-letter
/// conjugators and never proposes `Aut` or stabilization moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveFamily {
    Ract2,
    FullAct2,
    PaperS2,
    Extended,
    Modified12,
    Stable,
}

impl MoveFamily {
    pub const ALL: [MoveFamily; 6] = [
        MoveFamily::Ract2,
        MoveFamily::FullAct2,
        MoveFamily::PaperS2,
        MoveFamily::Extended,
        MoveFamily::Modified12,
        MoveFamily::Stable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveFamily::Ract2 => "RACT2",
            MoveFamily::FullAct2 => "FULL_ACT2",
            MoveFamily::PaperS2 => "PAPER_S2",
            MoveFamily::Extended => "EXTENDED",
            MoveFamily::Modified12 => "MODIFIED12",
            MoveFamily::Stable => "STABLE",
        }
    }

    pub fn contains(self, m: &Move) -> bool {
        use MoveFamily::*;
        let single = |w: &Word| w.len() == 1;
        let positive = |w: &Word| w.len() == 1 && !w.letters()[0].is_inverse();
        match (self, m) {
            (Ract2 | PaperS2, Move::Inv(i)) => *i == 0,
            (FullAct2 | Extended | Stable, Move::Inv(_)) => true,
            (Modified12, Move::Inv(_)) => false,
            (_, Move::Mul(..)) => true,
            (Modified12 | Extended | Stable, Move::MulInv(..)) => true,
            (Ract2, Move::Conj(i, w)) => *i == 0 && positive(w),
            (FullAct2, Move::Conj(_, w)) => positive(w),
            (PaperS2, Move::Conj(i, _)) => *i == 0,
            (Modified12, Move::Conj(_, w)) => single(w),
            (Extended | Stable, Move::Conj(..)) => true,
            (Extended | Stable, Move::Aut(_)) => true,
            (Stable, Move::StabAdd | Move::StabRemove) => true,
            _ => false,
        }
    }

    /// Moves proposed for search at `generators` generators, in order of
    /// kind, then relator indices, then conjugator letter (`a < A < b < B`).
    pub fn moves(self, generators: usize) -> Vec<Move> {
        let n = generators;
        let mut out = Vec::new();
        for i in 0..n {
            out.push(Move::Inv(i));
        }
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                out.push(Move::Mul(i, j));
            }
        }
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                out.push(Move::MulInv(i, j));
            }
        }
        for i in 0..n {
            for code in 0..2 * n as u32 {
                out.push(Move::Conj(i, Word::letter(Letter::from_code(code))));
            }
        }
        out.retain(|m| self.contains(m));
        out
    }
}

impl fmt::Display for MoveFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown move family {0:?}; expected one of RACT2, FULL_ACT2, PAPER_S2, EXTENDED, MODIFIED12, STABLE")]
pub struct UnknownFamily(pub String);

impl FromStr for MoveFamily {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .trim()
            .chars()
            .filter(|c| !matches!(c, '_' | '-'))
            .collect::<String>()
            .to_ascii_uppercase();
        MoveFamily::ALL
            .into_iter()
            .find(|f| f.name().replace('_', "") == norm)
            .or(match norm.as_str() {
                "MODIFIED" | "M12" => Some(MoveFamily::Modified12),
                "S2" | "PAPER" => Some(MoveFamily::PaperS2),
                "FULL" | "ACT2" => Some(MoveFamily::FullAct2),
                _ => None,
            })
            .ok_or_else(|| UnknownFamily(s.to_string()))
    }
}
