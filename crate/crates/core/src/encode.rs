//! First-order prover tasks for the implicational translations of AC-moves.
//!
//! A presentation `<x1..xn | r1..rn>` is the atom `R(t1,...,tn)` where `ti` is
//! the left-associated term of `ri`. Each move family becomes a set of
//! implications `R(x,y) -> R(x',y).` and the goal is `R(t_from) -> R(t_to)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::presentation::{Move, MoveFamily, Presentation};
use crate::word::{GroupTerm, Letter};

/// Generators whose constant names are not prover variables (`a`..`t` without `e`).
pub const MAX_TERM_GENERATORS: usize = 19;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("cannot relate presentations with {from} and {to} generators")]
    DimensionMismatch { from: usize, to: usize },
    #[error("presentation {0} is not balanced")]
    NotBalanced(Presentation),
    #[error("the {translation} translation is only defined for 2 generators, got {generators}")]
    Unsupported {
        translation: Translation,
        generators: usize,
    },
    #[error("{0} generators exceed the {MAX_TERM_GENERATORS} constants available in term syntax")]
    TooManyGenerators(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Translation {
    /// Conjugation by each generator constant.
    Ground,
    /// Conjugation by a variable `z`.
    NonGround,
    /// The twelve rules `r_i r_j^{+-1}` and `g r_i g^-1`.
    Modified12,
}

impl fmt::Display for Translation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Translation::Ground => "ground",
            Translation::NonGround => "nonground",
            Translation::Modified12 => "modified",
        })
    }
}

impl FromStr for Translation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "ground" => Ok(Translation::Ground),
            "nonground" => Ok(Translation::NonGround),
            "modified" | "modified12" => Ok(Translation::Modified12),
            _ => Err(format!(
                "unknown translation {s:?}; expected ground, nonground or modified"
            )),
        }
    }
}

/// Group theory for `*`, `'` and the identity `e`.
pub const GROUP_AXIOMS: [&str; 5] = [
    "(x * y) * z = x * (y * z).",
    "x * e = x.",
    "e * x = x.",
    "x * x' = e.",
    "x' * x = e.",
];

pub fn group_axioms() -> String {
    GROUP_AXIOMS.join("\n")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProverTask {
    pub translation: Translation,
    pub generators: usize,
    pub from: Presentation,
    pub to: Presentation,
    /// Rule axioms, each terminated by `.`.
    pub rules: Vec<String>,
    /// `R(...) -> R(...)` without the terminating `.`.
    pub goal: String,
}

impl ProverTask {
    /// Assumption and goal blocks without input-file wrappers.
    pub fn render_raw(&self) -> String {
        let mut out = String::from("Assumptions:\n");
        for line in GROUP_AXIOMS.iter().copied().chain(self.rules.iter().map(String::as_str)) {
            out.push_str(line);
            out.push('\n');
        }
        out.push_str("Goal:\n");
        out.push_str(&self.goal);
        out.push('\n');
        out
    }

    /// Prover input file.
    pub fn render(&self) -> String {
        let mut out = String::from("formulas(assumptions).\n");
        for line in GROUP_AXIOMS.iter().copied().chain(self.rules.iter().map(String::as_str)) {
            out.push_str(line);
            out.push('\n');
        }
        out.push_str("end_of_list.\n\nformulas(goals).\n");
        out.push_str(&self.goal);
        out.push_str(".\nend_of_list.\n");
        out
    }
}

impl fmt::Display for ProverTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `R(t1,...,tn)` for a presentation.
pub fn atom(p: &Presentation) -> String {
    let args: Vec<String> = p
        .relators()
        .iter()
        .map(|r| GroupTerm::from_word(r).to_string())
        .collect();
    format!("R({})", args.join(","))
}

pub fn goal(from: &Presentation, to: &Presentation) -> String {
    format!("{} -> {}", atom(from), atom(to))
}

fn variables(n: usize) -> Vec<String> {
    if n == 2 {
        vec!["x".into(), "y".into()]
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn letter_term(l: Letter) -> String {
    GroupTerm::from_word(&crate::word::Word::letter(l)).to_string()
}

/// Conjugation argument for generator rules, or the variable `z` when `None`.
enum Conjugator {
    Letter(Letter),
    Variable,
}

fn rule_axiom(n: usize, target: usize, replacement: impl FnOnce(&[String]) -> String) -> String {
    let vars = variables(n);
    let mut args = vars.clone();
    args[target] = replacement(&vars);
    format!("R({}) -> R({}).", vars.join(","), args.join(","))
}

fn conj_axiom(n: usize, target: usize, by: Conjugator) -> String {
    rule_axiom(n, target, |v| {
        let (g, g_inv) = match by {
            Conjugator::Letter(l) => (letter_term(l), letter_term(l.inverse())),
            Conjugator::Variable => ("z".to_string(), "z'".to_string()),
        };
        format!("({g} * {}) * {g_inv}", v[target])
    })
}

/// The implication encoding one move, for moves with a single-letter (or no) conjugator.
pub fn move_axiom(m: &Move, n: usize) -> Option<String> {
    Some(match m {
        Move::Inv(i) => rule_axiom(n, *i, |v| format!("{}'", v[*i])),
        Move::Mul(i, j) => rule_axiom(n, *i, |v| format!("{} * {}", v[*i], v[*j])),
        Move::MulInv(i, j) => rule_axiom(n, *i, |v| format!("{} * {}'", v[*i], v[*j])),
        Move::Conj(i, w) if w.len() == 1 => conj_axiom(n, *i, Conjugator::Letter(w.letters()[0])),
        _ => return None,
    })
}

fn rules(translation: Translation, n: usize) -> Result<Vec<String>, EncodeError> {
    let axioms = |moves: &[Move]| -> Vec<String> {
        moves
            .iter()
            .map(|m| move_axiom(m, n).expect("enumerated moves are encodable"))
            .collect()
    };
    let word = |s: &str| s.parse().expect("static word");
    Ok(match (translation, n) {
        (Translation::Ground, 2) => axioms(&MoveFamily::Ract2.moves(2)),
        (Translation::Ground, _) => axioms(&MoveFamily::FullAct2.moves(n)),
        (Translation::NonGround, 2) => {
            let mut out = axioms(&[Move::Inv(0), Move::Mul(1, 0), Move::Mul(0, 1)]);
            out.push(conj_axiom(2, 0, Conjugator::Variable));
            out
        }
        (Translation::NonGround, _) => {
            let structural: Vec<Move> = MoveFamily::FullAct2
                .moves(n)
                .into_iter()
                .filter(|m| !matches!(m, Move::Conj(..)))
                .collect();
            let mut out = axioms(&structural);
            out.extend((0..n).map(|i| conj_axiom(n, i, Conjugator::Variable)));
            out
        }
        (Translation::Modified12, 2) => axioms(&[
            Move::Mul(1, 0),
            Move::Conj(1, word("B")),
            Move::MulInv(0, 1),
            Move::Conj(0, word("a")),
            Move::MulInv(1, 0),
            Move::Conj(1, word("a")),
            Move::Mul(0, 1),
            Move::Conj(0, word("b")),
            Move::Conj(1, word("A")),
            Move::Conj(1, word("b")),
            Move::Conj(0, word("B")),
            Move::Conj(0, word("A")),
        ]),
        (Translation::Modified12, generators) => {
            return Err(EncodeError::Unsupported {
                translation,
                generators,
            })
        }
    })
}

/// Builds the task `T ⊢ R(t_from) -> R(t_to)` for the chosen translation.
pub fn emit_task(
    from: &Presentation,
    to: &Presentation,
    translation: Translation,
) -> Result<ProverTask, EncodeError> {
    let n = from.generators();
    if to.generators() != n {
        return Err(EncodeError::DimensionMismatch {
            from: n,
            to: to.generators(),
        });
    }
    for p in [from, to] {
        if !p.is_balanced() {
            return Err(EncodeError::NotBalanced(p.clone()));
        }
    }
    if n > MAX_TERM_GENERATORS {
        return Err(EncodeError::TooManyGenerators(n));
    }
    Ok(ProverTask {
        translation,
        generators: n,
        from: from.clone(),
        to: to.clone(),
        rules: rules(translation, n)?,
        goal: goal(from, to),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{ak, shehper_p, trivial};
    use crate::word::Term;

    #[test]
    fn five_group_axioms_parse_back() {
        assert_eq!(GROUP_AXIOMS.len(), 5);
        for axiom in GROUP_AXIOMS {
            let body = axiom.strip_suffix('.').unwrap();
            let (lhs, rhs) = body.split_once('=').unwrap();
            Term::parse(lhs).unwrap();
            Term::parse(rhs).unwrap();
        }
    }

    #[test]
    fn ground_rules_follow_ract2() {
        let task = emit_task(&shehper_p(), &ak(3).unwrap(), Translation::Ground).unwrap();
        assert_eq!(
            task.rules,
            vec![
                "R(x,y) -> R(x',y).",
                "R(x,y) -> R(x * y,y).",
                "R(x,y) -> R(x,y * x).",
                "R(x,y) -> R((a * x) * a',y).",
                "R(x,y) -> R((b * x) * b',y).",
            ]
        );
    }

    #[test]
    fn nonground_rules() {
        let task = emit_task(&shehper_p(), &ak(3).unwrap(), Translation::NonGround).unwrap();
        assert_eq!(task.rules.last().unwrap(), "R(x,y) -> R((z * x) * z',y).");
        assert_eq!(task.rules.len(), 4);
    }

    #[test]
    fn modified_has_twelve_distinct_rules() {
        let task = emit_task(&ak(2).unwrap(), &trivial(2).unwrap(), Translation::Modified12).unwrap();
        let mut rules = task.rules.clone();
        rules.sort();
        rules.dedup();
        assert_eq!(rules.len(), 12);
        // Same set as the MODIFIED12 enumeration.
        let mut from_family: Vec<String> = MoveFamily::Modified12
            .moves(2)
            .iter()
            .map(|m| move_axiom(m, 2).unwrap())
            .collect();
        from_family.sort();
        assert_eq!(rules, from_family);
    }

    #[test]
    fn higher_arity() {
        let t3 = trivial(3).unwrap();
        let task = emit_task(&t3, &t3, Translation::NonGround).unwrap();
        assert!(task.goal.starts_with("R(a,b,c) -> "));
        assert!(task.rules.contains(&"R(x1,x2,x3) -> R(x1,x2,(z * x3) * z').".to_string()));
        assert_eq!(
            emit_task(&t3, &t3, Translation::Modified12),
            Err(EncodeError::Unsupported {
                translation: Translation::Modified12,
                generators: 3
            })
        );
        assert!(matches!(
            emit_task(&t3, &trivial(2).unwrap(), Translation::Ground),
            Err(EncodeError::DimensionMismatch { from: 3, to: 2 })
        ));
    }

    #[test]
    fn empty_relator_is_the_identity_constant() {
        let p = Presentation::parse("2 | e, b").unwrap();
        assert_eq!(atom(&p), "R(e,b)");
    }

    #[test]
    fn wrapped_output_terminates_goal() {
        let task = emit_task(&ak(4).unwrap(), &trivial(2).unwrap(), Translation::Ground).unwrap();
        let text = task.render();
        assert!(text.starts_with("formulas(assumptions).\n"));
        assert!(text.contains("-> R(a,b).\nend_of_list.\n"));
        assert_eq!(text, task.render());
    }
}
