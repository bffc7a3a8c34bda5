//! Reading resolution proofs back into certificates.
//!
//! A proof of `R(t1) -> R(t2)` from the implicational rules derives a chain
//! of ground unit clauses `R(...)`, each from exactly one earlier `R` clause
//! and one rule axiom. Walking the justification graph backwards from the
//! final contradiction recovers that chain; [`infer_move`] then names the move
//! behind each link.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::certificate::Certificate;
use crate::presentation::{Move, MoveFamily, Presentation};
use crate::search::{Outcome, Search, SearchLimits, Strategy};
use crate::word::{find_conjugator, Letter, Term, Word};

const PROOF_BEGIN: &str = "= PROOF =";
const PROOF_END: &str = "= end of proof =";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Literal {
    /// Ground `R(t1,...,tn)`, decoded to a presentation with `n` generators.
    R {
        positive: bool,
        presentation: Presentation,
    },
    /// The empty clause `$F`.
    False,
    /// Anything else, kept verbatim.
    Opaque(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub id: u64,
    /// 1-based line number in the input.
    pub line: usize,
    pub literals: Vec<Literal>,
    /// Text after `#`, if any.
    pub attributes: Option<String>,
    /// Name of the first inference, e.g. `hyper` or `assumption`.
    pub rule: String,
    pub justification: String,
    /// Referenced clause ids, in order of first mention.
    pub refs: Vec<u64>,
}

impl ProofLine {
    /// The presentation of a positive ground unit clause `R(...)`.
    pub fn r_atom(&self) -> Option<&Presentation> {
        match self.literals.as_slice() {
            [Literal::R {
                positive: true,
                presentation,
            }] => Some(presentation),
            _ => None,
        }
    }

    pub fn is_false(&self) -> bool {
        self.literals == [Literal::False]
    }

    pub fn has_ground_r(&self) -> bool {
        self.literals.iter().any(|l| matches!(l, Literal::R { .. }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Proof {
    pub lines: Vec<ProofLine>,
    /// Lines skipped by the lenient parser.
    pub warnings: Vec<ParseWarning>,
}

impl Proof {
    pub fn get(&self, id: u64) -> Option<&ProofLine> {
        self.lines.iter().find(|l| l.id == id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InferError {
    #[error("presentations have different shapes ({0} vs {1})")]
    Shape(Presentation, Presentation),
    #[error("presentations are identical")]
    Unchanged,
    #[error("relators {0:?} all differ; a single move changes one relator")]
    SeveralRelators(Vec<usize>),
    #[error("no {family} move takes {from} to {to}")]
    NoMove {
        from: Presentation,
        to: Presentation,
        family: MoveFamily,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("no proof section found (expected a `{PROOF_BEGIN}` banner line)")]
    NoProofSection,
    #[error("proof section has no clause lines")]
    EmptyProof,
    #[error("the proof has no `$F` line and never derives {0}")]
    EndAbsent(Presentation),
    #[error("chain starts at clause {id} with {found}, not at {expected}")]
    StartMismatch {
        id: u64,
        found: Presentation,
        expected: Presentation,
    },
    #[error("clause {id} refers to missing clauses {missing:?}")]
    MissingRefs { id: u64, missing: Vec<u64> },
    #[error("broken chain at clause {id}: {} R-atom ancestors {ancestors:?}", ancestors.len())]
    BrokenChain { id: u64, ancestors: Vec<u64> },
    #[error("cannot relate step {step} ({from} to {to}): {source}")]
    Gap {
        step: usize,
        from: Presentation,
        to: Presentation,
        #[source]
        source: InferError,
    },
}

/// Parses the proof section of prover output, skipping malformed lines.
pub fn parse_proof(text: &str) -> Result<Proof, ProofError> {
    let mut lines = text.lines().enumerate();
    lines
        .by_ref()
        .find(|(_, l)| l.contains(PROOF_BEGIN))
        .ok_or(ProofError::NoProofSection)?;
    let mut proof = Proof::default();
    let mut seen = HashMap::new();
    for (index, raw) in lines {
        let number = index + 1;
        if raw.contains(PROOF_END) {
            break;
        }
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        match parse_clause_line(trimmed, number) {
            Ok(line) => {
                if let Some(first) = seen.insert(line.id, number) {
                    proof.warnings.push(ParseWarning {
                        line: number,
                        message: format!("clause id {} already used on line {first}", line.id),
                    });
                    seen.insert(line.id, first);
                    continue;
                }
                if let Some(&r) = line.refs.iter().find(|r| !seen.contains_key(r)) {
                    proof.warnings.push(ParseWarning {
                        line: number,
                        message: format!("clause {} refers to clause {r} before it appears", line.id),
                    });
                }
                proof.lines.push(line);
            }
            Err(message) => proof.warnings.push(ParseWarning {
                line: number,
                message,
            }),
        }
    }
    Ok(proof)
}

/// Parses one clause line `<id> <formula> [# attrs]. [<justification>].`
pub fn parse_clause_line(text: &str, line: usize) -> Result<ProofLine, String> {
    let text = text.trim();
    let split = text
        .find(|c: char| !c.is_ascii_digit())
        .ok_or("line has no formula")?;
    let id: u64 = text[..split]
        .parse()
        .map_err(|_| format!("expected a clause id at the start of {text:?}"))?;
    let rest = text[split..].trim();
    let body = rest
        .strip_suffix('.')
        .map(str::trim_end)
        .filter(|b| b.ends_with(']'))
        .ok_or("expected a trailing `[justification].`")?;
    let open = matching_open(body).ok_or("unbalanced justification brackets")?;
    let justification = body[open + 1..body.len() - 1].trim().to_string();
    let formula = body[..open]
        .trim_end()
        .strip_suffix('.')
        .ok_or("expected `.` after the formula")?
        .trim();
    let (formula, attributes) = match top_level_position(formula, '#') {
        Some(i) => (formula[..i].trim(), Some(formula[i + 1..].trim().to_string())),
        None => (formula, None),
    };
    if formula.is_empty() {
        return Err("empty formula".into());
    }
    let literals = split_top_level(formula, '|')
        .into_iter()
        .map(|l| parse_literal(l.trim()))
        .collect();
    let rule = justification
        .split(|c: char| c == '(' || c == ',')
        .next()
        .unwrap_or("")
        .trim()
        .to_string();
    Ok(ProofLine {
        id,
        line,
        literals,
        attributes,
        rule,
        refs: justification_refs(&justification),
        justification,
    })
}

/// Index of the `[` matching the final `]`.
fn matching_open(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices().rev() {
        match c {
            ']' => depth += 1,
            '[' => {
                depth = depth.checked_sub(1)?;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn top_level_position(s: &str, target: char) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == target && depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut rest = s;
    while let Some(i) = top_level_position(rest, sep) {
        parts.push(&rest[..i]);
        rest = &rest[i + sep.len_utf8()..];
    }
    parts.push(rest);
    parts
}

fn parse_literal(text: &str) -> Literal {
    if text == "$F" {
        return Literal::False;
    }
    let (positive, atom) = match text.strip_prefix('-') {
        Some(a) => (false, a.trim()),
        None => (true, text),
    };
    decode_r_atom(atom)
        .map(|presentation| Literal::R {
            positive,
            presentation,
        })
        .unwrap_or_else(|| Literal::Opaque(text.to_string()))
}

/// Decodes a ground atom `R(t1,...,tn)` into a presentation on `n` generators.
pub fn decode_r_atom(atom: &str) -> Option<Presentation> {
    let inner = atom.strip_prefix("R(")?.strip_suffix(')')?;
    // The closing parenthesis must belong to `R(`.
    if top_level_position(inner, ')').is_some() {
        return None;
    }
    let relators = split_top_level(inner, ',')
        .into_iter()
        .map(|arg| {
            let term = Term::parse(arg).ok()?.into_ground().ok()?;
            Some(term.to_word())
        })
        .collect::<Option<Vec<Word>>>()?;
    Presentation::new(relators.len(), relators).ok()
}

/// Clause ids cited by a justification such as `hyper(3,a,9,a)` or
/// `para(5(a,1),3(a,1,2))`. An integer directly followed by `(` is a clause
/// id whose position list is skipped.
pub fn justification_refs(justification: &str) -> Vec<u64> {
    let bytes = justification.as_bytes();
    let mut refs = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let starts_token = i == 0 || matches!(bytes[i - 1], b'(' | b',' | b'[' | b' ');
        if c.is_ascii_digit() && starts_token {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let ends_token = i == bytes.len() || matches!(bytes[i], b'(' | b')' | b',' | b']');
            if ends_token {
                let id = justification[start..i].parse().expect("digits");
                if !refs.contains(&id) {
                    refs.push(id);
                }
                if i < bytes.len() && bytes[i] == b'(' {
                    let mut depth = 0;
                    while i < bytes.len() {
                        match bytes[i] {
                            b'(' => depth += 1,
                            b')' => {
                                depth -= 1;
                                if depth == 0 {
                                    i += 1;
                                    break;
                                }
                            }
                            _ => {}
                        }
                        i += 1;
                    }
                }
            }
            continue;
        }
        i += 1;
    }
    refs
}

fn r_ancestors(by_id: &HashMap<u64, &ProofLine>, line: &ProofLine) -> Result<Vec<u64>, ProofError> {
    let missing: Vec<u64> = line
        .refs
        .iter()
        .copied()
        .filter(|r| !by_id.contains_key(r))
        .collect();
    if !missing.is_empty() {
        return Err(ProofError::MissingRefs {
            id: line.id,
            missing,
        });
    }
    Ok(line
        .refs
        .iter()
        .copied()
        .filter(|r| by_id[r].r_atom().is_some())
        .collect())
}

/// Unique R-atom ancestor of `line`, or `None` at the root.
fn single_ancestor(by_id: &HashMap<u64, &ProofLine>, line: &ProofLine) -> Result<Option<u64>, ProofError> {
    let ancestors = r_ancestors(by_id, line)?;
    match ancestors.as_slice() {
        [] => Ok(None),
        [one] => Ok(Some(*one)),
        _ => Err(ProofError::BrokenChain {
            id: line.id,
            ancestors,
        }),
    }
}

/// R-atom lines from the root of the derivation to its last derived atom.
fn backward_chain<'p>(proof: &'p Proof, end: Option<&Presentation>) -> Result<Vec<&'p ProofLine>, ProofError> {
    let by_id: HashMap<u64, &ProofLine> = proof.lines.iter().map(|l| (l.id, l)).collect();
    let tip = match proof.lines.iter().rev().find(|l| l.is_false()) {
        Some(contradiction) => {
            let ancestors = r_ancestors(&by_id, contradiction)?;
            match ancestors.as_slice() {
                [one] => by_id[one],
                _ => {
                    return Err(ProofError::BrokenChain {
                        id: contradiction.id,
                        ancestors,
                    })
                }
            }
        }
        None => {
            let end = end.ok_or(ProofError::EmptyProof)?;
            proof
                .lines
                .iter()
                .rev()
                .find(|l| l.r_atom() == Some(end))
                .ok_or_else(|| ProofError::EndAbsent(end.clone()))?
        }
    };
    let mut chain = vec![tip];
    let mut current = tip;
    while let Some(parent) = single_ancestor(&by_id, current)? {
        current = by_id[&parent];
        chain.push(current);
    }
    chain.reverse();
    Ok(chain)
}

/// The start and goal presentations of a proof: the root of the derivation
/// chain and the negated goal atom (or the last derived atom).
pub fn proof_endpoints(proof: &Proof) -> Result<(Presentation, Presentation), ProofError> {
    if proof.lines.is_empty() {
        return Err(ProofError::EmptyProof);
    }
    let chain = backward_chain(proof, None)?;
    let start = chain[0].r_atom().expect("chain holds R-atoms").clone();
    let negated_goal = proof.lines.iter().rev().find_map(|l| match l.literals.as_slice() {
        [Literal::R {
            positive: false,
            presentation,
        }] => Some(presentation.clone()),
        _ => None,
    });
    let end = negated_goal.unwrap_or_else(|| chain.last().unwrap().r_atom().unwrap().clone());
    Ok((start, end))
}

/// The presentations along the derivation from `start` to `end`, with
/// consecutive repeats collapsed.
pub fn extract_chain(proof: &Proof, start: &Presentation, end: &Presentation) -> Result<Vec<Presentation>, ProofError> {
    if proof.lines.is_empty() {
        return Err(ProofError::EmptyProof);
    }
    let lines = backward_chain(proof, Some(end))?;
    let root = lines[0];
    let root_atom = root.r_atom().expect("chain holds R-atoms");
    if root_atom != start {
        return Err(ProofError::StartMismatch {
            id: root.id,
            found: root_atom.clone(),
            expected: start.clone(),
        });
    }
    let mut chain: Vec<Presentation> = Vec::with_capacity(lines.len() + 1);
    for l in lines {
        let p = l.r_atom().expect("chain holds R-atoms");
        if chain.last() != Some(p) {
            chain.push(p.clone());
        }
    }
    if chain.last() != Some(end) {
        // The final rule application may be fused into the refutation step.
        let mentioned = proof.lines.iter().any(|l| {
            l.literals
                .iter()
                .any(|lit| matches!(lit, Literal::R { presentation, .. } if presentation == end))
        });
        if !mentioned {
            return Err(ProofError::EndAbsent(end.clone()));
        }
        chain.push(end.clone());
    }
    Ok(chain)
}

/// The first move of `family`, in precedence order, taking `p` to `q`.
///
/// Precedence is inversion, then products by ascending partner, then
/// products by inverses, then conjugation by the shortest witness and
/// finally by single letters.
pub fn infer_move(p: &Presentation, q: &Presentation, family: MoveFamily) -> Result<Move, InferError> {
    if p.generators() != q.generators() || p.len() != q.len() {
        return Err(InferError::Shape(p.clone(), q.clone()));
    }
    let differing: Vec<usize> = (0..p.len())
        .filter(|&i| p.relators()[i] != q.relators()[i])
        .collect();
    let i = match differing.as_slice() {
        [] => return Err(InferError::Unchanged),
        [i] => *i,
        _ => return Err(InferError::SeveralRelators(differing)),
    };
    let (r, target) = (&p.relators()[i], &q.relators()[i]);
    let others = || (0..p.len()).filter(move |&j| j != i);
    let mut candidates: Vec<Move> = vec![Move::Inv(i)];
    candidates.extend(others().map(|j| Move::Mul(i, j)));
    candidates.extend(others().map(|j| Move::MulInv(i, j)));
    if let Some(w) = find_conjugator(r, target) {
        candidates.push(Move::Conj(i, w));
        candidates.extend(
            (0..2 * p.generators() as u32).map(|code| Move::Conj(i, Word::letter(Letter::from_code(code)))),
        );
    }
    candidates
        .into_iter()
        .find(|m| family.contains(m) && p.apply(m).as_ref() == Ok(q))
        .ok_or_else(|| InferError::NoMove {
            from: p.clone(),
            to: q.clone(),
            family,
        })
}

/// Moves linking consecutive presentations. With `bridge > 0`, a link no
/// single move explains is filled by a breadth-first search of that depth.
pub fn certificate_from_chain(chain: &[Presentation], family: MoveFamily, bridge: usize) -> Result<Certificate, ProofError> {
    let start = chain.first().ok_or(ProofError::EmptyProof)?;
    let mut moves = Vec::new();
    for (step, pair) in chain.windows(2).enumerate() {
        let (p, q) = (&pair[0], &pair[1]);
        match infer_move(p, q, family) {
            Ok(m) => moves.push(m),
            Err(source) => match bridge_gap(p, q, family, bridge) {
                Some(path) => moves.extend(path),
                None => {
                    return Err(ProofError::Gap {
                        step: step + 1,
                        from: p.clone(),
                        to: q.clone(),
                        source,
                    })
                }
            },
        }
    }
    Ok(Certificate::new(start.clone(), moves)
        .with_end(chain.last().expect("non-empty").clone())
        .with_family(family))
}

fn bridge_gap(p: &Presentation, q: &Presentation, family: MoveFamily, depth: usize) -> Option<Vec<Move>> {
    if depth == 0 || p.generators() != q.generators() {
        return None;
    }
    let longest = p.max_relator_length().max(q.max_relator_length());
    let limits = SearchLimits {
        max_relator_len: 2 * longest.max(1),
        max_states: 1_000_000,
        max_seconds: 60.0,
        beam_width: 1,
        max_depth: Some(depth),
    };
    let result = Search::new(p, q, family)
        .strategy(Strategy::Bfs)
        .limits(limits)
        .run()
        .ok()?;
    match result.outcome {
        Outcome::Found => result.certificate.map(|c| c.moves),
        _ => None,
    }
}

/// Extracts a certificate from a parsed proof.
///
/// Endpoints default to [`proof_endpoints`].
pub fn extract_certificate(
    proof: &Proof,
    family: MoveFamily,
    bridge: usize,
    start: Option<&Presentation>,
    end: Option<&Presentation>,
) -> Result<Certificate, ProofError> {
    let (start, end) = match (start, end) {
        (Some(s), Some(e)) => (s.clone(), e.clone()),
        (s, e) => {
            let (ds, de) = proof_endpoints(proof)?;
            (s.cloned().unwrap_or(ds), e.cloned().unwrap_or(de))
        }
    };
    let chain = extract_chain(proof, &start, &end)?;
    certificate_from_chain(&chain, family, bridge)
}
