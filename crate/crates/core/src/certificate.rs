//! Certificates: a start presentation, a move sequence and an optional
//! expected endpoint, stored in a line-oriented text format.
//!
//! ```text
//! # comment
//! gens: 2
//! start: ABaBAbaBBabAb, BAbbABabaBBa
//! end: aaaBBBB, abaBAB
//! family: PAPER_S2
//! INV L
//! CONJ L Ab
//! MUL L R
//! ```
//!
//! Moves are `INV <i>`, `MUL <i> <j>`, `MULINV <i> <j>`, `CONJ <i> <word>`,
//! `AUT <map>`, `STAB+` and `STAB-`. Relator indices are numbers, or `L`/`R`
//! for 0/1. The listing spellings `INV`, `INV-R`, `MULT-L`, `MULT-R`,
//! `CONJ <w>X<w^-1>`, `CONJ-R <w>X<w^-1>` and `Aut[a->b,b->a]` are accepted too.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::presentation::{
    parse_relators, Move, MoveError, MoveFamily, MoveKind, Presentation, SignedPermutation,
};
use crate::word::{parse_word, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("step {step} ({mv}): {source}")]
    Step {
        step: usize,
        mv: String,
        source: MoveError,
    },
    #[error("step {step} ({mv}) is not a {family} move")]
    Family {
        step: usize,
        mv: String,
        family: MoveFamily,
    },
    #[error("final presentation {actual} differs from expected {expected}")]
    EndMismatch {
        expected: Presentation,
        actual: Presentation,
    },
}

impl CertificateError {
    /// 1-based step number of a replay failure.
    pub fn step(&self) -> Option<usize> {
        match self {
            CertificateError::Step { step, .. } | CertificateError::Family { step, .. } => {
                Some(*step)
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub start: Presentation,
    pub moves: Vec<Move>,
    pub expected_end: Option<Presentation>,
    pub family: Option<MoveFamily>,
}

/// Presentations visited by a replay; `presentations[k + 1]` is
/// `presentations[k]` after `moves[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub presentations: Vec<Presentation>,
    pub moves: Vec<Move>,
}

impl Trace {
    pub fn end(&self) -> &Presentation {
        self.presentations.last().expect("trace is never empty")
    }

    /// `(before, move, after)` for every step.
    pub fn steps(&self) -> impl Iterator<Item = (&Presentation, &Move, &Presentation)> {
        self.moves
            .iter()
            .enumerate()
            .map(|(k, m)| (&self.presentations[k], m, &self.presentations[k + 1]))
    }
}

impl Certificate {
    pub fn new(start: Presentation, moves: Vec<Move>) -> Self {
        Certificate {
            start,
            moves,
            expected_end: None,
            family: None,
        }
    }

    #[must_use]
    pub fn with_end(mut self, end: Presentation) -> Self {
        self.expected_end = Some(end);
        self
    }

    #[must_use]
    pub fn with_family(mut self, family: MoveFamily) -> Self {
        self.family = Some(family);
        self
    }

    pub fn generators(&self) -> usize {
        self.start.generators()
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self, CertificateError> {
        parse_certificate(text)
    }

    pub fn replay(&self) -> Result<Trace, CertificateError> {
        replay(self)
    }

    pub fn check(&self) -> Report {
        check(self)
    }
}

/// Replays up to the first failure.
fn replay_partial(c: &Certificate) -> (Vec<Presentation>, Option<CertificateError>) {
    let mut presentations = Vec::with_capacity(c.moves.len() + 1);
    presentations.push(c.start.clone());
    let n = c.generators();
    for (k, m) in c.moves.iter().enumerate() {
        let step = k + 1;
        if let Some(family) = c.family {
            if !family.contains(m) {
                let mv = render_move(m, n);
                return (presentations, Some(CertificateError::Family { step, mv, family }));
            }
        }
        let current = presentations.last().expect("non-empty");
        match current.apply(m) {
            Ok(next) => presentations.push(next),
            Err(source) => {
                let mv = render_move(m, n);
                return (presentations, Some(CertificateError::Step { step, mv, source }));
            }
        }
    }
    if let Some(expected) = &c.expected_end {
        let actual = presentations.last().expect("non-empty");
        if actual != expected {
            let err = CertificateError::EndMismatch {
                expected: expected.clone(),
                actual: actual.clone(),
            };
            return (presentations, Some(err));
        }
    }
    (presentations, None)
}

/// Applies every move in order and compares the endpoint with `expected_end`.
pub fn replay(c: &Certificate) -> Result<Trace, CertificateError> {
    match replay_partial(c) {
        (presentations, None) => Ok(Trace {
            presentations,
            moves: c.moves.clone(),
        }),
        (_, Some(err)) => Err(err),
    }
}

/// Outcome of [`check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub ok: bool,
    pub moves: usize,
    pub failure: Option<CertificateError>,
    pub histogram: BTreeMap<MoveKind, usize>,
    /// Statistics over the presentations reached before any failure.
    pub max_total_length: usize,
    pub max_relator_length: usize,
    pub last: Presentation,
}

impl Report {
    pub fn failed_step(&self) -> Option<usize> {
        self.failure.as_ref().and_then(CertificateError::step)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => writeln!(f, "ok: {} moves", self.moves)?,
            Some(err) => writeln!(f, "FAILED: {err}")?,
        }
        writeln!(f, "final: {}", self.last)?;
        let hist: Vec<String> = self
            .histogram
            .iter()
            .map(|(k, v)| format!("{k} {v}"))
            .collect();
        writeln!(f, "moves by kind: {}", hist.join(", "))?;
        writeln!(f, "max total length: {}", self.max_total_length)?;
        write!(f, "max relator length: {}", self.max_relator_length)
    }
}

pub fn check(c: &Certificate) -> Report {
    let (presentations, failure) = replay_partial(c);
    let mut histogram = BTreeMap::new();
    for m in &c.moves {
        *histogram.entry(m.kind()).or_insert(0) += 1;
    }
    Report {
        ok: failure.is_none(),
        moves: c.moves.len(),
        failure,
        histogram,
        max_total_length: presentations.iter().map(Presentation::total_length).max().unwrap_or(0),
        max_relator_length: presentations
            .iter()
            .map(Presentation::max_relator_length)
            .max()
            .unwrap_or(0),
        last: presentations.last().expect("non-empty").clone(),
    }
}

/// Replaces each maximal run of conjugations of one relator by a single
/// conjugation by the composed word, dropping runs that compose to the identity.
pub fn compress_conjugations(c: &Certificate) -> Result<Certificate, CertificateError> {
    replay(c)?;
    let mut moves: Vec<Move> = Vec::with_capacity(c.moves.len());
    let mut run: Option<(usize, Word)> = None;
    let flush = |run: &mut Option<(usize, Word)>, moves: &mut Vec<Move>| {
        if let Some((i, w)) = run.take() {
            if !w.is_empty() {
                moves.push(Move::Conj(i, w));
            }
        }
    };
    for m in &c.moves {
        match (m, &mut run) {
            // v (u r u^-1) v^-1 = (vu) r (vu)^-1
            (Move::Conj(i, v), Some((j, u))) if i == j => *u = v.concat(u),
            (Move::Conj(i, v), _) => {
                flush(&mut run, &mut moves);
                run = Some((*i, v.clone()));
            }
            _ => {
                flush(&mut run, &mut moves);
                moves.push(m.clone());
            }
        }
    }
    flush(&mut run, &mut moves);
    Ok(Certificate {
        moves,
        ..c.clone()
    })
}

fn render_index(i: usize, generators: usize) -> String {
    match (generators, i) {
        (2, 0) => "L".into(),
        (2, 1) => "R".into(),
        _ => i.to_string(),
    }
}

/// One move in certificate syntax.
pub fn render_move(m: &Move, generators: usize) -> String {
    let idx = |i: usize| render_index(i, generators);
    match m {
        Move::Inv(i) => format!("INV {}", idx(*i)),
        Move::Mul(i, j) => format!("MUL {} {}", idx(*i), idx(*j)),
        Move::MulInv(i, j) => format!("MULINV {} {}", idx(*i), idx(*j)),
        Move::Conj(i, w) => format!("CONJ {} {w}", idx(*i)),
        Move::Aut(map) => format!("AUT {map}"),
        Move::StabAdd => "STAB+".into(),
        Move::StabRemove => "STAB-".into(),
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.generators();
        writeln!(f, "gens: {n}")?;
        writeln!(f, "start: {}", self.start.relators_text())?;
        if let Some(end) = &self.expected_end {
            if end.generators() == n {
                writeln!(f, "end: {}", end.relators_text())?;
            } else {
                writeln!(f, "end: {end}")?;
            }
        }
        if let Some(family) = self.family {
            writeln!(f, "family: {family}")?;
        }
        for m in &self.moves {
            writeln!(f, "{}", render_move(m, n))?;
        }
        Ok(())
    }
}

/// Parses the certificate text format described in the module docs.
pub fn parse_certificate(text: &str) -> Result<Certificate, CertificateError> {
    let err = |line: usize, message: String| CertificateError::Parse { line, message };
    let mut gens: Option<(usize, usize)> = None;
    let mut start: Option<(usize, &str)> = None;
    let mut end: Option<(usize, &str)> = None;
    let mut family = None;
    let mut move_lines = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let header = line
            .split_once(':')
            .map(|(key, value)| (key.trim().to_ascii_lowercase(), value.trim()));
        match header {
            Some((key, value)) if key == "gens" => {
                let n = value
                    .parse()
                    .map_err(|_| err(line_no, format!("bad generator count {value:?}")))?;
                gens = Some((line_no, n));
            }
            Some((key, value)) if key == "start" => start = Some((line_no, value)),
            Some((key, value)) if key == "end" => end = Some((line_no, value)),
            Some((key, value)) if key == "family" => {
                family = Some(value.parse::<MoveFamily>().map_err(|e| err(line_no, e.to_string()))?);
            }
            Some((key, _)) if !key.contains(' ') && !line.contains("->") => {
                return Err(err(line_no, format!("unknown header {key:?}")));
            }
            _ => move_lines.push((line_no, line)),
        }
    }

    let (start_line, start_text) = start.ok_or_else(|| err(0, "missing `start:` header".into()))?;
    // An explicit `<gens> | ...` end may differ from `gens:` after stabilizations.
    let presentation = |line: usize, text: &str, is_start: bool| -> Result<Presentation, CertificateError> {
        if text.contains('|') || gens.is_none() {
            let p = Presentation::parse(text).map_err(|e| err(line, e.to_string()))?;
            if let (Some((gl, n)), true) = (gens, is_start) {
                if p.generators() != n {
                    return Err(err(gl, format!("gens: {n} but presentation has {}", p.generators())));
                }
            }
            Ok(p)
        } else {
            let n = gens.expect("checked").1;
            let relators = parse_relators(text, n).map_err(|e| err(line, e.to_string()))?;
            Presentation::new(n, relators).map_err(|e| err(line, e.to_string()))
        }
    };
    let start = presentation(start_line, start_text, true)?;
    let expected_end = match end {
        Some((line, text)) => Some(presentation(line, text, false)?),
        None => None,
    };
    // Track the generator count through stabilizations so AUT maps get the right arity.
    let mut n = start.generators();
    let mut moves = Vec::with_capacity(move_lines.len());
    for (line, text) in move_lines {
        let m = parse_move(text, n).map_err(|m| err(line, m))?;
        match m {
            Move::StabAdd => n += 1,
            Move::StabRemove => n = n.saturating_sub(1),
            _ => {}
        }
        moves.push(m);
    }
    Ok(Certificate {
        start,
        moves,
        expected_end,
        family,
    })
}

/// Parses one move line; `generators` is the generator count the move acts on.
pub fn parse_move(text: &str, generators: usize) -> Result<Move, String> {
    let text = text.trim();
    let split = text
        .find(|c: char| c.is_whitespace() || c == '[')
        .unwrap_or(text.len());
    let keyword = text[..split].to_ascii_uppercase();
    let args: Vec<&str> = text[split..].split_whitespace().collect();
    let index = |s: &str| -> Result<usize, String> {
        match s {
            "L" | "l" => Ok(0),
            "R" | "r" => Ok(1),
            _ => s.parse().map_err(|_| format!("bad relator index {s:?}")),
        }
    };
    let arity = |want: usize| -> Result<(), String> {
        if args.len() == want {
            Ok(())
        } else {
            Err(format!("{keyword} takes {want} argument(s), got {}", args.len()))
        }
    };
    let word = |s: &str| parse_word(s, crate::word::MAX_LETTER_GENERATORS).map_err(|e| e.to_string());
    match keyword.as_str() {
        "INV" | "INV-L" | "INV-R" => {
            let default = usize::from(keyword == "INV-R");
            match args.as_slice() {
                [] => Ok(Move::Inv(default)),
                [i] if keyword == "INV" => Ok(Move::Inv(index(i)?)),
                _ => Err(format!("{keyword} takes at most one relator index")),
            }
        }
        "MUL" | "MULINV" => {
            arity(2)?;
            let (i, j) = (index(args[0])?, index(args[1])?);
            Ok(if keyword == "MUL" {
                Move::Mul(i, j)
            } else {
                Move::MulInv(i, j)
            })
        }
        "MULT-L" => arity(0).map(|_| Move::Mul(0, 1)),
        "MULT-R" => arity(0).map(|_| Move::Mul(1, 0)),
        "CONJ" | "CONJ-L" | "CONJ-R" => match args.as_slice() {
            [i, w] if keyword == "CONJ" => Ok(Move::Conj(index(i)?, word(w)?)),
            [pattern] => {
                let target = usize::from(keyword == "CONJ-R");
                Ok(Move::Conj(target, parse_conj_pattern(pattern)?))
            }
            _ => Err(format!("malformed {keyword}: expected `CONJ <index> <word>` or `CONJ <w>X<w^-1>`")),
        },
        "AUT" => {
            let map_text = text[split..].trim();
            if map_text.is_empty() {
                return Err("AUT needs a generator map such as a->b,b->a".into());
            }
            SignedPermutation::parse(map_text, generators)
                .map(Move::Aut)
                .map_err(|e| e.to_string())
        }
        "STAB+" => arity(0).map(|_| Move::StabAdd),
        "STAB-" => arity(0).map(|_| Move::StabRemove),
        _ => Err(format!("unknown move keyword {keyword:?}")),
    }
}

/// `AbXBa` -> `Ab`; the text after `X` must be the inverse of the text before it.
fn parse_conj_pattern(pattern: &str) -> Result<Word, String> {
    let mut saw_marker = false;
    for (pos, c) in pattern.char_indices() {
        if c != 'X' && c != 'x' {
            continue;
        }
        saw_marker = true;
        let (prefix, suffix) = (&pattern[..pos], &pattern[pos + 1..]);
        let parse = |s: &str| {
            if s.is_empty() {
                Ok(Word::identity())
            } else {
                parse_word(s, crate::word::MAX_LETTER_GENERATORS)
            }
        };
        if let (Ok(u), Ok(v)) = (parse(prefix), parse(suffix)) {
            if u.inverse() == v && u.len() == prefix.len() {
                return Ok(u);
            }
        }
    }
    if saw_marker {
        Err(format!("CONJ {pattern}: the part after X is not the inverse of the part before it"))
    } else {
        Err(format!("CONJ {pattern}: expected a relator index and a word, or w X w^-1"))
    }
}
