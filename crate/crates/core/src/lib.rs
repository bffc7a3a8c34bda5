//! Andrews–Curtis transformations of balanced group presentations.
//!
//! - [`word`]: free-group words and the group-term syntax.
//! - [`presentation`]: presentations, elementary moves and move families.
//! - [`certificate`]: certificate files, replay, checking and compression.
//! - [`encode`]: first-order prover tasks for the implicational translations.
//! - [`proofex`]: reading resolution proofs back into certificates.
//! - [`search`]: bounded greedy / breadth-first / beam search for AC-paths.

pub mod word;
pub mod presentation;
pub mod certificate;
pub mod encode;
pub mod proofex;
pub mod search;

pub use presentation::{
    ak, neighbors, shehper_p, trivial, KeyMode, Move, MoveError, MoveFamily, MoveKind,
    Presentation, PresentationError, SignedPermutation,
};
pub use word::{find_conjugator, free_reduce, parse_word, GroupTerm, Letter, Word, WordError};
pub use certificate::{
    check, compress_conjugations, parse_certificate, replay, Certificate, CertificateError,
    Report, Trace,
};
pub use encode::{emit_task, group_axioms, EncodeError, ProverTask, Translation};
pub use search::{scramble, search, Outcome, Search, SearchError, SearchLimits, SearchResult, Strategy};
pub use proofex::{extract_certificate, extract_chain, infer_move, parse_proof, Proof, ProofError, ProofLine};
