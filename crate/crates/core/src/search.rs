//! Bounded search for move sequences between presentations.
//!
//! States are stored once, as exact canonical keys in a byte arena, and
//! identified by their insertion index. Each state remembers its parent and
//! the index of the generating move in the family's enumeration, which is all
//! that is needed to rebuild a certificate.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::hash::BuildHasher;
use std::str::FromStr;
use std::time::{Duration, Instant};

use hashbrown::hash_table::{Entry, HashTable};
use hashbrown::DefaultHashBuilder;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::certificate::Certificate;
use crate::presentation::{KeyMode, Move, MoveFamily, Presentation};

const NO_PARENT: u32 = u32::MAX;
const TIME_CHECK_INTERVAL: u64 = 1024;
/// Expansions between progress callbacks.
pub const PROGRESS_INTERVAL: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Best-first on total relator length, ties in insertion order.
    Greedy,
    /// Layer by layer; finds a path with the fewest moves.
    Bfs,
    /// Keeps the `beam_width` shortest states of each layer.
    Beam,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Greedy => "greedy",
            Strategy::Bfs => "bfs",
            Strategy::Beam => "beam",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "greedy" => Ok(Strategy::Greedy),
            "bfs" => Ok(Strategy::Bfs),
            "beam" => Ok(Strategy::Beam),
            _ => Err(format!("unknown strategy {s:?}; expected greedy, bfs or beam")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchLimits {
    /// States with a longer relator are pruned.
    pub max_relator_len: usize,
    /// Budget of expanded states.
    pub max_states: u64,
    pub max_seconds: f64,
    pub beam_width: usize,
    /// States at this depth are not expanded.
    pub max_depth: Option<usize>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_relator_len: 16,
            max_states: 1_000_000,
            max_seconds: 60.0,
            beam_width: 1000,
            max_depth: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Limit {
    States,
    Time,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Found,
    /// Nothing left to expand within the length (and depth) bounds. For beam
    /// search this does not rule out a path.
    Exhausted,
    Limit(Limit),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Found => f.write_str("FOUND"),
            Outcome::Exhausted => f.write_str("EXHAUSTED"),
            Outcome::Limit(Limit::States) => f.write_str("LIMIT (states)"),
            Outcome::Limit(Limit::Time) => f.write_str("LIMIT (time)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub outcome: Outcome,
    pub certificate: Option<Certificate>,
    pub states_expanded: u64,
    /// Distinct states generated, including the start.
    pub states_seen: u64,
    pub frontier_peak: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Progress {
    pub expanded: u64,
    pub seen: u64,
    pub frontier: usize,
    /// Smallest total relator length seen so far.
    pub best_total: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("endpoints have {from} and {to} generators")]
    DimensionMismatch { from: usize, to: usize },
    #[error("presentation {0} is not balanced")]
    NotBalanced(Presentation),
    #[error("{which} presentation has a relator of length {len}, above max_relator_len {limit}")]
    EndpointTooLong {
        which: &'static str,
        len: usize,
        limit: usize,
    },
    #[error("invalid limits: {0}")]
    InvalidLimits(String),
    #[error("family {0} enumerates more than 65535 moves at this size")]
    TooManyMoves(MoveFamily),
}

#[derive(Clone, Copy)]
struct Node {
    parent: u32,
    mv: u16,
    depth: u32,
    total: u32,
    key_start: u64,
    key_len: u32,
}

/// Deduplicated state storage.
struct Store {
    nodes: Vec<Node>,
    keys: Vec<u8>,
    table: HashTable<u32>,
    hasher: DefaultHashBuilder,
}

impl Store {
    fn new() -> Self {
        Store {
            nodes: Vec::new(),
            keys: Vec::new(),
            table: HashTable::new(),
            hasher: DefaultHashBuilder::default(),
        }
    }

    fn key(&self, id: u32) -> &[u8] {
        let n = &self.nodes[id as usize];
        &self.keys[n.key_start as usize..n.key_start as usize + n.key_len as usize]
    }

    fn presentation(&self, id: u32) -> Presentation {
        Presentation::from_key(self.key(id))
    }

    /// Inserts a state unless it is already known; returns the new id.
    fn insert(&mut self, key: &[u8], hash: u64, parent: u32, mv: u16, depth: u32, total: u32) -> Option<u32> {
        let Store {
            nodes,
            keys,
            table,
            hasher,
        } = self;
        let lookup = |&id: &u32| {
            let n = &nodes[id as usize];
            &keys[n.key_start as usize..n.key_start as usize + n.key_len as usize] == key
        };
        match table.entry(hash, lookup, |&id| {
            let n = &nodes[id as usize];
            hasher.hash_one(&keys[n.key_start as usize..n.key_start as usize + n.key_len as usize])
        }) {
            Entry::Occupied(_) => None,
            Entry::Vacant(slot) => {
                let id = nodes.len() as u32;
                nodes.push(Node {
                    parent,
                    mv,
                    depth,
                    total,
                    key_start: keys.len() as u64,
                    key_len: key.len() as u32,
                });
                keys.extend_from_slice(key);
                slot.insert(id);
                Some(id)
            }
        }
    }

    fn path(&self, mut id: u32, moves: &[Move]) -> Vec<Move> {
        let mut out = Vec::new();
        while self.nodes[id as usize].parent != NO_PARENT {
            let node = self.nodes[id as usize];
            out.push(moves[node.mv as usize].clone());
            id = node.parent;
        }
        out.reverse();
        out
    }
}

/// A successor computed off the coordinator thread.
struct Child {
    key: Vec<u8>,
    hash: u64,
    mv: u16,
    total: u32,
}

type ProgressFn<'a> = Box<dyn FnMut(&Progress) + 'a>;

/// Configurable search run.
pub struct Search<'a> {
    from: Presentation,
    to: Presentation,
    family: MoveFamily,
    strategy: Strategy,
    limits: SearchLimits,
    workers: usize,
    progress: Option<ProgressFn<'a>>,
}

impl<'a> Search<'a> {
    pub fn new(from: &Presentation, to: &Presentation, family: MoveFamily) -> Self {
        Search {
            from: from.clone(),
            to: to.clone(),
            family,
            strategy: Strategy::Greedy,
            limits: SearchLimits::default(),
            workers: 1,
            progress: None,
        }
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn limits(mut self, limits: SearchLimits) -> Self {
        self.limits = limits;
        self
    }

    /// Threads used to expand states; results do not depend on this.
    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    /// Called every [`PROGRESS_INTERVAL`] expansions.
    pub fn on_progress(mut self, f: impl FnMut(&Progress) + 'a) -> Self {
        self.progress = Some(Box::new(f));
        self
    }

    fn validate(&self) -> Result<(), SearchError> {
        let (from, to) = (&self.from, &self.to);
        if from.generators() != to.generators() {
            return Err(SearchError::DimensionMismatch {
                from: from.generators(),
                to: to.generators(),
            });
        }
        for p in [from, to] {
            if !p.is_balanced() {
                return Err(SearchError::NotBalanced(p.clone()));
            }
        }
        let l = &self.limits;
        for (which, p) in [("start", from), ("target", to)] {
            if p.max_relator_length() > l.max_relator_len {
                return Err(SearchError::EndpointTooLong {
                    which,
                    len: p.max_relator_length(),
                    limit: l.max_relator_len,
                });
            }
        }
        if l.max_relator_len == 0 || l.max_states == 0 {
            return Err(SearchError::InvalidLimits(
                "max_relator_len and max_states must be positive".into(),
            ));
        }
        if !(l.max_seconds > 0.0) {
            return Err(SearchError::InvalidLimits("max_seconds must be positive".into()));
        }
        if self.strategy == Strategy::Beam && l.beam_width == 0 {
            return Err(SearchError::InvalidLimits("beam_width must be positive".into()));
        }
        Ok(())
    }

    pub fn run(self) -> Result<SearchResult, SearchError> {
        self.validate()?;
        let moves = self.family.moves(self.from.generators());
        if moves.len() > usize::from(u16::MAX) {
            return Err(SearchError::TooManyMoves(self.family));
        }
        let pool = if self.workers > 1 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(self.workers)
                .build()
                .ok()
        } else {
            None
        };
        let mut run = Run::new(self, moves, pool);
        let outcome = match run.search.strategy {
            Strategy::Greedy => run.greedy(),
            Strategy::Bfs | Strategy::Beam => run.layered(),
        };
        Ok(run.finish(outcome))
    }
}

struct Run<'a> {
    search: Search<'a>,
    moves: Vec<Move>,
    pool: Option<rayon::ThreadPool>,
    store: Store,
    target_key: Vec<u8>,
    start: Instant,
    deadline: Duration,
    expanded: u64,
    frontier_peak: usize,
    best_total: usize,
    found: Option<u32>,
}

enum Step {
    Continue,
    Stop(Outcome),
}

impl<'a> Run<'a> {
    fn new(search: Search<'a>, moves: Vec<Move>, pool: Option<rayon::ThreadPool>) -> Self {
        let target_key = search.to.canonical_key(KeyMode::Exact);
        let deadline = Duration::from_secs_f64(search.limits.max_seconds.min(1e9));
        let best_total = search.from.total_length();
        Run {
            search,
            moves,
            pool,
            store: Store::new(),
            target_key,
            start: Instant::now(),
            deadline,
            expanded: 0,
            frontier_peak: 1,
            best_total,
            found: None,
        }
    }

    fn insert_root(&mut self) -> u32 {
        let key = self.search.from.canonical_key(KeyMode::Exact);
        let hash = self.store.hasher.hash_one(key.as_slice());
        let total = self.search.from.total_length() as u32;
        self.store
            .insert(&key, hash, NO_PARENT, 0, 0, total)
            .expect("empty store")
    }

    fn children(&self, id: u32) -> Vec<Child> {
        expand(&self.store, id, &self.moves, self.search.limits.max_relator_len)
    }

    fn children_batch(&self, ids: &[u32]) -> Vec<Vec<Child>> {
        let (store, moves) = (&self.store, self.moves.as_slice());
        let max_len = self.search.limits.max_relator_len;
        let work = || -> Vec<Vec<Child>> {
            ids.par_iter()
                .map(|&id| expand(store, id, moves, max_len))
                .collect()
        };
        match &self.pool {
            Some(pool) if ids.len() > 1 => pool.install(work),
            _ => ids.iter().map(|&id| self.children(id)).collect(),
        }
    }

    fn expandable(&self, id: u32) -> bool {
        match self.search.limits.max_depth {
            Some(d) => (self.store.nodes[id as usize].depth as usize) < d,
            None => true,
        }
    }

    /// Bookkeeping before expanding one state.
    fn before_expand(&mut self, frontier: usize) -> Step {
        if self.expanded >= self.search.limits.max_states {
            return Step::Stop(Outcome::Limit(Limit::States));
        }
        if self.expanded % TIME_CHECK_INTERVAL == 0 && self.start.elapsed() >= self.deadline {
            return Step::Stop(Outcome::Limit(Limit::Time));
        }
        if self.expanded > 0 && self.expanded % PROGRESS_INTERVAL == 0 {
            let progress = Progress {
                expanded: self.expanded,
                seen: self.store.nodes.len() as u64,
                frontier,
                best_total: self.best_total,
                elapsed: self.start.elapsed(),
            };
            if let Some(f) = self.search.progress.as_mut() {
                f(&progress);
            }
        }
        self.expanded += 1;
        Step::Continue
    }

    /// Inserts the children of `parent`; returns the new ids, or stops on the target.
    fn merge(&mut self, parent: u32, children: Vec<Child>, new_ids: &mut Vec<u32>) -> Step {
        let depth = self.store.nodes[parent as usize].depth + 1;
        for c in children {
            if let Some(id) = self.store.insert(&c.key, c.hash, parent, c.mv, depth, c.total) {
                self.best_total = self.best_total.min(c.total as usize);
                if c.key == self.target_key {
                    self.found = Some(id);
                    return Step::Stop(Outcome::Found);
                }
                new_ids.push(id);
            }
        }
        Step::Continue
    }

    fn greedy(&mut self) -> Outcome {
        let root = self.insert_root();
        if self.store.key(root) == self.target_key.as_slice() {
            self.found = Some(root);
            return Outcome::Found;
        }
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((self.store.nodes[root as usize].total, root)));
        let batch_size = if self.pool.is_some() { 4 * self.search.workers } else { 1 };
        let mut fresh = Vec::new();
        loop {
            let mut batch = Vec::with_capacity(batch_size);
            while batch.len() < batch_size {
                match heap.pop() {
                    Some(Reverse((_, id))) if !self.expandable(id) => continue,
                    Some(Reverse(entry)) => batch.push(entry),
                    None => break,
                }
            }
            if batch.is_empty() {
                return Outcome::Exhausted;
            }
            let ids: Vec<u32> = batch.iter().map(|&(_, id)| id).collect();
            let expansions = self.children_batch(&ids);
            let mut best_new: Option<(u32, u32)> = None;
            let mut rest = batch.iter().copied().zip(expansions).peekable();
            while let Some((entry, children)) = rest.next() {
                // A state inserted by an earlier member of the batch may outrank this one.
                if best_new.is_some_and(|b| b < entry) {
                    heap.push(Reverse(entry));
                    for (e, _) in rest.by_ref() {
                        heap.push(Reverse(e));
                    }
                    break;
                }
                if let Step::Stop(outcome) = self.before_expand(heap.len() + 1) {
                    return outcome;
                }
                fresh.clear();
                if let Step::Stop(outcome) = self.merge(entry.1, children, &mut fresh) {
                    return outcome;
                }
                for &id in &fresh {
                    let e = (self.store.nodes[id as usize].total, id);
                    best_new = Some(best_new.map_or(e, |b| b.min(e)));
                    heap.push(Reverse(e));
                }
                self.frontier_peak = self.frontier_peak.max(heap.len());
            }
        }
    }

    fn layered(&mut self) -> Outcome {
        let root = self.insert_root();
        if self.store.key(root) == self.target_key.as_slice() {
            self.found = Some(root);
            return Outcome::Found;
        }
        let beam = match self.search.strategy {
            Strategy::Beam => Some(self.search.limits.beam_width),
            _ => None,
        };
        let chunk = if self.pool.is_some() { 64 * self.search.workers } else { 1 };
        let mut layer = vec![root];
        while !layer.is_empty() {
            let mut next = Vec::new();
            let expandable: Vec<u32> = layer.iter().copied().filter(|&id| self.expandable(id)).collect();
            for ids in expandable.chunks(chunk) {
                let expansions = self.children_batch(ids);
                for (i, (&id, children)) in ids.iter().zip(expansions).enumerate() {
                    let remaining = expandable.len() - i;
                    if let Step::Stop(outcome) = self.before_expand(remaining + next.len()) {
                        return outcome;
                    }
                    if let Step::Stop(outcome) = self.merge(id, children, &mut next) {
                        return outcome;
                    }
                }
                self.frontier_peak = self.frontier_peak.max(next.len());
            }
            if let Some(width) = beam {
                next.sort_by_key(|&id| (self.store.nodes[id as usize].total, id));
                next.truncate(width);
            }
            layer = next;
        }
        Outcome::Exhausted
    }

    fn finish(self, outcome: Outcome) -> SearchResult {
        let certificate = self.found.map(|id| {
            Certificate::new(self.search.from.clone(), self.store.path(id, &self.moves))
                .with_end(self.search.to.clone())
                .with_family(self.search.family)
        });
        SearchResult {
            outcome,
            certificate,
            states_expanded: self.expanded,
            states_seen: self.store.nodes.len() as u64,
            frontier_peak: self.frontier_peak,
            elapsed: self.start.elapsed(),
        }
    }
}

fn expand(store: &Store, id: u32, moves: &[Move], max_relator_len: usize) -> Vec<Child> {
    let p = store.presentation(id);
    let mut out = Vec::with_capacity(moves.len());
    for (index, m) in moves.iter().enumerate() {
        let Ok(q) = p.apply(m) else { continue };
        if q.max_relator_length() > max_relator_len {
            continue;
        }
        let mut key = Vec::with_capacity(4 + q.total_length() + q.len());
        q.write_key(KeyMode::Exact, &mut key);
        let hash = store.hasher.hash_one(key.as_slice());
        out.push(Child {
            key,
            hash,
            mv: index as u16,
            total: q.total_length() as u32,
        });
    }
    out
}

/// Searches from `from` to `to` on a single worker.
pub fn search(
    from: &Presentation,
    to: &Presentation,
    family: MoveFamily,
    strategy: Strategy,
    limits: &SearchLimits,
) -> Result<SearchResult, SearchError> {
    Search::new(from, to, family)
        .strategy(strategy)
        .limits(limits.clone())
        .run()
}

/// Applies `k` moves drawn uniformly from the family's enumeration.
///
/// Returns the endpoint and the certificate of the walk.
pub fn scramble(p: &Presentation, family: MoveFamily, k: usize, seed: u64) -> (Presentation, Certificate) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let moves = family.moves(p.generators());
    let mut current = p.clone();
    let mut taken = Vec::with_capacity(k);
    if !moves.is_empty() {
        while taken.len() < k {
            let m = &moves[rng.gen_range(0..moves.len())];
            if let Ok(next) = current.apply(m) {
                current = next;
                taken.push(m.clone());
            }
        }
    }
    let cert = Certificate::new(p.clone(), taken)
        .with_end(current.clone())
        .with_family(family);
    (current, cert)
}
