//! Derivation of the generator language of a quasiperiod, its star root,
//! and code-theoretic certificates: the suffix-code property and the
//! minimal delay of decipherability with an explicit witness.
//!
//! For a nonempty word `q`, the generators are the prefixes of `q` whose
//! length is a period of `q`; every word quasiperiodic with quasiperiod `q`
//! is a product of generators followed by `q`. The star root discards the
//! generators that are redundant for the star language, namely the proper
//! powers of the shortest generator.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::words::{self, Word};
use crate::{Error, Result};

/// Everything derived from one quasiperiod.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiperiodAnalysis {
    /// The quasiperiod under analysis.
    pub quasiperiod: Word,
    /// Shortest generator; always primitive.
    pub core: Word,
    /// Largest `k` with `coreᵏ` a prefix of the quasiperiod.
    pub core_exponent: usize,
    /// The tail in `quasiperiod = coreᵏ · remainder`; a proper prefix of
    /// the core, empty exactly when the core length divides `|q|`.
    pub remainder: Word,
    /// Generator language, ascending by length. The core is first, the
    /// quasiperiod itself is last.
    pub generators: Vec<Word>,
    /// Star root of the generators: the minimal subset generating the same
    /// star language.
    pub star_root: Vec<Word>,
    /// Whether the star root is a suffix code (it always is).
    pub suffix_code: bool,
    /// Minimal delay of decipherability of the star root; at most
    /// `core_exponent + 1`, and 0 exactly for prefix codes.
    pub delay: usize,
    /// For positive delays, a pair of factorizations that stay
    /// prefix-comparable after `delay − 1` further codewords.
    pub delay_witness: Option<DelayWitness>,
    /// Whether the core length divides the quasiperiod length.
    pub divides: bool,
}

/// Generator language of `q`: all `v` with `v` a nonempty prefix of `q` and
/// `q` a proper prefix of `v·q`, equivalently the prefixes of `q` whose
/// length is a period. Ascending by length.
pub fn generators(q: &Word) -> Result<Vec<Word>> {
    let result = words::period_prefixes(q)?;
    debug_assert!(
        result
            .iter()
            .all(|v| !v.is_empty() && v.is_prefix_of(q) && q.is_prefix_of(&v.concat(q))),
        "period prefixes must satisfy the direct generator predicate"
    );
    Ok(result)
}

/// Star root of a generator list: drops the proper powers of the shortest
/// generator, which are exactly the elements expressible as products of two
/// or more generators.
pub fn star_root(generators: &[Word]) -> Result<Vec<Word>> {
    let Some(core) = generators.first() else {
        return Err(Error::InvalidArgument("empty generator list".into()));
    };
    Ok(generators
        .iter()
        .filter(|v| {
            v.len() == core.len()
                || v.len() % core.len() != 0
                || core.repeat(v.len() / core.len()) != **v
        })
        .cloned()
        .collect())
}

fn validate_code_input(code: &[Word]) -> Result<()> {
    if code.is_empty() {
        return Err(Error::InvalidArgument("empty code".into()));
    }
    for (i, w) in code.iter().enumerate() {
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        if code[..i].contains(w) {
            return Err(Error::DuplicateWord(w.to_string()));
        }
    }
    Ok(())
}

/// True when no word of the list is a proper suffix of another.
pub fn is_suffix_code(code: &[Word]) -> Result<bool> {
    validate_code_input(code)?;
    Ok(!code
        .iter()
        .any(|w| code.iter().any(|v| w.len() < v.len() && w.is_suffix_of(v))))
}

/// Sardinas–Patterson test for unique decipherability.
pub fn is_code(code: &[Word]) -> Result<bool> {
    validate_code_input(code)?;
    let mut dangling: BTreeSet<Word> = BTreeSet::new();
    for w in code {
        for v in code {
            if w != v && w.is_proper_prefix_of(v) {
                dangling.insert(v.suffix_from(w.len()));
            }
        }
    }
    let mut queue: Vec<Word> = dangling.iter().cloned().collect();
    while let Some(d) = queue.pop() {
        for c in code {
            if d == *c {
                return Ok(false);
            }
            let next = if d.is_proper_prefix_of(c) {
                c.suffix_from(d.len())
            } else if c.is_proper_prefix_of(&d) {
                d.suffix_from(c.len())
            } else {
                continue;
            };
            if dangling.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    Ok(true)
}

/// Shortest word with two factorizations over a non-code, found by growing
/// the star language breadth-first with factorization counts.
fn shortest_ambiguous(code: &[Word]) -> String {
    let cap_words: usize = 1_000_000;
    let max_len = code.iter().map(Word::len).max().unwrap_or(0);
    let mut by_length: BTreeMap<usize, BTreeMap<Word, u64>> = BTreeMap::new();
    by_length.entry(0).or_default().insert(Word::empty(), 1);
    let mut total = 1usize;
    let mut len = 0usize;
    while len <= 64 * max_len {
        let Some(layer) = by_length.get(&len).cloned() else {
            len += 1;
            continue;
        };
        for (word, count) in &layer {
            if *count >= 2 {
                return word.to_string();
            }
            for c in code {
                let extended = word.concat(c);
                let entry = by_length
                    .entry(extended.len())
                    .or_default()
                    .entry(extended)
                    .or_insert(0);
                if *entry == 0 {
                    total += 1;
                }
                *entry += count;
            }
        }
        if total > cap_words {
            break;
        }
        len += 1;
    }
    // Unreachable for the inputs this crate produces.
    "(ambiguous witness beyond search cap)".into()
}

/// One step of disambiguation evidence: two factorizations that start with
/// different codewords yet remain prefix-comparable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelayWitness {
    /// First codeword of the shorter stream.
    pub first: Word,
    /// Codewords appended to the first stream.
    pub first_continuation: Vec<Word>,
    /// First codeword of the longer stream; differs from `first`.
    pub second: Word,
    /// Codewords appended to the second stream.
    pub second_continuation: Vec<Word>,
}

impl DelayWitness {
    /// The concatenation of the first stream.
    pub fn first_stream(&self) -> Word {
        self.first_continuation
            .iter()
            .fold(self.first.clone(), |acc, w| acc.concat(w))
    }

    /// The concatenation of the second stream.
    pub fn second_stream(&self) -> Word {
        self.second_continuation
            .iter()
            .fold(self.second.clone(), |acc, w| acc.concat(w))
    }

    /// Checks that the witness states what it claims: distinct initial
    /// codewords with the first stream a prefix of the second.
    pub fn is_valid(&self) -> bool {
        self.first != self.second && self.first_stream().is_prefix_of(&self.second_stream())
    }
}

impl fmt::Display for DelayWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dot = |words: &[Word]| {
            words
                .iter()
                .map(Word::to_string)
                .collect::<Vec<_>>()
                .join("·")
        };
        let mut first = vec![self.first.clone()];
        first.extend(self.first_continuation.iter().cloned());
        let mut second = vec![self.second.clone()];
        second.extend(self.second_continuation.iter().cloned());
        write!(f, "{} ⊑ {}", dot(&first), dot(&second))
    }
}

/// Outcome of the bounded delay search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DelayResult {
    /// Minimal delay of decipherability, with the obstruction showing the
    /// delay is not smaller (absent for prefix codes).
    Delay {
        delay: usize,
        witness: Option<DelayWitness>,
    },
    /// Every `m ≤ bound` still admits two comparable factorizations.
    ExceedsBound,
}

/// Which stream of a factorization pair is ahead, and by which dangling
/// word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Lead {
    /// The second stream is ahead by the word (possibly empty, meaning both
    /// streams coincide). The first stream is then a prefix of the second.
    Second(Word),
    /// The first stream is ahead by the nonempty word.
    First(Word),
}

#[derive(Debug, Clone, Copy)]
enum Side {
    First,
    Second,
}

struct SearchNode {
    consumed: usize,
    lead: Lead,
    parent: Option<usize>,
    /// Codeword appended to reach this node, when not an initial pair.
    edge: Option<(Side, usize)>,
    /// Indices of the initial codeword pair (first, second).
    origin: (usize, usize),
}

/// Minimal `m ≤ bound` such that for all codewords `w ≠ w'`, no `m`
/// continuation codewords keep `w·v₁⋯vₘ` a prefix of a factorization
/// starting with `w'`. Returns [`DelayResult::ExceedsBound`] when every
/// `m ≤ bound` still has such a pair.
///
/// The search walks dangling suffixes in the style of Sardinas–Patterson:
/// a state records which stream is ahead and by what suffix, and only the
/// stream that is behind is extended. Unique decipherability is verified
/// first and a non-code is reported as an error together with a shortest
/// ambiguous word.
pub fn decipherability_delay(code: &[Word], bound: usize) -> Result<DelayResult> {
    if !is_code(code)? {
        return Err(Error::NotACode {
            ambiguous: shortest_ambiguous(code),
        });
    }

    let mut nodes: Vec<SearchNode> = Vec::new();
    let mut visited: HashSet<(usize, Lead)> = HashSet::new();
    let mut queue: Vec<usize> = Vec::new();
    // witness_for[m] = node index of a pair still comparable after m
    // continuations of the first stream.
    let mut witness_for: Vec<Option<usize>> = vec![None; bound + 1];

    for (i, w) in code.iter().enumerate() {
        for (j, v) in code.iter().enumerate() {
            if i == j {
                continue;
            }
            let lead = if w.is_proper_prefix_of(v) {
                Lead::Second(v.suffix_from(w.len()))
            } else if v.is_proper_prefix_of(w) {
                Lead::First(w.suffix_from(v.len()))
            } else {
                continue;
            };
            if visited.insert((0, lead.clone())) {
                nodes.push(SearchNode {
                    consumed: 0,
                    lead,
                    parent: None,
                    edge: None,
                    origin: (i, j),
                });
                queue.push(nodes.len() - 1);
            }
        }
    }

    let mut head = 0;
    while head < queue.len() {
        let id = queue[head];
        head += 1;
        let consumed = nodes[id].consumed;
        let lead = nodes[id].lead.clone();
        let origin = nodes[id].origin;

        if let Lead::Second(_) = lead {
            if witness_for[consumed].is_none() {
                witness_for[consumed] = Some(id);
            }
        }

        let push = |nodes: &mut Vec<SearchNode>,
                    visited: &mut HashSet<(usize, Lead)>,
                    queue: &mut Vec<usize>,
                    consumed: usize,
                    lead: Lead,
                    edge: (Side, usize)| {
            if visited.insert((consumed, lead.clone())) {
                nodes.push(SearchNode {
                    consumed,
                    lead,
                    parent: Some(id),
                    edge: Some(edge),
                    origin,
                });
                queue.push(nodes.len() - 1);
            }
        };

        match lead {
            Lead::Second(d) => {
                if consumed == bound {
                    continue;
                }
                for (ci, c) in code.iter().enumerate() {
                    let next = if c.is_prefix_of(&d) {
                        Lead::Second(d.suffix_from(c.len()))
                    } else if d.is_proper_prefix_of(c) {
                        Lead::First(c.suffix_from(d.len()))
                    } else {
                        continue;
                    };
                    push(
                        &mut nodes,
                        &mut visited,
                        &mut queue,
                        consumed + 1,
                        next,
                        (Side::First, ci),
                    );
                }
            }
            Lead::First(d) => {
                for (ci, c) in code.iter().enumerate() {
                    let next = if c.is_prefix_of(&d) {
                        let rest = d.suffix_from(c.len());
                        if rest.is_empty() {
                            Lead::Second(Word::empty())
                        } else {
                            Lead::First(rest)
                        }
                    } else if d.is_proper_prefix_of(c) {
                        Lead::Second(c.suffix_from(d.len()))
                    } else {
                        continue;
                    };
                    push(
                        &mut nodes,
                        &mut visited,
                        &mut queue,
                        consumed,
                        next,
                        (Side::Second, ci),
                    );
                }
            }
        }
    }

    // Comparable pairs survive dropping the last continuation, so the set
    // of m admitting a witness is downward closed.
    let delay = witness_for.iter().position(Option::is_none);
    debug_assert!(
        witness_for
            .iter()
            .skip(delay.unwrap_or(bound + 1))
            .all(Option::is_none),
        "witness existence must be downward closed in m"
    );

    match delay {
        None => Ok(DelayResult::ExceedsBound),
        Some(0) => Ok(DelayResult::Delay {
            delay: 0,
            witness: None,
        }),
        Some(m) => {
            let node = witness_for[m - 1].expect("m is the first gap");
            Ok(DelayResult::Delay {
                delay: m,
                witness: Some(reconstruct_witness(code, &nodes, node)),
            })
        }
    }
}

fn reconstruct_witness(code: &[Word], nodes: &[SearchNode], id: usize) -> DelayWitness {
    let mut first_continuation = Vec::new();
    let mut second_continuation = Vec::new();
    let mut cursor = id;
    loop {
        let node = &nodes[cursor];
        if let Some((side, ci)) = node.edge {
            match side {
                Side::First => first_continuation.push(code[ci].clone()),
                Side::Second => second_continuation.push(code[ci].clone()),
            }
        }
        match node.parent {
            Some(parent) => cursor = parent,
            None => {
                first_continuation.reverse();
                second_continuation.reverse();
                let witness = DelayWitness {
                    first: code[node.origin.0].clone(),
                    first_continuation,
                    second: code[node.origin.1].clone(),
                    second_continuation,
                };
                debug_assert!(witness.is_valid());
                return witness;
            }
        }
    }
}

/// Full analysis of a quasiperiod: generators, star root, and the code
/// certificates. The delay search runs with bound `core_exponent + 1`,
/// which is always sufficient.
pub fn analyze(q: &Word) -> Result<QuasiperiodAnalysis> {
    let generators = generators(q)?;
    let core = generators[0].clone();
    let core_exponent = q.len() / core.len();
    let remainder = q.suffix_from(core_exponent * core.len());
    debug_assert!(core.repeat(core_exponent).concat(&remainder) == *q);
    debug_assert!(remainder.is_proper_prefix_of(&core) || remainder.is_empty());
    let divides = q.len().is_multiple_of(core.len());
    let star_root = star_root(&generators)?;
    let suffix_code = is_suffix_code(&star_root)?;
    let bound = core_exponent + 1;
    let (delay, delay_witness) = match decipherability_delay(&star_root, bound)? {
        DelayResult::Delay { delay, witness } => (delay, witness),
        DelayResult::ExceedsBound => {
            return Err(Error::InvariantViolation(format!(
                "star root of {q} has decipherability delay above {bound}"
            )));
        }
    };
    Ok(QuasiperiodAnalysis {
        quasiperiod: q.clone(),
        core,
        core_exponent,
        remainder,
        generators,
        star_root,
        suffix_code,
        delay,
        delay_witness,
        divides,
    })
}

/// Membership of `w` in the quasiperiodic language of `q`, decided by
/// factoring `w` as generators followed by `q`. The empty word belongs to
/// the language. Agrees with [`words::is_quasiperiodic`], which scans
/// occurrence covers instead.
pub fn in_quasiperiodic_language(w: &Word, q: &Word) -> Result<bool> {
    if q.is_empty() {
        return Err(Error::EmptyWord);
    }
    if w.is_empty() {
        return Ok(true);
    }
    if w.len() < q.len() || !q.is_suffix_of(w) {
        return Ok(false);
    }
    let generators = generators(q)?;
    let target = w.len() - q.len();
    let mut reachable = vec![false; target + 1];
    reachable[0] = true;
    for i in 0..=target {
        if !reachable[i] {
            continue;
        }
        for v in &generators {
            if i + v.len() <= target && v.symbols() == &w.symbols()[i..i + v.len()] {
                reachable[i + v.len()] = true;
            }
        }
    }
    Ok(reachable[target])
}
