//! Exact per-length counting of the star language of a quasiperiod's
//! generators, of its prefixes and of its infixes.
//!
//! Three independent routes are kept side by side: a linear recurrence
//! (valid because the star root is a code), brute-force set enumeration,
//! and path counting on a determinized acceptor. A disagreement between the
//! recurrence and the brute force would falsify unique factorization, so
//! their equality doubles as a code certificate.

mod automaton;

pub use automaton::{
    build_star_automaton, count_words, determinize, infix_automaton, minimize, prefix_automaton,
    FiniteAutomaton,
};

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::quasiperiod;
use crate::words::Word;
use crate::{Error, Result};

/// Per-length counts `|C* ∩ Xⁿ|` for `n = 0..=max_n` via the recurrence
/// `aₙ = Σ_v aₙ₋|v|` over the codewords `v`, with `a₀ = 1`. Correct exactly
/// when `C` is a code.
pub fn star_counts_recurrence(code: &[Word], max_n: usize) -> Result<Vec<BigUint>> {
    if code.is_empty() || code.iter().any(Word::is_empty) {
        return Err(Error::InvalidArgument(
            "recurrence needs nonempty codewords".into(),
        ));
    }
    let mut counts: Vec<BigUint> = Vec::with_capacity(max_n + 1);
    counts.push(BigUint::one());
    for n in 1..=max_n {
        let mut total = BigUint::zero();
        for v in code {
            if v.len() <= n {
                total += &counts[n - v.len()];
            }
        }
        counts.push(total);
    }
    Ok(counts)
}

/// The words of `C* ∩ Xⁿ` for each `n = 0..=max_n`, built by breadth-first
/// concatenation with deduplication. Fails once more than `budget` words
/// would be materialized.
pub fn star_language_by_length(
    code: &[Word],
    max_n: usize,
    budget: usize,
) -> Result<Vec<BTreeSet<Word>>> {
    if code.is_empty() || code.iter().any(Word::is_empty) {
        return Err(Error::InvalidArgument(
            "enumeration needs nonempty codewords".into(),
        ));
    }
    let mut by_length: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); max_n + 1];
    by_length[0].insert(Word::empty());
    let mut total = 1usize;
    for n in 1..=max_n {
        let mut layer = BTreeSet::new();
        for v in code {
            if v.len() > n {
                continue;
            }
            for stem in &by_length[n - v.len()] {
                layer.insert(stem.concat(v));
            }
        }
        total += layer.len();
        if total > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        by_length[n] = layer;
    }
    Ok(by_length)
}

/// Brute-force counterpart of [`star_counts_recurrence`]: sizes of the
/// explicitly enumerated word sets.
pub fn star_counts_bruteforce(code: &[Word], max_n: usize, budget: usize) -> Result<Vec<BigUint>> {
    Ok(star_language_by_length(code, max_n, budget)?
        .iter()
        .map(|layer| BigUint::from(layer.len()))
        .collect())
}

/// All words quasiperiodic with quasiperiod `q` of length at most
/// `max_len`, enumerated as star-language words extended by `q`.
pub fn quasiperiodic_words_upto(q: &Word, max_len: usize, budget: usize) -> Result<BTreeSet<Word>> {
    if q.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut words = BTreeSet::new();
    words.insert(Word::empty());
    if max_len < q.len() {
        return Ok(words);
    }
    let root = quasiperiod::star_root(&quasiperiod::generators(q)?)?;
    for layer in star_language_by_length(&root, max_len - q.len(), budget)? {
        for stem in layer {
            words.insert(stem.concat(q));
        }
    }
    Ok(words)
}

/// Window oracle for infix counts: enumerates the quasiperiodic words of
/// length up to `n + 2|q|` and collects their length-`n` windows. Any
/// length-`n` infix of the star language appears in such a word, so the
/// cap is safe.
pub fn infix_counts_bruteforce(q: &Word, max_n: usize, budget: usize) -> Result<Vec<usize>> {
    let words = quasiperiodic_words_upto(q, max_n + 2 * q.len(), budget)?;
    let mut counts = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let mut windows: BTreeSet<&[char]> = BTreeSet::new();
        for word in &words {
            if word.len() < n {
                continue;
            }
            for start in 0..=word.len() - n {
                windows.insert(&word.symbols()[start..start + n]);
            }
        }
        counts.push(windows.len());
    }
    Ok(counts)
}

/// Exact counting table for one quasiperiod. The star column extends
/// `state_bound` entries beyond `max_n` so the sandwich inequalities can be
/// checked up to `max_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    /// The quasiperiod.
    pub quasiperiod: Word,
    /// Largest length reported in the table.
    pub max_n: usize,
    /// `|C* ∩ Xⁿ|` for the star root `C`, for `n = 0..=max_n + state_bound`.
    #[serde(with = "crate::bigfmt::biguint_vec")]
    pub star_counts: Vec<BigUint>,
    /// Prefix-language counts for `n = 0..=max_n + state_bound`.
    #[serde(with = "crate::bigfmt::biguint_vec")]
    pub pref_counts: Vec<BigUint>,
    /// Infix-language counts for `n = 0..=max_n + state_bound`.
    #[serde(with = "crate::bigfmt::biguint_vec")]
    pub infix_counts: Vec<BigUint>,
    /// State count of the constructed flower acceptor of the star
    /// language; the constant in the sandwich inequalities.
    ///
    /// The flower count works structurally: a word read from mid-spine is a
    /// codeword suffix followed by a prefix-language word, and prefix
    /// counts never decrease with length, so each state contributes at most
    /// `pref(n)` infixes. Smaller acceptors of the same language can
    /// violate the infix inequality (the minimized acceptor for
    /// `aabaaaaba` has 12 states but `infix(10) = 18·pref(10)`).
    pub state_bound: usize,
}

impl CountTable {
    /// Builds the table: star counts by recurrence, prefix and infix counts
    /// by determinized closure automata. `budget` caps the total dynamic
    /// programming work.
    pub fn build(q: &Word, max_n: usize, budget: usize) -> Result<CountTable> {
        let analysis = quasiperiod::analyze(q)?;
        let flower = build_star_automaton(&analysis.star_root)?;
        let state_bound = flower.state_count();

        let horizon = max_n + state_bound;
        let pref = prefix_automaton(&flower)?;
        let infix = infix_automaton(&flower)?;
        let cells =
            (horizon + 1).saturating_mul(state_bound + pref.state_count() + infix.state_count());
        if cells > budget {
            return Err(Error::BudgetExceeded { budget });
        }

        let star_counts = star_counts_recurrence(&analysis.star_root, horizon)?;
        let pref_counts = count_words(&pref, horizon)?;
        let infix_counts = count_words(&infix, horizon)?;
        let table = CountTable {
            quasiperiod: q.clone(),
            max_n,
            star_counts,
            pref_counts,
            infix_counts,
            state_bound,
        };
        if !(table.star_counts[0].is_one()
            && table.pref_counts[0].is_one()
            && table.infix_counts[0].is_one())
        {
            return Err(Error::InvariantViolation(
                "counting tables must start with the empty word".into(),
            ));
        }
        Ok(table)
    }
}

/// Verifies the counting sandwich for every `n ≤ max_n`, with `k` the
/// automaton state bound of the table:
///
/// ```text
/// star(n) ≤ pref(n) ≤ Σ_{i=0..k} star(n+i)
/// pref(n) ≤ infix(n) ≤ k·pref(n)
/// ```
pub fn check_count_sandwich(table: &CountTable) -> bool {
    let k = table.state_bound;
    (0..=table.max_n).all(|n| {
        let window: BigUint = (0..=k).map(|i| &table.star_counts[n + i]).sum();
        let scaled = &table.pref_counts[n] * BigUint::from(k);
        table.star_counts[n] <= table.pref_counts[n]
            && table.pref_counts[n] <= window
            && table.pref_counts[n] <= table.infix_counts[n]
            && table.infix_counts[n] <= scaled
    })
}
