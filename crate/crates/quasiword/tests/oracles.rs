//! Cross-oracle properties: independent decision routes compared on
//! random and enumerated inputs, plus the language-level facts that need
//! explicit enumeration.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use proptest::prelude::*;
use quasiword::counting::{
    infix_counts_bruteforce, quasiperiodic_words_upto, star_language_by_length, CountTable,
};
use quasiword::omega::{build_prefix, subword_complexity};
use quasiword::quasiperiod::{self, analyze, decipherability_delay, DelayResult};
use quasiword::spectral::smallest_pisot;
use quasiword::words::{cover_chain, is_quasiperiodic, is_quasiperiodic_prefix, Alphabet, Word};
use quasiword::{DEFAULT_BUDGET, EXHAUSTIVE_LEN};

fn word(text: &str) -> Word {
    Alphabet::covering(text).unwrap().word(text).unwrap()
}

fn binary_word(len: std::ops::Range<usize>) -> impl Strategy<Value = Word> {
    proptest::collection::vec(prop_oneof![Just('a'), Just('b')], len).prop_map(|symbols| {
        let text: String = symbols.into_iter().collect();
        Alphabet::binary().word(&text).unwrap()
    })
}

proptest! {
    /// The two period routes agree: border array versus direct scan.
    #[test]
    fn periods_match_direct_scan(q in binary_word(1..20)) {
        let direct: Vec<usize> = (1..=q.len())
            .filter(|&p| (0..q.len() - p).all(|i| q.symbols()[i] == q.symbols()[i + p]))
            .collect();
        prop_assert_eq!(q.periods().unwrap(), direct);
    }

    /// Occurrence cover, chain extraction and generator factorization all
    /// decide the same membership.
    #[test]
    fn membership_routes_agree(w in binary_word(1..15), q in binary_word(1..10)) {
        let covered = is_quasiperiodic(&w, &q).unwrap();
        let chain = cover_chain(&w, &q).unwrap();
        let factored = quasiperiod::in_quasiperiodic_language(&w, &q).unwrap();
        prop_assert_eq!(covered, chain.is_some());
        prop_assert_eq!(covered, factored);
        if let Some(chain) = chain {
            prop_assert_eq!(chain.last(), &w);
        }
    }

    /// Every member of the language extends: appending the quasiperiod to
    /// a member and re-testing keeps membership (the language is closed
    /// under concatenation with itself).
    #[test]
    fn members_concatenate(w in binary_word(1..12), q in binary_word(1..8)) {
        if is_quasiperiodic(&w, &q).unwrap() {
            prop_assert!(is_quasiperiodic(&w.concat(&w), &q).unwrap());
            prop_assert!(is_quasiperiodic(&w.concat(&q), &q).unwrap());
        }
    }

    /// Prefix membership agrees with having a quasiperiodic extension of
    /// bounded length.
    #[test]
    fn prefix_membership_matches_extension(u in binary_word(0..12), q in binary_word(1..7)) {
        let ab = Alphabet::binary();
        let mut extendable = false;
        'outer: for extra in 0..=q.len() {
            for rest in ab.words_of_length(extra) {
                if is_quasiperiodic(&u.concat(&rest), &q).unwrap() {
                    extendable = true;
                    break 'outer;
                }
            }
        }
        prop_assert_eq!(is_quasiperiodic_prefix(&u, &q).unwrap(), extendable);
    }
}

/// Every prefix of the language sits between two members within one
/// quasiperiod length on each side.
#[test]
fn language_prefixes_are_sandwiched_by_members() {
    let ab = Alphabet::binary();
    for q in [word("aba"), word("aabaa"), word("aabba")] {
        let members = quasiperiodic_words_upto(&q, 12 + q.len(), DEFAULT_BUDGET).unwrap();
        for len in 0..=12 {
            for u in ab.words_of_length(len) {
                if !is_quasiperiodic_prefix(&u, &q).unwrap() {
                    continue;
                }
                let below = members
                    .iter()
                    .filter(|w| w.is_prefix_of(&u))
                    .map(Word::len)
                    .max()
                    .expect("the empty word is always a member");
                let above = members
                    .iter()
                    .filter(|w| u.is_prefix_of(w))
                    .map(Word::len)
                    .min();
                assert!(u.len() - below <= q.len(), "u = {u}, q = {q}");
                let above = above.unwrap_or(usize::MAX);
                assert!(above - u.len() <= q.len(), "u = {u}, q = {q}");
            }
        }
    }
}

/// Unique factorization over the star root, verified by explicit counting
/// of factorizations for every enumerated star word.
#[test]
fn star_words_factor_uniquely() {
    let ab = Alphabet::binary();
    for len in 1..=7 {
        for q in ab.words_of_length(len) {
            let analysis = analyze(&q).unwrap();
            let cap = (2 * (analysis.core_exponent + 2) * q.len()).min(EXHAUSTIVE_LEN);
            let layers = star_language_by_length(&analysis.star_root, cap, DEFAULT_BUDGET).unwrap();
            for layer in &layers {
                for w in layer {
                    let mut counts = vec![0u64; w.len() + 1];
                    counts[0] = 1;
                    for i in 0..w.len() {
                        if counts[i] == 0 {
                            continue;
                        }
                        for v in &analysis.star_root {
                            if i + v.len() <= w.len() && v.symbols() == &w.symbols()[i..i + v.len()]
                            {
                                counts[i + v.len()] += counts[i];
                            }
                        }
                    }
                    assert_eq!(counts[w.len()], 1, "q = {q}, w = {w}");
                }
            }
        }
    }
}

/// The reported delay is minimal: the recorded witness obstructs one step
/// below it.
#[test]
fn delay_witnesses_certify_minimality() {
    let ab = Alphabet::binary();
    for len in 1..=8 {
        for q in ab.words_of_length(len) {
            let analysis = analyze(&q).unwrap();
            match decipherability_delay(&analysis.star_root, analysis.core_exponent + 1).unwrap() {
                DelayResult::Delay { delay, witness } => {
                    assert_eq!(delay, analysis.delay, "q = {q}");
                    if delay > 0 {
                        let witness = witness.expect("positive delays carry a witness");
                        assert!(witness.is_valid(), "q = {q}");
                        assert_eq!(witness.first_continuation.len(), delay - 1, "q = {q}");
                        assert!(
                            analysis.star_root.contains(&witness.first)
                                && analysis.star_root.contains(&witness.second),
                            "q = {q}"
                        );
                    }
                }
                DelayResult::ExceedsBound => panic!("bound violated for q = {q}"),
            }
        }
    }
}

/// True iff `s` is a prefix of some word in `start·code*`, by reachability
/// over factorization positions. Independent of the delay search.
fn extends_over(s: &Word, start: &Word, code: &[Word]) -> bool {
    if s.is_prefix_of(start) {
        return true;
    }
    if !start.is_prefix_of(s) {
        return false;
    }
    let rest = s.suffix_from(start.len());
    let mut reachable = vec![false; rest.len() + 1];
    reachable[0] = true;
    for i in 0..=rest.len() {
        if !reachable[i] {
            continue;
        }
        let tail = rest.suffix_from(i);
        if code.iter().any(|c| tail.is_prefix_of(c)) {
            return true;
        }
        for c in code {
            if i + c.len() <= rest.len() && c.symbols() == &rest.symbols()[i..i + c.len()] {
                reachable[i + c.len()] = true;
            }
        }
    }
    false
}

/// Exhaustive tuple search for the delay condition at `m`: does some pair
/// of distinct codewords stay prefix-comparable after `m` continuations of
/// the first stream?
fn tuple_witness_exists(code: &[Word], m: usize) -> bool {
    fn search(code: &[Word], second: &Word, stream: &Word, remaining: usize) -> bool {
        if !extends_over(stream, second, code) {
            return false;
        }
        if remaining == 0 {
            return true;
        }
        code.iter()
            .any(|v| search(code, second, &stream.concat(v), remaining - 1))
    }
    code.iter().enumerate().any(|(i, w)| {
        code.iter()
            .enumerate()
            .any(|(j, second)| i != j && search(code, second, w, m))
    })
}

/// The delay search agrees with the literal exhaustive search over all
/// codeword pairs and continuation tuples.
#[test]
fn delay_matches_exhaustive_tuple_search() {
    let ab = Alphabet::binary();
    let mut quasiperiods: Vec<Word> = Vec::new();
    for len in 1..=7 {
        quasiperiods.extend(ab.words_of_length(len));
    }
    quasiperiods.push(word("aabaaaaba"));
    for q in quasiperiods {
        let analysis = analyze(&q).unwrap();
        let delay = analysis.delay;
        assert!(
            !tuple_witness_exists(&analysis.star_root, delay),
            "q = {q}: tuples disprove delay {delay}"
        );
        if delay > 0 {
            assert!(
                tuple_witness_exists(&analysis.star_root, delay - 1),
                "q = {q}: no tuple obstructs delay {}",
                delay - 1
            );
        }
    }
}

/// Star-language maximality forces a long core: among the surveyed
/// quasiperiods, any non-dividing one whose star language is set-maximal
/// (compared up to a length cap) has a core longer than half the
/// quasiperiod.
#[test]
fn maximal_star_languages_have_long_cores() {
    let ab = Alphabet::binary();
    let cap = 14usize;
    let mut entries: Vec<(Word, BTreeSet<Word>, bool, usize)> = Vec::new();
    for len in 1..=6 {
        for q in ab.words_of_length(len) {
            let analysis = analyze(&q).unwrap();
            let language: BTreeSet<Word> =
                star_language_by_length(&analysis.star_root, cap, DEFAULT_BUDGET)
                    .unwrap()
                    .into_iter()
                    .flatten()
                    .collect();
            entries.push((q, language, analysis.divides, analysis.core.len()));
        }
    }
    let mut maximal_seen = 0;
    for (q, language, divides, core_len) in &entries {
        if *divides {
            continue;
        }
        let strictly_dominated = entries.iter().any(|(other, other_language, _, _)| {
            other != q
                && language.is_subset(other_language)
                && language.len() < other_language.len()
        });
        if !strictly_dominated {
            maximal_seen += 1;
            assert!(
                2 * core_len > q.len(),
                "maximal q = {q} has short core ({core_len} of {})",
                q.len()
            );
        }
    }
    assert!(maximal_seen > 0, "no maximal language found at this scale");
}

/// A single constant calibrated over the test set bounds every infix count
/// by a multiple of the Pisot growth, and the constructed prefixes never
/// exceed the infix counts.
#[test]
fn infix_counts_within_pisot_envelope() {
    let pisot = smallest_pisot();
    let quasiperiods = [word("aba"), word("aabaa"), word("aabaaaaba"), word("aabba")];
    let tables: Vec<CountTable> = quasiperiods
        .iter()
        .map(|q| CountTable::build(q, 12, DEFAULT_BUDGET).unwrap())
        .collect();
    let calibration = tables
        .iter()
        .flat_map(|t| (0..=12).map(|n| t.infix_counts[n].to_f64().unwrap() / pisot.powi(n as i32)))
        .fold(0.0_f64, f64::max);
    assert!(calibration.is_finite() && calibration >= 1.0);
    for (q, table) in quasiperiods.iter().zip(&tables) {
        let prefix = build_prefix(q, 4096).unwrap().prefix;
        for n in 0..=12usize {
            let complexity = subword_complexity(&prefix, n).unwrap();
            let infix = table.infix_counts[n].to_usize().unwrap();
            assert!(complexity <= infix, "q = {q}, n = {n}");
            assert!(
                infix as f64 <= calibration * pisot.powi(n as i32) + 1e-9,
                "q = {q}, n = {n}"
            );
        }
    }
}

/// The window oracle and the determinized closure automaton count the same
/// infixes on a quasiperiod with a composite star root.
#[test]
fn window_oracle_matches_automaton_on_divides_case() {
    let q = word("abaaba");
    let table = CountTable::build(&q, 10, DEFAULT_BUDGET).unwrap();
    let oracle = infix_counts_bruteforce(&q, 10, DEFAULT_BUDGET).unwrap();
    for (n, expected) in oracle.iter().enumerate() {
        assert_eq!(
            table.infix_counts[n].to_usize().unwrap(),
            *expected,
            "n = {n}"
        );
    }
}
