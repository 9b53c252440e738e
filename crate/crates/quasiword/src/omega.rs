//! Prefixes of an infinite word of maximal subword complexity with a given
//! quasiperiod.
//!
//! Concatenating every word of the star language (in a fixed order,
//! skipping the empty word) yields an infinite word whose infixes are
//! exactly the infixes of the whole quasiperiodic language. Finite prefixes
//! of that word therefore reach, for each window length, the full infix
//! count — the saturation checked here.

use std::collections::{BTreeSet, HashSet};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::counting::{build_star_automaton, count_words, infix_automaton};
use crate::quasiperiod;
use crate::words::Word;
use crate::{Error, Result};

/// Hard cap on constructed prefix lengths during saturation search.
const PREFIX_CAP: usize = 1 << 20;

/// Enumerates the star language of the generators of a quasiperiod in
/// length-lexicographic order, starting with the empty word. The stream is
/// unbounded; each length layer is materialized on demand.
pub struct StarWords {
    code: Vec<Word>,
    /// Fully computed layers, `layers[n]` sorted lexicographically.
    layers: Vec<Vec<Word>>,
    length: usize,
    index: usize,
}

/// Length-lexicographic enumeration of all words in the star language of
/// the generators of `q`.
pub fn star_words(q: &Word) -> Result<StarWords> {
    let root = quasiperiod::star_root(&quasiperiod::generators(q)?)?;
    Ok(StarWords {
        code: root,
        layers: vec![vec![Word::empty()]],
        length: 0,
        index: 0,
    })
}

impl StarWords {
    fn extend_layers(&mut self) {
        let n = self.layers.len();
        let mut layer: BTreeSet<Word> = BTreeSet::new();
        for v in &self.code {
            if v.len() > n {
                continue;
            }
            for stem in &self.layers[n - v.len()] {
                layer.insert(stem.concat(v));
            }
        }
        self.layers.push(layer.into_iter().collect());
    }
}

impl Iterator for StarWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            if self.index < self.layers[self.length].len() {
                let word = self.layers[self.length][self.index].clone();
                self.index += 1;
                return Some(word);
            }
            self.length += 1;
            self.index = 0;
            if self.length >= self.layers.len() {
                self.extend_layers();
            }
        }
    }
}

/// A constructed prefix of the maximal-complexity infinite word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaPrefix {
    /// The quasiperiod.
    pub quasiperiod: Word,
    /// The prefix itself.
    pub prefix: Word,
    /// Order in which star-language words were concatenated.
    pub enumeration_order: String,
}

/// Concatenates the enumerated star-language words (skipping the empty
/// word) until the prefix reaches `min_len` symbols. The result is a
/// prefix of an infinite word with quasiperiod `q`.
pub fn build_prefix(q: &Word, min_len: usize) -> Result<OmegaPrefix> {
    if q.is_empty() {
        return Err(Error::EmptyWord);
    }
    if min_len < q.len() {
        return Err(Error::InvalidArgument(format!(
            "prefix length {min_len} is shorter than the quasiperiod ({})",
            q.len()
        )));
    }
    let mut symbols: Vec<char> = Vec::with_capacity(min_len);
    for word in star_words(q)? {
        if word.is_empty() {
            continue;
        }
        symbols.extend_from_slice(word.symbols());
        if symbols.len() >= min_len {
            break;
        }
    }
    Ok(OmegaPrefix {
        quasiperiod: q.clone(),
        prefix: Word::from_symbols(symbols),
        enumeration_order: "length-lexicographic".into(),
    })
}

/// Number of distinct length-`n` infixes of `w`.
pub fn subword_complexity(w: &Word, n: usize) -> Result<usize> {
    if n > w.len() {
        return Err(Error::InvalidArgument(format!(
            "window {n} exceeds word length {}",
            w.len()
        )));
    }
    let mut windows: HashSet<&[char]> = HashSet::new();
    for start in 0..=w.len() - n {
        windows.insert(&w.symbols()[start..start + n]);
    }
    Ok(windows.len())
}

/// Outcome of growing a constructed prefix until its subword count reaches
/// the infix count of the quasiperiodic language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationReport {
    pub quasiperiod: Word,
    /// Window length under scrutiny.
    pub window: usize,
    /// Infix count of the language at that window length.
    pub target_count: usize,
    /// Subword count the constructed prefix reached.
    pub achieved_count: usize,
    /// Prefix length at which the search stopped.
    pub prefix_len: usize,
    /// Whether the prefix reached the full infix count.
    pub saturated: bool,
}

/// Grows the constructed prefix (doubling its length, hard-capped) until
/// its length-`n` subword count equals the infix count of the language of
/// all words with quasiperiod `q`. Window lengths up to 14 are supported.
pub fn saturation(q: &Word, n: usize) -> Result<SaturationReport> {
    if q.is_empty() {
        return Err(Error::EmptyWord);
    }
    if n > 14 {
        return Err(Error::InvalidArgument(
            "saturation windows range up to 14".into(),
        ));
    }
    let analysis = quasiperiod::analyze(q)?;
    let flower = build_star_automaton(&analysis.star_root)?;
    let infix = infix_automaton(&flower)?;
    let target_count = count_words(&infix, n)?[n]
        .to_usize()
        .ok_or_else(|| Error::InvariantViolation("infix count exceeds usize".into()))?;

    let mut goal = q.len().max(n).max(64);
    loop {
        let prefix = build_prefix(q, goal)?;
        let achieved = subword_complexity(&prefix.prefix, n)?;
        if achieved == target_count || goal >= PREFIX_CAP {
            return Ok(SaturationReport {
                quasiperiod: q.clone(),
                window: n,
                target_count,
                achieved_count: achieved,
                prefix_len: prefix.prefix.len(),
                saturated: achieved == target_count,
            });
        }
        if achieved > target_count {
            return Err(Error::InvariantViolation(format!(
                "prefix of {q} exceeds the infix count at window {n}"
            )));
        }
        goal *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::CountTable;
    use crate::words::{self, Alphabet};
    use crate::DEFAULT_BUDGET;

    fn w(text: &str) -> Word {
        Alphabet::covering(text).unwrap().word(text).unwrap()
    }

    #[test]
    fn star_enumeration_is_length_lexicographic() {
        let first: Vec<String> = star_words(&w("aba"))
            .unwrap()
            .take(6)
            .map(|word| word.to_string())
            .collect();
        assert_eq!(first, vec!["", "ab", "aba", "abab", "abaab", "ababa"]);

        let unary: Vec<String> = star_words(&w("aa"))
            .unwrap()
            .take(4)
            .map(|word| word.to_string())
            .collect();
        assert_eq!(unary, vec!["", "a", "aa", "aaa"]);

        let long = star_words(&w("aabaaaaba")).unwrap().nth(1).unwrap();
        assert_eq!(long, w("aabaa"));
    }

    #[test]
    fn star_enumeration_has_no_duplicates() {
        let words: Vec<Word> = star_words(&w("aba")).unwrap().take(60).collect();
        let set: BTreeSet<&Word> = words.iter().collect();
        assert_eq!(set.len(), words.len());
        for pair in words.windows(2) {
            assert!(
                pair[0].len() < pair[1].len()
                    || (pair[0].len() == pair[1].len() && pair[0] < pair[1])
            );
        }
    }

    #[test]
    fn prefixes_of_named_quasiperiods() {
        assert_eq!(build_prefix(&w("aba"), 5).unwrap().prefix, w("ababa"));
        assert_eq!(build_prefix(&w("aa"), 6).unwrap().prefix, w("aaaaaa"));
        assert!(build_prefix(&w("aba"), 2).is_err());
    }

    #[test]
    fn prefixes_stay_in_the_language() {
        for q in [w("aba"), w("aabaa"), w("aabaaaaba")] {
            let prefix = build_prefix(&q, 300).unwrap().prefix;
            assert!(
                words::is_quasiperiodic_prefix(&prefix, &q).unwrap(),
                "q = {q}"
            );
        }
    }

    #[test]
    fn construction_is_deterministic() {
        let one = build_prefix(&w("aabaa"), 500).unwrap();
        let two = build_prefix(&w("aabaa"), 500).unwrap();
        assert_eq!(one, two);
    }

    #[test]
    fn complexity_of_small_words() {
        assert_eq!(subword_complexity(&w("ababa"), 2).unwrap(), 2);
        assert_eq!(subword_complexity(&w("abaab"), 2).unwrap(), 3);
        assert_eq!(subword_complexity(&w("ababa"), 0).unwrap(), 1);
        assert!(subword_complexity(&w("ab"), 3).is_err());
    }

    #[test]
    fn long_prefix_reaches_infix_count() {
        let prefix = build_prefix(&w("aba"), 2000).unwrap().prefix;
        let table = CountTable::build(&w("aba"), 10, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            subword_complexity(&prefix, 10).unwrap(),
            table.infix_counts[10].to_usize().unwrap()
        );
    }

    #[test]
    fn saturation_of_named_quasiperiods() {
        let report = saturation(&w("aba"), 3).unwrap();
        assert!(report.saturated);
        assert_eq!(report.target_count, 4);

        let unary = saturation(&w("aa"), 5).unwrap();
        assert!(unary.saturated);
        assert_eq!(unary.target_count, 1);

        let long = saturation(&w("aabaaaaba"), 9).unwrap();
        assert!(long.saturated);
    }
}
