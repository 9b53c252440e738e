//! Core word arithmetic: alphabets, finite words, periods, primitivity and
//! the quasiperiodicity decision procedures.
//!
//! Two independent routes decide quasiperiodicity: an occurrence-cover scan
//! (every position of `w` lies under an occurrence of `q`) and, in
//! [`crate::quasiperiod`], a factorization over the generator language. The
//! test suites compare them exhaustively.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// An ordered set of at least two distinct symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet from the given symbols, in the given order.
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.len() < 2 {
            return Err(Error::AlphabetTooSmall(symbols.len()));
        }
        for (i, &s) in symbols.iter().enumerate() {
            if symbols[..i].contains(&s) {
                return Err(Error::DuplicateSymbol(s));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The two-letter alphabet `{a, b}`.
    pub fn binary() -> Self {
        Alphabet {
            symbols: vec!['a', 'b'],
        }
    }

    /// The first `size` lowercase letters `a, b, c, …`.
    pub fn lowercase(size: usize) -> Result<Self> {
        if size > 26 {
            return Err(Error::InvalidArgument(format!(
                "at most 26 lowercase symbols available, requested {size}"
            )));
        }
        Self::new(('a'..).take(size))
    }

    /// Smallest alphabet containing every symbol of `text`, in sorted order,
    /// padded with an unused lowercase letter when `text` uses fewer than
    /// two distinct symbols.
    pub fn covering(text: &str) -> Result<Self> {
        let mut symbols: Vec<char> = text.chars().collect();
        symbols.sort_unstable();
        symbols.dedup();
        while symbols.len() < 2 {
            let pad = ('a'..='z')
                .find(|c| !symbols.contains(c))
                .ok_or_else(|| Error::InvalidArgument("cannot pad alphabet".into()))?;
            symbols.push(pad);
            symbols.sort_unstable();
        }
        Self::new(symbols)
    }

    /// Symbols in declaration order.
    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    /// Number of symbols.
    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    /// Position of `symbol` in the declaration order.
    pub fn index_of(&self, symbol: char) -> Result<usize> {
        self.symbols
            .iter()
            .position(|&s| s == symbol)
            .ok_or_else(|| Error::SymbolOutsideAlphabet {
                symbol,
                alphabet: self.to_string(),
            })
    }

    /// Validates `text` against this alphabet and wraps it as a [`Word`].
    pub fn word(&self, text: &str) -> Result<Word> {
        for symbol in text.chars() {
            self.index_of(symbol)?;
        }
        Ok(Word {
            symbols: text.chars().collect(),
        })
    }

    /// All words of exactly `len` symbols, in lexicographic order.
    pub fn words_of_length(&self, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * self.size());
            for w in &out {
                for &s in &self.symbols {
                    let mut symbols = w.symbols.clone();
                    symbols.push(s);
                    next.push(Word { symbols });
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl Serialize for Alphabet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Alphabet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Alphabet::new(text.chars()).map_err(D::Error::custom)
    }
}

/// A finite word over an alphabet; the empty word is permitted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    symbols: Vec<char>,
}

impl Word {
    /// The empty word.
    pub fn empty() -> Self {
        Word {
            symbols: Vec::new(),
        }
    }

    /// Assembles a word from symbols of already validated words.
    pub(crate) fn from_symbols(symbols: Vec<char>) -> Self {
        Word { symbols }
    }

    /// Number of symbols.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// True for the empty word.
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The underlying symbols.
    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    /// True when `self` is a prefix of `w`; the empty word is a prefix of
    /// every word.
    pub fn is_prefix_of(&self, w: &Word) -> bool {
        self.len() <= w.len() && self.symbols == w.symbols[..self.len()]
    }

    /// True when `self` is a suffix of `w`.
    pub fn is_suffix_of(&self, w: &Word) -> bool {
        self.len() <= w.len() && self.symbols == w.symbols[w.len() - self.len()..]
    }

    /// True when `self` is a strict prefix of `w`.
    pub fn is_proper_prefix_of(&self, w: &Word) -> bool {
        self.len() < w.len() && self.is_prefix_of(w)
    }

    /// The first `len` symbols as a word.
    pub fn prefix(&self, len: usize) -> Word {
        Word {
            symbols: self.symbols[..len].to_vec(),
        }
    }

    /// The symbols from position `start` on, as a word.
    pub fn suffix_from(&self, start: usize) -> Word {
        Word {
            symbols: self.symbols[start..].to_vec(),
        }
    }

    /// Concatenation `self · w`.
    pub fn concat(&self, w: &Word) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&w.symbols);
        Word { symbols }
    }

    /// The `n`-fold repetition of `self`.
    pub fn repeat(&self, n: usize) -> Word {
        let mut symbols = Vec::with_capacity(self.len() * n);
        for _ in 0..n {
            symbols.extend_from_slice(&self.symbols);
        }
        Word { symbols }
    }

    /// Start positions of every occurrence of `pattern` in `self`,
    /// ascending. The empty pattern occurs nowhere.
    pub fn occurrences(&self, pattern: &Word) -> Vec<usize> {
        if pattern.is_empty() || pattern.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - pattern.len())
            .filter(|&i| self.symbols[i..i + pattern.len()] == pattern.symbols[..])
            .collect()
    }

    /// All periods of the word, ascending. `p` is a period when the symbol
    /// at every position `i` equals the one at `i + p`; the full length is
    /// always a period.
    ///
    /// Computed from the border array: `p` is a period exactly when the word
    /// has a border of length `len − p`.
    pub fn periods(&self) -> Result<Vec<usize>> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let n = self.len();
        let border = self.border_array();
        let mut periods = Vec::new();
        let mut b = border[n - 1];
        periods.push(n); // border of length 0
        while b > 0 {
            periods.push(n - b);
            b = border[b - 1];
        }
        periods.sort_unstable();
        Ok(periods)
    }

    /// `border[i]` is the length of the longest proper border of the prefix
    /// ending at position `i` (the classic failure function).
    fn border_array(&self) -> Vec<usize> {
        let n = self.len();
        let mut border = vec![0usize; n];
        let mut b = 0;
        for i in 1..n {
            while b > 0 && self.symbols[i] != self.symbols[b] {
                b = border[b - 1];
            }
            if self.symbols[i] == self.symbols[b] {
                b += 1;
            }
            border[i] = b;
        }
        border
    }

    /// True when the word is not a proper power: no strict divisor `d` of
    /// the length yields the word by repeating its length-`d` prefix.
    pub fn is_primitive(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let n = self.len();
        for d in 1..n {
            if n.is_multiple_of(d) && self.prefix(d).repeat(n / d) == *self {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The unique primitive word `u` and exponent `n ≥ 1` with `self = uⁿ`.
    pub fn primitive_root(&self) -> Result<(Word, usize)> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let n = self.len();
        for d in 1..=n {
            if n.is_multiple_of(d) && self.prefix(d).repeat(n / d) == *self {
                return Ok((self.prefix(d), n / d));
            }
        }
        unreachable!("d = n always reproduces the word");
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Ok(Word {
            symbols: text.chars().collect(),
        })
    }
}

/// A strictly increasing chain of prefixes witnessing quasiperiodicity:
/// the first element is the quasiperiod itself, every element ends in the
/// quasiperiod, and consecutive lengths differ by at least 1 and at most
/// the quasiperiod length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverChain {
    elements: Vec<Word>,
}

impl CoverChain {
    /// Validates the chain invariants against the quasiperiod `q`.
    pub fn new(elements: Vec<Word>, q: &Word) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::EmptyWord);
        }
        let Some(first) = elements.first() else {
            return Err(Error::InvariantViolation("empty cover chain".into()));
        };
        if first != q {
            return Err(Error::InvariantViolation(
                "cover chain must start with the quasiperiod".into(),
            ));
        }
        for pair in elements.windows(2) {
            let gap = pair[1].len() as i64 - pair[0].len() as i64;
            if !pair[0].is_proper_prefix_of(&pair[1]) || gap < 1 || gap > q.len() as i64 {
                return Err(Error::InvariantViolation(
                    "cover chain elements must grow by 1..=|q| along prefixes".into(),
                ));
            }
        }
        for element in &elements {
            if !q.is_suffix_of(element) {
                return Err(Error::InvariantViolation(
                    "every cover chain element must end in the quasiperiod".into(),
                ));
            }
        }
        Ok(CoverChain { elements })
    }

    /// The chain elements, shortest first.
    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    /// The last (longest) element.
    pub fn last(&self) -> &Word {
        self.elements.last().expect("chains are nonempty")
    }
}

/// True when `w` is quasiperiodic with quasiperiod `q`: either `w` is empty
/// or the occurrences of `q` in `w` cover it, meaning one starts at
/// position 0, one ends at the end, and consecutive start positions are at
/// most `|q|` apart.
pub fn is_quasiperiodic(w: &Word, q: &Word) -> Result<bool> {
    if q.is_empty() {
        return Err(Error::EmptyWord);
    }
    if w.is_empty() {
        return Ok(true);
    }
    if w.len() < q.len() {
        return Ok(false);
    }
    let starts = w.occurrences(q);
    Ok(covers(&starts, w.len(), q.len()))
}

fn covers(starts: &[usize], word_len: usize, q_len: usize) -> bool {
    if starts.first() != Some(&0) || starts.last() != Some(&(word_len - q_len)) {
        return false;
    }
    starts.windows(2).all(|pair| pair[1] - pair[0] <= q_len)
}

/// Extracts a cover chain witnessing `w ∈ Q_q`, or `None` when `w` is not
/// quasiperiodic with quasiperiod `q`. The chain is greedy: each element is
/// the longest admissible extension of the previous one, which makes the
/// witness deterministic.
pub fn cover_chain(w: &Word, q: &Word) -> Result<Option<CoverChain>> {
    if q.is_empty() || w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if w.len() < q.len() {
        return Ok(None);
    }
    let starts = w.occurrences(q);
    if !covers(&starts, w.len(), q.len()) {
        return Ok(None);
    }
    // Occurrence ends, i.e. the lengths of prefixes of w lying in X*·q.
    let ends: Vec<usize> = starts.iter().map(|s| s + q.len()).collect();
    let mut chain_ends = vec![q.len()];
    let mut current = q.len();
    while current < w.len() {
        let next = ends
            .iter()
            .copied()
            .filter(|&e| e > current && e <= current + q.len())
            .max()
            .expect("cover condition guarantees a next occurrence end");
        chain_ends.push(next);
        current = next;
    }
    let elements = chain_ends.into_iter().map(|e| w.prefix(e)).collect();
    Ok(Some(CoverChain::new(elements, q)?))
}

/// Prefixes of `q` whose length is a period of `q`: the generator language
/// of all words quasiperiodic with quasiperiod `q`, ascending by length.
pub(crate) fn period_prefixes(q: &Word) -> Result<Vec<Word>> {
    Ok(q.periods()?.into_iter().map(|p| q.prefix(p)).collect())
}

/// True when `u` is a prefix of some word quasiperiodic with quasiperiod
/// `q`, decided by factoring `u` as generators followed by a remainder that
/// is a prefix of `q`.
pub fn is_quasiperiodic_prefix(u: &Word, q: &Word) -> Result<bool> {
    if q.is_empty() {
        return Err(Error::EmptyWord);
    }
    let generators = period_prefixes(q)?;
    // reachable[i]: u[..i] factors into generators.
    let mut reachable = vec![false; u.len() + 1];
    reachable[0] = true;
    for i in 0..=u.len() {
        if !reachable[i] {
            continue;
        }
        let rest = u.suffix_from(i);
        if rest.is_prefix_of(q) {
            return Ok(true);
        }
        for v in &generators {
            if i + v.len() <= u.len() && v.symbols == u.symbols[i..i + v.len()] {
                reachable[i + v.len()] = true;
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Alphabet::covering(text)
            .unwrap()
            .word(text)
            .expect("valid test word")
    }

    #[test]
    fn alphabet_rejects_degenerate_declarations() {
        assert!(matches!(
            Alphabet::new(['a']),
            Err(Error::AlphabetTooSmall(1))
        ));
        assert!(matches!(
            Alphabet::new(['a', 'b', 'a']),
            Err(Error::DuplicateSymbol('a'))
        ));
    }

    #[test]
    fn alphabet_validates_words() {
        let ab = Alphabet::binary();
        assert!(ab.word("abba").is_ok());
        assert!(matches!(
            ab.word("abc"),
            Err(Error::SymbolOutsideAlphabet { symbol: 'c', .. })
        ));
    }

    #[test]
    fn covering_alphabet_pads_unary_text() {
        assert_eq!(Alphabet::covering("aaa").unwrap().symbols(), &['a', 'b']);
        assert_eq!(Alphabet::covering("bbb").unwrap().symbols(), &['a', 'b']);
        assert_eq!(Alphabet::covering("ba").unwrap().symbols(), &['a', 'b']);
    }

    #[test]
    fn prefix_relation() {
        assert!(Word::empty().is_prefix_of(&w("aba")));
        assert!(w("ab").is_prefix_of(&w("aba")));
        assert!(!w("ba").is_prefix_of(&w("aba")));
    }

    #[test]
    fn periods_of_small_words() {
        assert_eq!(w("aba").periods().unwrap(), vec![2, 3]);
        assert_eq!(w("aabaaaaba").periods().unwrap(), vec![5, 8, 9]);
        assert_eq!(w("aa").periods().unwrap(), vec![1, 2]);
        assert!(matches!(Word::empty().periods(), Err(Error::EmptyWord)));
    }

    /// Direct quadratic period check, kept independent of the border array.
    fn naive_periods(q: &Word) -> Vec<usize> {
        let n = q.len();
        (1..=n)
            .filter(|&p| (0..n - p).all(|i| q.symbols()[i] == q.symbols()[i + p]))
            .collect()
    }

    #[test]
    fn border_array_periods_match_naive_scan() {
        let ab = Alphabet::binary();
        for len in 1..=12 {
            for q in ab.words_of_length(len) {
                assert_eq!(q.periods().unwrap(), naive_periods(&q), "q = {q}");
            }
        }
    }

    #[test]
    fn primitivity() {
        assert!(w("ab").is_primitive().unwrap());
        assert!(!w("abab").is_primitive().unwrap());
        assert!(w("aabaa").is_primitive().unwrap());
        assert!(matches!(
            Word::empty().is_primitive(),
            Err(Error::EmptyWord)
        ));
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(w("abab").primitive_root().unwrap(), (w("ab"), 2));
        assert_eq!(w("aba").primitive_root().unwrap(), (w("aba"), 1));
        assert_eq!(w("aaa").primitive_root().unwrap(), (w("a"), 3));
    }

    #[test]
    fn primitive_root_reconstructs_and_is_primitive() {
        let ab = Alphabet::binary();
        for len in 1..=12 {
            for word in ab.words_of_length(len) {
                let (root, exp) = word.primitive_root().unwrap();
                assert_eq!(root.repeat(exp), word);
                assert!(root.is_primitive().unwrap());
            }
        }
    }

    #[test]
    fn quasiperiodicity_by_cover() {
        let q = w("aba");
        assert!(is_quasiperiodic(&w("abaabaaba"), &q).unwrap());
        assert!(is_quasiperiodic(&w("ababa"), &q).unwrap());
        assert!(!is_quasiperiodic(&w("abba"), &q).unwrap());
        assert!(is_quasiperiodic(&Word::empty(), &q).unwrap());
        // Appending the core to a quasiperiodic word may leave the language.
        let q1 = w("aabaaaaba");
        assert!(!is_quasiperiodic(&w("aabaaaabaaabaa"), &q1).unwrap());
    }

    #[test]
    fn cover_chain_extraction() {
        let q = w("aba");
        let chain = cover_chain(&w("ababa"), &q).unwrap().unwrap();
        assert_eq!(chain.elements(), &[w("aba"), w("ababa")]);

        let chain = cover_chain(&w("aba"), &q).unwrap().unwrap();
        assert_eq!(chain.elements(), &[w("aba")]);

        assert_eq!(cover_chain(&w("abab"), &q).unwrap(), None);
    }

    #[test]
    fn cover_chain_is_greedy_longest() {
        // q³ admits the chain [q, q², q³]; the greedy witness jumps by |q|.
        let q = w("aba");
        let chain = cover_chain(&w("abaabaaba"), &q).unwrap().unwrap();
        assert_eq!(chain.elements(), &[w("aba"), w("abaaba"), w("abaabaaba")]);
    }

    #[test]
    fn chain_agrees_with_cover_decision_exhaustively() {
        let ab = Alphabet::binary();
        for q_len in 1..=5 {
            for q in ab.words_of_length(q_len) {
                for w_len in 1..=10 {
                    for word in ab.words_of_length(w_len) {
                        let covered = is_quasiperiodic(&word, &q).unwrap();
                        let chain = cover_chain(&word, &q).unwrap();
                        assert_eq!(covered, chain.is_some(), "w = {word}, q = {q}");
                        if let Some(chain) = chain {
                            assert_eq!(chain.last(), &word);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn quasiperiodic_prefix_decision() {
        let q = w("aba");
        assert!(is_quasiperiodic_prefix(&w("abaa"), &q).unwrap());
        assert!(!is_quasiperiodic_prefix(&w("abb"), &q).unwrap());
        assert!(is_quasiperiodic_prefix(&Word::empty(), &q).unwrap());
    }

    #[test]
    fn quasiperiodic_prefix_needs_factorization_search() {
        // ababa = ab·aba: stripping the longest generator first would leave
        // the remainder "ba", so a single greedy pass is not enough.
        assert!(is_quasiperiodic_prefix(&w("ababa"), &w("aba")).unwrap());
        // aabaaab = aaba·aab over the generators of aabaa.
        assert!(is_quasiperiodic_prefix(&w("aabaaab"), &w("aabaa")).unwrap());
    }

    #[test]
    fn quasiperiodic_prefix_matches_enumeration() {
        // Oracle: u is a prefix of Q_q iff some quasiperiodic word of length
        // ≤ |u| + |q| extends u (longer extensions cannot be needed, since a
        // covering occurrence of q ends within |q| of any position).
        let ab = Alphabet::binary();
        for q in [w("aba"), w("aabaa"), w("aa")] {
            for u_len in 0..=9 {
                for u in ab.words_of_length(u_len) {
                    let mut extendable = false;
                    'search: for ext_len in u_len..=u_len + q.len() {
                        for rest in ab.words_of_length(ext_len - u_len) {
                            if is_quasiperiodic(&u.concat(&rest), &q).unwrap() {
                                extendable = true;
                                break 'search;
                            }
                        }
                    }
                    assert_eq!(
                        is_quasiperiodic_prefix(&u, &q).unwrap(),
                        extendable,
                        "u = {u}, q = {q}"
                    );
                }
            }
        }
    }

    #[test]
    fn chain_validation_rejects_bad_witnesses() {
        let q = w("aba");
        // Wrong first element.
        assert!(CoverChain::new(vec![w("ab")], &q).is_err());
        // Gap larger than |q|.
        assert!(CoverChain::new(vec![w("aba"), w("abaabaaba")], &q).is_err());
        // Element not ending in q.
        assert!(CoverChain::new(vec![w("aba"), w("abab")], &q).is_err());
    }
}
