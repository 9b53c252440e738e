//! Finite automata over small alphabets: the flower acceptor of a star
//! language, prefix and infix closures, subset-construction
//! determinization, partition-refinement minimization, and per-length word
//! counting on deterministic acceptors.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::words::{Alphabet, Word};
use crate::{Error, Result};

/// A finite acceptor. Transitions are per-state, per-symbol successor
/// lists; several initial states are allowed unless the automaton is
/// flagged deterministic.
#[derive(Debug, Clone)]
pub struct FiniteAutomaton {
    alphabet: Alphabet,
    /// `transitions[state][symbol]` lists successor states, ascending.
    transitions: Vec<Vec<Vec<usize>>>,
    initial: Vec<usize>,
    accepting: Vec<bool>,
    deterministic: bool,
}

impl FiniteAutomaton {
    pub fn new(
        alphabet: Alphabet,
        transitions: Vec<Vec<Vec<usize>>>,
        initial: Vec<usize>,
        accepting: Vec<bool>,
        deterministic: bool,
    ) -> Result<Self> {
        let n = transitions.len();
        if accepting.len() != n {
            return Err(Error::InvalidArgument(
                "acceptance flags must cover every state".into(),
            ));
        }
        for row in &transitions {
            if row.len() != alphabet.size() {
                return Err(Error::InvalidArgument(
                    "each state needs one successor list per symbol".into(),
                ));
            }
            for succs in row {
                if succs.iter().any(|&s| s >= n) {
                    return Err(Error::InvalidArgument(
                        "transition references unknown state".into(),
                    ));
                }
                if deterministic && succs.len() > 1 {
                    return Err(Error::InvalidArgument(
                        "deterministic automata allow at most one successor".into(),
                    ));
                }
            }
        }
        if initial.iter().any(|&s| s >= n) {
            return Err(Error::InvalidArgument("initial state out of range".into()));
        }
        if deterministic && initial.len() != 1 {
            return Err(Error::InvalidArgument(
                "deterministic automata need exactly one initial state".into(),
            ));
        }
        Ok(FiniteAutomaton {
            alphabet,
            transitions,
            initial,
            accepting,
            deterministic,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    /// Membership test by direct subset simulation; works for both
    /// deterministic and nondeterministic acceptors.
    pub fn accepts(&self, word: &Word) -> Result<bool> {
        let mut current: BTreeSet<usize> = self.initial.iter().copied().collect();
        for &symbol in word.symbols() {
            let s = self.alphabet.index_of(symbol)?;
            current = current
                .iter()
                .flat_map(|&state| self.transitions[state][s].iter().copied())
                .collect();
            if current.is_empty() {
                return Ok(false);
            }
        }
        Ok(current.iter().any(|&state| self.accepting[state]))
    }

    /// States from which an accepting state is reachable.
    fn coreachable(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (state, row) in self.transitions.iter().enumerate() {
            for succs in row {
                for &t in succs {
                    reverse[t].push(state);
                }
            }
        }
        let mut seen = vec![false; n];
        let mut queue: Vec<usize> = (0..n).filter(|&s| self.accepting[s]).collect();
        for &s in &queue {
            seen[s] = true;
        }
        while let Some(s) = queue.pop() {
            for &p in &reverse[s] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push(p);
                }
            }
        }
        seen
    }

    fn reachable(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut seen = vec![false; n];
        let mut queue: Vec<usize> = self.initial.clone();
        for &s in &queue {
            seen[s] = true;
        }
        while let Some(s) = queue.pop() {
            for succs in &self.transitions[s] {
                for &t in succs {
                    if !seen[t] {
                        seen[t] = true;
                        queue.push(t);
                    }
                }
            }
        }
        seen
    }
}

/// Flower acceptor of the star language of a finite code: a shared root
/// state plus one spine state per proper prefix position of each codeword.
/// Accepts exactly the concatenations of codewords, including the empty
/// word.
pub fn build_star_automaton(code: &[Word]) -> Result<FiniteAutomaton> {
    if code.is_empty() || code.iter().any(Word::is_empty) {
        return Err(Error::InvalidArgument(
            "star automaton needs nonempty codewords".into(),
        ));
    }
    let text: String = code.iter().map(Word::to_string).collect();
    let alphabet = Alphabet::covering(&text)?;
    let symbols = alphabet.size();

    let mut transitions: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); symbols]];
    let root = 0usize;
    for word in code {
        let mut state = root;
        for (i, &symbol) in word.symbols().iter().enumerate() {
            let s = alphabet.index_of(symbol)?;
            let target = if i + 1 == word.len() {
                root
            } else {
                transitions.push(vec![Vec::new(); symbols]);
                transitions.len() - 1
            };
            if !transitions[state][s].contains(&target) {
                transitions[state][s].push(target);
                transitions[state][s].sort_unstable();
            }
            state = target;
        }
    }

    let states = transitions.len();
    let mut accepting = vec![false; states];
    accepting[root] = true;
    FiniteAutomaton::new(alphabet, transitions, vec![root], accepting, false)
}

/// Acceptor of the prefixes of the input's language: every co-reachable
/// state becomes accepting; the result is determinized and minimized.
pub fn prefix_automaton(a: &FiniteAutomaton) -> Result<FiniteAutomaton> {
    let coreachable = a.coreachable();
    let mut closed = a.clone();
    for (state, flag) in coreachable.iter().enumerate() {
        if *flag {
            closed.accepting[state] = true;
        }
    }
    minimize(&determinize(&closed)?)
}

/// Acceptor of the infixes of the input's language: on top of the prefix
/// closure, every reachable state becomes initial; the result is
/// determinized and minimized.
pub fn infix_automaton(a: &FiniteAutomaton) -> Result<FiniteAutomaton> {
    let coreachable = a.coreachable();
    let reachable = a.reachable();
    let mut closed = a.clone();
    for (state, flag) in coreachable.iter().enumerate() {
        if *flag {
            closed.accepting[state] = true;
        }
    }
    closed.initial = (0..a.state_count()).filter(|&s| reachable[s]).collect();
    closed.deterministic = false;
    minimize(&determinize(&closed)?)
}

/// Subset construction. The result has no dead sink: missing transitions
/// simply stay undefined.
pub fn determinize(a: &FiniteAutomaton) -> Result<FiniteAutomaton> {
    let symbols = a.alphabet.size();
    let start: BTreeSet<usize> = a.initial.iter().copied().collect();
    if start.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot determinize an automaton without initial states".into(),
        ));
    }

    let mut ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
    let mut transitions: Vec<Vec<Vec<usize>>> = Vec::new();

    let start_key: Vec<usize> = start.iter().copied().collect();
    ids.insert(start_key, 0);
    subsets.push(start);
    transitions.push(vec![Vec::new(); symbols]);

    let mut head = 0;
    while head < subsets.len() {
        for s in 0..symbols {
            let successor: BTreeSet<usize> = subsets[head]
                .iter()
                .flat_map(|&state| a.transitions[state][s].iter().copied())
                .collect();
            if successor.is_empty() {
                continue;
            }
            let key: Vec<usize> = successor.iter().copied().collect();
            let id = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    let id = subsets.len();
                    ids.insert(key, id);
                    subsets.push(successor);
                    transitions.push(vec![Vec::new(); symbols]);
                    id
                }
            };
            transitions[head][s] = vec![id];
        }
        head += 1;
    }

    let accepting: Vec<bool> = subsets
        .iter()
        .map(|subset| subset.iter().any(|&state| a.accepting[state]))
        .collect();
    FiniteAutomaton::new(a.alphabet.clone(), transitions, vec![0], accepting, true)
}

/// Partition-refinement minimization of a deterministic acceptor. States
/// that are unreachable or cannot reach acceptance are dropped first, so
/// the resulting state count is an honest size for the language.
pub fn minimize(a: &FiniteAutomaton) -> Result<FiniteAutomaton> {
    if !a.deterministic {
        return Err(Error::NondeterministicAutomaton);
    }
    let keep: Vec<bool> = a
        .reachable()
        .iter()
        .zip(a.coreachable())
        .map(|(&r, c)| r && c)
        .collect();
    let alive: Vec<usize> = (0..a.state_count()).filter(|&s| keep[s]).collect();
    if alive.is_empty() {
        // Empty language: a single non-accepting state.
        return FiniteAutomaton::new(
            a.alphabet.clone(),
            vec![vec![Vec::new(); a.alphabet.size()]],
            vec![0],
            vec![false],
            true,
        );
    }
    let mut index = vec![usize::MAX; a.state_count()];
    for (new, &old) in alive.iter().enumerate() {
        index[old] = new;
    }
    let symbols = a.alphabet.size();
    // Trimmed transition table: None = undefined (leads out of the trim
    // part, hence to rejection).
    let step: Vec<Vec<Option<usize>>> = alive
        .iter()
        .map(|&old| {
            (0..symbols)
                .map(|s| {
                    a.transitions[old][s]
                        .first()
                        .filter(|&&t| keep[t])
                        .map(|&t| index[t])
                })
                .collect()
        })
        .collect();
    let accepting: Vec<bool> = alive.iter().map(|&old| a.accepting[old]).collect();
    let n = alive.len();

    let mut class: Vec<usize> = accepting.iter().map(|&acc| usize::from(acc)).collect();
    loop {
        let mut signatures: BTreeMap<(usize, Vec<Option<usize>>), usize> = BTreeMap::new();
        let mut next = vec![0usize; n];
        for state in 0..n {
            let signature = (
                class[state],
                step[state]
                    .iter()
                    .map(|t| t.map(|t| class[t]))
                    .collect::<Vec<_>>(),
            );
            let fresh = signatures.len();
            next[state] = *signatures.entry(signature).or_insert(fresh);
        }
        let stable = signatures.len() == class.iter().collect::<BTreeSet<_>>().len();
        class = next;
        if stable {
            break;
        }
    }

    let class_count = class.iter().max().copied().unwrap_or(0) + 1;
    let mut representative = vec![usize::MAX; class_count];
    for state in 0..n {
        if representative[class[state]] == usize::MAX {
            representative[class[state]] = state;
        }
    }
    let transitions: Vec<Vec<Vec<usize>>> = (0..class_count)
        .map(|c| {
            let rep = representative[c];
            (0..symbols)
                .map(|s| step[rep][s].map(|t| vec![class[t]]).unwrap_or_default())
                .collect()
        })
        .collect();
    let accepting: Vec<bool> = (0..class_count)
        .map(|c| accepting[representative[c]])
        .collect();
    let initial = vec![class[index[a.initial[0]]]];
    FiniteAutomaton::new(a.alphabet.clone(), transitions, initial, accepting, true)
}

/// Number of accepted words of each length `0..=max_n`, by dynamic
/// programming over path counts. Counting distinct words this way is only
/// correct on deterministic automata.
pub fn count_words(a: &FiniteAutomaton, max_n: usize) -> Result<Vec<BigUint>> {
    if !a.deterministic {
        return Err(Error::NondeterministicAutomaton);
    }
    let n = a.state_count();
    let mut ways: Vec<BigUint> = vec![BigUint::zero(); n];
    ways[a.initial[0]] = BigUint::one();
    let mut counts = Vec::with_capacity(max_n + 1);
    for _ in 0..=max_n {
        let total = ways
            .iter()
            .zip(&a.accepting)
            .filter(|(_, &acc)| acc)
            .map(|(w, _)| w)
            .sum();
        counts.push(total);
        let mut next = vec![BigUint::zero(); n];
        for (state, row) in a.transitions.iter().enumerate() {
            if ways[state].is_zero() {
                continue;
            }
            for succs in row {
                if let Some(&t) = succs.first() {
                    next[t] += &ways[state];
                }
            }
        }
        ways = next;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn w(text: &str) -> Word {
        Alphabet::covering(text).unwrap().word(text).unwrap()
    }

    #[test]
    fn flower_shapes() {
        let two_cycle = build_star_automaton(&[w("ab")]).unwrap();
        assert_eq!(two_cycle.state_count(), 2);

        let loop_one = build_star_automaton(&[w("a")]).unwrap();
        assert_eq!(loop_one.state_count(), 1);

        let flower = build_star_automaton(&[w("ab"), w("aba")]).unwrap();
        assert_eq!(flower.state_count(), 4);
    }

    #[test]
    fn flower_accepts_star_language() {
        let a = build_star_automaton(&[w("ab"), w("aba")]).unwrap();
        assert!(a.accepts(&Word::empty()).unwrap());
        assert!(a.accepts(&w("ab")).unwrap());
        assert!(a.accepts(&w("abaab")).unwrap());
        assert!(a.accepts(&w("ababa")).unwrap());
        assert!(!a.accepts(&w("a")).unwrap());
        assert!(!a.accepts(&w("abb")).unwrap());
    }

    #[test]
    fn determinization_preserves_language() {
        let nfa = build_star_automaton(&[w("ab"), w("aba")]).unwrap();
        let dfa = determinize(&nfa).unwrap();
        assert!(dfa.is_deterministic());
        let ab = Alphabet::binary();
        for len in 0..=10 {
            for word in ab.words_of_length(len) {
                assert_eq!(
                    nfa.accepts(&word).unwrap(),
                    dfa.accepts(&word).unwrap(),
                    "word = {word}"
                );
            }
        }
    }

    #[test]
    fn minimization_preserves_language() {
        let nfa = build_star_automaton(&[w("ab"), w("aba")]).unwrap();
        let dfa = determinize(&nfa).unwrap();
        let min = minimize(&dfa).unwrap();
        assert!(min.state_count() <= dfa.state_count());
        let ab = Alphabet::binary();
        for len in 0..=10 {
            for word in ab.words_of_length(len) {
                assert_eq!(
                    dfa.accepts(&word).unwrap(),
                    min.accepts(&word).unwrap(),
                    "word = {word}"
                );
            }
        }
    }

    #[test]
    fn counting_rejects_nondeterministic_input() {
        let nfa = build_star_automaton(&[w("ab"), w("aba")]).unwrap();
        assert!(matches!(
            count_words(&nfa, 5),
            Err(Error::NondeterministicAutomaton)
        ));
    }

    #[test]
    fn counting_two_cycle() {
        let dfa = determinize(&build_star_automaton(&[w("ab")]).unwrap()).unwrap();
        let counts = count_words(&dfa, 5).unwrap();
        let expected: Vec<u32> = vec![1, 0, 1, 0, 1, 0];
        assert_eq!(
            counts,
            expected.into_iter().map(BigUint::from).collect::<Vec<_>>()
        );
    }

    #[test]
    fn prefix_closure_of_two_cycle() {
        let nfa = build_star_automaton(&[w("ab")]).unwrap();
        let pref = prefix_automaton(&nfa).unwrap();
        for word in ["", "a", "ab", "aba", "abab"] {
            assert!(pref
                .accepts(&Alphabet::binary().word(word).unwrap())
                .unwrap());
        }
        assert!(!pref.accepts(&w("b")).unwrap());
        assert!(!pref.accepts(&w("aa")).unwrap());
        let counts = count_words(&pref, 6).unwrap();
        assert!(counts.iter().all(|c| *c == BigUint::one()));
    }
}
