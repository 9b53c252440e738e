//! Analysis of quasiperiodic words.
//!
//! A word is *quasiperiodic* with quasiperiod `q` when occurrences of `q`
//! cover every position: each occurrence starts no more than `|q|` symbols
//! after the previous one, the first starts at the beginning and the last
//! ends at the end. This crate derives, for a given quasiperiod `q`,
//!
//! * the finite generator language of all quasiperiodic words (the prefixes
//!   of `q` whose length is a period of `q`) and its star root,
//! * code-theoretic certificates for the star root: the suffix-code property
//!   and the minimal delay of decipherability, with explicit witnesses,
//! * exact per-length counts of the star language, its prefixes and its
//!   infixes, via a linear recurrence, brute-force enumeration and a
//!   determinized automaton that cross-check each other,
//! * the exponential growth rate of those counts as the largest positive
//!   root of an integer polynomial, computed by exact dyadic bisection, and
//! * prefixes of an infinite word with quasiperiod `q` whose subword
//!   complexity saturates the infix counts.
//!
//! The growth rate never exceeds the smallest Pisot–Vijayaraghavan number
//! (the real root of `t³ − t − 1 ≈ 1.324718`), and the bound is attained
//! exactly by the quasiperiods `aba` and `aabaa`.
//!
//! ```
//! use quasiword::{Alphabet, quasiperiod};
//!
//! let ab = Alphabet::binary();
//! let analysis = quasiperiod::analyze(&ab.word("aba").unwrap()).unwrap();
//! assert_eq!(analysis.core.to_string(), "ab");
//! assert_eq!(analysis.delay, 1);
//! assert!(analysis.suffix_code);
//! ```
//!
//! Each capability has a runnable example under `examples/`, and the
//! `quasiword` binary exposes the same operations as subcommands.

pub(crate) mod bigfmt;
pub mod counting;
pub mod omega;
pub mod quasiperiod;
pub mod report;
pub mod spectral;
pub mod words;

pub use counting::{CountTable, FiniteAutomaton};
pub use quasiperiod::QuasiperiodAnalysis;
pub use spectral::{GrowthReport, IntPolynomial};
pub use words::{Alphabet, CoverChain, Word};

/// Length cap used by the exhaustive cross-check suites: every word up to
/// this many symbols is enumerated when two decision routes are compared.
pub const EXHAUSTIVE_LEN: usize = 14;

/// Default cap on the number of words materialized by brute-force
/// enumerations. Overridable per call and, in the CLI, through the
/// `QUASIWORD_BUDGET` environment variable.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An operation that needs a nonempty word received the empty word.
    #[error("word must not be empty")]
    EmptyWord,

    /// Alphabets need at least two distinct symbols.
    #[error("alphabet needs at least 2 distinct symbols, got {0}")]
    AlphabetTooSmall(usize),

    /// A symbol appears twice in an alphabet declaration.
    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(char),

    /// A word uses a symbol outside its alphabet.
    #[error("symbol {symbol:?} does not belong to alphabet {{{alphabet}}}")]
    SymbolOutsideAlphabet { symbol: char, alphabet: String },

    /// A word list meant to be a code contains a duplicate.
    #[error("duplicate word {0:?} in code")]
    DuplicateWord(String),

    /// A word list is not uniquely decipherable.
    #[error("not a code: {ambiguous:?} has two distinct factorizations")]
    NotACode { ambiguous: String },

    /// Word counting is only defined on deterministic automata.
    #[error("counting requires a deterministic automaton")]
    NondeterministicAutomaton,

    /// A brute-force enumeration outgrew its budget.
    #[error("enumeration budget exceeded: needed more than {budget} words")]
    BudgetExceeded { budget: usize },

    /// The polynomial is outside the supported sign shape.
    #[error("unsupported polynomial shape: {0}")]
    PolynomialShape(String),

    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A property guaranteed by construction failed to hold.
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the CLI: 2 for input errors, 3 for budget
    /// exhaustion, 4 for internal invariant violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 3,
            Error::NondeterministicAutomaton | Error::InvariantViolation(_) => 4,
            _ => 2,
        }
    }
}
