//! Delay of decipherability of finite codes: how many extra codewords a
//! decoder must read before the first codeword of a message is certain.
//!
//! ```bash
//! cargo run --example code_delay
//! ```

use quasiword::quasiperiod::{decipherability_delay, is_code, is_suffix_code, DelayResult};
use quasiword::words::{Alphabet, Word};

fn code(texts: &[&str]) -> quasiword::Result<Vec<Word>> {
    let alphabet = Alphabet::binary();
    texts.iter().map(|t| alphabet.word(t)).collect()
}

fn main() -> quasiword::Result<()> {
    // A prefix code decodes with no lookahead at all.
    let prefix_code = code(&["aa", "ab", "b"])?;
    match decipherability_delay(&prefix_code, 3)? {
        DelayResult::Delay { delay, .. } => println!("{{aa, ab, b}} has delay {delay}"),
        DelayResult::ExceedsBound => unreachable!(),
    }

    // One codeword extends another: one extra codeword settles it.
    let stretched = code(&["ab", "aba"])?;
    match decipherability_delay(&stretched, 3)? {
        DelayResult::Delay { delay, witness } => {
            println!("{{ab, aba}} has delay {delay}");
            if let Some(witness) = witness {
                println!("  one step below fails: {witness}");
            }
        }
        DelayResult::ExceedsBound => unreachable!(),
    }

    // The star root of the quasiperiod aabaaaaba needs two extra codewords.
    let star_root = code(&["aabaa", "aabaaaab", "aabaaaaba"])?;
    println!(
        "star root is a suffix code: {}",
        is_suffix_code(&star_root)?
    );
    match decipherability_delay(&star_root, 4)? {
        DelayResult::Delay { delay, witness } => {
            println!("star root has delay {delay}");
            if let Some(witness) = witness {
                println!("  one step below fails: {witness}");
            }
        }
        DelayResult::ExceedsBound => unreachable!(),
    }

    // Not every word set is a code.
    let ambiguous = code(&["a", "ab", "b"])?;
    println!("{{a, ab, b}} is a code: {}", is_code(&ambiguous)?);
    if let Err(err) = decipherability_delay(&ambiguous, 2) {
        println!("  delay computation reports: {err}");
    }
    Ok(())
}
