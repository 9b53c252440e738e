//! Build prefixes of an infinite word of maximal subword complexity with a
//! given quasiperiod, and watch the subword counts saturate the infix
//! counts of the language.
//!
//! ```bash
//! cargo run --example omega_prefix
//! ```

use quasiword::omega::{build_prefix, saturation, star_words, subword_complexity};
use quasiword::words::Alphabet;

fn main() -> quasiword::Result<()> {
    let q = Alphabet::binary().word("aba")?;

    let head: Vec<String> = star_words(&q)?.take(8).map(|w| w.to_string()).collect();
    println!("star language in length-lexicographic order: {head:?}…");

    let prefix = build_prefix(&q, 2000)?;
    let shown: String = prefix.prefix.symbols().iter().take(48).collect();
    println!(
        "constructed prefix of {} symbols: {shown}…\n",
        prefix.prefix.len()
    );

    println!("  n  subwords of the prefix");
    for n in 1..=10 {
        println!("{:>3}  {}", n, subword_complexity(&prefix.prefix, n)?);
    }

    for n in [6, 10, 12] {
        let report = saturation(&q, n)?;
        println!(
            "window {n}: prefix of {} symbols reaches {}/{} infixes ({})",
            report.prefix_len,
            report.achieved_count,
            report.target_count,
            if report.saturated {
                "saturated"
            } else {
                "not saturated"
            }
        );
    }
    Ok(())
}
