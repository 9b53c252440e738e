//! Characteristic polynomial and exponential growth rate of the language
//! of words sharing a quasiperiod, compared against the Pisot bound.
//!
//! ```bash
//! cargo run --example growth_rate
//! ```

use quasiword::spectral::{growth_report, smallest_pisot};
use quasiword::words::Alphabet;

fn main() -> quasiword::Result<()> {
    let pisot = smallest_pisot();
    println!("Pisot constant: {pisot:.9}\n");

    for text in ["aba", "aabaa", "aabaaaaba", "abaaba", "aaaa"] {
        let q = Alphabet::covering(text)?.word(text)?;
        let report = growth_report(&q)?;
        println!("quasiperiod {text}");
        println!("  polynomial   {}", report.polynomial);
        println!(
            "  growth rate  {:.9}  ({:.2}% of the Pisot bound)",
            report.lambda,
            100.0 * report.lambda / pisot
        );
        println!(
            "  prefix-count ratio band [{:.4}, {:.4}] over lengths 10..=30\n",
            report.ratio_lo, report.ratio_hi
        );
    }

    // aabaa factors through the same cubic as aba, so their rates agree
    // exactly.
    let aba = growth_report(&Alphabet::binary().word("aba")?)?;
    let aabaa = growth_report(&Alphabet::binary().word("aabaa")?)?;
    println!(
        "rate difference between aba and aabaa: {:e}",
        (aba.lambda - aabaa.lambda).abs()
    );
    Ok(())
}
