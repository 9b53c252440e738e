//! Derive everything a quasiperiod determines: the generator language, its
//! star root, and the code certificates.
//!
//! ```bash
//! cargo run --example analyze_quasiperiod
//! ```

use quasiword::quasiperiod::analyze;
use quasiword::words::Alphabet;

fn main() -> quasiword::Result<()> {
    for text in ["aba", "aabaaaaba", "aaa", "abaaba"] {
        let q = Alphabet::covering(text)?.word(text)?;
        let analysis = analyze(&q)?;

        println!("quasiperiod {q}");
        println!(
            "  core {} with exponent {}, remainder {:?}",
            analysis.core,
            analysis.core_exponent,
            analysis.remainder.to_string()
        );
        let generators: Vec<String> = analysis.generators.iter().map(|v| v.to_string()).collect();
        let star_root: Vec<String> = analysis.star_root.iter().map(|v| v.to_string()).collect();
        println!("  generators {generators:?}");
        println!("  star root  {star_root:?}");
        println!(
            "  suffix code: {}, delay of decipherability: {} (bound {})",
            analysis.suffix_code,
            analysis.delay,
            analysis.core_exponent + 1
        );
        if let Some(witness) = &analysis.delay_witness {
            println!("  delay witness: {witness}");
        }
        println!();
    }
    Ok(())
}
