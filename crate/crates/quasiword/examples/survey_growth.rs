//! Survey the growth rates of all quasiperiods up to a length (one per
//! letter-renaming class) and locate the maximizers.
//!
//! ```bash
//! cargo run --example survey_growth
//! ```

use quasiword::spectral::survey;
use quasiword::words::Word;

fn main() -> quasiword::Result<()> {
    let report = survey(2, 7)?;
    println!(
        "{} canonical binary quasiperiods of length 1..=7",
        report.reports.len()
    );
    println!("Pisot constant {:.9}\n", report.pisot);

    println!("top ten by growth rate:");
    for r in report.reports.iter().take(10) {
        println!(
            "  {:<10}  {:.9}  {}",
            r.quasiperiod.to_string(),
            r.lambda,
            r.polynomial
        );
    }

    let argmax: Vec<String> = report.argmax.iter().map(Word::to_string).collect();
    println!("\nmaximizers: {argmax:?} at {:.9}", report.max_lambda);
    println!(
        "every surveyed rate stays at most the Pisot constant: {}",
        report
            .reports
            .iter()
            .all(|r| r.lambda <= report.pisot + 1e-9)
    );
    Ok(())
}
