//! The extremal polynomial family `tⁿ − Σ_{i≤(n−1)/2} tⁱ`: roots by
//! degree, the Pisot bound, and the degrees attaining it.
//!
//! ```bash
//! cargo run --example extremal_family
//! ```

use quasiword::spectral::{check_extremal_family, extremal_polynomial, smallest_pisot};

fn main() -> quasiword::Result<()> {
    let pisot = smallest_pisot();
    println!("Pisot constant {pisot:.9}\n");

    let report = check_extremal_family(25, 1e-9, 12)?;
    println!(" degree  root         polynomial");
    for (i, root) in report.roots.iter().enumerate() {
        let n = i + 1;
        let marker = if report.equality_degrees.contains(&n) {
            "  <- attains the bound"
        } else {
            ""
        };
        println!(
            "{:>6}  {:.9}  {}{}",
            n,
            root,
            extremal_polynomial(n)?,
            marker
        );
    }

    println!("\nall roots bounded: {}", report.all_bounded);
    println!("equality degrees:  {:?}", report.equality_degrees);
    println!(
        "extremal member dominates all subset polynomials up to degree {}: {}",
        report.subset_max_n, report.subsets_dominated
    );
    Ok(())
}
