//! Count the star language of a quasiperiod, its prefixes and its infixes,
//! three ways, and verify the sandwich inequalities relating them.
//!
//! ```bash
//! cargo run --example count_subwords
//! ```

use quasiword::counting::{
    build_star_automaton, check_count_sandwich, count_words, determinize, star_counts_bruteforce,
    star_counts_recurrence, CountTable,
};
use quasiword::quasiperiod::analyze;
use quasiword::words::Alphabet;
use quasiword::DEFAULT_BUDGET;

fn main() -> quasiword::Result<()> {
    let q = Alphabet::binary().word("aba")?;
    let analysis = analyze(&q)?;

    // Three independent counting routes for the star language.
    let recurrence = star_counts_recurrence(&analysis.star_root, 12)?;
    let brute = star_counts_bruteforce(&analysis.star_root, 12, DEFAULT_BUDGET)?;
    let dfa = determinize(&build_star_automaton(&analysis.star_root)?)?;
    let automaton = count_words(&dfa, 12)?;
    assert_eq!(recurrence, brute);
    assert_eq!(recurrence, automaton);
    println!("star counts of {q} agree across recurrence, enumeration and automaton:");
    println!(
        "  {:?}",
        recurrence.iter().map(|c| c.to_string()).collect::<Vec<_>>()
    );

    let table = CountTable::build(&q, 12, DEFAULT_BUDGET)?;
    println!(
        "\n  n      star      pref     infix   (state bound {})",
        table.state_bound
    );
    for n in 0..=table.max_n {
        println!(
            "{:>3}  {:>8}  {:>8}  {:>8}",
            n, table.star_counts[n], table.pref_counts[n], table.infix_counts[n]
        );
    }
    println!(
        "\nsandwich inequalities hold: {}",
        check_count_sandwich(&table)
    );
    Ok(())
}
