//! Machine-readable report documents behind the command-line interface.
//!
//! Each command produces a [`ReportDocument`]: command metadata plus one
//! typed payload. Documents serialize losslessly to JSON; the tabular
//! payloads additionally render as CSV with fixed header rows, and every
//! payload has a human-readable rendering.

use std::fmt::Write as _;
use std::time::Instant;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::counting::{check_count_sandwich, count_words, infix_automaton, CountTable};
use crate::omega::{build_prefix, saturation, subword_complexity, SaturationReport};
use crate::quasiperiod::{self, QuasiperiodAnalysis};
use crate::spectral::{
    growth_polynomial, growth_report, largest_positive_root, smallest_pisot, survey, GrowthReport,
    IntPolynomial,
};
use crate::words::{Alphabet, Word};
use crate::{Error, Result};

/// A command result: metadata, payload and timing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    /// Subcommand name.
    pub command: String,
    /// Crate version that produced the document.
    pub version: String,
    /// Arguments as given.
    pub arguments: Vec<String>,
    /// Wall-clock milliseconds spent computing the payload.
    pub elapsed_ms: f64,
    pub payload: ReportPayload,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportPayload {
    Analysis(AnalysisPayload),
    Counts(CountPayload),
    Growth(GrowthReport),
    Survey(crate::spectral::SurveyReport),
    Omega(OmegaPayload),
    Selftest(SelftestReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisPayload {
    pub analysis: QuasiperiodAnalysis,
    pub polynomial: IntPolynomial,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountPayload {
    pub table: CountTable,
    /// Whether the star/prefix/infix sandwich inequalities hold up to
    /// `max_n` with the table's state bound.
    pub sandwich_holds: bool,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaRow {
    pub n: usize,
    /// Distinct length-`n` subwords of the constructed prefix.
    pub prefix_subwords: usize,
    /// Length-`n` infix count of the whole quasiperiodic language.
    pub infix_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmegaPayload {
    pub quasiperiod: Word,
    pub requested_len: usize,
    pub prefix_len: usize,
    /// First symbols of the constructed prefix.
    pub prefix_head: String,
    pub enumeration_order: String,
    pub lambda: f64,
    /// Subword counts of the prefix against the language infix counts, for
    /// every window length up to the requested one.
    pub profile: Vec<OmegaRow>,
    pub saturation: SaturationReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub passed: bool,
    pub checks: Vec<SelftestCheck>,
}

fn parse_quasiperiod(text: &str) -> Result<Word> {
    if text.is_empty() {
        return Err(Error::InvalidArgument(
            "quasiperiod must be nonempty".into(),
        ));
    }
    Alphabet::covering(text)?.word(text)
}

fn document(
    command: &str,
    arguments: Vec<String>,
    started: Instant,
    payload: ReportPayload,
) -> ReportDocument {
    ReportDocument {
        command: command.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        arguments,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
        payload,
    }
}

/// Full quasiperiod analysis: generators, star root, code certificates and
/// the growth rate.
pub fn cmd_analyze(q_text: &str) -> Result<ReportDocument> {
    let started = Instant::now();
    let q = parse_quasiperiod(q_text)?;
    let analysis = quasiperiod::analyze(&q)?;
    let polynomial = growth_polynomial(&analysis);
    let lambda = largest_positive_root(&polynomial, 1e-12)?;
    Ok(document(
        "analyze",
        vec![q_text.into()],
        started,
        ReportPayload::Analysis(AnalysisPayload {
            analysis,
            polynomial,
            lambda,
        }),
    ))
}

/// Counting table with the sandwich verdict.
pub fn cmd_count(q_text: &str, max_n: usize, budget: usize) -> Result<ReportDocument> {
    let started = Instant::now();
    let q = parse_quasiperiod(q_text)?;
    let table = CountTable::build(&q, max_n, budget)?;
    let sandwich_holds = check_count_sandwich(&table);
    let analysis = quasiperiod::analyze(&q)?;
    let lambda = largest_positive_root(&growth_polynomial(&analysis), 1e-12)?;
    Ok(document(
        "count",
        vec![q_text.into(), format!("--max-n {max_n}")],
        started,
        ReportPayload::Counts(CountPayload {
            table,
            sandwich_holds,
            lambda,
        }),
    ))
}

/// Growth-rate report.
pub fn cmd_lambda(q_text: &str) -> Result<ReportDocument> {
    let started = Instant::now();
    let q = parse_quasiperiod(q_text)?;
    let report = growth_report(&q)?;
    Ok(document(
        "lambda",
        vec![q_text.into()],
        started,
        ReportPayload::Growth(report),
    ))
}

/// Growth survey over all canonical quasiperiods up to `max_len`.
pub fn cmd_survey(max_len: usize, alphabet_size: usize) -> Result<ReportDocument> {
    let started = Instant::now();
    let report = survey(alphabet_size, max_len)?;
    Ok(document(
        "survey",
        vec![
            format!("--max-len {max_len}"),
            format!("--alphabet {alphabet_size}"),
        ],
        started,
        ReportPayload::Survey(report),
    ))
}

/// Constructed infinite-word prefix with its subword-count profile and the
/// saturation report.
pub fn cmd_omega(q_text: &str, len: usize, n: usize) -> Result<ReportDocument> {
    let started = Instant::now();
    let q = parse_quasiperiod(q_text)?;
    if n > 14 {
        return Err(Error::InvalidArgument(
            "window lengths range up to 14".into(),
        ));
    }
    let prefix = build_prefix(&q, len)?;
    if n > prefix.prefix.len() {
        return Err(Error::InvalidArgument(format!(
            "window {n} exceeds the prefix length {}",
            prefix.prefix.len()
        )));
    }
    let analysis = quasiperiod::analyze(&q)?;
    let lambda = largest_positive_root(&growth_polynomial(&analysis), 1e-12)?;
    let flower = crate::counting::build_star_automaton(&analysis.star_root)?;
    let infix_counts = count_words(&infix_automaton(&flower)?, n)?;
    let profile = (0..=n)
        .map(|m| {
            Ok(OmegaRow {
                n: m,
                prefix_subwords: subword_complexity(&prefix.prefix, m)?,
                infix_count: infix_counts[m]
                    .to_usize()
                    .ok_or_else(|| Error::InvariantViolation("infix count exceeds usize".into()))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let saturation = saturation(&q, n)?;
    let head: String = prefix.prefix.symbols().iter().take(60).collect();
    Ok(document(
        "omega",
        vec![q_text.into(), format!("--len {len}"), format!("--n {n}")],
        started,
        ReportPayload::Omega(OmegaPayload {
            quasiperiod: q,
            requested_len: len,
            prefix_len: prefix.prefix.len(),
            prefix_head: head,
            enumeration_order: prefix.enumeration_order,
            lambda,
            profile,
            saturation,
        }),
    ))
}

/// Cross-oracle suite: independent decision routes must agree. Returns a
/// document whose payload lists each check; `passed` is the conjunction.
pub fn cmd_selftest(budget: usize) -> Result<ReportDocument> {
    let started = Instant::now();
    let ab = Alphabet::binary();
    let mut checks = Vec::new();

    // Counting routes: recurrence = brute force = automaton.
    {
        let mut mismatches = 0usize;
        let mut cases = 0usize;
        for len in 1..=7 {
            for q in ab.words_of_length(len) {
                let root = quasiperiod::star_root(&quasiperiod::generators(&q)?)?;
                let rec = crate::counting::star_counts_recurrence(&root, 12)?;
                let brute = crate::counting::star_counts_bruteforce(&root, 12, budget)?;
                let dfa =
                    crate::counting::determinize(&crate::counting::build_star_automaton(&root)?)?;
                let auto = count_words(&dfa, 12)?;
                cases += 1;
                if rec != brute || rec != auto {
                    mismatches += 1;
                }
            }
        }
        checks.push(SelftestCheck {
            name: "counting-routes".into(),
            passed: mismatches == 0,
            detail: format!("{cases} quasiperiods, {mismatches} mismatches"),
        });
    }

    // Membership routes: occurrence cover = generator factorization.
    {
        let mut mismatches = 0usize;
        let mut cases = 0usize;
        for q_len in 1..=5 {
            for q in ab.words_of_length(q_len) {
                for w_len in 0..=10 {
                    for word in ab.words_of_length(w_len) {
                        cases += 1;
                        if crate::words::is_quasiperiodic(&word, &q)?
                            != quasiperiod::in_quasiperiodic_language(&word, &q)?
                        {
                            mismatches += 1;
                        }
                    }
                }
            }
        }
        checks.push(SelftestCheck {
            name: "membership-routes".into(),
            passed: mismatches == 0,
            detail: format!("{cases} word/quasiperiod pairs, {mismatches} mismatches"),
        });
    }

    // Code certificates: suffix code, primitive core, delay within bound.
    {
        let mut violations = 0usize;
        let mut cases = 0usize;
        for len in 1..=7 {
            for q in ab.words_of_length(len) {
                let analysis = quasiperiod::analyze(&q)?;
                cases += 1;
                if !analysis.suffix_code
                    || !analysis.core.is_primitive()?
                    || analysis.delay > analysis.core_exponent + 1
                {
                    violations += 1;
                }
            }
        }
        checks.push(SelftestCheck {
            name: "code-certificates".into(),
            passed: violations == 0,
            detail: format!("{cases} quasiperiods, {violations} violations"),
        });
    }

    // Growth bound: every growth rate stays at most the Pisot constant.
    {
        let pisot = smallest_pisot();
        let mut violations = 0usize;
        let mut cases = 0usize;
        for len in 1..=7 {
            for q in crate::spectral::canonical_words(&ab, len) {
                let report = growth_report(&q)?;
                cases += 1;
                if report.lambda > pisot + 1e-9 {
                    violations += 1;
                }
            }
        }
        checks.push(SelftestCheck {
            name: "growth-bound".into(),
            passed: violations == 0,
            detail: format!("{cases} quasiperiods, {violations} above the bound"),
        });
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(document(
        "selftest",
        Vec::new(),
        started,
        ReportPayload::Selftest(SelftestReport { passed, checks }),
    ))
}

/// Human-readable rendering.
pub fn render_human(doc: &ReportDocument) -> String {
    let mut out = String::new();
    match &doc.payload {
        ReportPayload::Analysis(p) => {
            let a = &p.analysis;
            let list = |words: &[Word]| {
                words
                    .iter()
                    .map(Word::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            let _ = writeln!(out, "quasiperiod: {}", a.quasiperiod);
            let _ = writeln!(
                out,
                "core:        {}  (exponent {}, remainder {:?}, divides: {})",
                a.core,
                a.core_exponent,
                a.remainder.to_string(),
                a.divides
            );
            let _ = writeln!(out, "generators:  {}", list(&a.generators));
            let _ = writeln!(out, "star root:   {}", list(&a.star_root));
            let _ = writeln!(out, "suffix code: {}", a.suffix_code);
            let _ = writeln!(
                out,
                "delay:       {}  (bound {})",
                a.delay,
                a.core_exponent + 1
            );
            if a.delay == a.core_exponent + 1 {
                if let Some(witness) = &a.delay_witness {
                    let _ = writeln!(out, "witness:     {witness}");
                }
            }
            let _ = writeln!(out, "polynomial:  {}", p.polynomial);
            let _ = writeln!(out, "lambda:      {:.9}", p.lambda);
        }
        ReportPayload::Counts(p) => {
            let t = &p.table;
            let _ = writeln!(
                out,
                "quasiperiod: {}  (lambda {:.9})",
                t.quasiperiod, p.lambda
            );
            let _ = writeln!(
                out,
                "sandwich:    {}  (state bound {})",
                if p.sandwich_holds {
                    "holds"
                } else {
                    "VIOLATED"
                },
                t.state_bound
            );
            let _ = writeln!(
                out,
                "{:>4}  {:>12}  {:>12}  {:>12}  {:>14}",
                "n", "star", "pref", "infix", "lambda^n"
            );
            for n in 0..=t.max_n {
                let _ = writeln!(
                    out,
                    "{:>4}  {:>12}  {:>12}  {:>12}  {:>14.6}",
                    n,
                    t.star_counts[n].to_string(),
                    t.pref_counts[n].to_string(),
                    t.infix_counts[n].to_string(),
                    p.lambda.powi(n as i32)
                );
            }
        }
        ReportPayload::Growth(r) => {
            let _ = writeln!(out, "quasiperiod: {}", r.quasiperiod);
            let _ = writeln!(out, "polynomial:  {}", r.polynomial);
            let _ = writeln!(
                out,
                "lambda:      {:.9}  (tolerance {:e})",
                r.lambda, r.tolerance
            );
            let _ = writeln!(out, "pisot:       {:.9}", smallest_pisot());
            let _ = writeln!(
                out,
                "ratio range: [{:.6}, {:.6}]  (pref(n)/lambda^n over n = 10..=30)",
                r.ratio_lo, r.ratio_hi
            );
            let _ = writeln!(out, "divides:     {}", r.divides);
        }
        ReportPayload::Survey(s) => {
            let _ = writeln!(
                out,
                "survey: {} quasiperiods, alphabet size {}, lengths 1..={}",
                s.reports.len(),
                s.alphabet_size,
                s.max_len
            );
            let _ = writeln!(out, "pisot:  {:.9}", s.pisot);
            let argmax = s
                .argmax
                .iter()
                .map(Word::to_string)
                .collect::<Vec<_>>()
                .join(", ");
            let _ = writeln!(out, "argmax: {}  (lambda {:.9})", argmax, s.max_lambda);
            let _ = writeln!(out, "{:<14}  {:>12}  polynomial", "quasiperiod", "lambda");
            for r in &s.reports {
                let _ = writeln!(
                    out,
                    "{:<14}  {:>12.9}  {}",
                    r.quasiperiod.to_string(),
                    r.lambda,
                    r.polynomial
                );
            }
        }
        ReportPayload::Omega(p) => {
            let _ = writeln!(out, "quasiperiod: {}", p.quasiperiod);
            let _ = writeln!(
                out,
                "prefix:      {} symbols (requested {}), order {}",
                p.prefix_len, p.requested_len, p.enumeration_order
            );
            let _ = writeln!(out, "head:        {}…", p.prefix_head);
            let _ = writeln!(out, "lambda:      {:.9}", p.lambda);
            let _ = writeln!(
                out,
                "{:>4}  {:>10}  {:>10}  {:>14}",
                "n", "subwords", "infix", "lambda^n"
            );
            for row in &p.profile {
                let _ = writeln!(
                    out,
                    "{:>4}  {:>10}  {:>10}  {:>14.6}",
                    row.n,
                    row.prefix_subwords,
                    row.infix_count,
                    p.lambda.powi(row.n as i32)
                );
            }
            let s = &p.saturation;
            let _ = writeln!(
                out,
                "saturation:  window {} reached {}/{} with a prefix of {} symbols ({})",
                s.window,
                s.achieved_count,
                s.target_count,
                s.prefix_len,
                if s.saturated {
                    "saturated"
                } else {
                    "NOT saturated"
                }
            );
        }
        ReportPayload::Selftest(s) => {
            for check in &s.checks {
                let _ = writeln!(
                    out,
                    "{}: {}  ({})",
                    check.name,
                    if check.passed { "ok" } else { "FAILED" },
                    check.detail
                );
            }
            let _ = writeln!(out, "selftest: {}", if s.passed { "ok" } else { "FAILED" });
        }
    }
    out
}

/// CSV rendering with fixed headers; available for the tabular payloads
/// (`count`, `survey`, `omega`).
pub fn render_csv(doc: &ReportDocument) -> Result<String> {
    let mut out = String::new();
    match &doc.payload {
        ReportPayload::Counts(p) => {
            let t = &p.table;
            let _ = writeln!(out, "n,star,pref,infix,lambda_pow_n");
            for n in 0..=t.max_n {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{:.9}",
                    n,
                    t.star_counts[n],
                    t.pref_counts[n],
                    t.infix_counts[n],
                    p.lambda.powi(n as i32)
                );
            }
            Ok(out)
        }
        ReportPayload::Survey(s) => {
            let _ = writeln!(
                out,
                "quasiperiod,lambda,polynomial,ratio_lo,ratio_hi,divides"
            );
            for r in &s.reports {
                let _ = writeln!(
                    out,
                    "{},{:.9},{},{:.9},{:.9},{}",
                    r.quasiperiod, r.lambda, r.polynomial, r.ratio_lo, r.ratio_hi, r.divides
                );
            }
            Ok(out)
        }
        ReportPayload::Omega(p) => {
            let _ = writeln!(out, "n,prefix_subwords,infix_count,lambda_pow_n");
            for row in &p.profile {
                let _ = writeln!(
                    out,
                    "{},{},{},{:.9}",
                    row.n,
                    row.prefix_subwords,
                    row.infix_count,
                    p.lambda.powi(row.n as i32)
                );
            }
            Ok(out)
        }
        _ => Err(Error::InvalidArgument(format!(
            "no CSV rendering for the {} command",
            doc.command
        ))),
    }
}
