//! Growth rates of quasiperiodic languages: the characteristic polynomial
//! of a star root, largest-positive-root extraction by exact dyadic
//! bisection, the extremal polynomial family, and the all-quasiperiods
//! survey.
//!
//! Every polynomial handled here is monic with non-positive lower
//! coefficients and a negative constant term, so it has exactly one root
//! beyond its last sign change. Bisection evaluates polynomial signs at
//! dyadic rationals in exact integer arithmetic, which keeps root
//! comparisons (such as equal roots of related polynomials) deterministic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::counting::{
    build_star_automaton, count_words, prefix_automaton, star_counts_recurrence,
};
use crate::quasiperiod::{self, QuasiperiodAnalysis};
use crate::words::{Alphabet, Word};
use crate::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients, constant term
/// first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntPolynomial {
    #[serde(with = "crate::bigfmt::bigint_vec")]
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial from coefficients, constant term first; trailing
    /// zeros are trimmed.
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        IntPolynomial { coefficients }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Coefficients, constant term first.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// Degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Floating-point evaluation by Horner's rule.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact sign of the polynomial at the dyadic rational `num / 2^shift`:
    /// negative, zero or positive.
    pub fn sign_at_dyadic(&self, num: &BigInt, shift: u32) -> i32 {
        // p(num/2^shift) · 2^(shift·degree) stays integral.
        let mut acc = BigInt::zero();
        let degree = self.degree() as u32;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            acc = acc * num + (c << (shift * (degree - i as u32)) as usize);
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.sign() == num_bigint::Sign::Minus {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.sign() == num_bigint::Sign::Minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = magnitude == BigInt::from(1);
            match (i, unit) {
                (0, _) => write!(f, "{magnitude}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{magnitude}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{magnitude}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial whose largest positive root is the growth
/// rate of the star language: `t^L − Σ_v t^(L−|v|)` over the star-root
/// words `v`, with `L` the longest star-root length.
///
/// When the star root is the single core the polynomial collapses to
/// `t^|core| − 1`, whose largest root is 1. Taking `L` as the longest
/// star-root length (instead of `|q|`) removes a spurious factor `t^j`
/// whenever the quasiperiod itself is a core power; the positive roots are
/// unchanged.
pub fn growth_polynomial(analysis: &QuasiperiodAnalysis) -> IntPolynomial {
    let longest = analysis
        .star_root
        .iter()
        .map(Word::len)
        .max()
        .expect("star roots are nonempty");
    let mut coefficients = vec![BigInt::zero(); longest + 1];
    coefficients[longest] = BigInt::from(1);
    for v in &analysis.star_root {
        coefficients[longest - v.len()] = BigInt::from(-1);
    }
    IntPolynomial::new(coefficients)
}

fn validate_shape(p: &IntPolynomial) -> Result<()> {
    let coeffs = p.coefficients();
    if p.degree() < 1 {
        return Err(Error::PolynomialShape(format!(
            "degree must be at least 1, got {p}"
        )));
    }
    if coeffs[p.degree()] != BigInt::from(1) {
        return Err(Error::PolynomialShape(format!("not monic: {p}")));
    }
    if coeffs[..p.degree()]
        .iter()
        .any(|c| c.sign() == num_bigint::Sign::Plus)
    {
        return Err(Error::PolynomialShape(format!(
            "lower coefficients must be non-positive: {p}"
        )));
    }
    if coeffs[0].sign() != num_bigint::Sign::Minus {
        return Err(Error::PolynomialShape(format!(
            "constant term must be negative: {p}"
        )));
    }
    Ok(())
}

/// Largest positive root of a monic polynomial whose lower coefficients
/// are non-positive with a negative constant term. Such a polynomial is
/// negative on `(0, r)` and positive beyond its unique positive root `r`,
/// so bisection with exact sign evaluation is sound. The result is within
/// `tol` of the root, and never coarser than `2⁻⁶⁰`.
pub fn largest_positive_root(p: &IntPolynomial, tol: f64) -> Result<f64> {
    validate_shape(p)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if p.sign_at_dyadic(&BigInt::from(1), 0) == 0 {
        return Ok(1.0);
    }
    if p.sign_at_dyadic(&BigInt::from(1), 0) > 0 {
        return Err(Error::PolynomialShape(format!(
            "positive at 1, root below bracket: {p}"
        )));
    }

    // Grow the upper end until the sign flips; [1, 2] suffices whenever the
    // lower coefficients are 0 or −1.
    let mut hi = BigInt::from(2);
    while p.sign_at_dyadic(&hi, 0) <= 0 {
        hi *= 2;
    }

    let mut lo = BigInt::from(1);
    let mut shift: u32 = 0;
    let target = tol.min(2.0_f64.powi(-60));
    loop {
        let width = (&hi - &lo).to_f64().unwrap() / 2.0_f64.powi(shift as i32);
        if width <= target {
            break;
        }
        let mid = &lo + &hi; // numerator over 2^(shift+1)
        shift += 1;
        if p.sign_at_dyadic(&mid, shift) > 0 {
            hi = mid;
            lo *= 2;
        } else {
            lo = mid;
            hi *= 2;
        }
    }
    let denom = 2.0_f64.powi(shift as i32);
    Ok((lo.to_f64().unwrap() + hi.to_f64().unwrap()) / (2.0 * denom))
}

/// The smallest Pisot–Vijayaraghavan number: the real root of `t³ − t − 1`,
/// approximately 1.324718.
pub fn smallest_pisot() -> f64 {
    largest_positive_root(&IntPolynomial::from_i64(&[-1, -1, 0, 1]), 1e-15)
        .expect("the defining cubic is in shape")
}

/// Growth-rate report for one quasiperiod.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    /// The quasiperiod.
    pub quasiperiod: Word,
    /// Largest positive root of the characteristic polynomial: the
    /// exponential growth rate of the star-language counts.
    pub lambda: f64,
    /// Absolute tolerance of the reported root.
    pub tolerance: f64,
    /// The characteristic polynomial itself.
    pub polynomial: IntPolynomial,
    /// Smallest measured `pref(n)/λⁿ` over the sampled range; empirical
    /// stand-in for the lower growth constant.
    pub ratio_lo: f64,
    /// Largest measured `pref(n)/λⁿ` over the sampled range.
    pub ratio_hi: f64,
    /// Whether the core length divides the quasiperiod length.
    pub divides: bool,
}

const ROOT_TOL: f64 = 1e-12;
/// Range of lengths over which the prefix-count ratios are measured.
const RATIO_RANGE: std::ops::RangeInclusive<usize> = 10..=30;
/// Length at which the recurrence counts must reproduce the root.
const RADIUS_CHECK_HORIZON: usize = 200;
const RADIUS_CHECK_REL_TOL: f64 = 0.02;

/// Computes the growth rate of the star language of `q` together with
/// empirical ratio bounds, and cross-checks the root against the counting
/// recurrence: the largest `n ≤ 200` with a positive count must satisfy
/// `aₙ^(1/n) = λ` within 2%.
pub fn growth_report(q: &Word) -> Result<GrowthReport> {
    let analysis = quasiperiod::analyze(q)?;
    let polynomial = growth_polynomial(&analysis);
    let lambda = largest_positive_root(&polynomial, ROOT_TOL)?;

    let flower = build_star_automaton(&analysis.star_root)?;
    let pref = prefix_automaton(&flower)?;
    let pref_counts = count_words(&pref, *RATIO_RANGE.end())?;
    let mut ratio_lo = f64::INFINITY;
    let mut ratio_hi = f64::NEG_INFINITY;
    for n in RATIO_RANGE {
        let ratio = pref_counts[n].to_f64().unwrap() / lambda.powi(n as i32);
        ratio_lo = ratio_lo.min(ratio);
        ratio_hi = ratio_hi.max(ratio);
    }

    let star = star_counts_recurrence(&analysis.star_root, RADIUS_CHECK_HORIZON)?;
    let (n, count) = star
        .iter()
        .enumerate()
        .skip(1)
        .rfind(|(_, c)| !c.is_zero())
        .ok_or_else(|| Error::InvariantViolation("star language has no nonempty words".into()))?;
    let estimate = count.to_f64().unwrap().powf(1.0 / n as f64);
    if (estimate / lambda - 1.0).abs() > RADIUS_CHECK_REL_TOL {
        return Err(Error::InvariantViolation(format!(
            "growth rate {lambda:.9} of {q} disagrees with count estimate {estimate:.9} at n = {n}"
        )));
    }

    Ok(GrowthReport {
        quasiperiod: q.clone(),
        lambda,
        tolerance: ROOT_TOL,
        polynomial,
        ratio_lo,
        ratio_hi,
        divides: analysis.divides,
    })
}

/// The degree-`n` member of the extremal family:
/// `tⁿ − Σ_{i=0..⌊(n−1)/2⌋} tⁱ`.
pub fn extremal_polynomial(n: usize) -> Result<IntPolynomial> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "extremal polynomials start at degree 1".into(),
        ));
    }
    let mut coefficients = vec![BigInt::zero(); n + 1];
    coefficients[n] = BigInt::from(1);
    for c in coefficients.iter_mut().take((n - 1) / 2 + 1) {
        *c = BigInt::from(-1);
    }
    Ok(IntPolynomial::new(coefficients))
}

/// Outcome of checking the extremal family against the Pisot bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalReport {
    /// Largest degree checked.
    pub max_n: usize,
    /// Tolerance used for the comparisons.
    pub tol: f64,
    /// Roots of the extremal polynomials, by degree starting at 1.
    pub roots: Vec<f64>,
    /// Whether every root stays at most the Pisot constant plus `tol`.
    pub all_bounded: bool,
    /// Degrees whose root equals the Pisot constant within `tol`.
    pub equality_degrees: Vec<usize>,
    /// Largest degree for which all subset polynomials were enumerated.
    pub subset_max_n: usize,
    /// Whether the degree-`n` extremal polynomial had the largest root
    /// among all subset polynomials of its degree, for every enumerated
    /// degree.
    pub subsets_dominated: bool,
}

/// Checks that the extremal roots stay below the Pisot constant with
/// equality only in degrees 3 and 5, and that within each degree up to
/// `subset_max_n` the extremal polynomial dominates every polynomial
/// `tⁿ − Σ_{i∈M} tⁱ` with `0 ∈ M ⊆ {0, …, ⌊(n−1)/2⌋}`.
pub fn check_extremal_family(
    max_n: usize,
    tol: f64,
    subset_max_n: usize,
) -> Result<ExtremalReport> {
    if max_n < 5 {
        return Err(Error::InvalidArgument(
            "the equality degrees require max_n ≥ 5".into(),
        ));
    }
    let pisot = smallest_pisot();
    let mut roots = Vec::with_capacity(max_n);
    let mut all_bounded = true;
    let mut equality_degrees = Vec::new();
    for n in 1..=max_n {
        let root = largest_positive_root(&extremal_polynomial(n)?, tol.min(ROOT_TOL))?;
        if root > pisot + tol {
            all_bounded = false;
        }
        if (root - pisot).abs() <= tol {
            equality_degrees.push(n);
        }
        roots.push(root);
    }

    let mut subsets_dominated = true;
    for n in 1..=subset_max_n {
        let extremal_root = roots[n - 1];
        let top = (n - 1) / 2;
        // Subsets of {1, …, top}; exponent 0 is always present.
        for mask in 0..(1u32 << top) {
            let mut coefficients = vec![BigInt::zero(); n + 1];
            coefficients[n] = BigInt::from(1);
            coefficients[0] = BigInt::from(-1);
            for (i, c) in coefficients.iter_mut().enumerate().take(top + 1).skip(1) {
                if mask & (1 << (i - 1)) != 0 {
                    *c = BigInt::from(-1);
                }
            }
            let p = IntPolynomial::new(coefficients);
            let root = largest_positive_root(&p, tol.min(ROOT_TOL))?;
            if root > extremal_root + tol {
                subsets_dominated = false;
            }
        }
    }

    Ok(ExtremalReport {
        max_n,
        tol,
        roots,
        all_bounded,
        equality_degrees,
        subset_max_n,
        subsets_dominated,
    })
}

/// Survey of every quasiperiod up to `max_len`, one representative per
/// letter-renaming class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub alphabet_size: usize,
    pub max_len: usize,
    /// The Pisot constant, for comparison.
    pub pisot: f64,
    /// Largest growth rate observed.
    pub max_lambda: f64,
    /// Quasiperiods attaining the maximum within `1e−9`.
    pub argmax: Vec<Word>,
    /// One report per canonical quasiperiod, sorted by descending growth
    /// rate, then by length and word.
    pub reports: Vec<GrowthReport>,
}

/// Words whose distinct letters appear in first-occurrence order `a, b, …`;
/// exactly one representative per renaming class.
pub fn canonical_words(alphabet: &Alphabet, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut symbols = Vec::with_capacity(len);
    fn grow(
        alphabet: &Alphabet,
        len: usize,
        used: usize,
        symbols: &mut Vec<char>,
        out: &mut Vec<Word>,
    ) {
        if symbols.len() == len {
            let text: String = symbols.iter().collect();
            out.push(alphabet.word(&text).expect("symbols come from alphabet"));
            return;
        }
        let limit = (used + 1).min(alphabet.size());
        for i in 0..limit {
            symbols.push(alphabet.symbols()[i]);
            grow(alphabet, len, used.max(i + 1), symbols, out);
            symbols.pop();
        }
    }
    grow(alphabet, len, 0, &mut symbols, &mut out);
    out
}

/// Computes a growth report for every canonical quasiperiod of length 1 to
/// `max_len` over an alphabet of `alphabet_size` letters, sorted by
/// descending growth rate.
pub fn survey(alphabet_size: usize, max_len: usize) -> Result<SurveyReport> {
    if alphabet_size < 2 {
        return Err(Error::InvalidArgument(
            "survey needs an alphabet of at least 2 letters".into(),
        ));
    }
    if max_len == 0 || max_len > 12 {
        return Err(Error::InvalidArgument(
            "survey lengths range from 1 to 12".into(),
        ));
    }
    let alphabet = Alphabet::lowercase(alphabet_size)?;
    let mut reports = Vec::new();
    for len in 1..=max_len {
        for q in canonical_words(&alphabet, len) {
            reports.push(growth_report(&q)?);
        }
    }
    reports.sort_by(|a, b| {
        b.lambda
            .partial_cmp(&a.lambda)
            .expect("finite growth rates")
            .then(a.quasiperiod.len().cmp(&b.quasiperiod.len()))
            .then(a.quasiperiod.cmp(&b.quasiperiod))
    });
    let max_lambda = reports.first().map(|r| r.lambda).unwrap_or(1.0);
    let argmax = reports
        .iter()
        .filter(|r| (max_lambda - r.lambda).abs() <= 1e-9)
        .map(|r| r.quasiperiod.clone())
        .collect();
    Ok(SurveyReport {
        alphabet_size,
        max_len,
        pisot: smallest_pisot(),
        max_lambda,
        argmax,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Alphabet::covering(text).unwrap().word(text).unwrap()
    }

    fn poly(q: &str) -> IntPolynomial {
        growth_polynomial(&quasiperiod::analyze(&w(q)).unwrap())
    }

    #[test]
    fn characteristic_polynomials() {
        assert_eq!(poly("aba"), IntPolynomial::from_i64(&[-1, -1, 0, 1]));
        assert_eq!(
            poly("aabaa"),
            IntPolynomial::from_i64(&[-1, -1, -1, 0, 0, 1])
        );
        assert_eq!(poly("aa"), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(
            poly("aabaaaaba"),
            IntPolynomial::from_i64(&[-1, -1, 0, 0, -1, 0, 0, 0, 0, 1])
        );
    }

    #[test]
    fn polynomial_display() {
        assert_eq!(poly("aba").to_string(), "t^3 - t - 1");
        assert_eq!(poly("aabaa").to_string(), "t^5 - t^2 - t - 1");
        assert_eq!(poly("aa").to_string(), "t - 1");
        assert_eq!(poly("aabaaaaba").to_string(), "t^9 - t^4 - t - 1");
    }

    #[test]
    fn divides_with_composite_star_root_keeps_true_growth() {
        // abaaba: core aba divides the length, yet the star root has two
        // words of lengths 3 and 5; the polynomial deflates to degree 5.
        assert_eq!(
            poly("abaaba"),
            IntPolynomial::from_i64(&[-1, 0, -1, 0, 0, 1])
        );
    }

    #[test]
    fn pisot_root() {
        let root = largest_positive_root(&IntPolynomial::from_i64(&[-1, -1, 0, 1]), 1e-9).unwrap();
        assert!((root - 1.324718).abs() < 1e-6);
        assert!((smallest_pisot() - root).abs() < 1e-12);
    }

    #[test]
    fn simple_roots() {
        assert_eq!(
            largest_positive_root(&IntPolynomial::from_i64(&[-1, 1]), 1e-9).unwrap(),
            1.0
        );
        let quartic =
            largest_positive_root(&IntPolynomial::from_i64(&[-1, -1, 0, 0, 1]), 1e-9).unwrap();
        assert!((quartic - 1.2207).abs() < 1e-4);
        let degree9 = largest_positive_root(
            &IntPolynomial::from_i64(&[-1, -1, 0, 0, -1, 0, 0, 0, 0, 1]),
            1e-9,
        )
        .unwrap();
        assert!((degree9 - 1.167).abs() < 1e-3);
    }

    #[test]
    fn shape_violations_rejected() {
        // Positive lower coefficient.
        assert!(largest_positive_root(&IntPolynomial::from_i64(&[-1, 1, 0, 1]), 1e-9).is_err());
        // Non-monic.
        assert!(largest_positive_root(&IntPolynomial::from_i64(&[-1, 0, 2]), 1e-9).is_err());
        // Missing negative constant term.
        assert!(largest_positive_root(&IntPolynomial::from_i64(&[0, -1, 1]), 1e-9).is_err());
        // Constant polynomial.
        assert!(largest_positive_root(&IntPolynomial::from_i64(&[-1]), 1e-9).is_err());
    }

    #[test]
    fn sign_certificate_monotone_beyond_root() {
        // Once such a polynomial is non-negative it stays positive.
        for p in [poly("aba"), poly("aabaa"), poly("aabaaaaba")] {
            for step in 0..=100 {
                let t = 1.0 + step as f64 * 0.01;
                if p.eval_f64(t) >= 0.0 {
                    assert!(p.eval_f64(t * 1.01) > 0.0, "p = {p}, t = {t}");
                }
            }
        }
    }

    #[test]
    fn growth_reports_for_named_quasiperiods() {
        let aba = growth_report(&w("aba")).unwrap();
        assert!((aba.lambda - 1.324718).abs() < 1e-6);
        assert!(aba.ratio_lo > 0.0 && aba.ratio_lo <= aba.ratio_hi);

        let unary = growth_report(&w("aa")).unwrap();
        assert_eq!(unary.lambda, 1.0);
        assert!(unary.divides);

        // A shared cubic factor forces exactly equal roots.
        let aabaa = growth_report(&w("aabaa")).unwrap();
        assert!((aabaa.lambda - aba.lambda).abs() < 1e-9);
    }

    #[test]
    fn growth_report_of_divides_case_matches_counting() {
        // The counts of abaaba's star language really grow: the report must
        // reflect the star root, not the core alone.
        let report = growth_report(&w("abaaba")).unwrap();
        assert!(report.divides);
        assert!(report.lambda > 1.19 && report.lambda < 1.20);
    }

    #[test]
    fn extremal_family_members() {
        assert_eq!(
            extremal_polynomial(3).unwrap(),
            IntPolynomial::from_i64(&[-1, -1, 0, 1])
        );
        assert_eq!(
            extremal_polynomial(5).unwrap(),
            IntPolynomial::from_i64(&[-1, -1, -1, 0, 0, 1])
        );
        assert_eq!(
            extremal_polynomial(1).unwrap(),
            IntPolynomial::from_i64(&[-1, 1])
        );
        assert!(extremal_polynomial(0).is_err());
    }

    #[test]
    fn extremal_family_bounded_by_pisot() {
        let report = check_extremal_family(30, 1e-9, 12).unwrap();
        assert!(report.all_bounded);
        assert_eq!(report.equality_degrees, vec![3, 5]);
        assert!(report.subsets_dominated);
        // Degree 2: root 1; degree 4: the plastic-like quartic root.
        assert!((report.roots[1] - 1.0).abs() < 1e-9);
        assert!((report.roots[3] - 1.2207).abs() < 1e-4);
    }

    #[test]
    fn canonical_enumeration_collapses_renamings() {
        let ab = Alphabet::binary();
        let words = canonical_words(&ab, 3);
        assert_eq!(words.len(), 4);
        assert!(words.contains(&w("aba")));
        assert!(!words.iter().any(|q| q.to_string().starts_with('b')));
    }

    #[test]
    fn survey_small_lengths() {
        let five = survey(2, 5).unwrap();
        let argmax: Vec<String> = five.argmax.iter().map(Word::to_string).collect();
        assert_eq!(argmax, vec!["aba", "aabaa"]);
        assert!((five.max_lambda - five.pisot).abs() < 1e-9);
        for report in &five.reports {
            assert!(report.lambda <= five.pisot + 1e-9);
        }

        let three = survey(2, 3).unwrap();
        assert_eq!(three.argmax.len(), 1);
        assert_eq!(three.argmax[0], w("aba"));
        for report in three.reports.iter().skip(1) {
            assert!(report.lambda < three.max_lambda);
        }
    }

    #[test]
    fn survey_finds_extremal_shape_quasiperiods() {
        // a⁴ba⁴ realizes the degree-9 extremal polynomial.
        let report = growth_report(&w("aaaabaaaa")).unwrap();
        assert_eq!(report.polynomial, extremal_polynomial(9).unwrap());
    }
}
