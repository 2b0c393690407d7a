//! Asymptotic evaluation of generalized partition functions.
//!
//! For a nonzero vector e with nonnegative entries and d = gcd of its support,
//! p(dn)_e ~ lambda * A^{(1+gamma)/4} / (2 sqrt(pi) n^{(3+gamma)/4}) * e^{2 sqrt(A n)}
//! with gamma = sum e_{dn}, delta = sum e_{dn}/n, lambda = prod (m/2pi)^{e_{dm}/2}
//! and A = pi^2 delta / 6. Everything is evaluated in natural-log space: the
//! asymptotic near n = 10^4 is ~10^122 and would overflow any direct evaluation.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::expand_by_recurrence;
use crate::series::PowerSeries;
use crate::vector::ExponentVector;

/// Exact expansions inside [`ratio_table`] refuse to go past this index.
pub const DEFAULT_EXACT_BUDGET: usize = 20_000;

/// The asymptotic growth constants for a vector with nonnegative entries.
///
/// `delta` and `a_exact` = delta/6 are exact rationals; `a` = pi^2 * delta / 6
/// and `lambda_log` = ln(lambda) are the floating views used by the evaluator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticProfile {
    pub d: u64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: Ratio<i64>,
    pub lambda_log: f64,
    pub a: f64,
    /// A / pi^2 as an exact rational (= delta / 6).
    pub a_exact: Ratio<i64>,
}

/// Compute the profile. The constants are defined through the compressed
/// vector (indices dn), so the profile is invariant under compression.
pub fn profile(e: &ExponentVector) -> Result<AsymptoticProfile> {
    for (i, &v) in e.entries().iter().enumerate() {
        if v < 0 {
            return Err(Error::NegativeEntry { index: i + 1, value: v });
        }
    }
    let d = e.d()?;
    let compressed = e.compress()?;

    let mut beta = 0i64;
    let mut gamma = 0i64;
    let mut delta = Ratio::new(0, 1);
    let mut lambda_log = 0.0f64;
    let two_pi = 2.0 * std::f64::consts::PI;
    for m in compressed.support() {
        let em = compressed.entry(m);
        beta += m as i64 * em;
        gamma += em;
        delta += Ratio::new(em, m as i64);
        lambda_log += em as f64 / 2.0 * (m as f64 / two_pi).ln();
    }
    let a_exact = delta / 6;
    let a = std::f64::consts::PI.powi(2) * ratio_to_f64(&a_exact);
    Ok(AsymptoticProfile {
        d,
        beta,
        gamma,
        delta,
        lambda_log,
        a,
        a_exact,
    })
}

fn ratio_to_f64(r: &Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Modified exponential growth rate 2 sqrt(A): limsup log p(dn)_e / sqrt(n).
pub fn growth_rate(e: &ExponentVector) -> Result<f64> {
    Ok(2.0 * profile(e)?.a.sqrt())
}

/// A value known through its natural logarithm, rendered as
/// mantissa * 10^exp10.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogValue {
    pub ln: f64,
    pub mantissa: f64,
    pub exp10: i64,
}

impl LogValue {
    pub fn from_ln(ln: f64) -> LogValue {
        let log10 = ln / std::f64::consts::LN_10;
        let mut exp10 = log10.floor() as i64;
        let mut mantissa = 10f64.powf(log10 - exp10 as f64);
        // guard against boundary drift
        if mantissa >= 10.0 {
            mantissa /= 10.0;
            exp10 += 1;
        } else if mantissa < 1.0 {
            mantissa *= 10.0;
            exp10 -= 1;
        }
        LogValue { ln, mantissa, exp10 }
    }

    /// "1.187e36"-style rendering with `sig` significant digits.
    pub fn sci(&self, sig: usize) -> String {
        let decimals = sig.saturating_sub(1);
        let scale = 10f64.powi(decimals as i32);
        let mut mantissa = (self.mantissa * scale).round() / scale;
        let mut exp10 = self.exp10;
        if mantissa >= 10.0 {
            mantissa /= 10.0;
            exp10 += 1;
        }
        format!("{mantissa:.decimals$}e{exp10}")
    }
}

/// Evaluate the asymptotic main term P with p(dn)_e ~ P(n): log-space, then a
/// mantissa/decimal-exponent view good to ~15 significant digits.
pub fn evaluate_p(e: &ExponentVector, n: u64) -> Result<LogValue> {
    if n == 0 {
        return Err(Error::InvariantBreach("asymptotic evaluation needs n >= 1".into()));
    }
    let p = profile(e)?;
    Ok(evaluate_p_from_profile(&p, n))
}

pub fn evaluate_p_from_profile(p: &AsymptoticProfile, n: u64) -> LogValue {
    let nf = n as f64;
    let ln = p.lambda_log + (1.0 + p.gamma as f64) / 4.0 * p.a.ln()
        - (2.0 * std::f64::consts::PI.sqrt()).ln()
        - (3.0 + p.gamma as f64) / 4.0 * nf.ln()
        + 2.0 * (p.a * nf).sqrt();
    LogValue::from_ln(ln)
}

/// Natural log of a positive big integer, via its leading decimal digits.
pub(crate) fn ln_bigint(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "ln of a non-positive integer");
    let s = x.to_string();
    let lead_len = s.len().min(17);
    let lead: f64 = s[..lead_len].parse::<u64>().unwrap() as f64;
    lead.ln() + (s.len() - lead_len) as f64 * std::f64::consts::LN_10
}

/// Exact scientific rendering of a positive integer: decimal-string rounding
/// to `sig` significant digits (no float round-trip).
pub fn sci_string_from_bigint(x: &BigInt, sig: usize) -> String {
    assert!(x.is_positive() && sig >= 1);
    let s = x.to_string();
    let mut digits: Vec<u8> = s.bytes().map(|b| b - b'0').collect();
    let mut exp10 = (digits.len() - 1) as i64;
    // round at position `sig`
    if digits.len() > sig && digits[sig] >= 5 {
        let mut i = sig;
        loop {
            if i == 0 {
                digits.insert(0, 1);
                exp10 += 1;
                break;
            }
            i -= 1;
            if digits[i] == 9 {
                digits[i] = 0;
            } else {
                digits[i] += 1;
                break;
            }
        }
    }
    digits.truncate(sig);
    while digits.len() < sig {
        digits.push(0);
    }
    let mut out = String::new();
    out.push((b'0' + digits[0]) as char);
    if sig > 1 {
        out.push('.');
        for &d in &digits[1..] {
            out.push((b'0' + d) as char);
        }
    }
    out.push('e');
    out.push_str(&exp10.to_string());
    out
}

/// One row of an exact-vs-asymptotic comparison table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RatioRow {
    /// Progression step: the exact value is p(d*n)_e.
    pub n: u64,
    /// p(dn)_e rendered to 4 significant digits.
    pub p_exact: String,
    /// Asymptotic P(n) rendered to 4 significant digits.
    pub p_asym: String,
    /// p(dn)_e / P(n).
    pub ratio: f64,
    /// Ratio rendered to 5 decimal places.
    pub ratio_str: String,
}

pub fn ratio_table(e: &ExponentVector, ns: &[u64]) -> Result<Vec<RatioRow>> {
    ratio_table_with_budget(e, ns, DEFAULT_EXACT_BUDGET)
}

/// Exact values by the exact-ring recurrence; ratios to 5 decimals. The exact
/// expansion runs once to max(ns)*d + 1 terms and is refused above `budget`.
pub fn ratio_table_with_budget(
    e: &ExponentVector,
    ns: &[u64],
    budget: usize,
) -> Result<Vec<RatioRow>> {
    let prof = profile(e)?;
    let d = prof.d;
    let max_n = ns.iter().copied().max().unwrap_or(0);
    let needed = (max_n * d + 1) as usize;
    if needed > budget {
        return Err(Error::BudgetExceeded {
            requested: needed,
            budget,
        });
    }
    let series = expand_by_recurrence(e, needed);
    let coeffs = series.exact_coefficients().expect("exact expansion");
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let exact = &coeffs[(n * d) as usize];
        if !exact.is_positive() {
            return Err(Error::InvariantBreach(format!(
                "p({}) is not positive; ratio table expects positive coefficients",
                n * d
            )));
        }
        let asym = evaluate_p_from_profile(&prof, n);
        let ratio = (ln_bigint(exact) - asym.ln).exp();
        rows.push(RatioRow {
            n,
            p_exact: sci_string_from_bigint(exact, 4),
            p_asym: asym.sci(4),
            ratio,
            ratio_str: format!("{ratio:.5}"),
        });
    }
    Ok(rows)
}

pub fn render_table_text(rows: &[RatioRow]) -> String {
    let mut out = format!(
        "{:>8}  {:>14}  {:>14}  {:>9}\n",
        "n", "p_exact", "P", "ratio"
    );
    for r in rows {
        out.push_str(&format!(
            "{:>8}  {:>14}  {:>14}  {:>9}\n",
            r.n, r.p_exact, r.p_asym, r.ratio_str
        ));
    }
    out
}

pub fn render_table_csv(rows: &[RatioRow]) -> String {
    let mut out = String::from("n,p_exact,P,ratio\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.n, r.p_exact, r.p_asym, r.ratio_str));
    }
    out
}

/// Conjugacy-growth series of the finitary alternating group:
/// coefficient n is (p(n)_(2) + p(n)_(0,1)) / 2, always an integer.
pub fn alt_conjugacy_series(precision: usize) -> Result<PowerSeries> {
    let two_color = expand_by_recurrence(&ExponentVector::new(vec![2]), precision);
    let doubled = expand_by_recurrence(&ExponentVector::new(vec![0, 1]), precision);
    let a = two_color.exact_coefficients().unwrap();
    let b = doubled.exact_coefficients().unwrap();
    let mut out = Vec::with_capacity(precision);
    for n in 0..precision {
        let sum = &a[n] + &b[n];
        let (half, rem) = num_integer::Integer::div_rem(&sum, &BigInt::from(2));
        if !rem.is_zero() {
            return Err(Error::ParityViolation { index: n });
        }
        out.push(half);
    }
    Ok(PowerSeries::from_bigints(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(entries: &[i64]) -> ExponentVector {
        ExponentVector::new(entries.to_vec())
    }

    #[test]
    fn profile_of_unrestricted_partitions() {
        let p = profile(&ev(&[1])).unwrap();
        assert_eq!(p.d, 1);
        assert_eq!(p.gamma, 1);
        assert_eq!(p.delta, Ratio::new(1, 1));
        let two_pi = 2.0 * std::f64::consts::PI;
        assert!((p.lambda_log - (1.0 / two_pi.sqrt()).ln()).abs() < 1e-14);
        assert!((p.a - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
    }

    #[test]
    fn profile_of_doubled_vector() {
        let p = profile(&ev(&[2])).unwrap();
        assert_eq!(p.gamma, 2);
        assert_eq!(p.delta, Ratio::new(2, 1));
        let two_pi = 2.0 * std::f64::consts::PI;
        assert!((p.lambda_log - (1.0 / two_pi).ln()).abs() < 1e-14);
        assert!((p.a - std::f64::consts::PI.powi(2) / 3.0).abs() < 1e-12);
    }

    #[test]
    fn profile_of_1_0_1() {
        let p = profile(&ev(&[1, 0, 1])).unwrap();
        assert_eq!(p.d, 1);
        assert_eq!(p.gamma, 2);
        assert_eq!(p.delta, Ratio::new(4, 3));
        assert_eq!(p.a_exact, Ratio::new(2, 9));
        let want_lambda = 3.0f64.sqrt() / (2.0 * std::f64::consts::PI);
        assert!((p.lambda_log - want_lambda.ln()).abs() < 1e-14);
        assert!((p.a - 2.0 * std::f64::consts::PI.powi(2) / 9.0).abs() < 1e-12);
    }

    #[test]
    fn profile_is_compression_invariant() {
        let a = profile(&ev(&[0, 1])).unwrap();
        let b = profile(&ev(&[1])).unwrap();
        assert_eq!(a.d, 2);
        assert_eq!(b.d, 1);
        assert_eq!((a.beta, a.gamma, a.delta, a.a_exact), (b.beta, b.gamma, b.delta, b.a_exact));
        assert_eq!(a.lambda_log, b.lambda_log);
        assert_eq!(a.a, b.a);
    }

    #[test]
    fn profile_rejects_bad_vectors() {
        assert!(matches!(profile(&ev(&[])), Err(Error::ZeroVector)));
        assert!(matches!(
            profile(&ev(&[1, -1])),
            Err(Error::NegativeEntry { index: 2, value: -1 })
        ));
    }

    #[test]
    fn asymptotic_matches_table_rows() {
        let e = ev(&[1, 0, 1]);
        assert_eq!(evaluate_p(&e, 1000).unwrap().sci(4), "1.187e36");
        assert_eq!(evaluate_p(&e, 2000).unwrap().sci(4), "3.527e52");
        // independently computed at 40 digits: 6.0426509e122 (the printed
        // table truncates this one to 6.042 instead of rounding)
        let big = evaluate_p(&e, 10000).unwrap();
        assert_eq!(big.exp10, 122);
        assert!((big.mantissa - 6.0426509).abs() < 1e-5);
        assert_eq!(big.sci(4), "6.043e122");
    }

    #[test]
    fn classical_hardy_ramanujan_anchor() {
        // lambda A^{(1+gamma)/4} / (2 sqrt(pi) n^{(3+gamma)/4}) e^{2 sqrt(An)}
        // collapses to e^{pi sqrt(2n/3)} / (4 n sqrt(3)) for e = (1)
        for n in [10u64, 100, 1000] {
            let got = evaluate_p(&ev(&[1]), n).unwrap().ln;
            let nf = n as f64;
            let want =
                std::f64::consts::PI * (2.0 * nf / 3.0).sqrt() - (4.0 * nf * 3.0f64.sqrt()).ln();
            assert!(
                (got - want).abs() < 1e-10 * want.abs(),
                "n = {n}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn growth_rates() {
        let sym = growth_rate(&ev(&[1])).unwrap();
        assert!((sym - std::f64::consts::PI * (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert_eq!(format!("{sym:.5}"), "2.56510");
        let alt = growth_rate(&ev(&[2])).unwrap();
        assert!((alt - 2.0 * std::f64::consts::PI / 3.0f64.sqrt()).abs() < 1e-12);
        assert_eq!(format!("{alt:.5}"), "3.62760");
        // compression invariance
        assert_eq!(growth_rate(&ev(&[0, 1])).unwrap(), sym);
    }

    #[test]
    fn growth_rate_squared_is_4a_exactly() {
        for entries in [&[1][..], &[2], &[1, 0, 1], &[0, 2, 2]] {
            let p = profile(&ev(entries)).unwrap();
            // H = 2 sqrt(A) gives H^2/pi^2 = 2 delta / 3 as exact rationals,
            // which must be exactly 4 * (A/pi^2) in the stored representation
            let h2_over_pi2 = p.delta * Ratio::new(2, 3);
            assert_eq!(h2_over_pi2, p.a_exact * 4);
            let h = growth_rate(&ev(entries)).unwrap();
            assert!((h * h / p.a - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ratio_table_small_case() {
        let rows = ratio_table(&ev(&[1]), &[1]).unwrap();
        assert_eq!(rows[0].p_exact, "1.000e0");
        let p1 = evaluate_p(&ev(&[1]), 1).unwrap();
        assert!((rows[0].ratio - (-p1.ln).exp()).abs() < 1e-12);
    }

    #[test]
    fn ratio_table_budget() {
        assert!(matches!(
            ratio_table_with_budget(&ev(&[1]), &[100], 50),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn alt_series_first_values() {
        let s = alt_conjugacy_series(3).unwrap();
        // (p(n)_(2) + p(n)_(0,1)) / 2 with p_(2) = 1,2,5 and p_(0,1) = 1,0,1
        assert_eq!(s.to_i64_vec(), vec![1, 1, 3]);
    }

    #[test]
    fn sci_rendering_carries() {
        let x: BigInt = "99996".parse().unwrap();
        assert_eq!(sci_string_from_bigint(&x, 4), "1.000e5");
        let y: BigInt = "12344".parse().unwrap();
        assert_eq!(sci_string_from_bigint(&y, 4), "1.234e4");
        let z: BigInt = "12345".parse().unwrap();
        assert_eq!(sci_string_from_bigint(&z, 4), "1.235e4");
    }
}
