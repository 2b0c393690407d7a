//! Generalized partition generating functions.
//!
//! sum_n p(n)_e q^n = prod_m prod_{n>=1} (1 - q^{mn})^{-e_m}.
//!
//! Two interchangeable expansion algorithms are kept as mutual oracles:
//!
//! * product path — apply each pentagonal-sparse Euler factor |e_m| times
//!   (divide for e_m > 0, multiply for e_m < 0); O(N sqrt(N) sum|e_m|) with
//!   small constants, the workhorse in modular rings;
//! * recurrence path — logarithmic differentiation gives weights
//!   c(j) = sum_{m | j} e_m * m * sigma_1(j/m) and the single-pass recurrence
//!   n a(n) = sum_{j=1}^{n} c(j) a(n-j), preferred in the exact ring.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::series::{div_euler_in_place, mul_euler_in_place, PowerSeries, RingSpec};
use crate::vector::ExponentVector;

/// sigma_1 (sum of divisors) for 0..precision; slot 0 is unused and set to 0.
pub(crate) fn sigma1_table(precision: usize) -> Vec<i64> {
    let mut table = vec![0i64; precision];
    for d in 1..precision {
        for multiple in (d..precision).step_by(d) {
            table[multiple] += d as i64;
        }
    }
    table
}

/// Log-derivative weights c(j) = sum_{m | j} e_m * m * sigma_1(j/m) for
/// j = 1..precision-1, returned with slot j holding c(j) (slot 0 unused).
/// These feed the recurrence n a(n) = sum_{j=1}^{n} c(j) a(n-j).
pub fn log_derivative_weights(e: &ExponentVector, precision: usize) -> Vec<i64> {
    let sigma = sigma1_table(precision);
    let mut c = vec![0i64; precision];
    for m in e.support() {
        let em = e.entry(m);
        for j in (m..precision).step_by(m) {
            c[j] += em * m as i64 * sigma[j / m];
        }
    }
    c
}

/// Exact-ring expansion through the sigma-weighted recurrence.
pub fn expand_by_recurrence(e: &ExponentVector, precision: usize) -> PowerSeries {
    if precision == 0 {
        return PowerSeries::from_bigints(Vec::new());
    }
    let c = log_derivative_weights(e, precision);
    let mut a = Vec::with_capacity(precision);
    a.push(BigInt::one());
    for n in 1..precision {
        let mut acc = BigInt::zero();
        for j in 1..=n {
            if c[j] != 0 {
                acc += &a[n - j] * c[j];
            }
        }
        let (q, r) = num_integer::Integer::div_rem(&acc, &BigInt::from(n));
        debug_assert!(r.is_zero(), "recurrence must divide exactly");
        a.push(q);
    }
    PowerSeries::from_bigints(a)
}

/// Expansion as a product of pentagonal-sparse Euler factors, valid in any ring.
pub fn expand_by_products(e: &ExponentVector, precision: usize, ring: RingSpec) -> Result<PowerSeries> {
    let mut series = PowerSeries::one(ring, precision)?;
    for m in e.support() {
        let em = e.entry(m);
        for _ in 0..em.unsigned_abs() {
            if em > 0 {
                // (1 - q^{mn})^{-1} factors: divide by the Euler factor
                div_euler_in_place(&mut series, m as u64);
            } else {
                mul_euler_in_place(&mut series, m as u64);
            }
        }
    }
    Ok(series)
}

/// Above this precision the exact ring switches from the quadratic recurrence
/// to the sparse product path, whose cost is additions instead of multiplies.
const EXACT_RECURRENCE_CUTOFF: usize = 10_000;

/// sum p(n)_e q^n truncated to `precision`, in the requested ring.
///
/// Modular rings always use the sparse product. The exact ring uses the
/// recurrence up to a cutoff and the sparse product beyond it; the two
/// algorithms agree coefficient-for-coefficient (see the cross-check tests).
pub fn expand_generalized(e: &ExponentVector, precision: usize, ring: RingSpec) -> Result<PowerSeries> {
    ring.validate()?;
    match ring {
        RingSpec::Exact if precision <= EXACT_RECURRENCE_CUTOFF => {
            Ok(expand_by_recurrence(e, precision))
        }
        _ => expand_by_products(e, precision, ring),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::euler_factor_series;

    fn ev(entries: &[i64]) -> ExponentVector {
        ExponentVector::new(entries.to_vec())
    }

    /// Brute-force multi-partition counter: number of ways to write n as a sum
    /// where each part size s divisible-by-m contributes with multiplicity
    /// from each of the e_m "colors". Implemented as direct dynamic programming
    /// over the defining product, one factor (1-q^s)^{-1} at a time.
    fn brute_force(e: &[i64], precision: usize) -> Vec<i64> {
        let mut a = vec![0i64; precision];
        a[0] = 1;
        for (idx, &em) in e.iter().enumerate() {
            let m = idx + 1;
            assert!(em >= 0, "brute force oracle only handles nonnegative entries");
            for _ in 0..em {
                // multiply by prod_{n>=1} (1-q^{mn})^{-1}: one coin-change pass
                // per part size mn
                for coin in (m..precision).step_by(m) {
                    for idx2 in coin..precision {
                        a[idx2] += a[idx2 - coin];
                    }
                }
            }
        }
        a
    }

    #[test]
    fn weights_for_unrestricted_partitions_are_divisor_sums() {
        let c = log_derivative_weights(&ev(&[1]), 7);
        assert_eq!(&c[1..], &[1, 3, 4, 7, 6, 12]);
    }

    #[test]
    fn weights_for_substituted_vector() {
        let c = log_derivative_weights(&ev(&[0, 1]), 5);
        assert_eq!(c[1], 0);
        assert_eq!(c[2], 2); // 2 * sigma1(1)
        assert_eq!(c[3], 0);
        assert_eq!(c[4], 6); // 2 * sigma1(2)
    }

    #[test]
    fn recurrence_reproduces_pentagonal_expansion() {
        // e = (-1) is prod (1 - q^n) itself
        let got = expand_by_recurrence(&ev(&[-1]), 8);
        assert_eq!(got.to_i64_vec(), vec![1, -1, -1, 0, 0, 1, 0, 1]);
        let factor = euler_factor_series(1, 8, RingSpec::Exact).unwrap();
        assert_eq!(got, factor);
    }

    #[test]
    fn expansion_matches_partition_numbers() {
        let got = expand_generalized(&ev(&[1]), 10, RingSpec::Exact).unwrap();
        assert_eq!(got.to_i64_vec(), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn expansion_of_substituted_vector() {
        let got = expand_generalized(&ev(&[0, 1]), 7, RingSpec::Exact).unwrap();
        assert_eq!(got.to_i64_vec(), vec![1, 0, 1, 0, 2, 0, 3]);
    }

    #[test]
    fn expansion_matches_brute_force_dp() {
        for e in [&[1][..], &[2], &[1, 0, 1], &[0, 2, 2], &[2, 1, 0, 2]] {
            let got = expand_generalized(&ev(e), 30, RingSpec::Exact).unwrap();
            assert_eq!(got.to_i64_vec(), brute_force(e, 30), "vector {e:?}");
        }
    }

    #[test]
    fn product_and_recurrence_paths_agree() {
        let vectors: &[&[i64]] = &[
            &[1],
            &[-1],
            &[2, 0, 0, 4],
            &[-3, 0, 0, -1],
            &[1, -2, 3],
            &[0, 1, 0, -5],
        ];
        for entries in vectors {
            let e = ev(entries);
            let rec = expand_by_recurrence(&e, 80);
            let prod = expand_by_products(&e, 80, RingSpec::Exact).unwrap();
            assert_eq!(rec, prod, "vector {entries:?}");
        }
    }

    #[test]
    fn modular_expansion_reduces_exact_expansion() {
        let e = ev(&[2, 0, 0, 4]);
        let exact = expand_generalized(&e, 40, RingSpec::Exact).unwrap();
        let modular = expand_generalized(&e, 40, RingSpec::modular(5).unwrap()).unwrap();
        assert_eq!(exact.reduce_mod(5).unwrap(), modular);
        // a known Type-1 congruence: the progression 5n+2 vanishes mod 5
        let (values, _) = modular.modular_values().unwrap();
        for idx in (2..40).step_by(5) {
            assert_eq!(values[idx], 0, "index {idx}");
        }
    }

    #[test]
    fn zero_vector_expands_to_one() {
        let got = expand_generalized(&ev(&[]), 5, RingSpec::Exact).unwrap();
        assert_eq!(got.to_i64_vec(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn support_vanishing_off_multiples_of_d() {
        let e = ev(&[0, 4, 0, 6]);
        let d = e.d().unwrap() as usize;
        let series = expand_generalized(&e, 60, RingSpec::Exact).unwrap();
        let coeffs = series.exact_coefficients().unwrap();
        for (n, v) in coeffs.iter().enumerate() {
            if n % d != 0 {
                assert!(v.is_zero(), "coefficient {n} should vanish");
            }
        }
        // and compression identifies the subsequence
        let compressed = expand_generalized(&e.compress().unwrap(), 30, RingSpec::Exact).unwrap();
        let sub = compressed.exact_coefficients().unwrap();
        for n in 0..30 {
            assert_eq!(coeffs[d * n], sub[n]);
        }
    }
}
