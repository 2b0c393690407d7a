//! Dense truncated power-series arithmetic over exact integers or integers mod m.
//!
//! A [`PowerSeries`] stores coefficients of q^0 .. q^(N-1); nothing is asserted
//! about indices >= N. All binary operations truncate to the minimum operand
//! precision, never widen. Euler factors prod (1 - q^{mn}) are generated in
//! pentagonal-sparse form and there are in-place kernels for multiplying and
//! dividing a dense series by one factor in O(N * sqrt(N/m)).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient ring: exact integers, or integers modulo m (any m >= 2, prime or not).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RingSpec {
    Exact,
    Modular { modulus: u64 },
}

/// Moduli must stay below 2^63 so that a + b never overflows u64 in the kernels.
pub const MAX_MODULUS: u64 = 1 << 63;

impl RingSpec {
    pub fn modular(modulus: u64) -> Result<Self> {
        if modulus < 2 || modulus >= MAX_MODULUS {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(RingSpec::Modular { modulus })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RingSpec::Exact)
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            RingSpec::Exact => None,
            RingSpec::Modular { modulus } => Some(*modulus),
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match self {
            RingSpec::Exact => Ok(()),
            RingSpec::Modular { modulus } => {
                if *modulus < 2 || *modulus >= MAX_MODULUS {
                    Err(Error::InvalidModulus(*modulus))
                } else {
                    Ok(())
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// scalar helpers for the modular ring
// ---------------------------------------------------------------------------

#[inline]
pub(crate) fn mod_add(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b; // safe: a, b < m < 2^63
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub(crate) fn mod_sub(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

#[inline]
pub(crate) fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Reduce a signed integer into [0, m).
pub(crate) fn mod_reduce_i64(v: i64, m: u64) -> u64 {
    let r = v.rem_euclid(m as i64);
    r as u64
}

pub(crate) fn mod_reduce_bigint(v: &BigInt, m: u64) -> u64 {
    let mm = BigInt::from(m);
    let mut r = v % &mm;
    if r.is_negative() {
        r += &mm;
    }
    // r in [0, m), fits u64
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// Inverse of a mod m via extended Euclid; None when gcd(a, m) != 1.
pub(crate) fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    let mut inv = old_s % m as i128;
    if inv < 0 {
        inv += m as i128;
    }
    Some(inv as u64)
}

// ---------------------------------------------------------------------------
// PowerSeries
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
enum Data {
    Exact(Vec<BigInt>),
    Modular { modulus: u64, values: Vec<u64> },
}

/// Dense truncated power series; `coeffs[i]` is the coefficient of q^i and the
/// precision equals the stored length.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries {
    data: Data,
}

impl PowerSeries {
    pub fn zero(ring: RingSpec, precision: usize) -> Result<Self> {
        ring.validate()?;
        Ok(match ring {
            RingSpec::Exact => PowerSeries {
                data: Data::Exact(vec![BigInt::zero(); precision]),
            },
            RingSpec::Modular { modulus } => PowerSeries {
                data: Data::Modular {
                    modulus,
                    values: vec![0; precision],
                },
            },
        })
    }

    pub fn one(ring: RingSpec, precision: usize) -> Result<Self> {
        let mut s = Self::zero(ring, precision)?;
        if precision > 0 {
            match &mut s.data {
                Data::Exact(c) => c[0] = BigInt::one(),
                Data::Modular { modulus, values } => values[0] = 1 % *modulus,
            }
        }
        Ok(s)
    }

    /// Build a series from signed integer coefficients, reducing into the ring.
    pub fn from_integers(ring: RingSpec, coeffs: &[i64]) -> Result<Self> {
        ring.validate()?;
        Ok(match ring {
            RingSpec::Exact => PowerSeries {
                data: Data::Exact(coeffs.iter().map(|&v| BigInt::from(v)).collect()),
            },
            RingSpec::Modular { modulus } => PowerSeries {
                data: Data::Modular {
                    modulus,
                    values: coeffs.iter().map(|&v| mod_reduce_i64(v, modulus)).collect(),
                },
            },
        })
    }

    pub fn from_bigints(coeffs: Vec<BigInt>) -> Self {
        PowerSeries {
            data: Data::Exact(coeffs),
        }
    }

    pub(crate) fn from_modular_values(modulus: u64, values: Vec<u64>) -> Self {
        debug_assert!(values.iter().all(|&v| v < modulus));
        PowerSeries {
            data: Data::Modular { modulus, values },
        }
    }

    pub fn ring(&self) -> RingSpec {
        match &self.data {
            Data::Exact(_) => RingSpec::Exact,
            Data::Modular { modulus, .. } => RingSpec::Modular { modulus: *modulus },
        }
    }

    pub fn precision(&self) -> usize {
        match &self.data {
            Data::Exact(c) => c.len(),
            Data::Modular { values, .. } => values.len(),
        }
    }

    /// Coefficients as exact integers; None for modular series.
    pub fn exact_coefficients(&self) -> Option<&[BigInt]> {
        match &self.data {
            Data::Exact(c) => Some(c),
            Data::Modular { .. } => None,
        }
    }

    /// Coefficients as residues in `[0, modulus)`; None for exact series.
    pub fn modular_values(&self) -> Option<(&[u64], u64)> {
        match &self.data {
            Data::Exact(_) => None,
            Data::Modular { modulus, values } => Some((values, *modulus)),
        }
    }

    /// Coefficient at `index` as a BigInt (modular residues come back in `[0, m)`).
    pub fn coefficient(&self, index: usize) -> Option<BigInt> {
        match &self.data {
            Data::Exact(c) => c.get(index).cloned(),
            Data::Modular { values, .. } => values.get(index).map(|&v| BigInt::from(v)),
        }
    }

    /// Reduce an exact series coefficient-wise into Z/m.
    pub fn reduce_mod(&self, modulus: u64) -> Result<PowerSeries> {
        RingSpec::modular(modulus)?;
        match &self.data {
            Data::Exact(c) => Ok(PowerSeries::from_modular_values(
                modulus,
                c.iter().map(|v| mod_reduce_bigint(v, modulus)).collect(),
            )),
            Data::Modular { .. } => Err(Error::RingMismatch),
        }
    }

    pub fn truncated(&self, precision: usize) -> PowerSeries {
        let mut s = self.clone();
        match &mut s.data {
            Data::Exact(c) => c.truncate(precision),
            Data::Modular { values, .. } => values.truncate(precision),
        }
        s
    }

    /// Convenience for tests on small series: coefficients as i64.
    /// Modular residues are returned as stored, in `[0, m)`.
    pub fn to_i64_vec(&self) -> Vec<i64> {
        match &self.data {
            Data::Exact(c) => c
                .iter()
                .map(|v| i64::try_from(v).expect("coefficient does not fit i64"))
                .collect(),
            Data::Modular { values, .. } => values.iter().map(|&v| v as i64).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// serde: coefficients travel as decimal strings so exact values survive JSON
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    ring: RingSpec,
    precision: usize,
    coefficients: Vec<String>,
}

impl Serialize for PowerSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coefficients = match &self.data {
            Data::Exact(c) => c.iter().map(|v| v.to_string()).collect(),
            Data::Modular { values, .. } => values.iter().map(|v| v.to_string()).collect(),
        };
        SeriesRepr {
            ring: self.ring(),
            precision: self.precision(),
            coefficients,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.coefficients.len() != repr.precision {
            return Err(DeError::custom("precision does not match coefficient count"));
        }
        match repr.ring {
            RingSpec::Exact => {
                let coeffs = repr
                    .coefficients
                    .iter()
                    .map(|s| s.parse::<BigInt>().map_err(DeError::custom))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Ok(PowerSeries::from_bigints(coeffs))
            }
            RingSpec::Modular { modulus } => {
                RingSpec::modular(modulus).map_err(DeError::custom)?;
                let values = repr
                    .coefficients
                    .iter()
                    .map(|s| {
                        s.parse::<u64>()
                            .map_err(DeError::custom)
                            .and_then(|v| {
                                if v < modulus {
                                    Ok(v)
                                } else {
                                    Err(DeError::custom("residue out of range"))
                                }
                            })
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Ok(PowerSeries::from_modular_values(modulus, values))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// ring-generic operations
// ---------------------------------------------------------------------------

/// Coefficient-wise product, truncated to min(a.precision, b.precision).
pub fn ps_mul(a: &PowerSeries, b: &PowerSeries) -> Result<PowerSeries> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    let n = a.precision().min(b.precision());
    match (&a.data, &b.data) {
        (Data::Exact(ca), Data::Exact(cb)) => {
            let mut out = vec![BigInt::zero(); n];
            for (i, ai) in ca.iter().enumerate().take(n) {
                if ai.is_zero() {
                    continue;
                }
                for (j, bj) in cb.iter().enumerate().take(n - i) {
                    if !bj.is_zero() {
                        out[i + j] += ai * bj;
                    }
                }
            }
            Ok(PowerSeries::from_bigints(out))
        }
        (
            Data::Modular { modulus, values: va },
            Data::Modular { values: vb, .. },
        ) => {
            let m = *modulus;
            let mut out = vec![0u64; n];
            for (i, &ai) in va.iter().enumerate().take(n) {
                if ai == 0 {
                    continue;
                }
                for (j, &bj) in vb.iter().enumerate().take(n - i) {
                    if bj != 0 {
                        out[i + j] = mod_add(out[i + j], mod_mul(ai, bj, m), m);
                    }
                }
            }
            Ok(PowerSeries::from_modular_values(m, out))
        }
        _ => Err(Error::RingMismatch),
    }
}

/// Multiplicative inverse: ps_mul(a, result) = 1 up to a's precision.
/// Requires a unit constant term (+-1 exactly; `gcd(a[0], m) = 1` modularly).
pub fn ps_invert(a: &PowerSeries) -> Result<PowerSeries> {
    let n = a.precision();
    match &a.data {
        Data::Exact(c) => {
            let a0 = c.first().ok_or(Error::NonUnitConstant)?;
            if !(a0.is_one() || (-a0).is_one()) {
                return Err(Error::NonUnitConstant);
            }
            // a0 is its own inverse
            let mut out = vec![BigInt::zero(); n];
            out[0] = a0.clone();
            for k in 1..n {
                let mut acc = BigInt::zero();
                for j in 1..=k {
                    if !c[j].is_zero() && !out[k - j].is_zero() {
                        acc += &c[j] * &out[k - j];
                    }
                }
                out[k] = -a0 * acc;
            }
            Ok(PowerSeries::from_bigints(out))
        }
        Data::Modular { modulus, values } => {
            let m = *modulus;
            let a0 = *values.first().ok_or(Error::NonUnitConstant)?;
            let inv0 = mod_inv(a0, m).ok_or(Error::NonUnitConstant)?;
            let mut out = vec![0u64; n];
            out[0] = inv0;
            for k in 1..n {
                let mut acc = 0u64;
                for j in 1..=k {
                    if values[j] != 0 && out[k - j] != 0 {
                        acc = mod_add(acc, mod_mul(values[j], out[k - j], m), m);
                    }
                }
                out[k] = mod_sub(0, mod_mul(inv0, acc, m), m);
            }
            Ok(PowerSeries::from_modular_values(m, out))
        }
    }
}

/// Integer power by binary exponentiation; negative exponents invert first.
pub fn ps_pow(a: &PowerSeries, exponent: i64) -> Result<PowerSeries> {
    if exponent == 0 {
        return PowerSeries::one(a.ring(), a.precision());
    }
    let base = if exponent < 0 { ps_invert(a)? } else { a.clone() };
    let mut e = exponent.unsigned_abs();
    let mut result: Option<PowerSeries> = None;
    let mut power = base;
    loop {
        if e & 1 == 1 {
            result = Some(match result {
                None => power.clone(),
                Some(r) => ps_mul(&r, &power)?,
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        power = ps_mul(&power, &power)?;
    }
    Ok(result.expect("exponent was nonzero"))
}

// ---------------------------------------------------------------------------
// Euler factors and pentagonal-sparse kernels
// ---------------------------------------------------------------------------

/// Nonzero terms of prod_{n>=1} (1 - q^{mn}) below `precision`, excluding the
/// constant term: offsets m*g_j for generalized pentagonal g_j = j(3j-1)/2,
/// paired with their sign bit (`true` = coefficient -1, from odd j).
pub(crate) fn pentagonal_terms(m: u64, precision: usize) -> Vec<(usize, bool)> {
    let mut terms = Vec::new();
    let m = m as u128;
    let mut j = 1u128;
    loop {
        let g1 = j * (3 * j - 1) / 2;
        let off1 = m * g1;
        if off1 >= precision as u128 {
            break;
        }
        let negative = j % 2 == 1;
        terms.push((off1 as usize, negative));
        let g2 = j * (3 * j + 1) / 2;
        let off2 = m * g2;
        if off2 < precision as u128 {
            terms.push((off2 as usize, negative));
        }
        j += 1;
    }
    terms
}

/// prod_{n>=1} (1 - q^{mn}) truncated to `precision`.
pub fn euler_factor_series(m: u64, precision: usize, ring: RingSpec) -> Result<PowerSeries> {
    if m < 1 {
        return Err(Error::InvariantBreach("euler factor needs m >= 1".into()));
    }
    let mut s = PowerSeries::one(ring, precision)?;
    let terms = pentagonal_terms(m, precision);
    match &mut s.data {
        Data::Exact(c) => {
            for (off, negative) in terms {
                c[off] = if negative { -BigInt::one() } else { BigInt::one() };
            }
        }
        Data::Modular { modulus, values } => {
            for (off, negative) in terms {
                values[off] = if negative { *modulus - 1 } else { 1 };
            }
        }
    }
    Ok(s)
}

/// Offsets with coefficient -1 (odd j) and +1 (even j), each ascending.
fn split_terms(terms: &[(usize, bool)]) -> (Vec<usize>, Vec<usize>) {
    let mut neg = Vec::with_capacity(terms.len());
    let mut pos = Vec::with_capacity(terms.len());
    for &(off, negative) in terms {
        if negative {
            neg.push(off);
        } else {
            pos.push(off);
        }
    }
    (neg, pos)
}

/// Lazy-reduction window: sums of up to terms+3 residues must fit u64.
fn lazy_reduction_ok(term_count: usize, modulus: u64) -> bool {
    (term_count as u128 + 3) * modulus as u128 <= u64::MAX as u128
}

/// Modular kernel shared by multiply/divide: walk `values` in the given
/// direction, adding the residues at `add` offsets and subtracting those at
/// `sub` offsets, with one reduction per coefficient. The moving pointers
/// track how many offsets fit below the current index.
fn apply_offsets_mod(
    values: &mut [u64],
    md: u64,
    add: &[usize],
    sub: &[usize],
    ascending: bool,
) {
    let n = values.len();
    if ascending {
        let (mut ap, mut sp) = (0usize, 0usize);
        for idx in 0..n {
            while ap < add.len() && add[ap] <= idx {
                ap += 1;
            }
            while sp < sub.len() && sub[sp] <= idx {
                sp += 1;
            }
            let mut plus = values[idx];
            for &off in &add[..ap] {
                plus += values[idx - off];
            }
            let mut minus = 0u64;
            for &off in &sub[..sp] {
                minus += values[idx - off];
            }
            values[idx] = (plus + md - minus % md) % md;
        }
    } else {
        let (mut ap, mut sp) = (add.len(), sub.len());
        for idx in (0..n).rev() {
            while ap > 0 && add[ap - 1] > idx {
                ap -= 1;
            }
            while sp > 0 && sub[sp - 1] > idx {
                sp -= 1;
            }
            let mut plus = values[idx];
            for &off in &add[..ap] {
                plus += values[idx - off];
            }
            let mut minus = 0u64;
            for &off in &sub[..sp] {
                minus += values[idx - off];
            }
            values[idx] = (plus + md - minus % md) % md;
        }
    }
}

/// Per-term-reduced fallback for moduli too large for the lazy window.
fn apply_offsets_mod_strict(
    values: &mut [u64],
    md: u64,
    add: &[usize],
    sub: &[usize],
    ascending: bool,
) {
    let n = values.len();
    let indices: Box<dyn Iterator<Item = usize>> = if ascending {
        Box::new(0..n)
    } else {
        Box::new((0..n).rev())
    };
    for idx in indices {
        let mut acc = values[idx];
        for &off in add {
            if off > idx {
                break;
            }
            acc = mod_add(acc, values[idx - off], md);
        }
        for &off in sub {
            if off > idx {
                break;
            }
            acc = mod_sub(acc, values[idx - off], md);
        }
        values[idx] = acc;
    }
}

/// In place, replace a by a * prod(1 - q^{mn}). Descending index order keeps
/// the update window pointing at untouched lower coefficients.
pub(crate) fn mul_euler_in_place(series: &mut PowerSeries, m: u64) {
    let n = series.precision();
    let terms = pentagonal_terms(m, n);
    if terms.is_empty() {
        return;
    }
    match &mut series.data {
        Data::Exact(c) => {
            for idx in (0..n).rev() {
                for &(off, negative) in &terms {
                    if off > idx {
                        break;
                    }
                    let v = c[idx - off].clone();
                    if negative {
                        c[idx] -= v;
                    } else {
                        c[idx] += v;
                    }
                }
            }
        }
        Data::Modular { modulus, values } => {
            let md = *modulus;
            let (neg, pos) = split_terms(&terms);
            // the factor's +1 terms add, its -1 terms subtract
            if lazy_reduction_ok(terms.len(), md) {
                apply_offsets_mod(values, md, &pos, &neg, false);
            } else {
                apply_offsets_mod_strict(values, md, &pos, &neg, false);
            }
        }
    }
}

/// In place, replace a by a / prod(1 - q^{mn}), i.e. multiply by the
/// q^m-substituted partition series. Feedback form: ascending index order,
/// b(n) = a(n) - sum_j s_j b(n - off_j).
pub(crate) fn div_euler_in_place(series: &mut PowerSeries, m: u64) {
    let n = series.precision();
    let terms = pentagonal_terms(m, n);
    if terms.is_empty() {
        return;
    }
    match &mut series.data {
        Data::Exact(c) => {
            for idx in 0..n {
                for &(off, negative) in &terms {
                    if off > idx {
                        break;
                    }
                    let v = c[idx - off].clone();
                    // subtracting a term with coefficient -1 adds
                    if negative {
                        c[idx] += v;
                    } else {
                        c[idx] -= v;
                    }
                }
            }
        }
        Data::Modular { modulus, values } => {
            let md = *modulus;
            let (neg, pos) = split_terms(&terms);
            // feedback negates the factor's signs: -1 terms add, +1 subtract
            if lazy_reduction_ok(terms.len(), md) {
                apply_offsets_mod(values, md, &neg, &pos, true);
            } else {
                apply_offsets_mod_strict(values, md, &neg, &pos, true);
            }
        }
    }
}
