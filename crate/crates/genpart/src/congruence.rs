//! Certified verification of generalized Ramanujan congruences
//! p(ell*n + B)_e ≡ 0 (mod ell).
//!
//! Pipeline: reduce e into [-ell+1, 0] entry-wise, construct the c-vector so
//! that e' = e_reduced - ell*c satisfies the eta-quotient conditions, read off
//! the weight w and level N, and turn the Sturm bound for the resulting space
//! into a finite coefficient check. Two certificate shapes exist:
//!
//! * Type 1 — a single residue B = delta_ell, bound K (ell >= 5);
//! * Type 2 — a full quadratic-residue class set S_+ or S_-, bound K' over
//!   the level N*ell^2 (ell >= 3; ell = 2 or 3 additionally need ell | alpha).
//!
//! Anything else (proper subsets, ell = 2, vectors vanishing mod ell) only
//! gets a bounded numeric check and an Inconclusive-if-clean verdict.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::expand_generalized;
use crate::series::{mod_inv, RingSpec};
use crate::vector::ExponentVector;

/// Progression steps checked per residue when no theorem applies.
pub const DEFAULT_NUMERIC_DEPTH: u64 = 2000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

fn require_prime(ell: u64) -> Result<()> {
    if is_prime(ell) {
        Ok(())
    } else {
        Err(Error::NotPrime(ell))
    }
}

/// Distinct prime divisors by trial division.
fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// vector-level reductions and residues
// ---------------------------------------------------------------------------

/// Map every entry to its unique representative in [-ell+1, 0] mod ell.
/// Entries divisible by ell become 0, so the result can be the zero vector.
pub fn reduce_mod_ell(e: &ExponentVector, ell: u64) -> Result<ExponentVector> {
    require_prime(ell)?;
    let l = ell as i64;
    let entries = e
        .entries()
        .iter()
        .map(|&v| {
            let r = v.rem_euclid(l);
            if r == 0 {
                0
            } else {
                r - l
            }
        })
        .collect();
    Ok(ExponentVector::new(entries))
}

/// The distinguished residue delta_ell = alpha / 24 mod ell (0 when ell | 24).
pub fn delta_ell(e: &ExponentVector, ell: u64) -> Result<u64> {
    require_prime(ell)?;
    if 24 % ell == 0 {
        return Ok(0);
    }
    let inv24 = mod_inv(24 % ell, ell).expect("ell coprime to 24");
    let alpha = e.alpha().rem_euclid(ell as i64) as u64;
    Ok((alpha as u128 * inv24 as u128 % ell as u128) as u64)
}

/// beta_e: the least n > 1 with n ≡ ell^{-1} alpha (mod 24), where for
/// ell | 24 the congruence is read mod 24/ell with ell^{-1} = exact division
/// (requires ell | alpha).
pub fn beta_e(e_reduced: &ExponentVector, ell: u64) -> Result<u64> {
    require_prime(ell)?;
    let alpha = e_reduced.alpha();
    let (target, base) = if 24 % ell == 0 {
        if alpha.rem_euclid(ell as i64) != 0 {
            return Err(Error::AlphaNotDivisible { ell, alpha });
        }
        let base = 24 / ell;
        (((alpha / ell as i64).rem_euclid(base as i64)) as u64, base)
    } else {
        let inv = mod_inv(ell % 24, 24).expect("ell coprime to 24") as i64;
        ((inv * alpha.rem_euclid(24)).rem_euclid(24) as u64, 24)
    };
    let mut n = target;
    while n <= 1 {
        n += base;
    }
    Ok(n)
}

/// Legendre symbol (a / ell) by Euler's criterion; ell must be an odd prime.
pub fn legendre(a: i64, ell: u64) -> Result<i32> {
    require_prime(ell)?;
    if ell == 2 {
        return Err(Error::EvenPrimeUnsupported);
    }
    let r = a.rem_euclid(ell as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    let mut result = 1u64;
    let mut base = r % ell;
    let mut exp = (ell - 1) / 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = (result as u128 * base as u128 % ell as u128) as u64;
        }
        base = (base as u128 * base as u128 % ell as u128) as u64;
        exp >>= 1;
    }
    Ok(if result == 1 { 1 } else { -1 })
}

/// The residue-class sets S_+ and S_-: gamma in [0, ell-1] with
/// ((gamma - delta_ell) / ell) = +1 resp. -1. delta_ell lies in neither.
pub fn s_sets(e: &ExponentVector, ell: u64) -> Result<(BTreeSet<u64>, BTreeSet<u64>)> {
    let delta = delta_ell(e, ell)?;
    let mut plus = BTreeSet::new();
    let mut minus = BTreeSet::new();
    for gamma in 0..ell {
        match legendre(gamma as i64 - delta as i64, ell)? {
            1 => {
                plus.insert(gamma);
            }
            -1 => {
                minus.insert(gamma);
            }
            _ => {}
        }
    }
    Ok((plus, minus))
}

// ---------------------------------------------------------------------------
// the eta datum: c-vector construction and derived constants
// ---------------------------------------------------------------------------

/// Everything the bound formulas need, produced by [`build_c_vector`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaDatum {
    pub e_reduced: ExponentVector,
    pub alpha_reduced: i64,
    pub delta_ell: u64,
    pub beta_e: u64,
    pub c: Vec<u64>,
    pub e_prime: ExponentVector,
    /// Weight w = -(1/2) sum e'_m.
    pub w: u64,
    /// omega = (1/24) sum m e'_m; the q-power offset of the eta quotient.
    pub omega: i64,
    pub n0: u64,
    /// Level N = 24 N0 / gcd(24, sum (N0/m) e'_m).
    pub level: u64,
}

/// Retries of the c-vector recursion with beta_e bumped by 24 when the parity
/// fix-ups have no room to act (the bump preserves beta mod 24, so every
/// condition still holds; it only enlarges the resulting bound).
const BETA_RETRY_LIMIT: u64 = 16;

/// Construct c >= 0 with e' = e_reduced - ell*c satisfying
/// (i) e'_m <= 0, (ii) 24 | sum m e'_m, (iii) 2 | sum e'_m,
/// (iv) 24 | sum (N/m) e'_m.
///
/// The recursion assigns c'_m = floor((beta - sum_{n>m} n c'_n)/m) from the
/// top support index down; index 1 always receives the final remainder (even
/// when e_1 = 0) so that sum m c'_m = beta holds for every support pattern.
/// If sum e'_m comes out odd, one of two parity fix-ups is applied. When
/// neither applies (c' concentrated on index 1), the whole recursion is rerun
/// with beta increased by 24 — e.g. (-3,0,0,-3) at ell = 11 has beta_e = 3,
/// whose c' = (3,0,0,0) is odd and unfixable, while beta = 27 succeeds. If no
/// retry lands within the limit the construction fails loudly, never guesses.
pub fn build_c_vector(e_reduced: &ExponentVector, ell: u64) -> Result<EtaDatum> {
    require_prime(ell)?;
    if e_reduced.is_zero() {
        return Err(Error::ZeroVector);
    }
    let l = ell as i64;
    for (i, &v) in e_reduced.entries().iter().enumerate() {
        if v > 0 || v <= -l {
            return Err(Error::InvariantBreach(format!(
                "entry e_{} = {v} not reduced into [{}, 0]",
                i + 1,
                -l + 1
            )));
        }
    }
    let alpha_reduced = e_reduced.alpha();
    let delta = delta_ell(e_reduced, ell)?;
    let beta_min = beta_e(e_reduced, ell)?;

    let k = e_reduced.len();
    let sum_e: i64 = e_reduced.entries().iter().sum();
    let mut chosen = None;
    let mut beta = beta_min;
    for _ in 0..BETA_RETRY_LIMIT {
        let mut c = vec![0u64; k];
        let mut remainder = beta;
        for m in (2..=k).rev() {
            if e_reduced.entry(m) != 0 {
                c[m - 1] = remainder / m as u64;
                remainder %= m as u64;
            }
        }
        c[0] = remainder;

        // condition (iii): sum e'_m = sum e_m - ell * sum c_m must be even
        let sum_c: i64 = c.iter().map(|&v| v as i64).sum();
        let mut ok = true;
        if (sum_e - l * sum_c).rem_euclid(2) != 0 {
            // fix-up 1: pull one unit off the smallest even index with c > 0
            if let Some(j) = (2..=k).step_by(2).find(|&j| c[j - 1] > 0) {
                c[j - 1] -= 1;
                c[0] += j as u64;
            } else if let Some(j) = (3..=k).step_by(2).find(|&j| c[j - 1] > 0) {
                // fix-up 2: shift one unit from an odd index j to j-1 and 1
                c[j - 1] -= 1;
                c[j - 2] += 1;
                c[0] += 1;
            } else {
                ok = false;
            }
        }
        if ok {
            chosen = Some((beta, c));
            break;
        }
        beta += 24;
    }
    let Some((beta, c)) = chosen else {
        return Err(Error::ConstructionFailure(format!(
            "parity of sum e'_m is odd and no fix-up branch applies for any \
             beta in {beta_min}..{beta} (e_reduced = {e_reduced}, ell = {ell})"
        )));
    };

    let e_prime_entries: Vec<i64> = (1..=k)
        .map(|m| e_reduced.entry(m) - l * c[m - 1] as i64)
        .collect();
    let e_prime = ExponentVector::new(e_prime_entries);

    // sum m c_m = beta_e is preserved by both fix-ups
    let weighted_c: u64 = c.iter().enumerate().map(|(i, &v)| (i as u64 + 1) * v).sum();
    if weighted_c != beta {
        return Err(Error::InvariantBreach(format!(
            "sum m c_m = {weighted_c} != beta_e = {beta}"
        )));
    }

    let sum_e_prime: i64 = e_prime.entries().iter().sum();
    if sum_e_prime.rem_euclid(2) != 0 || sum_e_prime >= 0 {
        return Err(Error::InvariantBreach(format!(
            "weight is not a positive integer: sum e'_m = {sum_e_prime}"
        )));
    }
    let w = (-sum_e_prime / 2) as u64;

    let weighted_e_prime: i64 = e_prime
        .entries()
        .iter()
        .enumerate()
        .map(|(i, &v)| (i as i64 + 1) * v)
        .sum();
    if weighted_e_prime % 24 != 0 {
        return Err(Error::InvariantBreach(format!(
            "omega is not integral: sum m e'_m = {weighted_e_prime}"
        )));
    }
    let omega = weighted_e_prime / 24;

    let mut n0: u64 = 1;
    for m in e_prime.support() {
        n0 = n0
            .checked_mul((m as u64) / n0.gcd(&(m as u64)))
            .ok_or_else(|| Error::InvariantBreach("lcm of support overflows".into()))?;
    }
    let scaled_sum: i128 = e_prime
        .support()
        .map(|m| (n0 / m as u64) as i128 * e_prime.entry(m) as i128)
        .sum();
    let level = 24 * n0 / gcd_with_24(scaled_sum);

    // condition (iv) is automatic: N/N0 = 24/g and g | sum (N0/m) e'_m scaled
    let iv_sum: i128 = e_prime
        .support()
        .map(|m| (level / m as u64) as i128 * e_prime.entry(m) as i128)
        .sum();
    if iv_sum % 24 != 0 {
        return Err(Error::InvariantBreach(format!(
            "condition (iv) violated: sum (N/m) e'_m = {iv_sum}"
        )));
    }

    // omega ≡ delta_ell (mod ell) whenever 24 is invertible mod ell
    if 24 % ell != 0 && omega.rem_euclid(l) as u64 != delta {
        return Err(Error::InvariantBreach(format!(
            "omega = {omega} is not congruent to delta_ell = {delta} mod {ell}"
        )));
    }

    Ok(EtaDatum {
        e_reduced: e_reduced.clone(),
        alpha_reduced,
        delta_ell: delta,
        beta_e: beta,
        c,
        e_prime,
        w,
        omega,
        n0,
        level,
    })
}

fn gcd_with_24(sum: i128) -> u64 {
    let reduced = (sum.unsigned_abs() % 24) as u64;
    if reduced == 0 {
        24
    } else {
        24u64.gcd(&reduced)
    }
}

/// floor((w/12) * level * prod_{p | level} (1 + 1/p)), in exact arithmetic.
pub fn sturm_term(w: u64, level: u64) -> u64 {
    let mut num: i128 = w as i128 * level as i128;
    let mut den: i128 = 12;
    for p in prime_divisors(level) {
        num *= (p + 1) as i128;
        den *= p as i128;
    }
    (num / den) as u64
}

fn correction(datum: &EtaDatum, ell: u64, strict: bool) -> Result<u64> {
    let num = datum.omega - datum.delta_ell as i64;
    if num <= 0 {
        // negative corrections clamp to zero: checking a superset of the
        // theorem's range preserves the equivalence
        if strict && num % ell as i64 != 0 {
            return Err(Error::InvariantBreach(format!(
                "correction (omega - delta)/ell = {num}/{ell} is not an integer"
            )));
        }
        return Ok(0);
    }
    if num % ell as i64 != 0 {
        return Err(Error::InvariantBreach(format!(
            "correction (omega - delta)/ell = {num}/{ell} is not an integer"
        )));
    }
    Ok((num / ell as i64) as u64)
}

/// Type-1 bound K: the congruence p(ell*n + delta_ell)_e ≡ 0 (mod ell) holds
/// for all n iff it holds for 0 <= n <= K. Requires ell >= 5.
pub fn bound_k(datum: &EtaDatum, ell: u64) -> Result<u64> {
    if ell < 5 {
        return Err(Error::InvalidClaim(format!(
            "the single-residue bound requires ell >= 5, got {ell}"
        )));
    }
    Ok(sturm_term(datum.w, datum.level) + correction(datum, ell, true)?)
}

/// Type-2 bound K': same statement over a full S_+ or S_- at level N*ell^2.
pub fn bound_k_prime(datum: &EtaDatum, ell: u64) -> Result<u64> {
    require_prime(ell)?;
    let level = datum
        .level
        .checked_mul(ell * ell)
        .ok_or_else(|| Error::InvariantBreach("level N*ell^2 overflows".into()))?;
    Ok(sturm_term(datum.w, level) + correction(datum, ell, false)?)
}

// ---------------------------------------------------------------------------
// claims, classification, verification
// ---------------------------------------------------------------------------

/// An alleged family p(ell*n + B)_e ≡ 0 (mod ell) for every B in `residues`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceClaim {
    pub vector: ExponentVector,
    pub ell: u64,
    pub residues: BTreeSet<u64>,
    #[serde(default)]
    pub source: String,
}

impl CongruenceClaim {
    pub fn new(vector: ExponentVector, ell: u64, residues: impl IntoIterator<Item = u64>) -> Self {
        CongruenceClaim {
            vector,
            ell,
            residues: residues.into_iter().collect(),
            source: String::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_prime(self.ell)?;
        if self.vector.is_zero() {
            return Err(Error::ZeroVector);
        }
        if self.residues.is_empty() {
            return Err(Error::InvalidClaim("empty residue set".into()));
        }
        for &b in &self.residues {
            if b == 0 || b >= self.ell {
                return Err(Error::InvalidClaim(format!(
                    "residue {b} outside [1, {}]",
                    self.ell - 1
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CongruenceClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bs: Vec<String> = self.residues.iter().map(|b| b.to_string()).collect();
        write!(
            f,
            "p({}n+{{{}}})_{} == 0 (mod {})",
            self.ell,
            bs.join(","),
            self.vector,
            self.ell
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    Type1,
    Type2Plus,
    Type2Minus,
    PartialNumeric,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CertificateKind::Type1 => "Type1",
            CertificateKind::Type2Plus => "Type2Plus",
            CertificateKind::Type2Minus => "Type2Minus",
            CertificateKind::PartialNumeric => "PartialNumeric",
        };
        f.write_str(s)
    }
}

/// classify_claim output: the kind plus the residue data it was matched against.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Classification {
    pub kind: CertificateKind,
    pub delta_ell: u64,
    pub s_plus: Option<BTreeSet<u64>>,
    pub s_minus: Option<BTreeSet<u64>>,
    /// Theorem hypothesis for ell in {2, 3}: ell | alpha.
    pub alpha_divisible: bool,
    pub note: Option<String>,
}

/// Structural classification. A Type-2 certificate only ever covers a FULL
/// S_+ or S_- set; claims covering a proper subset become PartialNumeric with
/// an explanatory note, never a false certificate.
pub fn classify_claim(claim: &CongruenceClaim) -> Result<Classification> {
    claim.validate()?;
    let ell = claim.ell;
    let delta = delta_ell(&claim.vector, ell)?;
    let alpha_divisible = claim.vector.alpha().rem_euclid(ell as i64) == 0;

    if ell == 2 {
        return Ok(Classification {
            kind: CertificateKind::PartialNumeric,
            delta_ell: delta,
            s_plus: None,
            s_minus: None,
            alpha_divisible,
            note: Some("ell = 2 is outside the certified pipeline (Legendre symbol undefined)".into()),
        });
    }

    let (s_plus, s_minus) = s_sets(&claim.vector, ell)?;
    let kind = if ell >= 5 && claim.residues.len() == 1 && claim.residues.contains(&delta) {
        CertificateKind::Type1
    } else if claim.residues == s_plus && (ell >= 5 || alpha_divisible) {
        CertificateKind::Type2Plus
    } else if claim.residues == s_minus && (ell >= 5 || alpha_divisible) {
        CertificateKind::Type2Minus
    } else {
        CertificateKind::PartialNumeric
    };
    let note = match kind {
        CertificateKind::PartialNumeric => Some(partial_note(claim, delta, &s_plus, &s_minus, alpha_divisible)),
        _ => None,
    };
    Ok(Classification {
        kind,
        delta_ell: delta,
        s_plus: Some(s_plus),
        s_minus: Some(s_minus),
        alpha_divisible,
        note,
    })
}

fn partial_note(
    claim: &CongruenceClaim,
    delta: u64,
    s_plus: &BTreeSet<u64>,
    s_minus: &BTreeSet<u64>,
    alpha_divisible: bool,
) -> String {
    if claim.ell == 3 && !alpha_divisible {
        return format!("ell = 3 requires 3 | alpha, alpha = {}", claim.vector.alpha());
    }
    if claim.residues.is_subset(s_plus) && &claim.residues != s_plus {
        return format!("residues are a proper subset of S+ = {s_plus:?}");
    }
    if claim.residues.is_subset(s_minus) && &claim.residues != s_minus {
        return format!("residues are a proper subset of S- = {s_minus:?}");
    }
    format!("residue set matches neither {{delta}} = {{{delta}}} nor S+ nor S- exactly")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Verified,
    Refuted,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Verified => "Verified",
            Verdict::Refuted => "Refuted",
            Verdict::Inconclusive => "Inconclusive",
        };
        f.write_str(s)
    }
}

/// A counterexample records the first progression point whose coefficient is
/// nonzero mod ell; `value` is that coefficient reduced mod ell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: u64,
    pub residue: u64,
    pub value: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SturmCertificate {
    pub claim: CongruenceClaim,
    pub kind: CertificateKind,
    pub datum: Option<EtaDatum>,
    /// K, K', or the numeric depth for PartialNumeric claims.
    pub bound: u64,
    /// Highest series coefficient index examined.
    pub checked_max_index: u64,
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
    pub note: Option<String>,
}

impl SturmCertificate {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("claim:    {}\n", self.claim));
        out.push_str(&format!("kind:     {}\n", self.kind));
        if let Some(d) = &self.datum {
            out.push_str(&format!(
                "datum:    e' = {}, w = {}, omega = {}, N = {}, delta = {}\n",
                d.e_prime, d.w, d.omega, d.level, d.delta_ell
            ));
        }
        let bound_label = if self.kind == CertificateKind::PartialNumeric {
            "depth"
        } else {
            "bound"
        };
        out.push_str(&format!("{bound_label}:    {}\n", self.bound));
        out.push_str(&format!("checked:  coefficients up to index {}\n", self.checked_max_index));
        out.push_str(&format!("verdict:  {}\n", self.verdict));
        if let Some(ce) = &self.counterexample {
            out.push_str(&format!(
                "counterexample: p({}*{}+{}) == {} (mod {})\n",
                self.claim.ell, ce.n, ce.residue, ce.value, self.claim.ell
            ));
        }
        if let Some(note) = &self.note {
            out.push_str(&format!("note:     {note}\n"));
        }
        out
    }
}

/// Scan the modular expansion of `vector` for violations over the claimed
/// progressions with 0 <= n <= max_n; returns the first one found.
fn scan_progressions(
    vector: &ExponentVector,
    ell: u64,
    residues: &BTreeSet<u64>,
    max_n: u64,
) -> Result<(Option<Counterexample>, u64)> {
    let max_b = *residues.iter().max().expect("nonempty residues");
    let precision = (ell * max_n + max_b + 1) as usize;
    let series = expand_generalized(vector, precision, RingSpec::modular(ell)?)?;
    let (values, _) = series.modular_values().expect("modular expansion");
    for n in 0..=max_n {
        for &b in residues {
            let idx = (ell * n + b) as usize;
            if values[idx] != 0 {
                return Ok((
                    Some(Counterexample {
                        n,
                        residue: b,
                        value: values[idx],
                    }),
                    ell * max_n + max_b,
                ));
            }
        }
    }
    Ok((None, ell * max_n + max_b))
}

pub fn verify(claim: &CongruenceClaim) -> Result<SturmCertificate> {
    verify_with(claim, DEFAULT_NUMERIC_DEPTH)
}

/// Classify, build the eta datum, compute the bound, and run the finite check
/// over the modular expansion of the ORIGINAL vector (reduction soundness
/// licenses checking e in place of e'). PartialNumeric claims are checked for
/// `numeric_depth` progression steps and come back Inconclusive when clean.
pub fn verify_with(claim: &CongruenceClaim, numeric_depth: u64) -> Result<SturmCertificate> {
    let classification = classify_claim(claim)?;
    let mut kind = classification.kind;
    let mut note = classification.note.clone();
    let mut datum = None;
    let mut bound = 0u64;

    if kind != CertificateKind::PartialNumeric {
        let reduced = reduce_mod_ell(&claim.vector, claim.ell)?;
        if reduced.is_zero() {
            // every entry divisible by ell: outside the theorem pipeline
            kind = CertificateKind::PartialNumeric;
            note = Some("vector vanishes mod ell; falling back to the numeric check".into());
        } else {
            let d = build_c_vector(&reduced, claim.ell)?;
            bound = match kind {
                CertificateKind::Type1 => bound_k(&d, claim.ell)?,
                _ => bound_k_prime(&d, claim.ell)?,
            };
            datum = Some(d);
        }
    }

    let max_n = if kind == CertificateKind::PartialNumeric {
        bound = numeric_depth.max(1);
        bound - 1
    } else {
        bound
    };

    let (counterexample, checked_max_index) =
        scan_progressions(&claim.vector, claim.ell, &claim.residues, max_n)?;
    let verdict = match (&counterexample, kind) {
        (Some(_), _) => Verdict::Refuted,
        (None, CertificateKind::PartialNumeric) => Verdict::Inconclusive,
        (None, _) => Verdict::Verified,
    };

    Ok(SturmCertificate {
        claim: claim.clone(),
        kind,
        datum,
        bound,
        checked_max_index,
        verdict,
        counterexample,
        note,
    })
}
