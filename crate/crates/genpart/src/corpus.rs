//! Conjecture corpus: loading, claim grouping, parallel batch verification,
//! and report emission.
//!
//! The corpus file is a single JSON document with header fields
//! {version, entry_count, provenance} and an `entries` array; each entry is
//! one printed conjecture {ell, vector (sparse map), residue, section,
//! truncated_group}. Entries sharing (ell, vector) are merged and their
//! residue union is decomposed into certificate units: the {delta_ell}
//! singleton, a full S_+ and/or S_-, and whatever residues remain (those can
//! only receive a bounded numeric check).

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::congruence::{
    delta_ell, is_prime, s_sets, verify_with, CongruenceClaim, SturmCertificate,
    Verdict,
};
use crate::error::{Error, Result};
use crate::partition::expand_by_recurrence;
use crate::series::mod_reduce_bigint;
use crate::vector::ExponentVector;

/// Exact-ring spot checks re-derive at most this many leading coefficients.
pub const SPOT_CHECK_CAP: usize = 4000;
pub const SPOT_CHECK_COUNT: usize = 10;

/// One printed conjecture: p(ell*n + residue)_vector ≡ 0 (mod ell).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub ell: u64,
    /// Sparse {index -> exponent} map, 1-based indices.
    pub vector: BTreeMap<u32, i64>,
    pub residue: u64,
    #[serde(default)]
    pub section: String,
    /// True when the printed source list for this (ell, residue) group ends
    /// in an ellipsis, i.e. the group cannot be completed from the source.
    #[serde(default)]
    pub truncated_group: bool,
}

#[derive(Serialize, Deserialize)]
struct CorpusFile {
    version: u32,
    entry_count: usize,
    provenance: String,
    entries: Vec<CorpusEntry>,
}

fn validate_entry(pos: usize, entry: &CorpusEntry) -> Result<ExponentVector> {
    if !is_prime(entry.ell) {
        return Err(Error::CorpusSchema(format!(
            "entry {pos}: ell = {} is not prime",
            entry.ell
        )));
    }
    if entry.residue == 0 || entry.residue >= entry.ell {
        return Err(Error::CorpusSchema(format!(
            "entry {pos}: residue {} outside [1, {}]",
            entry.residue,
            entry.ell - 1
        )));
    }
    let vector = ExponentVector::from_sparse(&entry.vector)
        .map_err(|e| Error::CorpusSchema(format!("entry {pos}: {e}")))?;
    if vector.is_zero() {
        return Err(Error::CorpusSchema(format!("entry {pos}: zero vector")));
    }
    Ok(vector)
}

/// Load and validate a corpus file. The header's entry_count is asserted
/// against the actual number of entries.
pub fn parse_corpus(path: impl AsRef<Path>) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path)?;
    let file: CorpusFile = serde_json::from_str(&text)?;
    if file.version != 1 {
        return Err(Error::CorpusSchema(format!(
            "unsupported corpus version {}",
            file.version
        )));
    }
    if file.entry_count != file.entries.len() {
        return Err(Error::CorpusSchema(format!(
            "header says {} entries, file has {}",
            file.entry_count,
            file.entries.len()
        )));
    }
    for (pos, entry) in file.entries.iter().enumerate() {
        validate_entry(pos, entry)?;
    }
    Ok(file.entries)
}

struct ResidueMeta {
    truncated: bool,
    sections: BTreeSet<String>,
}

/// Merge entries by (ell, canonical vector) and decompose each residue union
/// into certificate units. Duplicate (ell, vector, residue) triples are
/// deduplicated and reported as warnings.
pub fn group_claims(entries: &[CorpusEntry]) -> Result<(Vec<CongruenceClaim>, Vec<String>)> {
    let mut warnings = Vec::new();
    let mut groups: BTreeMap<(u64, ExponentVector), BTreeMap<u64, ResidueMeta>> = BTreeMap::new();
    for (pos, entry) in entries.iter().enumerate() {
        let vector = validate_entry(pos, entry)?;
        let group = groups.entry((entry.ell, vector)).or_default();
        match group.entry(entry.residue) {
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                warnings.push(format!(
                    "duplicate entry {pos}: ell = {}, vector = {:?}, residue = {}",
                    entry.ell, entry.vector, entry.residue
                ));
                let meta = slot.get_mut();
                meta.truncated |= entry.truncated_group;
                meta.sections.insert(entry.section.clone());
            }
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(ResidueMeta {
                    truncated: entry.truncated_group,
                    sections: BTreeSet::from([entry.section.clone()]),
                });
            }
        }
    }

    let mut claims = Vec::new();
    for ((ell, vector), residues) in &groups {
        let mut remaining: BTreeSet<u64> = residues.keys().copied().collect();
        let mut units: Vec<BTreeSet<u64>> = Vec::new();

        let delta = delta_ell(vector, *ell)?;
        if *ell >= 5 && remaining.remove(&delta) {
            units.push(BTreeSet::from([delta]));
        }
        if *ell >= 3 {
            let (s_plus, s_minus) = s_sets(vector, *ell)?;
            for s in [s_plus, s_minus] {
                if !s.is_empty() && s.is_subset(&remaining) {
                    for b in &s {
                        remaining.remove(b);
                    }
                    units.push(s);
                }
            }
        }
        if !remaining.is_empty() {
            units.push(remaining);
        }

        for unit in units {
            let truncated = unit.iter().any(|b| residues[b].truncated);
            let sections: BTreeSet<&str> = unit
                .iter()
                .flat_map(|b| residues[b].sections.iter().map(|s| s.as_str()))
                .collect();
            let mut source = sections.into_iter().collect::<Vec<_>>().join("+");
            if truncated {
                source.push_str(" (truncated group)");
            }
            let mut claim = CongruenceClaim::new(vector.clone(), *ell, unit);
            claim.source = source;
            claims.push(claim);
        }
    }
    Ok((claims, warnings))
}

/// Result of verifying one claim inside a batch run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClaimOutcome {
    pub index: usize,
    pub certificate: Option<SturmCertificate>,
    pub error: Option<String>,
    pub millis: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub claim_count: usize,
    pub verified: usize,
    pub refuted: usize,
    pub inconclusive: usize,
    pub errors: usize,
    pub by_kind: BTreeMap<String, usize>,
    /// True when any claim refuted or errored; the batch exit condition.
    pub failing: bool,
    pub corpus_checksum: String,
    pub numeric_depth: u64,
    pub spot_checks: usize,
    pub spot_check_cap: usize,
    pub total_millis: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusReport {
    pub summary: CorpusSummary,
    pub outcomes: Vec<ClaimOutcome>,
}

impl CorpusReport {
    /// Copy with timing fields zeroed, for byte-identical comparison of runs.
    pub fn without_timing(&self) -> CorpusReport {
        let mut report = self.clone();
        report.summary.total_millis = 0;
        for outcome in &mut report.outcomes {
            outcome.millis = 0;
        }
        report
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:>4}  {:<58} {:<14} {:>8}  {:<12} {:>8}\n",
            "#", "claim", "kind", "bound", "verdict", "ms"
        ));
        for outcome in &self.outcomes {
            match (&outcome.certificate, &outcome.error) {
                (Some(cert), _) => {
                    out.push_str(&format!(
                        "{:>4}  {:<58} {:<14} {:>8}  {:<12} {:>8}\n",
                        outcome.index,
                        cert.claim.to_string(),
                        cert.kind.to_string(),
                        cert.bound,
                        cert.verdict.to_string(),
                        outcome.millis
                    ));
                }
                (None, Some(err)) => {
                    out.push_str(&format!("{:>4}  error: {err}\n", outcome.index));
                }
                (None, None) => {}
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "claims: {}  verified: {}  refuted: {}  inconclusive: {}  errors: {}  ({})\n",
            s.claim_count,
            s.verified,
            s.refuted,
            s.inconclusive,
            s.errors,
            if s.failing { "FAILING" } else { "ok" }
        ));
        out
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Checksum over the canonical claim list: stable under file reformatting and
/// source-tag changes.
pub fn claims_checksum(claims: &[CongruenceClaim]) -> u64 {
    let mut canonical = String::new();
    for claim in claims {
        canonical.push_str(&format!("{}|{}|", claim.ell, claim.vector));
        for b in &claim.residues {
            canonical.push_str(&format!("{b},"));
        }
        canonical.push('\n');
    }
    fnv1a(canonical.as_bytes())
}

struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

/// Re-derive the leading coefficients of a Verified claim in the exact ring
/// (the recurrence path, independent of the modular product used to verify)
/// and confirm the progression values vanish mod ell.
fn spot_check(cert: &SturmCertificate, cap: usize) -> Result<()> {
    let ell = cert.claim.ell;
    let precision = ((cert.checked_max_index + 1) as usize).min(cap);
    let series = expand_by_recurrence(&cert.claim.vector, precision);
    let coeffs = series.exact_coefficients().expect("exact expansion");
    for &b in &cert.claim.residues {
        let mut idx = b as usize;
        while idx < precision {
            if mod_reduce_bigint(&coeffs[idx], ell) != 0 {
                return Err(Error::InvariantBreach(format!(
                    "spot check failed: claim {} verified but exact coefficient {idx} is {} mod {ell}",
                    cert.claim,
                    mod_reduce_bigint(&coeffs[idx], ell)
                )));
            }
            idx += ell as usize;
        }
    }
    Ok(())
}

/// Verify every claim on a bounded worker pool (`parallelism` threads,
/// 0 = one per logical CPU). Output order and content are deterministic and
/// independent of scheduling; per-claim errors are recorded, never fatal.
/// Ten deterministically-sampled Verified claims are spot-checked against the
/// exact ring before the report is returned.
pub fn run_corpus(
    claims: &[CongruenceClaim],
    parallelism: usize,
    numeric_depth: u64,
) -> Result<CorpusReport> {
    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| Error::CorpusSchema(format!("worker pool: {e}")))?;

    let outcomes: Vec<ClaimOutcome> = pool.install(|| {
        claims
            .par_iter()
            .enumerate()
            .map(|(index, claim)| {
                let t0 = Instant::now();
                let (certificate, error) = match verify_with(claim, numeric_depth) {
                    Ok(cert) => (Some(cert), None),
                    Err(e) => (None, Some(e.to_string())),
                };
                ClaimOutcome {
                    index,
                    certificate,
                    error,
                    millis: t0.elapsed().as_millis() as u64,
                }
            })
            .collect()
    });

    let mut summary = CorpusSummary {
        claim_count: claims.len(),
        verified: 0,
        refuted: 0,
        inconclusive: 0,
        errors: 0,
        by_kind: BTreeMap::new(),
        failing: false,
        corpus_checksum: format!("{:016x}", claims_checksum(claims)),
        numeric_depth,
        spot_checks: 0,
        spot_check_cap: SPOT_CHECK_CAP,
        total_millis: 0,
    };
    for outcome in &outcomes {
        match &outcome.certificate {
            Some(cert) => {
                *summary.by_kind.entry(cert.kind.to_string()).or_insert(0) += 1;
                match cert.verdict {
                    Verdict::Verified => summary.verified += 1,
                    Verdict::Refuted => summary.refuted += 1,
                    Verdict::Inconclusive => summary.inconclusive += 1,
                }
            }
            None => summary.errors += 1,
        }
    }
    summary.failing = summary.refuted > 0 || summary.errors > 0;

    // deterministic soundness spot check on up to SPOT_CHECK_COUNT verified claims
    let verified_indices: Vec<usize> = outcomes
        .iter()
        .filter(|o| {
            o.certificate
                .as_ref()
                .map(|c| c.verdict == Verdict::Verified)
                .unwrap_or(false)
        })
        .map(|o| o.index)
        .collect();
    if !verified_indices.is_empty() {
        let mut rng = SplitMix64(claims_checksum(claims));
        let mut chosen = BTreeSet::new();
        let want = SPOT_CHECK_COUNT.min(verified_indices.len());
        while chosen.len() < want {
            let pick = verified_indices[(rng.next() % verified_indices.len() as u64) as usize];
            chosen.insert(pick);
        }
        for index in chosen {
            let cert = outcomes[index].certificate.as_ref().unwrap();
            spot_check(cert, SPOT_CHECK_CAP)?;
            summary.spot_checks += 1;
        }
    }

    summary.total_millis = started.elapsed().as_millis() as u64;
    Ok(CorpusReport {
        summary,
        outcomes,
    })
}
