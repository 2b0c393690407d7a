//! Exponent vectors e = (e_1, ..., e_k) indexing generalized partition functions.
//!
//! Entry e_m weights the Euler factor in q^m; negative entries are first-class
//! (the congruence pipeline works with vectors whose entries are all <= 0).
//! Vectors are kept in canonical form: trailing zeros trimmed. The zero vector
//! is representable (it arises from mod-ell reduction); operations that need a
//! nonzero vector return [`Error::ZeroVector`].

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ExponentVector {
    entries: Vec<i64>,
}

impl ExponentVector {
    /// Canonicalize: trailing zeros are trimmed. An all-zero input yields the
    /// zero vector (empty entry list).
    pub fn new(mut entries: Vec<i64>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        ExponentVector { entries }
    }

    /// Build from a sparse {index -> value} map with 1-based indices.
    pub fn from_sparse(map: &BTreeMap<u32, i64>) -> Result<Self> {
        let mut entries = Vec::new();
        for (&idx, &value) in map {
            if idx == 0 {
                return Err(Error::InvalidClaim("vector index 0 (indices are 1-based)".into()));
            }
            if value != 0 {
                let idx = idx as usize;
                if entries.len() < idx {
                    entries.resize(idx, 0);
                }
                entries[idx - 1] = value;
            }
        }
        Ok(ExponentVector::new(entries))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// k: the largest index with a nonzero entry (0 for the zero vector).
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// e_m with 1-based m; zero beyond the stored length.
    pub fn entry(&self, m: usize) -> i64 {
        if m == 0 {
            return 0;
        }
        self.entries.get(m - 1).copied().unwrap_or(0)
    }

    /// Indices m with e_m != 0, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, _)| i + 1)
    }

    /// d = gcd of the support indices.
    pub fn d(&self) -> Result<u64> {
        let mut g = 0u64;
        for m in self.support() {
            g = g.gcd(&(m as u64));
        }
        if g == 0 {
            Err(Error::ZeroVector)
        } else {
            Ok(g)
        }
    }

    /// The compressed vector e' with e'_m = e_{dm}; satisfies d(e') = 1 and
    /// p(dn)_e = p(n)_{e'}.
    pub fn compress(&self) -> Result<ExponentVector> {
        let d = self.d()? as usize;
        let k = self.entries.len();
        let entries = (1..=k / d).map(|m| self.entry(d * m)).collect();
        Ok(ExponentVector::new(entries))
    }

    /// alpha = sum m * e_m.
    pub fn alpha(&self) -> i64 {
        let total: i128 = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, &e)| (i as i128 + 1) * e as i128)
            .sum();
        i64::try_from(total).expect("alpha overflows i64")
    }

    /// Entry-wise sum, e.g. for the multiplicativity of generating functions.
    pub fn plus(&self, other: &ExponentVector) -> ExponentVector {
        let k = self.entries.len().max(other.entries.len());
        let entries = (1..=k).map(|m| self.entry(m) + other.entry(m)).collect();
        ExponentVector::new(entries)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for ExponentVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExponentVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(ExponentVector::new(Vec::<i64>::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_trims_trailing_zeros() {
        let a = ExponentVector::new(vec![1, 0, 2, 0, 0]);
        let b = ExponentVector::new(vec![1, 0, 2]);
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn d_examples() {
        assert_eq!(ExponentVector::new(vec![1]).d().unwrap(), 1);
        assert_eq!(ExponentVector::new(vec![0, 1]).d().unwrap(), 2);
        assert_eq!(ExponentVector::new(vec![0, 4, 0, 6]).d().unwrap(), 2);
        assert!(ExponentVector::new(vec![]).d().is_err());
    }

    #[test]
    fn compress_examples() {
        assert_eq!(
            ExponentVector::new(vec![0, 1]).compress().unwrap(),
            ExponentVector::new(vec![1])
        );
        let fixed = ExponentVector::new(vec![1, 0, 1]);
        assert_eq!(fixed.compress().unwrap(), fixed);
        assert_eq!(
            ExponentVector::new(vec![0, 4, 0, 6]).compress().unwrap(),
            ExponentVector::new(vec![4, 6])
        );
        // compression always lands on d = 1
        assert_eq!(
            ExponentVector::new(vec![0, 4, 0, 6])
                .compress()
                .unwrap()
                .d()
                .unwrap(),
            1
        );
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(ExponentVector::new(vec![2, 0, 0, 4]).alpha(), 18);
        assert_eq!(ExponentVector::new(vec![2, 0, 0, 2]).alpha(), 10);
        assert_eq!(ExponentVector::new(vec![1]).alpha(), 1);
        assert_eq!(ExponentVector::new(vec![]).alpha(), 0);
    }

    #[test]
    fn sparse_construction() {
        let mut map = BTreeMap::new();
        map.insert(1u32, 2i64);
        map.insert(8u32, 2i64);
        let e = ExponentVector::from_sparse(&map).unwrap();
        assert_eq!(e, ExponentVector::new(vec![2, 0, 0, 0, 0, 0, 0, 2]));
    }

    #[test]
    fn display() {
        assert_eq!(ExponentVector::new(vec![-3, 0, 0, -1]).to_string(), "(-3,0,0,-1)");
    }
}
