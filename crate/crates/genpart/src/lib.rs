//! Generalized partition functions p(n)_e, their asymptotics, and certified
//! Ramanujan-type congruences.
//!
//! Given an integer vector e = (e_1, ..., e_k), the generalized partition
//! function p(n)_e is the coefficient of q^n in
//! prod_m prod_{n>=1} (1 - q^{mn})^{-e_m}. This crate provides:
//!
//! - [`series`]: dense truncated power-series arithmetic over exact integers
//!   or integers mod m, with pentagonal-sparse Euler-factor kernels sized for
//!   10^5..10^6-term expansions;
//! - [`partition`]: the generating-function expansion by two interchangeable
//!   algorithms (sparse products and a sigma-weighted recurrence);
//! - [`asymptotics`]: the growth constants (beta, gamma, delta, lambda, A),
//!   log-space evaluation of the asymptotic main term, and exact-vs-asymptotic
//!   ratio tables;
//! - [`congruence`]: Sturm-type bounds K and K' for congruences
//!   p(ell*n + B)_e ≡ 0 (mod ell), with construction of the underlying
//!   eta-quotient datum and finite verification;
//! - [`corpus`]: a machine-readable conjecture corpus, claim grouping, the
//!   parallel batch verifier, and report emission.

pub mod asymptotics;
pub mod congruence;
pub mod corpus;
pub mod error;
pub mod partition;
pub mod series;
pub mod vector;

pub use error::{Error, Result};
pub use series::{PowerSeries, RingSpec};
pub use vector::ExponentVector;
