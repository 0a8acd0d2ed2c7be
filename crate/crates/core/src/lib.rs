//! Exact-arithmetic toolkit for spectra and prime graphs of finite simple
//! classical groups.
//!
//! The crate is organized around four layers:
//!
//! * [`arith`]: integer factorization, primality, multiplicative orders,
//!   cyclotomic polynomials, and the primitive parts `k_i(a)` of `a^i - 1`.
//!   Everything is exact; no floating point anywhere.
//! * [`groups`]: classical group descriptors (family, rank, field), the
//!   spectrum membership test for primes, degree profiles, and the
//!   declarative tables of compact coclique data.
//! * [`graph`]: the prime graph on the group's spectrum primes, with
//!   tri-state edges (adjacent / non-adjacent / unknown), provenance per
//!   edge, and an exact maximum-coclique search.
//! * [`ledger`]: a declarative catalogue of arithmetic claims with typed
//!   checkers and a deterministic report, plus [`mersenne`], a small
//!   Lucas-Lehmer scanner feeding one of the catalogue claims.
//!
//! All public entry points are deterministic: same inputs, same outputs,
//! byte for byte, across runs and thread counts.

pub mod arith;
pub mod error;
pub mod graph;
pub mod groups;
pub mod ledger;
pub mod mersenne;

pub use error::{Error, Result};
