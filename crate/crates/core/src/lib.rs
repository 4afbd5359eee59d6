//! Exact computation of the Brill-Noether fundamental class on the Hecke
//! correspondence, together with rational and prime-field certificates of its
//! non-vanishing and a decision engine for non-emptiness of `B(2,K,k)`.

pub mod arith;
pub mod certificate;
pub mod chern;
mod error;
pub mod giambelli;
pub mod hecke;
pub mod modcert;
pub mod poly;
pub mod store;
pub mod suites;
pub mod verdict;

pub use error::{Error, Result};

/// Stamped into every persisted record and certificate.
pub const TOOL_VERSION: &str = concat!("hecke-core ", env!("CARGO_PKG_VERSION"));
