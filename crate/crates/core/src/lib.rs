//! Edge mappings `f: E(K_n) -> E(K_n)` and the Ramsey-type parameters built on
//! them: fixed, shifted, free and exclusive copies of small patterns.

pub mod bounds;
pub mod canon;
pub mod constructions;
pub mod detect;
pub mod error;
pub mod extract;
pub mod graph;
pub mod mapping;
pub mod oracle;
pub mod pattern;
pub mod reproduce;
pub mod search;

mod embed;

pub use embed::contains;
pub use detect::{Certificate, Relation};
pub use error::{Error, Result};
pub use graph::{edge_ends, edge_id, EdgeId, SimpleGraph};
pub use mapping::{EdgeMapping, MapClass, ShiftProfile};
pub use pattern::{Family, PatternGraph};

/// Lowercase hex SHA-256 of `bytes`.
pub fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(bytes))
}
