//! Exact invariants of classical Hermitian symmetric spaces of compact type.
//!
//! Given a product of irreducible factors `I(k,s)`, `II(s)`, `III(s)` and
//! `IV(s)`, this crate computes the degree of the canonical projective
//! embedding, the normalized volume, the Gromov width, the invariant Γ and
//! the bounds on the minimal number `S_B` of Darboux charts needed to cover
//! the space. All arithmetic is exact.
//!
//! ```
//! use sbatlas::{atlas, spaces};
//!
//! let space = spaces::parse("I(3,6)").unwrap();
//! let r = atlas::report(&space, &atlas::RefinementTable::builtin()).unwrap();
//! assert_eq!(r.degree.to_string(), "42");
//! assert_eq!(r.sb.to_string(), "S_B = 43");
//! ```

pub mod arith;
pub mod atlas;
pub mod cli;
pub mod error;
pub mod invariants;
pub mod oracle;
pub mod spaces;

pub use arith::BigNat;
pub use error::{Error, Result};

/// Big integers travel as decimal strings in JSON.
pub(crate) fn serialize_decimal<S: serde::Serializer>(
    value: &BigNat,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(value)
}
