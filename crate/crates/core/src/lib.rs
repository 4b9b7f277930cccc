//! Binary t-server PIR codes: verification, constructions and search.
//!
//! * [`gf2`] packed binary vectors, generator matrices, rank and distances.
//! * [`pir`] exact t-PIR verification with checkable certificates.
//! * [`steiner`] codes defined by subset collections and property S_t.
//! * [`constructions`] lengthening, extension, shortening and friends.
//! * [`search`] the lexicographic lengthen-and-extend search and campaigns.
//! * [`bounds`] blocklength bounds and reference tables.

pub mod bounds;
pub mod constructions;
pub mod gf2;
pub mod pir;
pub mod search;
pub mod steiner;

#[cfg(test)]
mod test_support;

pub use gf2::{BitVector, GenMatrix, Gf2Error};
pub use pir::{
    check_certificate, verify_pir, PirCertificate, RecoveringSet, Verdict, VerifyOptions,
};
pub use steiner::{build_systematic, check_property_st, Collection, StCertificate, StVerdict};
