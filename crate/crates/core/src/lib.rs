//! Central extensions of abelian groups and their group algebras, in exact
//! arithmetic.
//!
//! The crate builds the group `G_σ` of a 2-cocycle `σ : Q × Q → N`, its group
//! algebra `H = kG_σ` over the central subalgebra `C = kZ` of a finite index
//! central subgroup `Z`, and computes:
//!
//! * the regular trace of `H` over `C`, Cayley-Hamilton identities and trace
//!   Gram determinants specialised at points of `MaxSpec C`;
//! * the fiber algebras `H/mH` as twisted group algebras, their Wedderburn
//!   data via the skew normal form of the commutator pairing, explicit
//!   irreducible representations and stabilizers;
//! * winding-automorphism orbits on `MaxSpec C`.
//!
//! All scalars are elements of cyclotomic fields over `Q` ([`scalars::Cyclotomic`]).

pub mod abelian;
pub mod cocycle;
pub mod cycmatrix;
pub mod error;
pub mod extension;
pub mod fiber;
pub mod intlinalg;
pub mod orbits;
pub mod scalars;

pub use error::{Error, Result};

use std::fmt;

/// Order of a group element or root of unity; `Infinite` covers free
/// elements and scalars that are not roots of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedOrder {
    Finite(u64),
    Infinite,
}

impl ExtendedOrder {
    pub fn finite(self) -> Option<u64> {
        match self {
            ExtendedOrder::Finite(n) => Some(n),
            ExtendedOrder::Infinite => None,
        }
    }
}

impl fmt::Display for ExtendedOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedOrder::Finite(n) => write!(f, "{n}"),
            ExtendedOrder::Infinite => write!(f, "infinity"),
        }
    }
}
