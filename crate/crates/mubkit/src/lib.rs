//! Construction and exact verification of mutually unbiased bases (MUBs)
//! over finite fields and finite commutative rings.
//!
//! The crate builds complete MUB families in prime-power dimensions from
//! ring-theoretic formulas, verifies orthonormality and unbiasedness
//! exactly in the cyclotomic integers Z[zeta_m], and provides a search
//! harness showing that character-composed-with-polynomial formula
//! families over composite-order rings never exceed the bound
//! 1 + min p_i^{e_i}.

pub mod error;
pub mod gf;
pub mod gr4;
pub mod ring;
pub mod mub;
pub mod verify;
pub mod files;

pub use error::{Error, Result};
