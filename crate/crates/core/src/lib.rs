//! Exact arithmetic for simple dimension groups given as polynomial direct
//! limits `R(p_i)`, matrix limits and weighted Bratteli trees.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that decides a
//! property of an ordered group does so with exact integers and rationals;
//! floating point appears only in the clearly numeric helpers of
//! [`discretelab`] and is never used to produce an exact verdict.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod brattree;
pub mod certify;
pub mod discretelab;
pub mod error;
pub mod initial;
pub mod laurent;
pub mod lattice;
pub mod limitgroup;
pub mod linalg;
pub mod num;
pub mod upoly;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use limitgroup::{LimitGroup, PolySequence, RElement, Verdict};
