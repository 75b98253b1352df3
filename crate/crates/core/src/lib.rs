//! Finite relational representations of residuated semigroups and bounded
//! representability games for join semilattice-ordered semigroups.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the command line
//! and everything else touching the outside world live in the `relrep` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
mod bits;
pub mod completion;
pub mod error;
pub mod games;
pub mod relational;

pub use bits::{BitMatrix, ElementSet, Members, MAX_CARRIER};
pub use error::{Error, Result};
