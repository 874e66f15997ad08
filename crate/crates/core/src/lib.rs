//! Core model for families of sets over `[n]` and the machinery around an
//! infinite family of counterexamples to the question of whether the
//! conditions behind the average-set-size theorem force an abundant element.
//!
//! The crate is `no_std` (with `alloc`): it holds the pure computational
//! pieces — bit-vector set algebra, the parametric construction, the
//! condition checkers, and the union-closure engine. File formats, reports,
//! and the command-line front end live in the companion `frankl-forge`
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod closure;
pub mod construct;
mod error;
mod family;
mod set;
pub mod verify;

pub use error::{Error, Result};
pub use family::{PairedSystem, SetFamily};
pub use set::ElementSet;
