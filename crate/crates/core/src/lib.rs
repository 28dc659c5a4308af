//! Exact computation with automorphisms of the `m`-adic tree, polyspinal
//! groups, contraction, conjugacy deciders and finite level quotients.
//!
//! The crate is `no_std` with `alloc`; the companion binary crate `madic`
//! provides file formats and a command-line interface.

#![no_std]

extern crate alloc;

pub mod conjugacy;
pub mod contraction;
pub mod error;
pub mod quotient;
pub mod spinal;
pub mod symops;
pub mod tree;
pub mod zmod;

pub use error::{Error, Result};
pub use spinal::{PolyspinalData, PolyspinalGroup};
pub use symops::Perm;
pub use tree::{Element, Generator, Portrait, Word};
