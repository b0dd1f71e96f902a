//! Combinatorial toolkit for Heegaard splittings of knot exteriors.
//!
//! Words in free groups, Whitehead graphs and the separability algorithm,
//! the multi-handle addition checker, chord-diagram models of Heegaard
//! diagrams, cyclic covers and pretzel-knot data. Everything here is pure
//! and allocation-only; file formats and the command line live in the
//! `heegaard` crate.
#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

pub mod cover;
pub mod diagram;
mod error;
pub mod factor;
pub mod freegroup;
pub mod pretzel;
pub mod whitehead;

pub use error::{Error, Result};
