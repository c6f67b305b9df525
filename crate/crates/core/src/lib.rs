//! Exact tools for chain-link surgeries `Y_a^t` and hyperbolic torus bundles:
//! coefficient strings, Hirzebruch-Jung continued fractions, the families
//! `S1a..S2e`, cyclic subsets of `(Z^n, -I)`, an embedding search engine, and
//! the bounding classifier built on them.

pub mod chainstring;
pub mod classifier;
pub mod cli;
pub mod contfrac;
pub mod embedsearch;
pub mod error;
pub mod families;
pub mod lattice;

pub use chainstring::ChainString;
pub use error::{Error, Result};
