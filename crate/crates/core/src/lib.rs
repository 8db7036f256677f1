//! Symbolic calculus for L-packets of even orthogonal groups over p-adic fields.
//!
//! The crate works entirely with formal data: square classes and Hilbert symbols,
//! parameters as multisets of typed summands, component groups and their characters,
//! theta transfer between orthogonal and symplectic packets, intertwining scalars and
//! a rewrite engine for local factors.

pub mod arithmetic;
pub mod cli;
pub mod error;
pub mod factors;
pub mod lir;
pub mod packets;
pub mod parameters;
pub mod sample;
pub mod theta;

pub use error::{Error, Result};
