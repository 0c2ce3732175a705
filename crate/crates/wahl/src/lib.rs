//! Exact arithmetic for cyclic quotient and class-T surface singularities.
//!
//! The modules build on each other in order:
//!
//! - [`hjcore`]: big integers, exact rationals, Hirzebruch–Jung continued fractions.
//! - [`toric`]: resolution chains of cyclic quotients `(n, q)` and their lattice data.
//! - [`classt`]: recognition, invariants, going-up maps, enumeration and smoothing
//!   families of class-T singularities `T(d, n, a)`.
//! - [`surface`]: intersection bookkeeping for blowups and chain contractions.
//! - [`verify`]: the construction checker, with the eight worked constructions built in.
//! - [`tables`], [`script`] and [`json`]: table rows, blowup scripts and the JSON conventions
//!   shared by the command line tool and the browser demo.
//!
//! Nothing in the crate uses floating point.

pub mod classt;
mod error;
pub mod hjcore;
pub mod json;
pub mod script;
pub mod surface;
pub mod tables;
pub mod toric;
pub mod verify;

pub use error::{Error, Result};
pub use hjcore::{ChainWeights, Characteristic, Int, Rational};
