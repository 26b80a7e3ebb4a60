//! Decoding toolkit for quantum LDPC codes in CSS form.
//!
//! - [`gf2`]: bit-packed GF(2) linear algebra.
//! - [`code`], [`tanner`], [`alist`]: CSS codes, Tanner-graph metrics and
//!   parity-check file I/O.
//! - [`constructions`]: D-dimensional toric codes and the Steane code.
//! - [`uf`]: the cluster-growth Union-Find decoder.
//! - [`bp`]: fixed-round and tuning-free belief propagation, and BP with a
//!   Union-Find fallback.
//! - [`analysis`]: covering radii, reduced errors, logical bases, soundness.
//! - [`montecarlo`]: reproducible failure-rate estimation.

pub mod alist;
pub mod analysis;
pub mod bp;
pub mod code;
pub mod constructions;
pub mod error;
pub mod gf2;
pub mod montecarlo;
pub mod tanner;
pub mod uf;

pub use code::CssCode;
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use tanner::{NodeSet, TannerGraph};
