//! Randomly oriented divisor graphs.
//!
//! The divisor graph on `1..=N` joins `a` and `b` whenever one divides the
//! other. Its reference orientation points every edge from the larger label to
//! its divisor; a random orientation reverses each edge independently with
//! probability `rho`. This crate provides:
//!
//! - [`numtheory`]: divisor-count sieves, primorials, and the prime sums that
//!   feed the explicit lower bounds.
//! - [`graph`]: the divisor graph, seeded orientation sampling, and CSR digraphs.
//! - [`scc`]: iterative Tarjan and a bitset closure oracle.
//! - [`diameter`]: directed diameters via iFUB, with an all-pairs oracle.
//! - [`exact`]: exact expected largest-SCC polynomials by enumeration.
//! - [`bounds`]: closed-form lower bounds on the expected largest SCC.
//! - [`simulate`]: reproducible Monte Carlo grids and log-linear fits.
//! - [`plot`]: a small SVG scatter renderer.
//! - [`cli`]: the command-line surface used by the `divorient` binary.

pub mod bounds;
pub mod cli;
pub mod diameter;
mod error;
pub mod exact;
pub mod format;
pub mod graph;
pub mod numtheory;
pub mod plot;
pub mod rng;
pub mod scc;
pub mod simulate;

pub use error::{Error, Result};
