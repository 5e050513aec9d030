//! Exact computation of marked chromatic polynomials of hypergraphs and
//! subspace arrangements, (marked) independence series and their integer
//! powers, and characteristic polynomials of arrangements, with brute-force
//! counting oracles for every closed-form route.

pub mod error;
pub mod hypergraph;
pub mod arrangement;
pub mod conjecture;
pub mod marked_chromatic;
pub mod qseries;

pub use error::{Error, Result};
