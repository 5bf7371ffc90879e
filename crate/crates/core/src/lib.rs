//! Exact machinery for regularity bounds on products of edge ideals.
//!
//! The crate is `no_std` and only needs `alloc`. It covers finite simple
//! graphs and their invariants, monomial ideal arithmetic, the quadratic
//! structure of `(IJ : ab)`, co-chordal cover transfer, graded Betti numbers
//! by two independent routes, and assembled checks of the regularity bounds.
#![no_std]

extern crate alloc;

pub mod betti;
pub mod colon;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod lab;
pub mod monomial;
pub mod transfer;

pub use error::{Error, Result};
pub use graph::{Graph, StandardKind, SubgraphRelation};
