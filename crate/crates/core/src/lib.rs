//! Containment relations, universal-graph prefixes and adversarial gadget
//! families for graphs excluding a subdivided star.
//!
//! The crate is organised bottom-up: [`graph`] and [`io`] provide the carrier,
//! [`containment`] and [`connectivity`] the search engines, and the remaining
//! modules the constructions built on them. Every construction emits a
//! certificate that [`verify`] checks without reusing search code.

pub mod connectivity;
pub mod containment;
pub mod decomposition;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod guard;
pub mod io;
pub mod longest_path;
pub mod reduction;
pub mod skfree;
pub mod universal;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Alpha, ColoredGraph, Graph, Named, Path};
