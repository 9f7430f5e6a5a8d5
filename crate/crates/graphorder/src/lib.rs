//! Graph orders over isomorphism types of finite simple graphs.
//!
//! The crate covers the subgraph, induced-subgraph and minor orders on
//! isomorphism types, the UN/UG number encodings, o-presentations, structural
//! oracles for the named graph families, and a bounded first-order evaluator
//! whose formula corpus is checked against those oracles.

pub mod canon;
pub mod encodings;
pub mod error;
pub mod graph;
pub mod fo;
pub mod graph6;
pub mod harness;
pub mod named;
pub mod notation;
pub mod opres;
pub mod oracles;
pub mod orders;
pub mod predicates;
pub mod universe;

pub use error::{Error, Result};
pub use graph::{CanonicalGraph, LabelledGraph};
pub use orders::OrderKind;
pub use universe::{enumerate_universe, Universe};

/// Sequence arithmetic over machine words.
pub type Sequence = encodings::ExpSequence<u64>;
/// Sequence arithmetic over arbitrary-precision naturals.
pub type BigSequence = encodings::ExpSequence<num_bigint::BigUint>;
