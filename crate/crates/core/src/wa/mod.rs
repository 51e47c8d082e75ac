//! Weighted automata, weighted transducers and their operator algebra.

pub mod automaton;
pub mod pipeline;
pub mod transducer;

pub use automaton::{WeightedAutomaton, MAX_DENSE_DIM};
pub use pipeline::{Materialized, Pipeline, Sort};
pub use transducer::WeightedTransducer;
