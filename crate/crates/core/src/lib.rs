//! SHAP scores for weighted-automaton models under Markovian background
//! distributions, computed through closed operator pipelines.
//!
//! Every numeric type is generic over [`Scalar`]; `f64` is the default
//! working precision and [`Rational`] gives exact arithmetic for checking.

pub mod alphabet;
pub mod boolean;
pub mod conditioning;
pub mod error;
pub mod json;
pub mod markov;
pub mod matrix;
pub mod oracle;
pub mod pattern;
pub mod scalar;
pub mod shap;
pub mod wa;

pub use alphabet::{Alphabet, Word, HASH};
pub use boolean::{BooleanModel, Clause, DecisionTree, DisjointDnf, Literal};
pub use error::{Error, Result};
pub use markov::{Extension, MarkovChain, Transitions, VectorMarkov};
pub use matrix::Matrix;
pub use pattern::Pattern;
pub use scalar::{Rational, Scalar};
pub use shap::{KTerm, ShapEngine, ShapReport, WeightMode};
pub use wa::{Materialized, Pipeline, Sort, WeightedAutomaton, WeightedTransducer};

/// Automaton over `f64`.
pub type Wa = WeightedAutomaton<f64>;
/// Transducer over `f64`.
pub type Wt = WeightedTransducer<f64>;
/// Automaton over exact rationals.
pub type RationalWa = WeightedAutomaton<Rational>;
/// Transducer over exact rationals.
pub type RationalWt = WeightedTransducer<Rational>;
