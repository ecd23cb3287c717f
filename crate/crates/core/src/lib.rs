//! Spectral analysis of random walks on finite weighted graphs.
//!
//! The crate builds the transition operator P, the Laplacian L = I − P, the
//! signless Laplacian Q = I + P and the combinatorial signless Laplacian
//! Θ = W + A of a weighted graph, decomposes them, and evaluates vertex
//! spectral measures, return probabilities, mixing quantities and the energy
//! efficiency of the graph. The [`bounds`] module checks a catalogue of
//! inequalities relating these quantities and reports each as a [`BoundCheck`].
//!
//! Graph, operator and spectral types are generic over [`Scalar`] (`f32` or
//! `f64`); the aliases below fix `f64`, which the walk, energy and bound
//! layers use.

pub mod bounds;
pub mod energy;
pub mod error;
pub mod graph_core;
pub mod operators;
pub mod scalar;
pub mod spectral;
pub mod suite;
pub mod walks;

pub use bounds::{BoundCheck, Context, Relation};
pub use error::{Error, Result};
pub use graph_core::{Bipartition, GraphSpec, WeightedGraph};
pub use operators::{GraphOperator, InnerProduct, OperatorKind};
pub use scalar::Scalar;
pub use spectral::{EmbeddingVector, SpectralDecomposition, StepMeasure};

pub type Graph = WeightedGraph<f64>;
pub type Graph32 = WeightedGraph<f32>;
pub type Operator = GraphOperator<f64>;
pub type Decomposition = SpectralDecomposition<f64>;
pub type Decomposition32 = SpectralDecomposition<f32>;
pub type Measure = StepMeasure<f64>;
