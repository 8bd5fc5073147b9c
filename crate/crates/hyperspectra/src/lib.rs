//! Exact spectral-tensor invariants of r-uniform hypergraphs.
//!
//! The crate computes order-j traces of the adjacency, degree, Laplacian and
//! signless Laplacian tensors of a uniform hypergraph, both by closed formulas
//! and by direct enumeration of entry multisets weighted with Eulerian
//! closed-walk counts.  On top of the traces it builds Estrada-type index
//! estimates with certified error intervals and evaluates a family of
//! spectral inequalities with proven / violated / inconclusive outcomes.
//!
//! All trace arithmetic is exact (`BigRational`); floating point enters only
//! in eigensolvers, power iterations and series tails.

pub mod bounds;
pub mod hypergraph;
pub mod spectra;
pub mod tensor;
pub mod trace;
pub mod walks;

pub use bounds::{BoundId, BoundOptions, BoundOutcome, BoundReport, Satisfaction, SideValue};
pub use hypergraph::{DegreeProfile, GenKind, Hypergraph, HypergraphError, OddColoring};
pub use tensor::{EntryPattern, StructuredTensor, TensorKind};
pub use trace::{TraceConfig, TraceValue};
