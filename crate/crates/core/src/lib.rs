//! Desk-scale laboratory for edge unlearning in graph neural networks and
//! for membership-inference attacks against unlearned models.
//!
//! The crate is organized around the lifecycle of an inversion experiment:
//!
//! * [`graph`] — graph data model, CSV ingestion, synthetic block-model
//!   generation, shadow/target partitioning, and propagation matrices.
//! * [`numerics`] — dense/sparse linear algebra, a conjugate-gradient SPD
//!   solver, probability utilities, and the seeded RNG contract. Generic
//!   over the scalar type; the rest of the crate uses the [`F`] alias.
//! * [`victim`] — two-layer GCN and linear GCN victims with manual
//!   forward/backward passes and full-batch Adam training.
//! * [`unlearn`] — approximate edge unlearning (influence-update, noisy
//!   certified-style, gradient ascent) plus the exact retrain oracle.
//! * [`influence`] — closed-form edge-influence formulas for the linear
//!   victim, with finite-difference validators.
//! * [`attack`] — partial-knowledge gathering, confidence trend features,
//!   similarity backbones, and the trend-aware pair scorer.
//! * [`eval`] — query-set construction, grouped AUC, and the similarity /
//!   confidence studies.

pub mod attack;
pub mod error;
pub mod eval;
pub mod graph;
pub mod influence;
pub mod numerics;
pub mod unlearn;
pub mod victim;

pub use error::Error;

/// Scalar type used by the concrete pipeline.
pub type F = f64;
/// Dense row-major matrix over [`F`].
pub type Mat = numerics::DenseMatrix<F>;
/// Compressed sparse row matrix over [`F`].
pub type SparseMat = numerics::CsrMatrix<F>;
/// Probability distribution over classes, entries in `[0, 1]` summing to 1.
pub type Prob = numerics::ProbabilityVector<F>;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
