//! Simplicial isometric embeddings of indefinite metric polyhedra into
//! Minkowski space `ℝ^p_q`.
//!
//! A polyhedron here is a finite simplicial complex with an arbitrary real
//! number on each edge, stored as its signed square `g²`. Three solvers
//! produce maps whose induced squared edge lengths equal `g²`:
//!
//! * [`solve_greene`]: Newton continuation into `ℝ^q_q`, `q = max(d, 2n+1)`.
//! * [`solve_spanning`]: one linear solve, `p + q = 2n + 1 + |E|`.
//! * [`solve_gluing`]: per-star solves glued into `ℝ^p_p` with `p` depending
//!   only on the dimension `n` and maximum degree `d`.
//!
//! [`verify`] checks results without reusing solver state, and [`gram`]
//! gives the per-simplex quadratic forms and the signature lower bounds.
//!
//! The numeric code is generic over [`Scalar`] (`f64` or `f32`); the aliases
//! below fix the precision.

pub mod complex;
pub mod embed;
pub mod error;
pub mod families;
pub mod gram;
pub mod linalg;
pub mod minkowski;
pub mod scalar;
pub mod verify;

pub use complex::{IndefiniteMetric, InputMode, SimplicialComplex, Star};
pub use embed::{
    build_star_complex, free_euclidean_start, iota, partition_vertices, solve_gluing, solve_greene,
    solve_spanning, spanning_family, GluingOptions, GluingSolution, GreeneOptions, GreeneReport, Mode,
    Partition, SpanningOptions, SpanningSolution, StarComplex,
};
pub use error::{Error, Result};
pub use gram::{
    classify, obstruction, Classification, GramForm, InertiaTriple, Obstruction, ObstructionOptions,
    PolyhedronKind,
};
pub use minkowski::{MetricVector, Sign, Signature, SimplicialMap};
pub use scalar::{signed_sqrt, signed_square, Scalar};
pub use verify::{verify_all, VerificationReport};

pub type IndefiniteMetricF64 = IndefiniteMetric<f64>;
pub type IndefiniteMetricF32 = IndefiniteMetric<f32>;
pub type SimplicialMapF64 = SimplicialMap<f64>;
pub type SimplicialMapF32 = SimplicialMap<f32>;
pub type GramFormF64 = GramForm<f64>;
pub type GramFormF32 = GramForm<f32>;
pub type GreeneOptionsF64 = GreeneOptions<f64>;
pub type GreeneOptionsF32 = GreeneOptions<f32>;
pub type SpanningOptionsF64 = SpanningOptions<f64>;
pub type SpanningOptionsF32 = SpanningOptions<f32>;
