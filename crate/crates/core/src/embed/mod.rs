//! The three isometric embedding constructions.

mod gluing;
mod greene;
mod spanning;

pub use gluing::{
    build_star_complex, class_count, iota, partition_vertices, solve_gluing, GluingOptions, GluingReport,
    GluingSolution, Partition, StarComplex,
};
pub use greene::{free_euclidean_start, solve_greene, GreeneOptions, GreeneReport};
pub use spanning::{
    solve_spanning, spanning_family, SpanningFamily, SpanningOptions, SpanningSolution, CONDITION_LIMIT,
};

use crate::minkowski::SimplicialMap;
use crate::scalar::Scalar;
use crate::verify::{verify_immersion, verify_local_embedding, verify_simplicial_embedding, GeometricCheck};

/// Strength of injectivity requested from a solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Embedding,
    LocalEmbedding,
    Immersion,
}

impl Mode {
    /// Smallest Euclidean dimension `q` the Newton solver accepts for a complex
    /// of dimension `n` and maximum degree `d`.
    pub fn min_dimension(self, n: usize, d: usize) -> usize {
        match self {
            Mode::Embedding => d.max(2 * n + 1),
            Mode::LocalEmbedding => d.max(2 * n),
            Mode::Immersion => d,
        }
    }

    /// Runs the geometric check matching this mode.
    pub fn check<T: Scalar>(self, f: &SimplicialMap<T>, eps_geo: T) -> GeometricCheck {
        match self {
            Mode::Embedding => verify_simplicial_embedding(f, eps_geo),
            Mode::LocalEmbedding => verify_local_embedding(f, eps_geo),
            Mode::Immersion => verify_immersion(f, eps_geo),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Embedding => "embedding",
            Mode::LocalEmbedding => "local",
            Mode::Immersion => "immersion",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "embedding" => Ok(Mode::Embedding),
            "local" | "local_embedding" | "local-embedding" => Ok(Mode::LocalEmbedding),
            "immersion" => Ok(Mode::Immersion),
            other => Err(crate::Error::InvalidOption(format!("unknown mode `{other}`"))),
        }
    }
}
