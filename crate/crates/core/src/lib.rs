//! Superpatterns and universal point sets for dominance drawings.
//!
//! The crate is organized around a few object kinds:
//!
//! * [`perm::Permutation`] — one-line-notation permutations and pattern
//!   embeddings into them;
//! * [`board::Board`] — chessboard representations (grids of cell counts);
//! * [`points::PointSet`] — planar point sets with exact rational
//!   coordinates, tagged by color;
//! * [`dag::Dag`] / [`drawing::Drawing`] — directed acyclic graphs and
//!   their (weak) dominance drawings;
//! * [`stouter::StOuterplanarGraph`] — st-outerplanar graphs together
//!   with the quadtree-based universal point sets they embed into.
//!
//! Constructions (superpatterns, point sets, embeddings) live beside
//! independent verifiers so that every constructive claim can be checked
//! by brute force on concrete instances.

pub mod board;
pub mod dag;
pub mod drawing;
pub mod gen;
pub mod pattern;
pub mod perm;
pub mod points;
pub mod stouter;
pub mod suite;
pub mod superpattern;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid board: {0}")]
    InvalidBoard(String),
    #[error("enumeration guard: n={n} exceeds limit {limit}; pass force=true to override")]
    EnumerationGuard { n: usize, limit: usize },
    #[error("tied coordinates: {0}")]
    TiedCoordinates(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("order dimension exceeds 2; antichain witness: {0:?}")]
    WidthExceeded([String; 3]),
    #[error("pattern not contained in text")]
    NotContained,
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
