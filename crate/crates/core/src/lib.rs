//! Bipartite graph matching for clean-clean entity resolution.
//!
//! The crate covers the whole pipeline: turning two entity collections into a
//! weighted bipartite similarity graph ([`simgen`]), resolving the graph with
//! one of eight matching algorithms ([`matchers`]), and scoring the result
//! against a ground truth ([`evaluation`]). [`ingest`] reads and writes the
//! file formats involved, and [`recipes`] chains everything into named
//! end-to-end runs.

pub mod error;
pub mod evaluation;
pub mod graph;
pub mod ingest;
pub mod matchers;
pub mod matching;
pub mod profile;
pub mod recipes;
pub mod simgen;

pub use error::{Error, Result};
pub use graph::{Edge, NodeRef, Side, SimilarityGraph};
pub use matchers::{Algorithm, BahConfig, BmcBasis, MatcherConfig};
pub use matching::{AssignmentValue, Matching};
pub use profile::EntityProfile;
