//! Cayley graphs on dicyclic groups: construction, distance-regularity,
//! classification, and exhaustive surveys.

pub mod bitset;
pub mod cayley;
pub mod classifier;
pub mod fourier;
pub mod graph;
pub mod group;
pub mod metrics;
pub mod residue;
pub mod search;
pub mod structure;

pub use bitset::BitSet;
pub use cayley::{build_graph, canonicalize, ConnectionSpec, SpecError, SpecViolation};
pub use classifier::{classify, ClassTag, Classification, ClassifierError};
pub use graph::Graph;
pub use group::{AutomorphismParams, Dicyclic, Element, GroupTable};
pub use metrics::{is_distance_regular, DrgOutcome, IntersectionArray};
pub use residue::ResidueSet;
pub use search::{survey, SurveyOptions, SurveyReport};
pub use structure::FamilyTag;
