//! Matching covered graphs, the perfect matching polytope, and the
//! recognition of graphs that are both Birkhoff–von Neumann and PM-compact.
//!
//! Two independent routes answer the same question. The oracle route
//! searches for conformal bicycles directly (exponential, desk scale). The
//! structural route takes the retract and matches it against a short list of
//! graph families in polynomial time. Both return checkable certificates.

pub mod bicycle;
pub mod corpus;
pub mod cycles;
pub mod error;
pub mod families;
pub mod format;
pub mod graph;
pub mod harness;
pub mod iso;
pub mod lp;
pub mod matching;
pub mod polytope;
pub mod recognizer;
pub mod retract;
pub mod thin;
pub mod tightcut;

pub use bicycle::{ConformalBicycle, OracleClassification};
pub use cycles::{CycleParity, CycleSeq, Parity};
pub use error::{Error, Result};
pub use graph::{build_graph, cut_of, underlying_simple, Cut, EdgeId, MultiGraph, Vertex};
pub use iso::IsoWitness;
pub use matching::PerfectMatching;
pub use polytope::{EdgeVector, SkeletonGraph};
pub use recognizer::{Decision, FamilyTag, FamilyVariant};
pub use retract::RetractResult;
pub use thin::{ReductionTrace, ThinEdgeReport};
pub use tightcut::{BInvariant, DecompositionTree};

/// Cap on the number of items an exhaustive enumeration may produce before
/// it fails with [`Error::BudgetExhausted`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(1_000_000);
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}
