//! Reversible, weakly reversible and strongly reversible topologies.
//!
//! Finite spaces are handled exhaustively: enumeration up to homeomorphism,
//! the condensational preorder and its quotient, and the reversibility
//! predicates. Countable examples live in [`symbolic`] as finitely presented
//! descriptors, and [`ramsey`] holds the homogeneous-set extractors used for
//! sequences.

pub mod condensation;
pub mod enumeration;
pub mod error;
pub mod poset;
pub mod ramsey;
pub mod symbolic;
pub mod topology;

pub use condensation::{
    classify_strongly_reversible, condensational_leq, condensational_order, conv_hull, homeo_class,
    is_reversible, is_strongly_reversible, is_weakly_reversible, maximal_chains, sim_class, CondOrderDigraph,
    LeqMethod, ReversibilityMethod, StrongClass,
};
pub use enumeration::{enumerate_topologies, enumerate_via_preorders, Limits, Preorder, TopologyCatalog};
pub use error::TopologyError;
pub use poset::{poset_invariant, PosetInvariant};
pub use topology::{is_condensation, is_continuous, is_homeomorphism, FiniteTopology, Permutation, PointSet};
