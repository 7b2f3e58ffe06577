//! Finitely presented countable spaces: descriptor languages for subsets of
//! `ω`, `L_z` and `ω ∪ {⋆}`, topologies with decidable open-set membership,
//! bijections, and certificate-producing checks.

pub mod map;
pub mod omega;
pub mod ordered;
pub mod ostar;
pub mod space;
pub mod word;
pub mod zset;

use thiserror::Error;

pub use map::{image_descriptor, image_topology_symbolic, preserves_topology, SymbolicMap};
pub use omega::SetDescriptor;
pub use ordered::{nonreversibility_witness, ordered_z_chain, OrderedZChain, OrderedZWitness};
pub use ostar::{
    ad_family, basic_open, blocking_nbhd, construct_o_star, f_m_closed_check, star_in_closure_check,
    ADFamily, Blocker, ClosureWitness,
};
pub use space::{
    converges, member_open, unique_limits_check, Descriptor, Ground, Point, PointedSet, SymbolicSequence,
    SymbolicTopology, Tail,
};
pub use word::BranchWord;
pub use zset::{ZDescriptor, ZPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("descriptor outside the decidable fragment: {0}")]
    UnsupportedDescriptor(String),
    #[error("expected a descriptor over {expected}, found one over {found}")]
    GroundMismatch { expected: Ground, found: Ground },
    #[error("invalid branch word: {0}")]
    InvalidWord(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("permutation table is not a bijection")]
    NotABijection,
    #[error("every family member is excluded; no β is left")]
    NoBetaAvailable,
    #[error("candidate set is finite")]
    FiniteCandidate,
    #[error("set is not a cofinite neighbourhood")]
    NotANeighbourhood,
    #[error("no witness below 2^63")]
    Overflow,
}
