//! Almost-disjoint branch families and the refinement of the convergent
//! sequence space they induce.
//!
//! The model space is `ω ∪ {⋆}` with `n → ⋆`, so a subset `M ⊆ ω` indexes
//! both a set of terms of the sequence and the subsequence through it.

use serde::Serialize;

use super::omega::SetDescriptor;
use super::space::{member_open, refined_cover, BasicCover, PointedSet, SymbolicTopology};
use super::word::BranchWord;
use super::SymbolicError;

/// Finitely many branch sets with pairwise distinct words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ADFamily {
    members: Vec<BranchWord>,
}

impl ADFamily {
    pub fn new(members: Vec<BranchWord>) -> Result<ADFamily, SymbolicError> {
        for (i, a) in members.iter().enumerate() {
            if members[i + 1..].contains(a) {
                return Err(SymbolicError::Invalid(format!("word {a} listed twice")));
            }
        }
        Ok(ADFamily { members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn words(&self) -> &[BranchWord] {
        &self.members
    }

    /// `M_α` as a descriptor.
    pub fn descriptor(&self, alpha: usize) -> SetDescriptor {
        SetDescriptor::branch(self.members[alpha].clone())
    }

    pub fn descriptors(&self) -> Vec<SetDescriptor> {
        (0..self.len()).map(|a| self.descriptor(a)).collect()
    }

    /// `|M_α ∩ M_β|` for `α ≠ β`: the codes agree exactly on the levels
    /// `1..=lcp`.
    pub fn intersection_size(&self, alpha: usize, beta: usize) -> Option<usize> {
        self.members[alpha].common_prefix_len(&self.members[beta])
    }
}

/// The words `(0^i 1)^∞` for `i < k`.
pub fn ad_family(k: usize) -> ADFamily {
    let members = (0..k)
        .map(|i| BranchWord::new("", &format!("{}1", "0".repeat(i))).expect("well-formed word"))
        .collect();
    ADFamily { members }
}

/// Whether `ω ∖ M` is open in the convergent sequence space, i.e. whether
/// `M ∪ {⋆}` is closed there. `M` must be infinite.
pub fn f_m_closed_check(m: &SetDescriptor) -> Result<bool, SymbolicError> {
    if !m.is_infinite()? {
        return Err(SymbolicError::FiniteCandidate);
    }
    let complement = PointedSet {
        star: false,
        rest: m.clone().complement(),
    };
    member_open(&complement.into(), &SymbolicTopology::ConvSeq)
}

pub fn construct_o_star(fam: &ADFamily) -> Result<SymbolicTopology, SymbolicError> {
    if fam.is_empty() {
        return Err(SymbolicError::Invalid("the family must be nonempty".into()));
    }
    Ok(SymbolicTopology::Refined {
        removed: fam.descriptors(),
    })
}

/// The basic neighbourhood `(O ∪ {⋆}) ∖ ⋃_{α ∈ K} M_α` of `⋆`, for cofinite `O`.
pub fn basic_open(fam: &ADFamily, k: &[usize], o: &SetDescriptor) -> PointedSet {
    PointedSet {
        star: true,
        rest: SetDescriptor::difference(
            o.clone(),
            SetDescriptor::union(k.iter().map(|&a| fam.descriptor(a)).collect()),
        ),
    }
}

/// A point of `ω` inside a basic neighbourhood of `⋆`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureWitness {
    pub beta: usize,
    pub element: u64,
}

/// Finds a point of `ω` in the basic neighbourhood given by `K` and `O`,
/// taken from `M_β ∖ ⋃_{α ∈ K} M_α` for the least `β ∉ K`.
pub fn star_in_closure_check(
    fam: &ADFamily,
    k: &[usize],
    o: &SetDescriptor,
) -> Result<ClosureWitness, SymbolicError> {
    if !o.is_cofinite()? {
        return Err(SymbolicError::NotANeighbourhood);
    }
    if let Some(&bad) = k.iter().find(|&&a| a >= fam.len()) {
        return Err(SymbolicError::Invalid(format!("index {bad} outside the family")));
    }
    let beta = (0..fam.len())
        .find(|b| !k.contains(b))
        .ok_or(SymbolicError::NoBetaAvailable)?;
    let nbhd = basic_open(fam, k, o);
    let element = fam.members[beta]
        .elements()
        .find(|&n| nbhd.rest.contains(n))
        .ok_or(SymbolicError::Overflow)?;
    Ok(ClosureWitness { beta, element })
}

/// A member meeting the candidate in an infinite set: the open
/// `X ∖ M_α` contains `⋆` and misses infinitely many terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Blocker {
    pub alpha: usize,
    /// First elements of `candidate ∩ M_α`.
    pub common: Vec<u64>,
    pub neighbourhood: PointedSet,
    pub cover: BasicCover,
}

pub fn blocking_nbhd(candidate: &SetDescriptor, fam: &ADFamily) -> Result<Option<Blocker>, SymbolicError> {
    if !candidate.is_infinite()? {
        return Err(SymbolicError::FiniteCandidate);
    }
    let removed = fam.descriptors();
    for (alpha, m) in removed.iter().enumerate() {
        let meet = SetDescriptor::intersection(vec![candidate.clone(), m.clone()]);
        if !meet.is_infinite()? {
            continue;
        }
        let neighbourhood = PointedSet {
            star: true,
            rest: m.clone().complement(),
        };
        let cover = refined_cover(&neighbourhood, &removed)?.expect("X ∖ M_α is a basic open");
        let common = fam.members[alpha].elements().filter(|&n| candidate.contains(n)).take(5).collect();
        return Ok(Some(Blocker {
            alpha,
            common,
            neighbourhood,
            cover,
        }));
    }
    Ok(None)
}
