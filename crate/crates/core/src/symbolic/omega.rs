//! Finitely presented subsets of `ω`.
//!
//! Membership is decidable for every descriptor. Set-level questions
//! (finiteness, cofiniteness, equality) are decided exactly for the fragment
//! built from finite, cofinite and branch sets: distinct branches are almost
//! disjoint, so modulo finite sets such a descriptor is a union of "atoms"
//! (one per branch word, plus the rest of `ω`), and above a computable cutoff
//! membership only depends on the atom.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::word::{level_of, BranchWord};
use super::SymbolicError;

/// Largest cutoff below which elements are listed explicitly.
const MAX_CUTOFF: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "lowercase")]
pub enum SetDescriptor {
    Finite { elements: Vec<u64> },
    Cofinite { excluded: Vec<u64> },
    Branch { word: BranchWord },
    /// `{start + i·step : i ∈ ω}`, `step ≥ 1`.
    Progression { start: u64, step: u64 },
    Union { of: Vec<SetDescriptor> },
    Intersection { of: Vec<SetDescriptor> },
    Difference { left: Box<SetDescriptor>, right: Box<SetDescriptor> },
}

fn sorted_unique(v: impl IntoIterator<Item = u64>) -> Vec<u64> {
    v.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

impl SetDescriptor {
    pub fn finite(elements: impl IntoIterator<Item = u64>) -> SetDescriptor {
        SetDescriptor::Finite {
            elements: sorted_unique(elements),
        }
    }

    pub fn cofinite(excluded: impl IntoIterator<Item = u64>) -> SetDescriptor {
        SetDescriptor::Cofinite {
            excluded: sorted_unique(excluded),
        }
    }

    /// All of `ω`.
    pub fn omega() -> SetDescriptor {
        SetDescriptor::Cofinite { excluded: vec![] }
    }

    pub fn empty() -> SetDescriptor {
        SetDescriptor::Finite { elements: vec![] }
    }

    pub fn branch(word: BranchWord) -> SetDescriptor {
        SetDescriptor::Branch { word }
    }

    pub fn progression(start: u64, step: u64) -> Result<SetDescriptor, SymbolicError> {
        if step == 0 {
            return Err(SymbolicError::Invalid("progression step must be positive".into()));
        }
        Ok(SetDescriptor::Progression { start, step })
    }

    pub fn union(of: Vec<SetDescriptor>) -> SetDescriptor {
        SetDescriptor::Union { of }
    }

    pub fn intersection(of: Vec<SetDescriptor>) -> SetDescriptor {
        SetDescriptor::Intersection { of }
    }

    pub fn difference(left: SetDescriptor, right: SetDescriptor) -> SetDescriptor {
        SetDescriptor::Difference {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// `ω ∖ self`.
    pub fn complement(self) -> SetDescriptor {
        SetDescriptor::difference(SetDescriptor::omega(), self)
    }

    /// Checks the storage invariants (sorted lists, positive steps); used on
    /// values coming from JSON.
    pub fn validate(&self) -> Result<(), SymbolicError> {
        match self {
            SetDescriptor::Finite { elements: l } | SetDescriptor::Cofinite { excluded: l } => {
                if l.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(SymbolicError::Invalid(
                        "element lists must be sorted and duplicate-free".into(),
                    ));
                }
                Ok(())
            }
            SetDescriptor::Branch { .. } => Ok(()),
            SetDescriptor::Progression { step, .. } => {
                if *step == 0 {
                    Err(SymbolicError::Invalid("progression step must be positive".into()))
                } else {
                    Ok(())
                }
            }
            SetDescriptor::Union { of } | SetDescriptor::Intersection { of } => {
                of.iter().try_for_each(SetDescriptor::validate)
            }
            SetDescriptor::Difference { left, right } => {
                left.validate()?;
                right.validate()
            }
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        match self {
            SetDescriptor::Finite { elements } => elements.binary_search(&n).is_ok(),
            SetDescriptor::Cofinite { excluded } => excluded.binary_search(&n).is_err(),
            SetDescriptor::Branch { word } => word.contains(n),
            SetDescriptor::Progression { start, step } => n >= *start && (n - start).is_multiple_of(*step),
            SetDescriptor::Union { of } => of.iter().any(|d| d.contains(n)),
            SetDescriptor::Intersection { of } => of.iter().all(|d| d.contains(n)),
            SetDescriptor::Difference { left, right } => left.contains(n) && !right.contains(n),
        }
    }

    /// Branch words occurring in the descriptor.
    pub fn words(&self) -> BTreeSet<BranchWord> {
        let mut out = BTreeSet::new();
        self.collect_words(&mut out);
        out
    }

    fn collect_words(&self, out: &mut BTreeSet<BranchWord>) {
        match self {
            SetDescriptor::Branch { word } => {
                out.insert(word.clone());
            }
            SetDescriptor::Union { of } | SetDescriptor::Intersection { of } => {
                of.iter().for_each(|d| d.collect_words(out))
            }
            SetDescriptor::Difference { left, right } => {
                left.collect_words(out);
                right.collect_words(out);
            }
            _ => {}
        }
    }

    fn max_listed(&self) -> Option<u64> {
        match self {
            SetDescriptor::Finite { elements: l } | SetDescriptor::Cofinite { excluded: l } => {
                l.last().copied()
            }
            SetDescriptor::Union { of } | SetDescriptor::Intersection { of } => {
                of.iter().filter_map(SetDescriptor::max_listed).max()
            }
            SetDescriptor::Difference { left, right } => left.max_listed().max(right.max_listed()),
            _ => None,
        }
    }

    /// Which atoms the set almost contains.
    fn signature(&self, atoms: &Atoms) -> Result<Vec<bool>, SymbolicError> {
        let width = atoms.words.len() + 1;
        Ok(match self {
            SetDescriptor::Finite { .. } => vec![false; width],
            SetDescriptor::Cofinite { .. } => vec![true; width],
            SetDescriptor::Branch { word } => {
                let idx = atoms
                    .words
                    .binary_search(word)
                    .expect("atoms cover every word of the descriptor");
                (0..width).map(|i| i == idx).collect()
            }
            SetDescriptor::Progression { .. } => {
                return Err(SymbolicError::UnsupportedDescriptor(
                    "arithmetic progressions lie outside the decidable set-level fragment".into(),
                ))
            }
            SetDescriptor::Union { of } => {
                let mut acc = vec![false; width];
                for d in of {
                    for (a, b) in acc.iter_mut().zip(d.signature(atoms)?) {
                        *a |= b;
                    }
                }
                acc
            }
            SetDescriptor::Intersection { of } => {
                let mut acc = vec![true; width];
                for d in of {
                    for (a, b) in acc.iter_mut().zip(d.signature(atoms)?) {
                        *a &= b;
                    }
                }
                acc
            }
            SetDescriptor::Difference { left, right } => left
                .signature(atoms)?
                .into_iter()
                .zip(right.signature(atoms)?)
                .map(|(a, b)| a && !b)
                .collect(),
        })
    }

    /// Exact description of the denoted set.
    pub fn denotation(&self) -> Result<Denotation, SymbolicError> {
        Denotation::of(self, &self.words())
    }

    pub fn is_infinite(&self) -> Result<bool, SymbolicError> {
        match self {
            SetDescriptor::Progression { .. } => Ok(true),
            SetDescriptor::Union { of } if of.iter().any(|d| d.is_infinite().unwrap_or(false)) => {
                Ok(true)
            }
            _ => {
                let atoms = Atoms::new(self.words());
                Ok(self.signature(&atoms)?.into_iter().any(|b| b))
            }
        }
    }

    pub fn is_cofinite(&self) -> Result<bool, SymbolicError> {
        let atoms = Atoms::new(self.words());
        Ok(self.signature(&atoms)?.into_iter().all(|b| b))
    }

    pub fn is_empty(&self) -> Result<bool, SymbolicError> {
        let d = self.denotation()?;
        Ok(d.signature.iter().all(|&b| !b) && d.low.is_empty())
    }

    /// Whether both descriptors denote the same subset of `ω`.
    pub fn same_set(&self, other: &SetDescriptor) -> Result<bool, SymbolicError> {
        let mut words = self.words();
        words.extend(other.words());
        Ok(Denotation::of(self, &words)? == Denotation::of(other, &words)?)
    }

    /// Elements of a finite set, or `None` if the set is infinite.
    pub fn finite_elements(&self) -> Result<Option<Vec<u64>>, SymbolicError> {
        let d = self.denotation()?;
        Ok(d.signature.iter().all(|&b| !b).then_some(d.low))
    }
}

/// Atoms of the almost-disjoint decomposition: sorted words plus "the rest".
struct Atoms {
    words: Vec<BranchWord>,
}

impl Atoms {
    fn new(words: BTreeSet<BranchWord>) -> Atoms {
        Atoms {
            words: words.into_iter().collect(),
        }
    }

    /// Above this level every number lies in exactly one atom.
    fn max_common_prefix(&self) -> usize {
        let mut max = 0;
        for (i, a) in self.words.iter().enumerate() {
            for b in &self.words[i + 1..] {
                max = max.max(a.common_prefix_len(b).unwrap_or(usize::MAX));
            }
        }
        max
    }
}

/// Exact form of a fragment descriptor: its atom signature and the explicit
/// members below the cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Denotation {
    pub words: Vec<BranchWord>,
    /// `signature[i]` for `words[i]`; the last entry is the rest of `ω`.
    pub signature: Vec<bool>,
    pub cutoff: u64,
    pub low: Vec<u64>,
}

impl Denotation {
    fn of(d: &SetDescriptor, words: &BTreeSet<BranchWord>) -> Result<Denotation, SymbolicError> {
        let atoms = Atoms::new(words.clone());
        let signature = d.signature(&atoms)?;
        let lcp = atoms.max_common_prefix();
        if lcp >= 20 {
            return Err(SymbolicError::UnsupportedDescriptor(format!(
                "branches sharing a prefix of length {lcp} exceed the explicit cutoff"
            )));
        }
        let cutoff = (1u64 << (lcp + 1)).max(d.max_listed().map_or(0, |m| m + 1));
        if cutoff > MAX_CUTOFF {
            return Err(SymbolicError::UnsupportedDescriptor(format!(
                "explicit elements up to {cutoff} exceed the cutoff {MAX_CUTOFF}"
            )));
        }
        let low = (0..cutoff).filter(|&n| d.contains(n)).collect();
        Ok(Denotation {
            words: atoms.words,
            signature,
            cutoff,
            low,
        })
    }

    /// Membership reconstructed from the normal form alone.
    pub fn contains(&self, n: u64) -> bool {
        if n < self.cutoff {
            return self.low.binary_search(&n).is_ok();
        }
        debug_assert!(level_of(n).is_some());
        let atom = self
            .words
            .iter()
            .position(|w| w.contains(n))
            .unwrap_or(self.words.len());
        self.signature[atom]
    }
}
