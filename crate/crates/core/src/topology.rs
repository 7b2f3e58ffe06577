//! Finite topologies on `{0, …, n-1}` stored as sorted lists of bit sets,
//! together with the permutation action `f[𝒪] = {f[O] : O ∈ 𝒪}` and the
//! elementary predicates built on it.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::TopologyError;

/// Largest ground set a [`PointSet`] can address.
pub const MAX_POINTS: usize = 64;

/// A subset of `{0, …, n-1}`; bit `i` is set iff point `i` belongs to the set.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    /// The whole ground set `{0, …, n-1}`.
    pub fn full(n: usize) -> PointSet {
        if n >= 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> PointSet {
        PointSet(1u64 << i)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> PointSet {
        PointSet(points.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    #[inline]
    pub fn complement(self, n: usize) -> PointSet {
        PointSet(!self.0 & PointSet::full(n).0)
    }

    #[inline]
    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn points(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |&i| bits >> i & 1 == 1)
    }

    /// Whether the set only uses points below `n`.
    pub fn fits(self, n: usize) -> bool {
        self.is_subset(PointSet::full(n))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points()).finish()
    }
}

/// A bijection of `{0, …, n-1}`, stored as its image table.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Permutation, TopologyError> {
        let n = image.len();
        if n > MAX_POINTS {
            return Err(TopologyError::TooManyPoints { n });
        }
        let mut seen = vec![false; n];
        for &i in &image {
            if i >= n || seen[i] {
                return Err(TopologyError::NotABijection(image));
            }
            seen[i] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation { image: (0..n).collect() }
    }

    /// The transposition exchanging `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Permutation {
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(a, b);
        Permutation { image }
    }

    /// Every permutation of `{0, …, n-1}` in lexicographic order of image tables.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation { image: current.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }

    /// All `n(n-1)/2` transpositions.
    pub fn transpositions(n: usize) -> impl Iterator<Item = Permutation> {
        (0..n).flat_map(move |a| (a + 1..n).map(move |b| Permutation::transposition(n, a, b)))
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            image[j] = i;
        }
        Permutation { image }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: other.image.iter().map(|&j| self.image[j]).collect(),
        }
    }

    /// Pointwise image `f[A]`.
    pub fn image_of(&self, set: PointSet) -> PointSet {
        let mut out = 0u64;
        let mut bits = set.0;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out |= 1u64 << self.image[i];
            bits &= bits - 1;
        }
        PointSet(out)
    }

    /// Preimage `f⁻¹[A]`.
    pub fn preimage_of(&self, set: PointSet) -> PointSet {
        let mut out = 0u64;
        for (i, &j) in self.image.iter().enumerate() {
            if set.contains(j) {
                out |= 1u64 << i;
            }
        }
        PointSet(out)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = TopologyError;

    fn try_from(image: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::new(image)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.image
    }
}

/// A topology on `{0, …, n-1}`.
///
/// Opens are kept strictly sorted, so derived equality, ordering and hashing
/// coincide with equality of topologies. The derived order (first by `n`, then
/// lexicographically on the open list) is the order used for catalogs and
/// canonical forms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTopology")]
pub struct FiniteTopology {
    n: usize,
    opens: Vec<PointSet>,
}

#[derive(Deserialize)]
struct RawTopology {
    n: usize,
    opens: Vec<PointSet>,
}

impl TryFrom<RawTopology> for FiniteTopology {
    type Error = TopologyError;

    fn try_from(raw: RawTopology) -> Result<Self, Self::Error> {
        FiniteTopology::validate(raw.n, raw.opens)
    }
}

impl fmt::Debug for FiniteTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Top{}", self.n)?;
        f.debug_set().entries(self.opens.iter()).finish()
    }
}

fn check_range(n: usize, family: &[PointSet]) -> Result<(), TopologyError> {
    if n > MAX_POINTS {
        return Err(TopologyError::TooManyPoints { n });
    }
    if let Some(&set) = family.iter().find(|s| !s.fits(n)) {
        return Err(TopologyError::OutOfRange { set, n });
    }
    Ok(())
}

fn close_under(sets: &mut BTreeSet<PointSet>, op: impl Fn(PointSet, PointSet) -> PointSet) {
    let mut frontier: Vec<PointSet> = sets.iter().copied().collect();
    while let Some(a) = frontier.pop() {
        let snapshot: Vec<PointSet> = sets.iter().copied().collect();
        for b in snapshot {
            let c = op(a, b);
            if sets.insert(c) {
                frontier.push(c);
            }
        }
    }
}

impl FiniteTopology {
    /// Checks the topology axioms and returns the canonical value.
    pub fn validate(n: usize, family: Vec<PointSet>) -> Result<FiniteTopology, TopologyError> {
        check_range(n, &family)?;
        let mut opens = family;
        opens.sort_unstable();
        opens.dedup();
        if opens.binary_search(&PointSet::EMPTY).is_err() {
            return Err(TopologyError::MissingEmpty);
        }
        if opens.binary_search(&PointSet::full(n)).is_err() {
            return Err(TopologyError::MissingFull);
        }
        for (i, &a) in opens.iter().enumerate() {
            for &b in &opens[i + 1..] {
                if opens.binary_search(&a.union(b)).is_err() {
                    return Err(TopologyError::NotClosedUnderUnion(a, b));
                }
                if opens.binary_search(&a.intersection(b)).is_err() {
                    return Err(TopologyError::NotClosedUnderIntersection(a, b));
                }
            }
        }
        Ok(FiniteTopology { n, opens })
    }

    /// The smallest topology containing `subbase`.
    ///
    /// Closes under finite intersections (the full set being the empty
    /// intersection), then under unions, then adds `∅`.
    pub fn generate(n: usize, subbase: &[PointSet]) -> Result<FiniteTopology, TopologyError> {
        check_range(n, subbase)?;
        let mut sets: BTreeSet<PointSet> = subbase.iter().copied().collect();
        sets.insert(PointSet::full(n));
        close_under(&mut sets, PointSet::intersection);
        close_under(&mut sets, PointSet::union);
        sets.insert(PointSet::EMPTY);
        Ok(FiniteTopology {
            n,
            opens: sets.into_iter().collect(),
        })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, opens: Vec<PointSet>) -> FiniteTopology {
        debug_assert!(opens.windows(2).all(|w| w[0] < w[1]));
        FiniteTopology { n, opens }
    }

    pub fn discrete(n: usize) -> FiniteTopology {
        assert!(n < 20, "power set of {n} points is too large to materialize");
        FiniteTopology {
            n,
            opens: (0..1u64 << n).map(PointSet).collect(),
        }
    }

    pub fn antidiscrete(n: usize) -> FiniteTopology {
        let mut opens = vec![PointSet::EMPTY, PointSet::full(n)];
        opens.dedup();
        FiniteTopology { n, opens }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }

    pub fn is_open(&self, set: PointSet) -> bool {
        self.opens.binary_search(&set).is_ok()
    }

    pub fn is_closed(&self, set: PointSet) -> bool {
        self.is_open(set.complement(self.n))
    }

    pub fn is_discrete(&self) -> bool {
        self.n < 64 && self.opens.len() as u64 == 1u64 << self.n
    }

    pub fn is_antidiscrete(&self) -> bool {
        self.opens.len() <= 2
    }

    /// `self ⊆ other` as families of open sets.
    pub fn is_coarser_or_equal(&self, other: &FiniteTopology) -> bool {
        if self.n != other.n || self.opens.len() > other.opens.len() {
            return false;
        }
        let mut rest = other.opens.iter();
        'outer: for a in &self.opens {
            for b in rest.by_ref() {
                if a == b {
                    continue 'outer;
                }
                if b > a {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// `self ⊊ other`.
    pub fn is_strictly_coarser(&self, other: &FiniteTopology) -> bool {
        self.opens.len() < other.opens.len() && self.is_coarser_or_equal(other)
    }

    pub fn comparable(&self, other: &FiniteTopology) -> bool {
        self.is_coarser_or_equal(other) || other.is_coarser_or_equal(self)
    }

    fn check_dim(&self, n: usize) -> Result<(), TopologyError> {
        if self.n != n {
            return Err(TopologyError::DimensionMismatch {
                left: n,
                right: self.n,
            });
        }
        Ok(())
    }

    /// `f[𝒪]`.
    pub fn image(&self, f: &Permutation) -> Result<FiniteTopology, TopologyError> {
        self.check_dim(f.len())?;
        let mut opens: Vec<PointSet> = self.opens.iter().map(|&o| f.image_of(o)).collect();
        opens.sort_unstable();
        Ok(FiniteTopology { n: self.n, opens })
    }

    /// Smallest closed superset of `set`.
    pub fn closure(&self, set: PointSet) -> PointSet {
        let outside = self
            .opens
            .iter()
            .filter(|o| o.intersection(set).is_empty())
            .fold(PointSet::EMPTY, |acc, &o| acc.union(o));
        outside.complement(self.n)
    }

    /// Largest open subset of `set`.
    pub fn interior(&self, set: PointSet) -> PointSet {
        self.opens
            .iter()
            .filter(|o| o.is_subset(set))
            .fold(PointSet::EMPTY, |acc, &o| acc.union(o))
    }

    /// Smallest open set containing point `x`.
    pub fn minimal_neighbourhood(&self, x: usize) -> PointSet {
        self.opens
            .iter()
            .filter(|o| o.contains(x))
            .fold(PointSet::full(self.n), |acc, &o| acc.intersection(o))
    }

    /// Lexicographically least member of the homeomorphism class.
    pub fn canonical_form(&self) -> FiniteTopology {
        let mut best = self.clone();
        let mut scratch = Vec::with_capacity(self.opens.len());
        for f in Permutation::all(self.n) {
            scratch.clear();
            scratch.extend(self.opens.iter().map(|&o| f.image_of(o)));
            scratch.sort_unstable();
            if scratch < best.opens {
                best.opens.clone_from(&scratch);
            }
        }
        best
    }
}

/// `f : (X, dom) → (X, cod)` is continuous: preimages of opens are open.
pub fn is_continuous(
    f: &Permutation,
    dom: &FiniteTopology,
    cod: &FiniteTopology,
) -> Result<bool, TopologyError> {
    dom.check_dim(f.len())?;
    cod.check_dim(f.len())?;
    Ok(cod.opens.iter().all(|&u| dom.is_open(f.preimage_of(u))))
}

/// A continuous bijection `(X, from) → (X, to)`.
pub fn is_condensation(
    f: &Permutation,
    from: &FiniteTopology,
    to: &FiniteTopology,
) -> Result<bool, TopologyError> {
    is_continuous(f, from, to)
}

/// `f[from] = to`.
pub fn is_homeomorphism(
    f: &Permutation,
    from: &FiniteTopology,
    to: &FiniteTopology,
) -> Result<bool, TopologyError> {
    to.check_dim(f.len())?;
    Ok(&from.image(f)? == to)
}
