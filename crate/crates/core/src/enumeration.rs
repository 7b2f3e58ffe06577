//! Exhaustive enumeration of `Top_n`, done two independent ways: a direct
//! closure search, and through the bijection between finite topologies and
//! preorders (opens = up-sets of the specialization preorder).

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::TopologyError;
use crate::topology::{FiniteTopology, PointSet};

/// Environment variable overriding the default point limit.
pub const MAX_N_ENV: &str = "REVSPACE_MAX_N";

/// Default limit on the number of points for exhaustive work.
pub const DEFAULT_MAX_N: usize = 5;

/// Configured limit for exhaustive computations.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: DEFAULT_MAX_N,
        }
    }
}

impl Limits {
    /// Reads [`MAX_N_ENV`], falling back to the default when unset or unparsable.
    pub fn from_env() -> Limits {
        std::env::var(MAX_N_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(|max_n: usize| Limits {
                max_n: max_n.min(crate::topology::MAX_POINTS),
            })
            .unwrap_or_default()
    }

    pub fn check(&self, n: usize) -> Result<(), TopologyError> {
        if n > self.max_n {
            return Err(TopologyError::CapExceeded {
                n,
                limit: self.max_n,
            });
        }
        Ok(())
    }
}

/// A reflexive, transitive relation on `{0, …, n-1}`.
///
/// Row `i` holds the set `{j : i ≤ j}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Preorder {
    n: usize,
    rows: Vec<PointSet>,
}

impl Preorder {
    /// Builds a preorder from its relation matrix, checking reflexivity and transitivity.
    pub fn from_matrix(leq: &[Vec<bool>]) -> Option<Preorder> {
        let n = leq.len();
        let rows: Vec<PointSet> = leq
            .iter()
            .map(|r| PointSet::from_points(r.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j)))
            .collect();
        let p = Preorder { n, rows };
        p.is_valid().then_some(p)
    }

    fn is_valid(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, &row)| {
            row.contains(i) && row.points().all(|j| self.rows[j].is_subset(row))
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    /// `{j : i ≤ j}`.
    pub fn up_set(&self, i: usize) -> PointSet {
        self.rows[i]
    }

    pub fn matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.leq(i, j)).collect())
            .collect()
    }

    pub fn discrete(n: usize) -> Preorder {
        Preorder {
            n,
            rows: (0..n).map(PointSet::singleton).collect(),
        }
    }

    pub fn total(n: usize) -> Preorder {
        Preorder {
            n,
            rows: vec![PointSet::full(n); n],
        }
    }
}

/// Every preorder on `n` points, by filtering all relations containing the diagonal.
pub fn enumerate_preorders(n: usize, limits: &Limits) -> Result<Vec<Preorder>, TopologyError> {
    limits.check(n)?;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1u64 << pairs.len() {
        let mut rows: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                rows[i] = rows[i].union(PointSet::singleton(j));
            }
        }
        let p = Preorder { n, rows };
        if p.is_valid() {
            out.push(p);
        }
    }
    Ok(out)
}

/// The up-set topology: opens are the sets `U` with `x ∈ U, x ≤ y ⇒ y ∈ U`.
pub fn topology_of_preorder(p: &Preorder) -> FiniteTopology {
    let opens = (0..1u64 << p.n)
        .map(PointSet)
        .filter(|&u| u.points().all(|x| p.rows[x].is_subset(u)))
        .collect();
    FiniteTopology::from_sorted_unchecked(p.n, opens)
}

/// Specialization preorder: `x ≤ y` iff every open containing `x` contains `y`.
pub fn preorder_of_topology(t: &FiniteTopology) -> Preorder {
    Preorder {
        n: t.n(),
        rows: (0..t.n()).map(|x| t.minimal_neighbourhood(x)).collect(),
    }
}

/// All topologies on `n` points, with their partition into homeomorphism classes.
#[derive(Clone, Debug)]
pub struct TopologyCatalog {
    n: usize,
    all: Vec<FiniteTopology>,
    orbit_index: BTreeMap<FiniteTopology, Vec<FiniteTopology>>,
}

impl TopologyCatalog {
    /// Builds a catalog from an arbitrary list of distinct topologies on `n` points.
    pub fn from_topologies(n: usize, mut all: Vec<FiniteTopology>) -> TopologyCatalog {
        all.sort();
        all.dedup();
        let mut orbit_index: BTreeMap<FiniteTopology, Vec<FiniteTopology>> = BTreeMap::new();
        for t in &all {
            orbit_index.entry(t.canonical_form()).or_default().push(t.clone());
        }
        TopologyCatalog {
            n,
            all,
            orbit_index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn topologies(&self) -> &[FiniteTopology] {
        &self.all
    }

    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }

    /// Orbits keyed by canonical form; members sorted.
    pub fn orbits(&self) -> &BTreeMap<FiniteTopology, Vec<FiniteTopology>> {
        &self.orbit_index
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_index.len()
    }

    pub fn position(&self, t: &FiniteTopology) -> Option<usize> {
        self.all.binary_search(t).ok()
    }

    pub fn contains(&self, t: &FiniteTopology) -> bool {
        self.position(t).is_some()
    }

    pub fn orbit_of(&self, t: &FiniteTopology) -> Option<&[FiniteTopology]> {
        self.orbit_index.get(&t.canonical_form()).map(Vec::as_slice)
    }
}

/// Direct enumeration by closure search.
///
/// Starting from the antidiscrete topology, every known topology is extended
/// by each missing subset and re-closed. Any target topology is reached since
/// adding one of its opens at a time never leaves it.
pub fn enumerate_topologies(n: usize, limits: &Limits) -> Result<TopologyCatalog, TopologyError> {
    limits.check(n)?;
    let start = FiniteTopology::antidiscrete(n);
    let mut seen: HashSet<FiniteTopology> = HashSet::from([start.clone()]);
    let mut stack = vec![start];
    let mut family: Vec<PointSet> = Vec::new();
    while let Some(t) = stack.pop() {
        for s in (0..1u64 << n).map(PointSet) {
            if t.is_open(s) {
                continue;
            }
            family.clear();
            family.extend_from_slice(t.opens());
            family.push(s);
            let next = FiniteTopology::generate(n, &family)?;
            if !seen.contains(&next) {
                seen.insert(next.clone());
                stack.push(next);
            }
        }
    }
    Ok(TopologyCatalog::from_topologies(n, seen.into_iter().collect()))
}

/// Enumeration through preorders; the cross-check for [`enumerate_topologies`].
pub fn enumerate_via_preorders(n: usize, limits: &Limits) -> Result<TopologyCatalog, TopologyError> {
    let all = enumerate_preorders(n, limits)?
        .iter()
        .map(topology_of_preorder)
        .collect();
    Ok(TopologyCatalog::from_topologies(n, all))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let limits = Limits::default();
        let counts: Vec<usize> = (0..=3)
            .map(|n| enumerate_topologies(n, &limits).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 4, 29]);
        assert_eq!(enumerate_topologies(3, &limits).unwrap().orbit_count(), 9);
    }

    #[test]
    fn cap_is_enforced() {
        let limits = Limits { max_n: 3 };
        assert_eq!(
            enumerate_topologies(4, &limits).unwrap_err(),
            TopologyError::CapExceeded { n: 4, limit: 3 }
        );
        assert!(enumerate_preorders(4, &limits).is_err());
    }

    #[test]
    fn extreme_preorders() {
        for n in 0..5 {
            assert_eq!(
                topology_of_preorder(&Preorder::discrete(n)),
                FiniteTopology::discrete(n)
            );
            assert_eq!(
                topology_of_preorder(&Preorder::total(n)),
                FiniteTopology::antidiscrete(n)
            );
        }
    }

    #[test]
    fn chain_direction() {
        let chain = Preorder::from_matrix(&[vec![true, true], vec![false, true]]).unwrap();
        let t = topology_of_preorder(&chain);
        assert_eq!(t.opens(), &[PointSet(0), PointSet(2), PointSet(3)]);
        assert_eq!(preorder_of_topology(&t), chain);
        assert!(Preorder::from_matrix(&[vec![false]]).is_none());
        assert!(Preorder::from_matrix(&[
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true]
        ])
        .is_none());
    }
}
