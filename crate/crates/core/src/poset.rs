//! Isomorphism certificates for finite posets.
//!
//! Elements that are incomparable to each other and share the same strict
//! up-set and down-set ("twins") can be permuted freely, so they are first
//! collapsed into one weighted element. The quotient is then labeled by
//! colour refinement plus individualization, keeping the lexicographically
//! least relation matrix over all leaves of the search tree.

use serde::{Deserialize, Serialize};

use crate::topology::FiniteTopology;

/// Canonical encoding of a finite poset: equal certificates iff isomorphic posets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PosetInvariant {
    /// Total number of elements.
    pub size: usize,
    /// Twin-class multiplicities in canonical order.
    pub multiplicities: Vec<usize>,
    /// Strict order between twin classes in canonical order, row-major.
    pub relation: Vec<bool>,
}

impl PosetInvariant {
    /// The poset is an antichain (including the empty poset).
    pub fn is_antichain(&self) -> bool {
        self.relation.iter().all(|&b| !b)
    }
}

/// Certificate of `⟨members, ⊆⟩`.
pub fn poset_invariant(members: &[FiniteTopology]) -> PosetInvariant {
    let k = members.len();
    let lt: Vec<Vec<bool>> = (0..k)
        .map(|a| (0..k).map(|b| members[a].is_strictly_coarser(&members[b])).collect())
        .collect();
    invariant_of_strict_order(&lt)
}

/// Certificate of a strict partial order given as a matrix `lt[a][b]` iff `a < b`.
pub fn invariant_of_strict_order(lt: &[Vec<bool>]) -> PosetInvariant {
    let k = lt.len();
    // twin classes
    let mut class_of = vec![usize::MAX; k];
    let mut reps: Vec<usize> = Vec::new();
    let mut mult: Vec<usize> = Vec::new();
    for a in 0..k {
        if class_of[a] != usize::MAX {
            continue;
        }
        class_of[a] = reps.len();
        let mut m = 1;
        for b in a + 1..k {
            if class_of[b] == usize::MAX
                && !lt[a][b]
                && !lt[b][a]
                && (0..k).all(|c| c == a || c == b || (lt[a][c] == lt[b][c] && lt[c][a] == lt[c][b]))
            {
                class_of[b] = reps.len();
                m += 1;
            }
        }
        reps.push(a);
        mult.push(m);
    }
    let q = reps.len();
    let rel: Vec<Vec<bool>> = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| lt[a][b]).collect())
        .collect();

    let search = Search { rel: &rel, mult: &mult };
    let initial = if q == 0 {
        Vec::new()
    } else {
        search.refine(vec![(0..q).collect()])
    };
    let mut best: Option<(Vec<usize>, Vec<bool>)> = None;
    search.explore(initial, &mut best);
    let (multiplicities, relation) = best.unwrap_or_default();
    PosetInvariant {
        size: k,
        multiplicities,
        relation,
    }
}

struct Search<'a> {
    rel: &'a [Vec<bool>],
    mult: &'a [usize],
}

impl Search<'_> {
    /// Splits cells by weight and by how many elements of each cell lie
    /// above/below, until stable. Cell order stays isomorphism-invariant.
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        loop {
            let mut cell_of = vec![0; self.mult.len()];
            for (c, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = c;
                }
            }
            let signature = |v: usize| {
                let mut sig = vec![self.mult[v]];
                let mut below = vec![0usize; cells.len()];
                let mut above = vec![0usize; cells.len()];
                for u in 0..self.mult.len() {
                    if self.rel[u][v] {
                        below[cell_of[u]] += 1;
                    }
                    if self.rel[v][u] {
                        above[cell_of[u]] += 1;
                    }
                }
                sig.extend(below);
                sig.extend(above);
                sig
            };
            let mut next = Vec::with_capacity(cells.len());
            for cell in &cells {
                let mut keyed: Vec<(Vec<usize>, usize)> =
                    cell.iter().map(|&v| (signature(v), v)).collect();
                keyed.sort();
                let mut group: Vec<usize> = Vec::new();
                let mut last: Option<&Vec<usize>> = None;
                for (sig, v) in &keyed {
                    if last.is_some_and(|l| l != sig) {
                        next.push(std::mem::take(&mut group));
                    }
                    group.push(*v);
                    last = Some(sig);
                }
                next.push(group);
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn explore(&self, cells: Vec<Vec<usize>>, best: &mut Option<(Vec<usize>, Vec<bool>)>) {
        match cells.iter().position(|c| c.len() > 1) {
            None => {
                let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
                let cert = (
                    order.iter().map(|&v| self.mult[v]).collect::<Vec<_>>(),
                    order
                        .iter()
                        .flat_map(|&a| order.iter().map(move |&b| (a, b)))
                        .map(|(a, b)| self.rel[a][b])
                        .collect::<Vec<_>>(),
                );
                if best.as_ref().is_none_or(|b| cert < *b) {
                    *best = Some(cert);
                }
            }
            Some(i) => {
                for &v in &cells[i] {
                    let mut split = cells[..i].to_vec();
                    split.push(vec![v]);
                    split.push(cells[i].iter().copied().filter(|&u| u != v).collect());
                    split.extend_from_slice(&cells[i + 1..]);
                    self.explore(self.refine(split), best);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condensation::homeo_class;
    use crate::topology::{Permutation, PointSet};

    fn strict(k: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let mut lt = vec![vec![false; k]; k];
        for &(a, b) in pairs {
            lt[a][b] = true;
        }
        lt
    }

    #[test]
    fn singletons_and_antichains() {
        let d = poset_invariant(&[FiniteTopology::discrete(2)]);
        assert_eq!(d.size, 1);
        let s = FiniteTopology::generate(2, &[PointSet(1)]).unwrap();
        let inv = poset_invariant(homeo_class(&s).members());
        assert_eq!(inv.size, 2);
        assert!(inv.is_antichain());
        assert_eq!(inv, invariant_of_strict_order(&strict(2, &[])));
    }

    #[test]
    fn distinguishes_small_posets() {
        let chain = invariant_of_strict_order(&strict(3, &[(0, 1), (1, 2), (0, 2)]));
        let vee = invariant_of_strict_order(&strict(3, &[(0, 1), (0, 2)]));
        let wedge = invariant_of_strict_order(&strict(3, &[(1, 0), (2, 0)]));
        let one_pair = invariant_of_strict_order(&strict(3, &[(2, 1)]));
        let all = [&chain, &vee, &wedge, &one_pair];
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert_ne!(a, b);
            }
        }
        assert_eq!(vee, invariant_of_strict_order(&strict(3, &[(2, 0), (2, 1)])));
        assert_eq!(one_pair, invariant_of_strict_order(&strict(3, &[(0, 1)])));
    }

    #[test]
    fn relabeling_invariance() {
        // the N poset and a crown on 6 elements, under every relabeling of 4/5 elements
        let n_poset = [(0, 2), (1, 2), (1, 3)];
        let base = invariant_of_strict_order(&strict(4, &n_poset));
        for p in Permutation::all(4) {
            let moved: Vec<(usize, usize)> =
                n_poset.iter().map(|&(a, b)| (p.apply(a), p.apply(b))).collect();
            assert_eq!(base, invariant_of_strict_order(&strict(4, &moved)));
        }
        let zig = [(0, 1), (2, 1), (2, 3), (4, 3)];
        let base = invariant_of_strict_order(&strict(5, &zig));
        for p in Permutation::all(5) {
            let moved: Vec<(usize, usize)> =
                zig.iter().map(|&(a, b)| (p.apply(a), p.apply(b))).collect();
            assert_eq!(base, invariant_of_strict_order(&strict(5, &moved)));
        }
    }
}
