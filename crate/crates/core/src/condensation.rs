//! Homeomorphism classes, the condensational preorder `≼` and its quotient,
//! and the reversibility predicates defined through them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::enumeration::TopologyCatalog;
use crate::error::TopologyError;
use crate::topology::{is_condensation, is_homeomorphism, FiniteTopology, Permutation};

/// `[𝒪]_≅`: every image of a topology under a permutation, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomeoClass {
    members: Vec<FiniteTopology>,
}

impl HomeoClass {
    pub fn members(&self) -> &[FiniteTopology] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, t: &FiniteTopology) -> bool {
        self.members.binary_search(t).is_ok()
    }
}

/// `[𝒪]_∼`: topologies condensationally equivalent to a given one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimClass {
    members: Vec<FiniteTopology>,
}

impl SimClass {
    pub fn members(&self) -> &[FiniteTopology] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn homeo_class(t: &FiniteTopology) -> HomeoClass {
    let members: BTreeSet<FiniteTopology> = Permutation::all(t.n())
        .iter()
        .map(|f| t.image(f).expect("permutation of matching size"))
        .collect();
    HomeoClass {
        members: members.into_iter().collect(),
    }
}

/// The equivalent characterizations of reversibility.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReversibilityMethod {
    /// No homeomorphic copy is strictly coarser.
    NoCoarser,
    /// No homeomorphic copy is strictly finer.
    NoFiner,
    /// The homeomorphism class is an `⊆`-antichain.
    Antichain,
    /// Every condensation of the space onto itself is a homeomorphism.
    Direct,
}

impl ReversibilityMethod {
    pub const ALL: [ReversibilityMethod; 4] = [
        ReversibilityMethod::NoCoarser,
        ReversibilityMethod::NoFiner,
        ReversibilityMethod::Antichain,
        ReversibilityMethod::Direct,
    ];
}

pub fn is_reversible(t: &FiniteTopology, method: ReversibilityMethod) -> bool {
    match method {
        ReversibilityMethod::NoCoarser => !homeo_class(t)
            .members
            .iter()
            .any(|o| o.is_strictly_coarser(t)),
        ReversibilityMethod::NoFiner => !homeo_class(t)
            .members
            .iter()
            .any(|o| t.is_strictly_coarser(o)),
        ReversibilityMethod::Antichain => {
            let class = homeo_class(t);
            class.members.iter().enumerate().all(|(i, a)| {
                class.members[i + 1..].iter().all(|b| !a.comparable(b))
            })
        }
        ReversibilityMethod::Direct => Permutation::all(t.n()).iter().all(|f| {
            !is_condensation(f, t, t).unwrap() || is_homeomorphism(f, t, t).unwrap()
        }),
    }
}

/// The equivalent characterizations of `t1 ≼ t2`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeqMethod {
    /// Some copy of `t1` is contained in `t2`.
    CoarseningOfT2Side,
    /// `t1` is contained in some copy of `t2`.
    RefinementOfT1Side,
    /// Some permutation is a condensation `(X, t2) → (X, t1)`.
    WitnessMap,
}

impl LeqMethod {
    pub const ALL: [LeqMethod; 3] = [
        LeqMethod::CoarseningOfT2Side,
        LeqMethod::RefinementOfT1Side,
        LeqMethod::WitnessMap,
    ];
}

pub fn condensational_leq(
    t1: &FiniteTopology,
    t2: &FiniteTopology,
    method: LeqMethod,
) -> Result<bool, TopologyError> {
    if t1.n() != t2.n() {
        return Err(TopologyError::DimensionMismatch {
            left: t1.n(),
            right: t2.n(),
        });
    }
    let perms = Permutation::all(t1.n());
    Ok(match method {
        LeqMethod::CoarseningOfT2Side => perms
            .iter()
            .any(|f| t1.image(f).unwrap().is_coarser_or_equal(t2)),
        LeqMethod::RefinementOfT1Side => perms
            .iter()
            .any(|f| t1.is_coarser_or_equal(&t2.image(f).unwrap())),
        LeqMethod::WitnessMap => perms.iter().any(|f| is_condensation(f, t2, t1).unwrap()),
    })
}

fn check_catalog(t: &FiniteTopology, catalog: &TopologyCatalog) -> Result<(), TopologyError> {
    if t.n() != catalog.n() {
        return Err(TopologyError::DimensionMismatch {
            left: t.n(),
            right: catalog.n(),
        });
    }
    Ok(())
}

/// Whether some member of `class` (a homeomorphism class) lies inside `t`.
fn class_below(class: &[FiniteTopology], t: &FiniteTopology) -> bool {
    class.iter().any(|o| o.is_coarser_or_equal(t))
}

/// All `𝒪′` in the catalog with `t ≼ 𝒪′ ≼ t`.
pub fn sim_class(t: &FiniteTopology, catalog: &TopologyCatalog) -> Result<SimClass, TopologyError> {
    check_catalog(t, catalog)?;
    let own = homeo_class(t);
    let members = catalog
        .topologies()
        .iter()
        // a copy of t inside o needs as many opens, and vice versa
        .filter(|o| o.len() == t.len())
        .filter(|o| class_below(own.members(), o) && class_below(homeo_class(o).members(), t))
        .cloned()
        .collect();
    Ok(SimClass { members })
}

/// `Conv(Ω)`: catalog members lying between two members of `omega` (inclusive).
pub fn conv_hull(
    omega: &[FiniteTopology],
    catalog: &TopologyCatalog,
) -> Result<Vec<FiniteTopology>, TopologyError> {
    if let Some(t) = omega.first() {
        check_catalog(t, catalog)?;
    }
    Ok(catalog
        .topologies()
        .iter()
        .filter(|o| {
            omega.iter().any(|lo| lo.is_coarser_or_equal(o))
                && omega.iter().any(|hi| o.is_coarser_or_equal(hi))
        })
        .cloned()
        .collect())
}

/// `[𝒪]_≅` is convex in the lattice of topologies.
pub fn is_weakly_reversible(
    t: &FiniteTopology,
    catalog: &TopologyCatalog,
) -> Result<bool, TopologyError> {
    let class = homeo_class(t);
    Ok(conv_hull(class.members(), catalog)? == class.members)
}

/// Fixed by every transposition, hence by all of `Sym_n`.
pub fn is_strongly_reversible(t: &FiniteTopology) -> bool {
    Permutation::transpositions(t.n()).all(|f| &t.image(&f).unwrap() == t)
}

/// An infinite cardinal parameter of a co-small topology.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cardinal {
    Omega,
}

/// Shapes a strongly reversible topology can take.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrongClass {
    Discrete,
    Antidiscrete,
    /// `{X ∖ F : |F| < λ} ∪ {∅}`, only possible for infinite `X`.
    CoSmall(Cardinal),
    NotStronglyReversible,
}

/// Matches a finite topology against the strongly reversible shapes.
///
/// On at most one point the discrete and antidiscrete topologies coincide and
/// are reported as `Discrete`.
pub fn classify_strongly_reversible(t: &FiniteTopology) -> StrongClass {
    if t.is_discrete() {
        StrongClass::Discrete
    } else if t.is_antidiscrete() {
        StrongClass::Antidiscrete
    } else {
        StrongClass::NotStronglyReversible
    }
}

/// One node of the condensational order: a `∼`-class.
#[derive(Clone, Debug, Serialize)]
pub struct OrderNode {
    pub representative: FiniteTopology,
    pub members: Vec<FiniteTopology>,
    /// Sizes of the homeomorphism classes making up the node.
    pub orbit_sizes: Vec<usize>,
}

impl OrderNode {
    pub fn open_count(&self) -> usize {
        self.representative.len()
    }
}

/// `⟨Top_n/∼, ≤⟩` with its Hasse diagram.
#[derive(Clone, Debug, Serialize)]
pub struct CondOrderDigraph {
    pub n: usize,
    pub nodes: Vec<OrderNode>,
    /// `leq[i][j]` iff node `i` ≤ node `j`.
    pub leq: Vec<Vec<bool>>,
    /// Covering pairs `(lower, upper)`.
    pub hasse: Vec<(usize, usize)>,
}

impl CondOrderDigraph {
    pub fn is_partial_order(&self) -> bool {
        let k = self.nodes.len();
        (0..k).all(|i| self.leq[i][i])
            && (0..k).all(|i| (0..k).all(|j| i == j || !(self.leq[i][j] && self.leq[j][i])))
            && (0..k).all(|i| {
                (0..k).all(|j| !self.leq[i][j] || (0..k).all(|l| !self.leq[j][l] || self.leq[i][l]))
            })
    }
}

/// Transitive reduction of a partial order given as a matrix.
pub fn transitive_reduction(leq: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let k = leq.len();
    let lt = |a: usize, b: usize| a != b && leq[a][b];
    let mut edges = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if lt(a, b) && !(0..k).any(|c| lt(a, c) && lt(c, b)) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// Builds the condensational order over a full catalog.
///
/// `∼`-classes are unions of homeomorphism classes, so `≼` is evaluated between
/// orbit representatives and mutually related orbits are merged.
pub fn condensational_order(catalog: &TopologyCatalog) -> CondOrderDigraph {
    let orbits: Vec<&Vec<FiniteTopology>> = catalog.orbits().values().collect();
    let k = orbits.len();
    let orbit_leq: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| class_below(orbits[i], &orbits[j][0])).collect())
        .collect();

    let mut group_of = vec![usize::MAX; k];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..k {
        if group_of[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (i..k)
            .filter(|&j| group_of[j] == usize::MAX && orbit_leq[i][j] && orbit_leq[j][i])
            .collect();
        for &j in &members {
            group_of[j] = groups.len();
        }
        groups.push(members);
    }

    let mut nodes: Vec<(OrderNode, usize)> = groups
        .iter()
        .map(|g| {
            let mut members: Vec<FiniteTopology> =
                g.iter().flat_map(|&o| orbits[o].iter().cloned()).collect();
            members.sort();
            let representative = members
                .iter()
                .filter(|m| !members.iter().any(|o| o.is_strictly_coarser(m)))
                .map(FiniteTopology::canonical_form)
                .min()
                .expect("nonempty class");
            let node = OrderNode {
                representative,
                members,
                orbit_sizes: g.iter().map(|&o| orbits[o].len()).collect(),
            };
            (node, g[0])
        })
        .collect();
    nodes.sort_by(|a, b| {
        (a.0.representative.len(), &a.0.representative)
            .cmp(&(b.0.representative.len(), &b.0.representative))
    });

    let leq: Vec<Vec<bool>> = nodes
        .iter()
        .map(|(_, a)| nodes.iter().map(|(_, b)| orbit_leq[*a][*b]).collect())
        .collect();
    let hasse = transitive_reduction(&leq);
    CondOrderDigraph {
        n: catalog.n(),
        nodes: nodes.into_iter().map(|(node, _)| node).collect(),
        leq,
        hasse,
    }
}

/// Maximal chains of a finite family of topologies ordered by `⊆`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub chains: Vec<Vec<FiniteTopology>>,
    pub longest: usize,
}

impl ChainReport {
    /// Every maximal chain is a single point, i.e. the family is an antichain.
    pub fn all_singletons(&self) -> bool {
        self.longest <= 1
    }

    /// Finite nonempty chains always have both endpoints, so a chain without
    /// endpoints can never be reported here.
    pub fn has_endpoint_free_chain(&self) -> bool {
        self.chains.iter().any(Vec::is_empty)
    }
}

pub fn maximal_chains(members: &[FiniteTopology]) -> ChainReport {
    let k = members.len();
    let lt = |a: usize, b: usize| members[a].is_strictly_coarser(&members[b]);
    let covers: Vec<Vec<usize>> = (0..k)
        .map(|a| {
            (0..k)
                .filter(|&b| lt(a, b) && !(0..k).any(|c| lt(a, c) && lt(c, b)))
                .collect()
        })
        .collect();
    let minimal: Vec<usize> = (0..k).filter(|&b| !(0..k).any(|a| lt(a, b))).collect();

    let mut chains = Vec::new();
    let mut path = Vec::new();
    fn walk(
        at: usize,
        covers: &[Vec<usize>],
        members: &[FiniteTopology],
        path: &mut Vec<usize>,
        chains: &mut Vec<Vec<FiniteTopology>>,
    ) {
        path.push(at);
        if covers[at].is_empty() {
            chains.push(path.iter().map(|&i| members[i].clone()).collect());
        }
        for &next in &covers[at] {
            walk(next, covers, members, path, chains);
        }
        path.pop();
    }
    for &m in &minimal {
        walk(m, &covers, members, &mut path, &mut chains);
    }
    let longest = chains.iter().map(Vec::len).max().unwrap_or(0);
    ChainReport { chains, longest }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate_topologies, Limits};
    use crate::topology::PointSet;

    fn sierpinski() -> FiniteTopology {
        FiniteTopology::generate(2, &[PointSet(1)]).unwrap()
    }

    #[test]
    fn homeo_class_examples() {
        assert_eq!(homeo_class(&FiniteTopology::discrete(3)).len(), 1);
        let s = homeo_class(&sierpinski());
        assert_eq!(s.len(), 2);
        assert!(s.contains(&FiniteTopology::generate(2, &[PointSet(2)]).unwrap()));
        assert_eq!(homeo_class(&FiniteTopology::generate(3, &[PointSet(1)]).unwrap()).len(), 3);
    }

    #[test]
    fn reversibility_examples() {
        for method in ReversibilityMethod::ALL {
            assert!(is_reversible(&FiniteTopology::discrete(3), method));
            assert!(is_reversible(&sierpinski(), method));
        }
    }

    #[test]
    fn leq_examples() {
        let d = FiniteTopology::discrete(2);
        let a = FiniteTopology::antidiscrete(2);
        let s = sierpinski();
        for method in LeqMethod::ALL {
            for t in [&d, &a, &s] {
                assert!(condensational_leq(&a, t, method).unwrap());
                assert!(condensational_leq(t, &d, method).unwrap());
            }
            assert!(!condensational_leq(&d, &a, method).unwrap());
        }
        assert!(condensational_leq(&a, &FiniteTopology::antidiscrete(3), LeqMethod::WitnessMap)
            .is_err());
    }

    #[test]
    fn classes_on_two_points() {
        let cat = enumerate_topologies(2, &Limits::default()).unwrap();
        let s = sierpinski();
        assert_eq!(sim_class(&s, &cat).unwrap().members(), homeo_class(&s).members());
        assert_eq!(
            sim_class(&FiniteTopology::discrete(2), &cat).unwrap().len(),
            1
        );
        let a = FiniteTopology::antidiscrete(2);
        assert_eq!(conv_hull(std::slice::from_ref(&a), &cat).unwrap(), vec![a]);
        let class = homeo_class(&s);
        assert_eq!(conv_hull(class.members(), &cat).unwrap(), class.members());
        assert!(is_weakly_reversible(&s, &cat).unwrap());
        assert!(is_weakly_reversible(&FiniteTopology::discrete(2), &cat).unwrap());
    }

    #[test]
    fn strong_reversibility_examples() {
        assert!(is_strongly_reversible(&FiniteTopology::discrete(3)));
        assert!(is_strongly_reversible(&FiniteTopology::antidiscrete(3)));
        assert!(!is_strongly_reversible(&sierpinski()));
        assert_eq!(
            classify_strongly_reversible(&FiniteTopology::discrete(4)),
            StrongClass::Discrete
        );
        assert_eq!(
            classify_strongly_reversible(&FiniteTopology::antidiscrete(4)),
            StrongClass::Antidiscrete
        );
        assert_eq!(
            classify_strongly_reversible(&sierpinski()),
            StrongClass::NotStronglyReversible
        );
    }

    #[test]
    fn order_on_small_sets() {
        let limits = Limits::default();
        let one = condensational_order(&enumerate_topologies(1, &limits).unwrap());
        assert_eq!(one.nodes.len(), 1);
        let two = condensational_order(&enumerate_topologies(2, &limits).unwrap());
        assert_eq!(two.nodes.len(), 3);
        assert_eq!(two.hasse, vec![(0, 1), (1, 2)]);
        assert!(two.nodes[0].representative.is_antidiscrete());
        assert!(two.nodes[2].representative.is_discrete());
        let three = condensational_order(&enumerate_topologies(3, &limits).unwrap());
        assert_eq!(three.nodes.len(), 9);
        assert!(three.is_partial_order());
    }

    #[test]
    fn chains_examples() {
        let report = maximal_chains(homeo_class(&sierpinski()).members());
        assert_eq!(report.chains.len(), 2);
        assert!(report.all_singletons());
        let report = maximal_chains(&[FiniteTopology::discrete(2)]);
        assert_eq!(report.chains.len(), 1);
        let report = maximal_chains(&[
            FiniteTopology::antidiscrete(2),
            sierpinski(),
            FiniteTopology::discrete(2),
        ]);
        assert_eq!(report.longest, 3);
        assert!(!report.has_endpoint_free_chain());
    }
}
