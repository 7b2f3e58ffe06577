use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revspace::condensation::{transitive_reduction, OrderNode};
use revspace::{
    classify_strongly_reversible, condensational_leq, condensational_order, conv_hull, homeo_class,
    is_condensation, is_homeomorphism, is_reversible, is_strongly_reversible, is_weakly_reversible,
    maximal_chains, poset_invariant, sim_class, enumerate_topologies, FiniteTopology, LeqMethod, Limits,
    Permutation, ReversibilityMethod, StrongClass, TopologyCatalog,
};

fn catalog(n: usize) -> TopologyCatalog {
    enumerate_topologies(n, &Limits::default()).unwrap()
}

/// `t1 ≼ t2` straight from the definition: some bijection `(X, t2) → (X, t1)`
/// pulls every open of `t1` back to an open of `t2`.
fn leq_by_preimages(t1: &FiniteTopology, t2: &FiniteTopology) -> bool {
    Permutation::all(t1.n())
        .iter()
        .any(|f| t1.opens().iter().all(|&o| t2.is_open(f.preimage_of(o))))
}

#[test]
fn reversibility_methods_agree_and_hold() {
    for n in 0..=4 {
        for t in catalog(n).topologies() {
            for method in ReversibilityMethod::ALL {
                assert!(is_reversible(t, method), "{method:?} on {t:?}");
            }
        }
    }
}

#[test]
fn leq_methods_agree_exhaustively_on_three_points() {
    let cat = catalog(3);
    let mut pairs = 0;
    for a in cat.topologies() {
        for b in cat.topologies() {
            let oracle = leq_by_preimages(a, b);
            for method in LeqMethod::ALL {
                assert_eq!(condensational_leq(a, b, method).unwrap(), oracle, "{method:?} {a:?} {b:?}");
            }
            pairs += 1;
        }
    }
    assert_eq!(pairs, 29 * 29);
}

#[test]
fn leq_methods_agree_on_sampled_pairs() {
    let cat = catalog(4);
    let all = cat.topologies();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let a = &all[rng.gen_range(0..all.len())];
        let b = &all[rng.gen_range(0..all.len())];
        let values: Vec<bool> = LeqMethod::ALL
            .iter()
            .map(|&m| condensational_leq(a, b, m).unwrap())
            .collect();
        assert!(values.iter().all(|&v| v == values[0]));
    }
}

#[test]
fn preorder_laws() {
    let cat = catalog(3);
    let all = cat.topologies();
    let leq = |a: &FiniteTopology, b: &FiniteTopology| condensational_leq(a, b, LeqMethod::WitnessMap).unwrap();
    for a in all {
        assert!(leq(a, a));
        for b in all {
            for c in all {
                if leq(a, b) && leq(b, c) {
                    assert!(leq(a, c));
                }
            }
        }
    }
}

#[test]
fn sim_classes_and_hulls() {
    for n in 0..=4 {
        let cat = catalog(n);
        for t in cat.topologies() {
            let sim = sim_class(t, &cat).unwrap();
            let oracle: Vec<FiniteTopology> = cat
                .topologies()
                .iter()
                .filter(|o| leq_by_preimages(t, o) && leq_by_preimages(o, t))
                .cloned()
                .collect();
            assert_eq!(sim.members(), oracle.as_slice());

            let class = homeo_class(t);
            assert_eq!(conv_hull(class.members(), &cat).unwrap(), sim.members());
            assert_eq!(is_weakly_reversible(t, &cat).unwrap(), sim.members() == class.members());
            assert!(is_weakly_reversible(t, &cat).unwrap());

            // convexity of the class
            for o in cat.topologies() {
                let between = sim.members().iter().any(|lo| lo.is_coarser_or_equal(o))
                    && sim.members().iter().any(|hi| o.is_coarser_or_equal(hi));
                assert_eq!(between, sim.members().contains(o));
            }
        }
    }
}

#[test]
fn strong_reversibility_classification() {
    for n in 0..=5 {
        let cat = catalog(n);
        let mut count = 0;
        for t in cat.topologies() {
            let by_orbit = homeo_class(t).len() == 1;
            assert_eq!(is_strongly_reversible(t), by_orbit);
            let class = classify_strongly_reversible(t);
            assert_eq!(class != StrongClass::NotStronglyReversible, by_orbit, "{t:?}");
            assert!(!matches!(class, StrongClass::CoSmall(_)));
            if by_orbit {
                count += 1;
                assert!(t.is_discrete() || t.is_antidiscrete());
            }
        }
        assert_eq!(count, if n <= 1 { 1 } else { 2 }, "n = {n}");
    }
}

#[test]
fn bridges_between_notions() {
    for n in 0..=4 {
        let cat = catalog(n);
        for t in cat.topologies() {
            if is_strongly_reversible(t) {
                assert!(is_reversible(t, ReversibilityMethod::Direct));
            }
            if is_reversible(t, ReversibilityMethod::Direct) {
                assert!(is_weakly_reversible(t, &cat).unwrap());
            }
        }
    }
}

#[test]
fn homeomorphisms_are_two_way_condensations() {
    let cat = catalog(3);
    let perms = Permutation::all(3);
    for a in cat.topologies() {
        for f in &perms {
            let b = a.image(f).unwrap();
            assert!(is_homeomorphism(f, a, &b).unwrap());
            assert!(is_condensation(f, a, &b).unwrap());
            assert!(is_condensation(&f.inverse(), &b, a).unwrap());
            if is_condensation(f, a, a).unwrap() {
                assert!(is_homeomorphism(f, a, a).unwrap());
            }
        }
    }
}

fn node_by_brute_force(cat: &TopologyCatalog) -> Vec<BTreeSet<FiniteTopology>> {
    let mut classes: Vec<BTreeSet<FiniteTopology>> = Vec::new();
    for t in cat.topologies() {
        if classes.iter().any(|c| c.contains(t)) {
            continue;
        }
        classes.push(
            cat.topologies()
                .iter()
                .filter(|o| leq_by_preimages(t, o) && leq_by_preimages(o, t))
                .cloned()
                .collect(),
        );
    }
    classes
}

#[test]
fn condensational_order_matches_brute_force() {
    for n in 0..=4 {
        let cat = catalog(n);
        let order = condensational_order(&cat);
        assert!(order.is_partial_order());
        let nodes: BTreeSet<BTreeSet<FiniteTopology>> = order
            .nodes
            .iter()
            .map(|node: &OrderNode| node.members.iter().cloned().collect())
            .collect();
        let oracle: BTreeSet<BTreeSet<FiniteTopology>> = node_by_brute_force(&cat).into_iter().collect();
        assert_eq!(nodes, oracle);
        // finite classes are single orbits
        assert!(order.nodes.iter().all(|node| node.orbit_sizes.len() == 1));
        assert_eq!(order.nodes.len(), cat.orbit_count());
        for (i, a) in order.nodes.iter().enumerate() {
            for (j, b) in order.nodes.iter().enumerate() {
                assert_eq!(order.leq[i][j], leq_by_preimages(&a.members[0], &b.members[0]));
            }
        }
        assert_eq!(order.hasse, transitive_reduction(&order.leq));
        for node in &order.nodes {
            assert!(node.members.contains(&node.representative));
            assert_eq!(node.representative, node.representative.canonical_form());
        }
    }
}

#[test]
fn hasse_edges_are_covers() {
    let order = condensational_order(&catalog(3));
    let k = order.nodes.len();
    for &(a, b) in &order.hasse {
        assert!(order.leq[a][b] && a != b);
        assert!(!(0..k).any(|c| c != a && c != b && order.leq[a][c] && order.leq[c][b]));
    }
}

#[test]
fn chains_in_sim_classes_are_trivial() {
    for n in 0..=4 {
        let cat = catalog(n);
        for members in cat.orbits().values() {
            let t = &members[0];
            let report = maximal_chains(sim_class(t, &cat).unwrap().members());
            assert!(report.all_singletons());
            assert!(!report.has_endpoint_free_chain());
            assert_eq!(report.chains.len(), members.len());
        }
    }
}

#[test]
fn poset_invariants_are_transported_by_homeomorphisms() {
    let cat = catalog(3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let perms = Permutation::all(3);
    for _ in 0..200 {
        let t = &cat.topologies()[rng.gen_range(0..cat.len())];
        let f = &perms[rng.gen_range(0..perms.len())];
        let image = t.image(f).unwrap();
        assert_eq!(
            poset_invariant(homeo_class(t).members()),
            poset_invariant(homeo_class(&image).members())
        );
    }
    let discrete = poset_invariant(homeo_class(&FiniteTopology::discrete(3)).members());
    assert_eq!(discrete.size, 1);
    let sierpinski = FiniteTopology::generate(2, &[revspace::PointSet(1)]).unwrap();
    let inv = poset_invariant(homeo_class(&sierpinski).members());
    assert_eq!(inv.size, 2);
    assert!(inv.is_antichain());
    // the whole lattice of topologies on three points is not an antichain
    assert!(!poset_invariant(cat.topologies()).is_antichain());
}
