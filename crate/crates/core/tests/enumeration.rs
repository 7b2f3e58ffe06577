use std::collections::BTreeSet;

use revspace::enumeration::{enumerate_preorders, preorder_of_topology, topology_of_preorder};
use revspace::{enumerate_topologies, enumerate_via_preorders, FiniteTopology, Limits, PointSet, TopologyError};

/// Every family of subsets containing `∅` and `X` that is closed under `∪`
/// and `∩`, found by filtering all `2^(2^n - 2)` candidates.
fn family_filter(n: usize) -> Vec<FiniteTopology> {
    let full = (1u64 << n) - 1;
    let middle: Vec<u64> = (1..full).collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << middle.len() {
        let mut family: Vec<u64> = vec![0, full];
        family.extend(middle.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &s)| s));
        let set: BTreeSet<u64> = family.iter().copied().collect();
        let closed = family
            .iter()
            .all(|&a| family.iter().all(|&b| set.contains(&(a | b)) && set.contains(&(a & b))));
        if closed {
            let opens = set.into_iter().map(PointSet).collect();
            out.insert(FiniteTopology::validate(n, opens).unwrap());
        }
    }
    out.into_iter().collect()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn direct_enumeration_matches_family_filter() {
    let limits = Limits::default();
    for n in 0..=3 {
        let direct = enumerate_topologies(n, &limits).unwrap();
        let oracle = if n == 0 {
            vec![FiniteTopology::discrete(0)]
        } else {
            family_filter(n)
        };
        assert_eq!(direct.topologies(), oracle.as_slice(), "n = {n}");
    }
}

#[test]
fn two_enumerators_agree() {
    let limits = Limits::default();
    let expected = [1, 1, 4, 29, 355];
    for (n, &count) in expected.iter().enumerate() {
        let direct = enumerate_topologies(n, &limits).unwrap();
        let oracle = enumerate_via_preorders(n, &limits).unwrap();
        assert_eq!(direct.len(), count, "n = {n}");
        assert_eq!(direct.topologies(), oracle.topologies(), "n = {n}");
    }
}

#[test]
fn five_points() {
    let limits = Limits::default();
    let direct = enumerate_topologies(5, &limits).unwrap();
    let oracle = enumerate_via_preorders(5, &limits).unwrap();
    assert_eq!(direct.len(), 6942);
    assert_eq!(direct.topologies(), oracle.topologies());
    assert_eq!(direct.orbit_count(), 139);
}

#[test]
fn preorder_round_trip() {
    let limits = Limits::default();
    for n in 0..=4 {
        let preorders = enumerate_preorders(n, &limits).unwrap();
        let mut images = BTreeSet::new();
        for p in &preorders {
            let t = topology_of_preorder(p);
            assert_eq!(&preorder_of_topology(&t), p);
            images.insert(t);
        }
        assert_eq!(images.len(), preorders.len());
    }
}

#[test]
fn catalog_invariants() {
    let limits = Limits::default();
    let orbit_counts = [1, 1, 3, 9, 33];
    for n in 0..=4 {
        let catalog = enumerate_topologies(n, &limits).unwrap();
        let all = catalog.topologies();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for t in all {
            let again = FiniteTopology::validate(n, t.opens().to_vec()).unwrap();
            assert_eq!(&again, t);
        }
        assert_eq!(catalog.orbit_count(), orbit_counts[n]);
        let mut total = 0;
        for (canonical, members) in catalog.orbits() {
            assert_eq!(factorial(n) % members.len(), 0);
            assert!(members.iter().all(|m| &m.canonical_form() == canonical));
            total += members.len();
        }
        assert_eq!(total, catalog.len());
    }
}

#[test]
fn cap_is_enforced() {
    let limits = Limits { max_n: 3 };
    assert!(matches!(
        enumerate_topologies(4, &limits),
        Err(TopologyError::CapExceeded { n: 4, limit: 3 })
    ));
    assert!(enumerate_via_preorders(4, &limits).is_err());
    assert!(enumerate_preorders(4, &limits).is_err());
}
