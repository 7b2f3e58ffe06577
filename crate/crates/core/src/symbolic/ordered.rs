//! Non-reversibility witnesses for the ordered topologies on `L_z`.

use serde::Serialize;

use super::map::{image_topology_symbolic, SymbolicMap};
use super::space::{member_open, SymbolicTopology};
use super::zset::ZDescriptor;
use super::SymbolicError;

/// How far below the parameter the inclusion `T ⊆ f[T]` is sampled on each
/// generator schema.
const SCHEMA_WINDOW: i64 = 4;

/// Certificate that `OrderedZ(c)` is strictly coarser than its homeomorphic
/// copy under a shift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderedZWitness {
    pub c: i64,
    pub map: SymbolicMap,
    pub image_c: i64,
    /// Open in the image but not in the original.
    pub separator: ZDescriptor,
    pub separator_open_in_image: bool,
    pub separator_open_in_original: bool,
    /// The image topology obligations of the shift were all discharged.
    pub image_certified: bool,
    /// Sampled generators of the original that stay open in the image.
    pub inclusion_checks: usize,
    pub inclusion_holds: bool,
}

impl OrderedZWitness {
    pub fn holds(&self) -> bool {
        self.image_certified
            && self.inclusion_holds
            && self.separator_open_in_image
            && !self.separator_open_in_original
    }
}

pub fn nonreversibility_witness(c: i64) -> Result<OrderedZWitness, SymbolicError> {
    let t = SymbolicTopology::OrderedZ { c };
    let map = SymbolicMap::ShiftZ { k: 1 };
    let cert = image_topology_symbolic(&map, &t)?;
    let SymbolicTopology::OrderedZ { c: image_c } = cert.topology else {
        unreachable!("shifts keep ordered topologies ordered")
    };
    let separator = ZDescriptor::OpenLeft { b: image_c };

    let mut generators = vec![ZDescriptor::Empty, ZDescriptor::All];
    for p in c - SCHEMA_WINDOW..=c + SCHEMA_WINDOW {
        generators.push(ZDescriptor::ClosedLeft { a: p });
        generators.push(ZDescriptor::OpenLeft { b: p });
    }
    let mut inclusion_checks = 0;
    let mut inclusion_holds = true;
    for g in generators {
        if member_open(&g.clone().into(), &t)? {
            inclusion_checks += 1;
            inclusion_holds &= member_open(&g.into(), &cert.topology)?;
        }
    }

    Ok(OrderedZWitness {
        c,
        separator_open_in_image: member_open(&separator.clone().into(), &cert.topology)?,
        separator_open_in_original: member_open(&separator.clone().into(), &t)?,
        image_certified: cert.holds(),
        map,
        image_c,
        separator,
        inclusion_checks,
        inclusion_holds,
    })
}

/// `OrderedZ(c) ⊊ OrderedZ(c+1) ⊊ … ⊊ OrderedZ(c+k)`, one witness per link.
/// Each level is the image of the first under `ShiftZ(i)`, so all levels are
/// homeomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderedZChain {
    pub links: Vec<OrderedZWitness>,
    /// `image_topology_symbolic(ShiftZ(i), OrderedZ(c))` gives level `i`.
    pub homeomorphic: bool,
}

impl OrderedZChain {
    pub fn holds(&self) -> bool {
        self.homeomorphic && self.links.iter().all(OrderedZWitness::holds)
    }

    /// Parameters along the chain.
    pub fn levels(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.links.iter().map(|l| l.c).collect();
        out.extend(self.links.last().map(|l| l.image_c));
        out
    }
}

pub fn ordered_z_chain(c: i64, k: usize) -> Result<OrderedZChain, SymbolicError> {
    let base = SymbolicTopology::OrderedZ { c };
    let mut links = Vec::with_capacity(k);
    let mut homeomorphic = true;
    for i in 0..k as i64 {
        links.push(nonreversibility_witness(c + i)?);
        let cert = image_topology_symbolic(&SymbolicMap::ShiftZ { k: i + 1 }, &base)?;
        homeomorphic &= cert.holds() && cert.topology == SymbolicTopology::OrderedZ { c: c + i + 1 };
    }
    Ok(OrderedZChain { links, homeomorphic })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_at_zero() {
        let w = nonreversibility_witness(0).unwrap();
        assert_eq!(w.map, SymbolicMap::ShiftZ { k: 1 });
        assert_eq!(w.image_c, 1);
        assert_eq!(w.separator, ZDescriptor::OpenLeft { b: 1 });
        assert!(w.holds());
    }

    #[test]
    fn witness_is_translation_invariant() {
        for c in [-7, -1, 3, 100] {
            let w = nonreversibility_witness(c).unwrap();
            assert!(w.holds());
            assert_eq!(w.separator, ZDescriptor::OpenLeft { b: c + 1 });
        }
    }

    #[test]
    fn chain_of_ten() {
        let chain = ordered_z_chain(0, 10).unwrap();
        assert!(chain.holds());
        assert_eq!(chain.levels(), (0..=10).collect::<Vec<_>>());
    }
}
