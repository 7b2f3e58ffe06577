//! Bijections of the countable grounds and their action on descriptors and
//! topologies.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::omega::SetDescriptor;
use super::space::{member_open, Descriptor, Ground, Point, PointedSet, SymbolicTopology};
use super::zset::{ZDescriptor, ZPoint};
use super::SymbolicError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "lowercase")]
pub enum SymbolicMap {
    /// A permutation of `ω` moving finitely many points; listed pairs
    /// `(x, f(x))`, identity elsewhere. On `ω ∪ {⋆}` it also fixes `⋆`.
    FinSupportPerm { pairs: Vec<(u64, u64)> },
    /// Fixes `z`, sends `x ↦ x + k` on `ℤ`.
    ShiftZ { k: i64 },
    /// Applies the maps in order, first to last.
    Composition { maps: Vec<SymbolicMap> },
}

impl SymbolicMap {
    /// Validates and normalizes a finite-support permutation table.
    pub fn fin_support(pairs: impl IntoIterator<Item = (u64, u64)>) -> Result<SymbolicMap, SymbolicError> {
        let table: BTreeMap<u64, u64> = pairs.into_iter().filter(|(a, b)| a != b).collect();
        let domain: BTreeSet<u64> = table.keys().copied().collect();
        let range: BTreeSet<u64> = table.values().copied().collect();
        if range.len() != table.len() || domain != range {
            return Err(SymbolicError::NotABijection);
        }
        Ok(SymbolicMap::FinSupportPerm {
            pairs: table.into_iter().collect(),
        })
    }

    pub fn swap(a: u64, b: u64) -> SymbolicMap {
        SymbolicMap::fin_support([(a, b), (b, a)]).expect("a transposition is a bijection")
    }

    pub fn identity() -> SymbolicMap {
        SymbolicMap::FinSupportPerm { pairs: vec![] }
    }

    /// `None` for maps that make sense on every ground (empty compositions).
    pub fn ground(&self) -> Result<Option<Ground>, SymbolicError> {
        match self {
            SymbolicMap::FinSupportPerm { .. } => Ok(Some(Ground::Omega)),
            SymbolicMap::ShiftZ { .. } => Ok(Some(Ground::Lz)),
            SymbolicMap::Composition { maps } => {
                let mut ground = None;
                for m in maps {
                    match (ground, m.ground()?) {
                        (_, None) => {}
                        (None, g) => ground = g,
                        (Some(a), Some(b)) if a == b => {}
                        (Some(a), Some(b)) => {
                            return Err(SymbolicError::GroundMismatch { expected: a, found: b })
                        }
                    }
                }
                Ok(ground)
            }
        }
    }

    /// Points moved by the map (for permutations of `ω`).
    pub fn support(&self) -> BTreeSet<u64> {
        match self {
            SymbolicMap::FinSupportPerm { pairs } => pairs.iter().map(|&(a, _)| a).collect(),
            SymbolicMap::ShiftZ { .. } => BTreeSet::new(),
            SymbolicMap::Composition { maps } => maps.iter().flat_map(SymbolicMap::support).collect(),
        }
    }

    pub fn apply(&self, p: Point) -> Result<Point, SymbolicError> {
        Ok(match (self, p) {
            (SymbolicMap::FinSupportPerm { .. }, Point::Star) => Point::Star,
            (SymbolicMap::FinSupportPerm { pairs }, Point::Nat(n)) => Point::Nat(
                pairs
                    .binary_search_by_key(&n, |&(a, _)| a)
                    .map_or(n, |i| pairs[i].1),
            ),
            (SymbolicMap::ShiftZ { .. }, Point::Z(ZPoint::Bottom)) => p,
            (SymbolicMap::ShiftZ { k }, Point::Z(ZPoint::Int(x))) => Point::Z(ZPoint::Int(x + k)),
            (SymbolicMap::Composition { maps }, p) => {
                maps.iter().try_fold(p, |acc, m| m.apply(acc))?
            }
            (m, p) => {
                return Err(SymbolicError::Invalid(format!("{m:?} does not act on {p:?}")))
            }
        })
    }

    pub fn inverse(&self) -> SymbolicMap {
        match self {
            SymbolicMap::FinSupportPerm { pairs } => {
                let mut inv: Vec<(u64, u64)> = pairs.iter().map(|&(a, b)| (b, a)).collect();
                inv.sort_unstable();
                SymbolicMap::FinSupportPerm { pairs: inv }
            }
            SymbolicMap::ShiftZ { k } => SymbolicMap::ShiftZ { k: -k },
            SymbolicMap::Composition { maps } => SymbolicMap::Composition {
                maps: maps.iter().rev().map(SymbolicMap::inverse).collect(),
            },
        }
    }

    fn image_omega(&self, d: &SetDescriptor) -> Result<SetDescriptor, SymbolicError> {
        match self {
            SymbolicMap::FinSupportPerm { pairs } => Ok(permute(pairs, d)),
            SymbolicMap::Composition { maps } => {
                maps.iter().try_fold(d.clone(), |acc, m| m.image_omega(&acc))
            }
            SymbolicMap::ShiftZ { .. } => Err(SymbolicError::GroundMismatch {
                expected: Ground::Lz,
                found: Ground::Omega,
            }),
        }
    }

    fn image_z(&self, d: &ZDescriptor) -> Result<ZDescriptor, SymbolicError> {
        match self {
            SymbolicMap::ShiftZ { k } => Ok(d.shifted(*k)),
            SymbolicMap::Composition { maps } => maps.iter().try_fold(d.clone(), |acc, m| m.image_z(&acc)),
            SymbolicMap::FinSupportPerm { .. } => Err(SymbolicError::GroundMismatch {
                expected: Ground::Omega,
                found: Ground::Lz,
            }),
        }
    }
}

fn permute(pairs: &[(u64, u64)], d: &SetDescriptor) -> SetDescriptor {
    let f = |n: u64| {
        pairs
            .binary_search_by_key(&n, |&(a, _)| a)
            .map_or(n, |i| pairs[i].1)
    };
    match d {
        SetDescriptor::Finite { elements } => SetDescriptor::finite(elements.iter().map(|&n| f(n))),
        SetDescriptor::Cofinite { excluded } => SetDescriptor::cofinite(excluded.iter().map(|&n| f(n))),
        SetDescriptor::Branch { .. } | SetDescriptor::Progression { .. } => {
            let moved: Vec<u64> = pairs.iter().map(|&(a, _)| a).filter(|&a| d.contains(a)).collect();
            if moved.is_empty() {
                return d.clone();
            }
            // f[L] = (L ∖ supp f) ∪ f[L ∩ supp f]
            SetDescriptor::union(vec![
                SetDescriptor::difference(d.clone(), SetDescriptor::finite(pairs.iter().map(|&(a, _)| a))),
                SetDescriptor::finite(moved.into_iter().map(f)),
            ])
        }
        SetDescriptor::Union { of } => SetDescriptor::union(of.iter().map(|e| permute(pairs, e)).collect()),
        SetDescriptor::Intersection { of } => {
            SetDescriptor::intersection(of.iter().map(|e| permute(pairs, e)).collect())
        }
        SetDescriptor::Difference { left, right } => {
            SetDescriptor::difference(permute(pairs, left), permute(pairs, right))
        }
    }
}

/// Exact descriptor of `f[d]`.
pub fn image_descriptor(f: &SymbolicMap, d: &Descriptor) -> Result<Descriptor, SymbolicError> {
    Ok(match d {
        Descriptor::Omega(s) => Descriptor::Omega(f.image_omega(s)?),
        Descriptor::Z(z) => Descriptor::Z(f.image_z(z)?),
        Descriptor::Pointed(p) => Descriptor::Pointed(PointedSet {
            star: p.star,
            rest: f.image_omega(&p.rest)?,
        }),
    })
}

/// One checked instance of a generator schema being carried to the image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemaObligation {
    pub original: Descriptor,
    pub image: Descriptor,
    pub expected: Descriptor,
    pub image_matches: bool,
    pub open_before: bool,
    pub open_after: bool,
}

impl SchemaObligation {
    pub fn discharged(&self) -> bool {
        self.image_matches && self.open_before == self.open_after
    }
}

/// `f[T]` with the generator instances that were checked on the way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageCertificate {
    pub topology: SymbolicTopology,
    pub obligations: Vec<SchemaObligation>,
}

impl ImageCertificate {
    pub fn holds(&self) -> bool {
        self.obligations.iter().all(SchemaObligation::discharged)
    }
}

fn same_set(a: &Descriptor, b: &Descriptor) -> Result<bool, SymbolicError> {
    Ok(match (a, b) {
        (Descriptor::Omega(x), Descriptor::Omega(y)) => x.same_set(y)?,
        (Descriptor::Z(x), Descriptor::Z(y)) => x.denotation() == y.denotation(),
        (Descriptor::Pointed(x), Descriptor::Pointed(y)) => x.star == y.star && x.rest.same_set(&y.rest)?,
        _ => false,
    })
}

fn obligation(
    f: &SymbolicMap,
    original: Descriptor,
    expected: Descriptor,
    before: &SymbolicTopology,
    after: &SymbolicTopology,
) -> Result<SchemaObligation, SymbolicError> {
    let image = image_descriptor(f, &original)?;
    Ok(SchemaObligation {
        image_matches: same_set(&image, &expected)?,
        open_before: member_open(&original, before)?,
        open_after: member_open(&image, after)?,
        original,
        image,
        expected,
    })
}

/// `f[T]` as a symbolic topology.
///
/// For shifts of `OrderedZ(c)` the generator schemas `[z,a)` and `(z,b)` are
/// carried to `[z,a+k)` and `(z,b+k)`; instances around the boundary `c` are
/// recorded as obligations. Finite-support permutations fix the discrete,
/// antidiscrete, cofinite and convergent-sequence topologies and act on the
/// removed sets of a refinement.
pub fn image_topology_symbolic(
    f: &SymbolicMap,
    t: &SymbolicTopology,
) -> Result<ImageCertificate, SymbolicError> {
    if let Some(g) = f.ground()? {
        let tg = match t.ground() {
            Ground::OmegaStar => Ground::Omega,
            g => g,
        };
        if g != tg {
            return Err(SymbolicError::GroundMismatch { expected: tg, found: g });
        }
    }
    if let SymbolicMap::Composition { maps } = f {
        let mut current = ImageCertificate {
            topology: t.clone(),
            obligations: vec![],
        };
        for m in maps {
            let next = image_topology_symbolic(m, &current.topology)?;
            current.obligations.extend(next.obligations);
            current.topology = next.topology;
        }
        return Ok(current);
    }
    match (f, t) {
        (SymbolicMap::ShiftZ { k }, SymbolicTopology::OrderedZ { c }) => {
            let after = SymbolicTopology::OrderedZ { c: c + k };
            let mut obligations = Vec::new();
            for p in c - 2..=c + 2 {
                obligations.push(obligation(
                    f,
                    ZDescriptor::ClosedLeft { a: p }.into(),
                    ZDescriptor::ClosedLeft { a: p + k }.into(),
                    t,
                    &after,
                )?);
                obligations.push(obligation(
                    f,
                    ZDescriptor::OpenLeft { b: p }.into(),
                    ZDescriptor::OpenLeft { b: p + k }.into(),
                    t,
                    &after,
                )?);
            }
            Ok(ImageCertificate {
                topology: after,
                obligations,
            })
        }
        (SymbolicMap::FinSupportPerm { .. }, SymbolicTopology::CoSmall) => {
            let cert = preserves_topology(f, t)?;
            Ok(ImageCertificate {
                topology: t.clone(),
                obligations: cert.checks,
            })
        }
        (
            SymbolicMap::FinSupportPerm { .. },
            SymbolicTopology::DiscreteOmega | SymbolicTopology::AntidiscreteOmega | SymbolicTopology::ConvSeq,
        ) => Ok(ImageCertificate {
            topology: t.clone(),
            obligations: vec![],
        }),
        (SymbolicMap::FinSupportPerm { .. }, SymbolicTopology::Refined { removed }) => {
            let removed = removed
                .iter()
                .map(|m| f.image_omega(m))
                .collect::<Result<_, _>>()?;
            Ok(ImageCertificate {
                topology: SymbolicTopology::Refined { removed },
                obligations: vec![],
            })
        }
        _ => Err(SymbolicError::UnsupportedDescriptor(format!(
            "no image rule for {f:?} on {t:?}"
        ))),
    }
}

/// Certificate that a permutation maps the cofinite topology onto itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreservationCertificate {
    pub map: SymbolicMap,
    pub checks: Vec<SchemaObligation>,
}

impl PreservationCertificate {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(SchemaObligation::discharged)
    }
}

/// Checks `f[𝒪] = 𝒪` for the cofinite topology on `ω`.
///
/// Every nonempty open is `ω ∖ F` with `F` finite and a bijection sends it to
/// `ω ∖ f[F]`. The certificate evaluates this on the descriptors for the
/// excluded sets `∅`, the support, each support point, and a set reaching past
/// the support, in both directions (`f` and `f⁻¹`), plus the non-open
/// singletons of the support, which must stay non-open.
pub fn preserves_topology(
    f: &SymbolicMap,
    t: &SymbolicTopology,
) -> Result<PreservationCertificate, SymbolicError> {
    if *t != SymbolicTopology::CoSmall {
        return Err(SymbolicError::UnsupportedDescriptor(
            "preservation certificates are built for the cofinite topology".into(),
        ));
    }
    if f.ground()?.is_some_and(|g| g != Ground::Omega) {
        return Err(SymbolicError::UnsupportedDescriptor(
            "only finite-support permutations of ω are covered".into(),
        ));
    }
    let support: Vec<u64> = f.support().into_iter().collect();
    let beyond = support.last().map_or(0, |m| m + 1);
    let mut probes: Vec<Vec<u64>> = vec![vec![], support.clone(), vec![beyond, beyond + 3]];
    probes.extend(support.iter().map(|&s| vec![s]));
    probes.push(support.iter().copied().chain([beyond]).collect());

    let mut checks = Vec::new();
    for map in [f.clone(), f.inverse()] {
        let point = |n: u64| match map.apply(Point::Nat(n)) {
            Ok(Point::Nat(m)) => m,
            _ => unreachable!("permutations of ω stay in ω"),
        };
        for excluded in &probes {
            let original = SetDescriptor::cofinite(excluded.iter().copied());
            let expected = SetDescriptor::cofinite(excluded.iter().map(|&n| point(n)));
            checks.push(obligation(&map, original.into(), expected.into(), t, t)?);
        }
        for &s in &support {
            let original = SetDescriptor::finite([s]);
            let expected = SetDescriptor::finite([point(s)]);
            checks.push(obligation(&map, original.into(), expected.into(), t, t)?);
        }
        checks.push(obligation(
            &map,
            SetDescriptor::empty().into(),
            SetDescriptor::empty().into(),
            t,
            t,
        )?);
    }
    Ok(PreservationCertificate {
        map: f.clone(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_images() {
        let f = SymbolicMap::ShiftZ { k: 1 };
        let img = image_descriptor(&f, &ZDescriptor::ClosedLeft { a: 5 }.into()).unwrap();
        assert_eq!(img, ZDescriptor::ClosedLeft { a: 6 }.into());
        let cert = image_topology_symbolic(&f, &SymbolicTopology::OrderedZ { c: 0 }).unwrap();
        assert_eq!(cert.topology, SymbolicTopology::OrderedZ { c: 1 });
        assert!(cert.holds());
    }

    #[test]
    fn swap_on_cofinite() {
        let f = SymbolicMap::swap(0, 1);
        let img = image_descriptor(&f, &SetDescriptor::cofinite([0]).into()).unwrap();
        assert_eq!(img, SetDescriptor::cofinite([1]).into());
        assert!(preserves_topology(&f, &SymbolicTopology::CoSmall).unwrap().holds());
        assert!(preserves_topology(&SymbolicMap::identity(), &SymbolicTopology::CoSmall)
            .unwrap()
            .holds());
    }

    #[test]
    fn branch_image_is_exact() {
        let word = super::super::word::BranchWord::new("", "0").unwrap();
        let f = SymbolicMap::fin_support([(2, 3), (3, 5), (5, 2)]).unwrap();
        let d = SetDescriptor::branch(word);
        let Descriptor::Omega(img) = image_descriptor(&f, &d.clone().into()).unwrap() else {
            panic!()
        };
        for n in 0..600 {
            let pre = match f.inverse().apply(Point::Nat(n)).unwrap() {
                Point::Nat(m) => m,
                _ => unreachable!(),
            };
            assert_eq!(img.contains(n), d.contains(pre));
        }
    }

    #[test]
    fn compositions() {
        let f = SymbolicMap::Composition {
            maps: vec![SymbolicMap::ShiftZ { k: 3 }, SymbolicMap::ShiftZ { k: -3 }],
        };
        for x in -10..10 {
            let p = Point::Z(ZPoint::Int(x));
            assert_eq!(f.apply(p).unwrap(), p);
        }
        let mixed = SymbolicMap::Composition {
            maps: vec![SymbolicMap::ShiftZ { k: 1 }, SymbolicMap::swap(0, 1)],
        };
        assert!(mixed.ground().is_err());
        assert!(SymbolicMap::fin_support([(0, 1)]).is_err());
        assert!(SymbolicMap::fin_support([(0, 1), (1, 1)]).is_err());
    }
}
