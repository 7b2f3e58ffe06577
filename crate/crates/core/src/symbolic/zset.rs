//! Subsets of `L_z = {z} ∪ ℤ`, where `z` sits below every integer.

use serde::{Deserialize, Serialize};

/// A point of `L_z`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZPoint {
    /// The added least element `z`.
    Bottom,
    Int(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "lowercase")]
pub enum ZDescriptor {
    Empty,
    All,
    /// `[z, a) = {z} ∪ (−∞, a)`.
    ClosedLeft { a: i64 },
    /// `(z, b) = (−∞, b)`.
    OpenLeft { b: i64 },
    Finite { z: bool, ints: Vec<i64> },
    Complement { of: Box<ZDescriptor> },
    Union { of: Vec<ZDescriptor> },
    Intersection { of: Vec<ZDescriptor> },
}

impl ZDescriptor {
    pub fn finite(z: bool, ints: impl IntoIterator<Item = i64>) -> ZDescriptor {
        let mut ints: Vec<i64> = ints.into_iter().collect();
        ints.sort_unstable();
        ints.dedup();
        ZDescriptor::Finite { z, ints }
    }

    pub fn complement(self) -> ZDescriptor {
        ZDescriptor::Complement { of: Box::new(self) }
    }

    pub fn contains(&self, p: ZPoint) -> bool {
        match (self, p) {
            (ZDescriptor::Empty, _) => false,
            (ZDescriptor::All, _) => true,
            (ZDescriptor::ClosedLeft { .. }, ZPoint::Bottom) => true,
            (ZDescriptor::ClosedLeft { a }, ZPoint::Int(x)) => x < *a,
            (ZDescriptor::OpenLeft { .. }, ZPoint::Bottom) => false,
            (ZDescriptor::OpenLeft { b }, ZPoint::Int(x)) => x < *b,
            (ZDescriptor::Finite { z, .. }, ZPoint::Bottom) => *z,
            (ZDescriptor::Finite { ints, .. }, ZPoint::Int(x)) => ints.binary_search(&x).is_ok(),
            (ZDescriptor::Complement { of }, p) => !of.contains(p),
            (ZDescriptor::Union { of }, p) => of.iter().any(|d| d.contains(p)),
            (ZDescriptor::Intersection { of }, p) => of.iter().all(|d| d.contains(p)),
        }
    }

    /// Translates every integer parameter by `k`.
    pub fn shifted(&self, k: i64) -> ZDescriptor {
        match self {
            ZDescriptor::Empty => ZDescriptor::Empty,
            ZDescriptor::All => ZDescriptor::All,
            ZDescriptor::ClosedLeft { a } => ZDescriptor::ClosedLeft { a: a + k },
            ZDescriptor::OpenLeft { b } => ZDescriptor::OpenLeft { b: b + k },
            ZDescriptor::Finite { z, ints } => ZDescriptor::Finite {
                z: *z,
                ints: ints.iter().map(|x| x + k).collect(),
            },
            ZDescriptor::Complement { of } => ZDescriptor::Complement {
                of: Box::new(of.shifted(k)),
            },
            ZDescriptor::Union { of } => ZDescriptor::Union {
                of: of.iter().map(|d| d.shifted(k)).collect(),
            },
            ZDescriptor::Intersection { of } => ZDescriptor::Intersection {
                of: of.iter().map(|d| d.shifted(k)).collect(),
            },
        }
    }

    /// Exact normal form of the denoted set.
    pub fn denotation(&self) -> ZSet {
        match self {
            ZDescriptor::Empty => ZSet::empty(),
            ZDescriptor::All => ZSet::all(),
            ZDescriptor::ClosedLeft { a } => ZSet {
                z: true,
                ints: Rays::below(*a),
            },
            ZDescriptor::OpenLeft { b } => ZSet {
                z: false,
                ints: Rays::below(*b),
            },
            ZDescriptor::Finite { z, ints } => ZSet {
                z: *z,
                ints: ints
                    .iter()
                    .fold(Rays::empty(), |acc, &x| acc.combine(&Rays::point(x), |a, b| a || b)),
            },
            ZDescriptor::Complement { of } => {
                let d = of.denotation();
                ZSet {
                    z: !d.z,
                    ints: d.ints.complement(),
                }
            }
            ZDescriptor::Union { of } => of
                .iter()
                .map(ZDescriptor::denotation)
                .fold(ZSet::empty(), |acc, d| acc.combine(&d, |a, b| a || b)),
            ZDescriptor::Intersection { of } => of
                .iter()
                .map(ZDescriptor::denotation)
                .fold(ZSet::all(), |acc, d| acc.combine(&d, |a, b| a && b)),
        }
    }
}

/// A subset of `ℤ` that is a finite union of intervals: membership starts as
/// `from_below` at `−∞` and flips at every toggle `t` (for `x ≥ t`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rays {
    pub from_below: bool,
    pub toggles: Vec<i128>,
}

impl Rays {
    pub fn empty() -> Rays {
        Rays {
            from_below: false,
            toggles: vec![],
        }
    }

    /// `(−∞, a)`.
    pub fn below(a: i64) -> Rays {
        Rays {
            from_below: true,
            toggles: vec![a as i128],
        }
    }

    pub fn point(x: i64) -> Rays {
        Rays {
            from_below: false,
            toggles: vec![x as i128, x as i128 + 1],
        }
    }

    pub fn contains(&self, x: i64) -> bool {
        let flips = self.toggles.partition_point(|&t| t <= x as i128);
        self.from_below ^ (flips % 2 == 1)
    }

    /// Membership far to the right.
    pub fn towards_above(&self) -> bool {
        self.from_below ^ (self.toggles.len() % 2 == 1)
    }

    pub fn complement(&self) -> Rays {
        Rays {
            from_below: !self.from_below,
            toggles: self.toggles.clone(),
        }
    }

    fn at(&self, t: i128) -> bool {
        let flips = self.toggles.partition_point(|&s| s <= t);
        self.from_below ^ (flips % 2 == 1)
    }

    pub fn combine(&self, other: &Rays, op: impl Fn(bool, bool) -> bool) -> Rays {
        let from_below = op(self.from_below, other.from_below);
        let mut points: Vec<i128> = self.toggles.iter().chain(&other.toggles).copied().collect();
        points.sort_unstable();
        points.dedup();
        let mut toggles = Vec::new();
        let mut current = from_below;
        for t in points {
            let v = op(self.at(t), other.at(t));
            if v != current {
                toggles.push(t);
                current = v;
            }
        }
        Rays {
            from_below,
            toggles,
        }
    }
}

/// Normal form of a subset of `L_z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZSet {
    pub z: bool,
    pub ints: Rays,
}

impl ZSet {
    pub fn empty() -> ZSet {
        ZSet {
            z: false,
            ints: Rays::empty(),
        }
    }

    pub fn all() -> ZSet {
        ZSet {
            z: true,
            ints: Rays {
                from_below: true,
                toggles: vec![],
            },
        }
    }

    pub fn contains(&self, p: ZPoint) -> bool {
        match p {
            ZPoint::Bottom => self.z,
            ZPoint::Int(x) => self.ints.contains(x),
        }
    }

    fn combine(&self, other: &ZSet, op: impl Fn(bool, bool) -> bool + Copy) -> ZSet {
        ZSet {
            z: op(self.z, other.z),
            ints: self.ints.combine(&other.ints, op),
        }
    }

    /// `Some(a)` iff the integer part is exactly `(−∞, a)`.
    pub fn as_left_ray(&self) -> Option<i64> {
        match self.ints.toggles.as_slice() {
            [a] if self.ints.from_below => i64::try_from(*a).ok(),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.ints.from_below || self.ints.towards_above()
    }
}
