//! Countable topologies with decidable open-set membership over descriptors.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::omega::SetDescriptor;
use super::word::BranchWord;
use super::zset::{ZDescriptor, ZPoint};
use super::SymbolicError;

/// The ground sets the symbolic topologies live on.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ground {
    /// `ω`.
    Omega,
    /// `L_z = {z} ∪ ℤ`.
    Lz,
    /// `ω ∪ {⋆}`.
    OmegaStar,
}

impl fmt::Display for Ground {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ground::Omega => "ω",
            Ground::Lz => "L_z",
            Ground::OmegaStar => "ω ∪ {⋆}",
        })
    }
}

/// A subset of `ω ∪ {⋆}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointedSet {
    pub star: bool,
    pub rest: SetDescriptor,
}

impl PointedSet {
    pub fn contains(&self, p: Point) -> bool {
        match p {
            Point::Star => self.star,
            Point::Nat(n) => self.rest.contains(n),
            _ => false,
        }
    }
}

/// A descriptor over one of the grounds.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Descriptor {
    Omega(SetDescriptor),
    Z(ZDescriptor),
    Pointed(PointedSet),
}

impl Descriptor {
    pub fn ground(&self) -> Ground {
        match self {
            Descriptor::Omega(_) => Ground::Omega,
            Descriptor::Z(_) => Ground::Lz,
            Descriptor::Pointed(_) => Ground::OmegaStar,
        }
    }
}

impl From<SetDescriptor> for Descriptor {
    fn from(d: SetDescriptor) -> Self {
        Descriptor::Omega(d)
    }
}

impl From<ZDescriptor> for Descriptor {
    fn from(d: ZDescriptor) -> Self {
        Descriptor::Z(d)
    }
}

impl From<PointedSet> for Descriptor {
    fn from(d: PointedSet) -> Self {
        Descriptor::Pointed(d)
    }
}

/// A point of any of the grounds.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Point {
    Nat(u64),
    Star,
    Z(ZPoint),
}

impl Point {
    fn fits(self, ground: Ground) -> bool {
        matches!(
            (self, ground),
            (Point::Nat(_), Ground::Omega | Ground::OmegaStar)
                | (Point::Star, Ground::OmegaStar)
                | (Point::Z(_), Ground::Lz)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum SymbolicTopology {
    DiscreteOmega,
    AntidiscreteOmega,
    /// Cofinite topology on `ω`: `∅` and complements of finite sets.
    CoSmall,
    /// `{[z,a) : a ∈ ℤ} ∪ {(z,b) : b ≤ c} ∪ {∅, L_z}`.
    OrderedZ { c: i64 },
    /// A convergent sequence `n → ⋆`: every subset of `ω` is open, and so is
    /// `A ∪ {⋆}` for cofinite `A`.
    ConvSeq,
    /// `ConvSeq` refined by the opens `X ∖ M` for each listed `M`.
    Refined { removed: Vec<SetDescriptor> },
}

impl SymbolicTopology {
    pub fn ground(&self) -> Ground {
        match self {
            SymbolicTopology::DiscreteOmega
            | SymbolicTopology::AntidiscreteOmega
            | SymbolicTopology::CoSmall => Ground::Omega,
            SymbolicTopology::OrderedZ { .. } => Ground::Lz,
            SymbolicTopology::ConvSeq | SymbolicTopology::Refined { .. } => Ground::OmegaStar,
        }
    }

    fn expect_ground(&self, found: Ground) -> Result<(), SymbolicError> {
        if self.ground() != found {
            return Err(SymbolicError::GroundMismatch {
                expected: self.ground(),
                found,
            });
        }
        Ok(())
    }
}

/// Witness that an open set containing `⋆` in a refined topology contains a
/// basic neighbourhood `(ω ∖ excluded ∪ {⋆}) ∖ ⋃_{α ∈ family} M_α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicCover {
    pub family: Vec<usize>,
    pub excluded: Vec<u64>,
}

fn pointed(d: &Descriptor) -> Result<PointedSet, SymbolicError> {
    match d {
        Descriptor::Pointed(p) => Ok(p.clone()),
        Descriptor::Omega(s) => Ok(PointedSet {
            star: false,
            rest: s.clone(),
        }),
        Descriptor::Z(_) => Err(SymbolicError::GroundMismatch {
            expected: Ground::OmegaStar,
            found: Ground::Lz,
        }),
    }
}

/// For a neighbourhood of `⋆` in `Refined`, the members whose removal is
/// needed and the finitely many other missing points. `None` if the set does
/// not contain any basic neighbourhood of `⋆`.
pub fn refined_cover(
    set: &PointedSet,
    removed: &[SetDescriptor],
) -> Result<Option<BasicCover>, SymbolicError> {
    let missing = set.rest.clone().complement();
    let leftover = SetDescriptor::difference(missing.clone(), SetDescriptor::union(removed.to_vec()));
    if leftover.is_infinite()? {
        return Ok(None);
    }
    let mut family = Vec::new();
    for (alpha, m) in removed.iter().enumerate() {
        if SetDescriptor::intersection(vec![missing.clone(), m.clone()]).is_infinite()? {
            family.push(alpha);
        }
    }
    let used: Vec<SetDescriptor> = family.iter().map(|&a| removed[a].clone()).collect();
    let excluded = SetDescriptor::difference(missing, SetDescriptor::union(used))
        .finite_elements()?
        .expect("almost covered by the chosen members");
    Ok(Some(BasicCover { family, excluded }))
}

/// Decides whether `d` denotes an open set of `t`.
pub fn member_open(d: &Descriptor, t: &SymbolicTopology) -> Result<bool, SymbolicError> {
    match t {
        SymbolicTopology::DiscreteOmega => {
            t.expect_ground(d.ground())?;
            Ok(true)
        }
        SymbolicTopology::AntidiscreteOmega | SymbolicTopology::CoSmall => {
            t.expect_ground(d.ground())?;
            let Descriptor::Omega(s) = d else { unreachable!() };
            if s.is_empty()? {
                return Ok(true);
            }
            Ok(match t {
                SymbolicTopology::CoSmall => s.is_cofinite()?,
                _ => s.same_set(&SetDescriptor::omega())?,
            })
        }
        SymbolicTopology::OrderedZ { c } => {
            t.expect_ground(d.ground())?;
            let Descriptor::Z(z) = d else { unreachable!() };
            let set = z.denotation();
            if set == ZDescriptor::Empty.denotation() || set == ZDescriptor::All.denotation() {
                return Ok(true);
            }
            Ok(match set.as_left_ray() {
                Some(_) if set.z => true,
                Some(b) => b <= *c,
                None => false,
            })
        }
        SymbolicTopology::ConvSeq => {
            let p = pointed(d)?;
            Ok(!p.star || p.rest.is_cofinite()?)
        }
        SymbolicTopology::Refined { removed } => {
            let p = pointed(d)?;
            Ok(!p.star || refined_cover(&p, removed)?.is_some())
        }
    }
}

/// How a sequence behaves from some index on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Tail {
    Constant(Point),
    /// An injective enumeration of an infinite set.
    Injective(Descriptor),
}

/// A sequence given by a finite prefix and a described tail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicSequence {
    pub prefix: Vec<Point>,
    pub tail: Tail,
}

impl SymbolicSequence {
    /// `n ↦ n` on `ω`.
    pub fn identity() -> SymbolicSequence {
        SymbolicSequence {
            prefix: vec![],
            tail: Tail::Injective(Descriptor::Omega(SetDescriptor::omega())),
        }
    }

    pub fn constant(p: Point) -> SymbolicSequence {
        SymbolicSequence {
            prefix: vec![],
            tail: Tail::Constant(p),
        }
    }

    pub fn through(set: impl Into<Descriptor>) -> SymbolicSequence {
        SymbolicSequence {
            prefix: vec![],
            tail: Tail::Injective(set.into()),
        }
    }
}

fn check_point(p: Point, t: &SymbolicTopology) -> Result<(), SymbolicError> {
    if !p.fits(t.ground()) {
        return Err(SymbolicError::Invalid(format!("{p:?} is not a point of {}", t.ground())));
    }
    Ok(())
}

/// Whether the sequence converges to `point` in `t`.
///
/// The prefix never matters. A constant tail `q` converges to `p` iff every
/// open set containing `p` contains `q`; an injective tail through `S`
/// converges to `p` iff `S` is almost contained in every neighbourhood of `p`.
pub fn converges(
    seq: &SymbolicSequence,
    point: Point,
    t: &SymbolicTopology,
) -> Result<bool, SymbolicError> {
    check_point(point, t)?;
    for &p in &seq.prefix {
        check_point(p, t)?;
    }
    match &seq.tail {
        Tail::Constant(q) => {
            check_point(*q, t)?;
            Ok(constant_converges(point, *q, t))
        }
        Tail::Injective(set) => injective_converges(set, point, t),
    }
}

fn constant_converges(p: Point, q: Point, t: &SymbolicTopology) -> bool {
    match t {
        SymbolicTopology::AntidiscreteOmega => true,
        SymbolicTopology::OrderedZ { c } => match (p, q) {
            (Point::Z(ZPoint::Bottom), q) => q == Point::Z(ZPoint::Bottom),
            // z lies in every [z,a) and in no (z,b); the latter only exist below c
            (Point::Z(ZPoint::Int(x)), Point::Z(ZPoint::Bottom)) => x >= *c,
            (Point::Z(ZPoint::Int(x)), Point::Z(ZPoint::Int(y))) => y <= x,
            _ => false,
        },
        // the remaining spaces are T1
        _ => p == q,
    }
}

fn injective_converges(
    set: &Descriptor,
    p: Point,
    t: &SymbolicTopology,
) -> Result<bool, SymbolicError> {
    match t {
        SymbolicTopology::OrderedZ { .. } => {
            t.expect_ground(set.ground())?;
            let Descriptor::Z(d) = set else { unreachable!() };
            let s = d.denotation();
            if !s.is_infinite() {
                return Err(SymbolicError::FiniteCandidate);
            }
            // every neighbourhood of every point contains a left ray
            Ok(!s.ints.towards_above())
        }
        SymbolicTopology::DiscreteOmega
        | SymbolicTopology::AntidiscreteOmega
        | SymbolicTopology::CoSmall => {
            t.expect_ground(set.ground())?;
            let Descriptor::Omega(s) = set else { unreachable!() };
            if !s.is_infinite()? {
                return Err(SymbolicError::FiniteCandidate);
            }
            Ok(!matches!(t, SymbolicTopology::DiscreteOmega))
        }
        SymbolicTopology::ConvSeq | SymbolicTopology::Refined { .. } => {
            let s = pointed(set)?.rest;
            if !s.is_infinite()? {
                return Err(SymbolicError::FiniteCandidate);
            }
            match (p, t) {
                (Point::Nat(_), _) => Ok(false),
                (_, SymbolicTopology::Refined { removed }) => {
                    for m in removed {
                        if SetDescriptor::intersection(vec![s.clone(), m.clone()]).is_infinite()? {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                }
                _ => Ok(true),
            }
        }
    }
}

/// Outcome of probing a space for sequences with two limits.
#[derive(Clone, Debug, Serialize)]
pub struct UniqueLimitsReport {
    pub sequences: usize,
    pub points: usize,
    /// A sequence converging to two distinct sampled points.
    pub violation: Option<(SymbolicSequence, Point, Point)>,
}

impl UniqueLimitsReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that no sampled sequence has two sampled limits. `samples` bounds
/// the number of sampled natural or integer points.
pub fn unique_limits_check(
    t: &SymbolicTopology,
    samples: usize,
) -> Result<UniqueLimitsReport, SymbolicError> {
    let s = samples.max(2) as u64;
    let (points, tails): (Vec<Point>, Vec<Descriptor>) = match t.ground() {
        Ground::Omega | Ground::OmegaStar => {
            let mut points: Vec<Point> = (0..s).map(Point::Nat).collect();
            if t.ground() == Ground::OmegaStar {
                points.push(Point::Star);
            }
            let mut sets = vec![SetDescriptor::omega()];
            let mut words: Vec<BranchWord> = match t {
                SymbolicTopology::Refined { removed } => {
                    removed.iter().flat_map(SetDescriptor::words).collect()
                }
                _ => vec![],
            };
            words.push(BranchWord::new("1", "0").unwrap());
            words.push(BranchWord::new("", "0").unwrap());
            for w in words {
                sets.push(SetDescriptor::branch(w.clone()));
                sets.push(SetDescriptor::difference(
                    SetDescriptor::branch(w),
                    SetDescriptor::finite(0..s),
                ));
            }
            let tails = sets
                .into_iter()
                .map(|d| match t.ground() {
                    Ground::Omega => Descriptor::Omega(d),
                    _ => Descriptor::Pointed(PointedSet {
                        star: false,
                        rest: d,
                    }),
                })
                .collect();
            (points, tails)
        }
        Ground::Lz => {
            let half = s as i64 / 2;
            let mut points = vec![Point::Z(ZPoint::Bottom)];
            points.extend((-half..half).map(|x| Point::Z(ZPoint::Int(x))));
            let tails = vec![
                Descriptor::Z(ZDescriptor::OpenLeft { b: 0 }),
                Descriptor::Z(ZDescriptor::OpenLeft { b: 0 }.complement()),
                Descriptor::Z(ZDescriptor::ClosedLeft { a: -3 }),
            ];
            (points, tails)
        }
    };
    let mut sequences: Vec<SymbolicSequence> =
        points.iter().map(|&p| SymbolicSequence::constant(p)).collect();
    sequences.extend(tails.into_iter().map(SymbolicSequence::through));

    for seq in &sequences {
        let mut limits = Vec::new();
        for &p in &points {
            if converges(seq, p, t)? {
                limits.push(p);
            }
        }
        if limits.len() > 1 {
            return Ok(UniqueLimitsReport {
                sequences: sequences.len(),
                points: points.len(),
                violation: Some((seq.clone(), limits[0], limits[1])),
            });
        }
    }
    Ok(UniqueLimitsReport {
        sequences: sequences.len(),
        points: points.len(),
        violation: None,
    })
}
