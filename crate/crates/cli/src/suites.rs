//! Verification suites behind `verify` and `ostar`.

use std::fmt;

use anyhow::Result;
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revspace::symbolic::{
    ad_family, blocking_nbhd, construct_o_star, converges, f_m_closed_check, star_in_closure_check, BranchWord,
    Point, PointedSet, SetDescriptor, SymbolicSequence, SymbolicTopology,
};
use revspace::{
    classify_strongly_reversible, condensational_leq, condensational_order, conv_hull, enumerate_via_preorders,
    homeo_class, is_reversible, is_strongly_reversible, is_weakly_reversible, maximal_chains, sim_class,
    LeqMethod, Limits, ReversibilityMethod, StrongClass, TopologyCatalog,
};

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Suite {
    /// Direct enumeration against the preorder correspondence.
    Enum,
    /// The four reversibility tests agree and hold.
    Fact11,
    /// The three condensational-preorder tests agree.
    Fact12,
    /// Equivalence classes are convex hulls of orbits.
    Prop14,
    /// Strong reversibility against the orbit check.
    Thm31,
    /// The quotient order is a partial order and classes carry no chains.
    Order,
}

/// `passed` out of `total` checks, under a stable one-line format.
pub struct Report {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    pub verb: &'static str,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.passed == self.total
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}/{} {}", self.name, self.passed, self.total, self.verb)
    }
}

fn tally<I: IntoIterator<Item = bool>>(name: &'static str, verb: &'static str, checks: I) -> Report {
    let (mut passed, mut total) = (0, 0);
    for ok in checks {
        total += 1;
        passed += ok as usize;
    }
    Report {
        name,
        passed,
        total,
        verb,
    }
}

pub fn run_suite(suite: Suite, cat: &TopologyCatalog, seed: u64, samples: usize) -> Result<Report> {
    let all = cat.topologies();
    Ok(match suite {
        Suite::Enum => {
            let oracle = enumerate_via_preorders(cat.n(), &Limits { max_n: cat.n() })?;
            let mut checks: Vec<bool> = all.iter().map(|t| oracle.contains(t)).collect();
            checks.extend(oracle.topologies().iter().filter(|t| !cat.contains(t)).map(|_| false));
            tally("enum", "agree", checks)
        }
        Suite::Fact11 => tally(
            "fact11",
            "agree",
            all.iter()
                .map(|t| ReversibilityMethod::ALL.iter().all(|&m| is_reversible(t, m))),
        ),
        Suite::Fact12 => {
            let agree = |a, b| -> Result<bool> {
                let v: Vec<bool> = LeqMethod::ALL
                    .iter()
                    .map(|&m| condensational_leq(a, b, m))
                    .collect::<Result<_, _>>()?;
                Ok(v.iter().all(|&x| x == v[0]))
            };
            let mut checks = Vec::new();
            if cat.n() <= 3 {
                for a in all {
                    for b in all {
                        checks.push(agree(a, b)?);
                    }
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..samples {
                    let a = &all[rng.gen_range(0..all.len())];
                    let b = &all[rng.gen_range(0..all.len())];
                    checks.push(agree(a, b)?);
                }
            }
            tally("fact12", "agree", checks)
        }
        Suite::Prop14 => {
            let mut checks = Vec::with_capacity(all.len());
            for t in all {
                let sim = sim_class(t, cat)?;
                let class = homeo_class(t);
                let hull_ok = conv_hull(class.members(), cat)? == sim.members();
                let weak_ok = is_weakly_reversible(t, cat)? == (sim.members() == class.members());
                checks.push(hull_ok && weak_ok);
            }
            tally("prop14", "agree", checks)
        }
        Suite::Thm31 => tally(
            "thm31",
            "agree",
            all.iter().map(|t| {
                let by_orbit = homeo_class(t).len() == 1;
                let class = classify_strongly_reversible(t);
                is_strongly_reversible(t) == by_orbit && (class != StrongClass::NotStronglyReversible) == by_orbit
            }),
        ),
        Suite::Order => {
            let order = condensational_order(cat);
            let mut checks = vec![order.is_partial_order()];
            for node in &order.nodes {
                checks.push(maximal_chains(&node.members).all_singletons());
            }
            tally("order", "consistent", checks)
        }
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OstarCheck {
    /// Pairwise intersections of the family have the common-prefix size.
    Intersections,
    /// `M ∪ {⋆}` is closed in the convergent sequence space.
    Claim,
    /// `⋆` lies in the closure of `ω` in the refinement.
    Closure,
    /// Sequences through family members lose their limit in the refinement.
    Blocking,
}

impl OstarCheck {
    pub const ALL: [OstarCheck; 4] = [
        OstarCheck::Intersections,
        OstarCheck::Claim,
        OstarCheck::Closure,
        OstarCheck::Blocking,
    ];
}

/// Up to `count` pseudo-random numbers below `bound`.
fn random_set(rng: &mut ChaCha8Rng, count: usize, bound: u64) -> Vec<u64> {
    let size = rng.gen_range(0..=count);
    (0..size).map(|_| rng.gen_range(0..bound)).collect()
}

pub fn run_ostar(check: OstarCheck, size: usize, samples: usize, seed: u64) -> Result<Report> {
    let fam = ad_family(size);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match check {
        OstarCheck::Intersections => {
            let mut checks = Vec::new();
            for a in 0..size {
                for b in a + 1..size {
                    let lcp = fam.intersection_size(a, b);
                    let meet = SetDescriptor::intersection(vec![fam.descriptor(a), fam.descriptor(b)]);
                    let listed = meet.finite_elements()?.map(|e| e.len());
                    let by_codes = fam.words()[a]
                        .elements()
                        .zip(fam.words()[b].elements())
                        .filter(|(x, y)| x == y)
                        .count();
                    checks.push(lcp.is_some() && lcp == listed && lcp == Some(by_codes));
                }
            }
            tally("intersections", "certified", checks)
        }
        OstarCheck::Claim => {
            let mut checks = Vec::new();
            for i in 0..samples.max(1) * 5 {
                let base = match i % 3 {
                    0 => fam.descriptor(rng.gen_range(0..size)),
                    1 => SetDescriptor::cofinite(random_set(&mut rng, 4, 64)),
                    _ => {
                        let bits = format!("{:b}", rng.gen_range(1u32..256));
                        SetDescriptor::branch(BranchWord::new("", &bits)?)
                    }
                };
                let m = SetDescriptor::difference(base, SetDescriptor::finite(random_set(&mut rng, 3, 64)));
                checks.push(f_m_closed_check(&m)?);
            }
            tally("claim", "certified", checks)
        }
        OstarCheck::Closure => {
            let mut checks = Vec::new();
            let max_k = 4.min(size - 1);
            for mask in 0u64..1 << size {
                let k: Vec<usize> = (0..size).filter(|i| mask >> i & 1 == 1).collect();
                if k.len() > max_k {
                    continue;
                }
                for _ in 0..samples {
                    let excluded = random_set(&mut rng, 10, 1000);
                    let o = SetDescriptor::cofinite(excluded.iter().copied());
                    let ok = match star_in_closure_check(&fam, &k, &o) {
                        Ok(w) => {
                            let e = w.element;
                            !k.contains(&w.beta)
                                && fam.descriptor(w.beta).contains(e)
                                && !excluded.contains(&e)
                                && k.iter().all(|&a| !fam.descriptor(a).contains(e))
                        }
                        Err(_) => false,
                    };
                    checks.push(ok);
                }
            }
            let everything: Vec<usize> = (0..size).collect();
            checks.push(star_in_closure_check(&fam, &everything, &SetDescriptor::omega()).is_err());
            tally("closure", "certified", checks)
        }
        OstarCheck::Blocking => {
            let refined = construct_o_star(&fam)?;
            let mut checks = Vec::new();
            for alpha in 0..size {
                let member = fam.descriptor(alpha);
                let early: Vec<u64> = fam.words()[alpha].elements().take(12).collect();
                let mut candidates = vec![member.clone()];
                for _ in 0..samples {
                    let removed: Vec<u64> = (0..rng.gen_range(0..=3))
                        .map(|_| early[rng.gen_range(0..early.len())])
                        .collect();
                    let taken = 3 - removed.len().min(3);
                    let added = (0..rng.gen_range(0..=taken)).map(|_| rng.gen_range(0..1u64 << 12));
                    candidates.push(SetDescriptor::union(vec![
                        SetDescriptor::difference(member.clone(), SetDescriptor::finite(removed)),
                        SetDescriptor::finite(added),
                    ]));
                }
                for cand in candidates {
                    let blocker = blocking_nbhd(&cand, &fam)?;
                    let seq = SymbolicSequence::through(PointedSet {
                        star: false,
                        rest: cand.clone(),
                    });
                    let ok = blocker.is_some_and(|b| {
                        b.alpha == alpha && b.common.iter().all(|&n| cand.contains(n) && member.contains(n))
                    }) && converges(&seq, Point::Star, &SymbolicTopology::ConvSeq)?
                        && !converges(&seq, Point::Star, &refined)?;
                    checks.push(ok);
                }
            }
            tally("blocking", "certified", checks)
        }
    })
}
