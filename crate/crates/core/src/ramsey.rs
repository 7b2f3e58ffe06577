//! Homogeneous-set extraction for the two pair colourings of index pairs
//! induced by a sequence `f`:
//!
//! * increasing pairs: `{k < l}` gets colour `K0` iff `f(k) < f(l)`;
//! * distinct pairs: `{k < l}` gets colour `K0` iff `f(k) ≠ f(l)`.
//!
//! Every result carries its kind and can be re-checked with [`verify`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coloring {
    IncreasingPairs,
    DistinctPairs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PairColor {
    K0,
    K1,
}

impl Coloring {
    /// Colour of the index pair `k < l`.
    pub fn color(self, seq: &[u64], k: usize, l: usize) -> PairColor {
        let (a, b) = (seq[k.min(l)], seq[k.max(l)]);
        let in_k0 = match self {
            Coloring::IncreasingPairs => a < b,
            Coloring::DistinctPairs => a != b,
        };
        if in_k0 {
            PairColor::K0
        } else {
            PairColor::K1
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HomogeneousKind {
    Constant { value: u64 },
    StrictlyIncreasing,
    /// Pairwise `f(k) ≥ f(l)` for `k < l`, not all equal.
    NonIncreasing,
    Injective,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousResult {
    /// Strictly increasing positions into the sequence.
    pub indices: Vec<usize>,
    #[serde(flatten)]
    pub kind: HomogeneousKind,
    /// Colour achieved, when produced by a pair colouring.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub color: Option<PairColor>,
}

impl HomogeneousResult {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Why a result fails to be what it claims.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    IndexOutOfRange(usize),
    IndicesNotIncreasing,
    Kind(&'static str),
}

/// Re-checks a result against its input, independently of how it was built.
pub fn verify(seq: &[u64], result: &HomogeneousResult) -> Result<(), VerifyError> {
    let h = &result.indices;
    if let Some(&i) = h.iter().find(|&&i| i >= seq.len()) {
        return Err(VerifyError::IndexOutOfRange(i));
    }
    if h.windows(2).any(|w| w[0] >= w[1]) {
        return Err(VerifyError::IndicesNotIncreasing);
    }
    let values: Vec<u64> = h.iter().map(|&i| seq[i]).collect();
    let ok = match result.kind {
        HomogeneousKind::Constant { value } => values.iter().all(|&v| v == value),
        HomogeneousKind::StrictlyIncreasing => values.windows(2).all(|w| w[0] < w[1]),
        HomogeneousKind::NonIncreasing => values.windows(2).all(|w| w[0] >= w[1]),
        HomogeneousKind::Injective => {
            let mut sorted = values.clone();
            sorted.sort_unstable();
            sorted.windows(2).all(|w| w[0] != w[1])
        }
    };
    if !ok {
        return Err(VerifyError::Kind("values do not match the claimed kind"));
    }
    if let Some(color) = result.color {
        let pairs_ok = h.iter().enumerate().all(|(a, &k)| {
            h[a + 1..].iter().all(|&l| {
                let c = match result.kind {
                    HomogeneousKind::StrictlyIncreasing | HomogeneousKind::NonIncreasing => {
                        Coloring::IncreasingPairs.color(seq, k, l)
                    }
                    HomogeneousKind::Injective => Coloring::DistinctPairs.color(seq, k, l),
                    // constant runs are K1 under both colourings
                    HomogeneousKind::Constant { .. } => PairColor::K1,
                };
                c == color
            })
        });
        if !pairs_ok {
            return Err(VerifyError::Kind("pairs are not monochromatic in the claimed colour"));
        }
    }
    Ok(())
}

fn kind_for(seq: &[u64], indices: &[usize], coloring: Coloring, color: PairColor) -> HomogeneousKind {
    let constant = indices.windows(2).all(|w| seq[w[0]] == seq[w[1]]);
    match (coloring, color) {
        (Coloring::IncreasingPairs, PairColor::K0) => HomogeneousKind::StrictlyIncreasing,
        (Coloring::DistinctPairs, PairColor::K0) => HomogeneousKind::Injective,
        (_, PairColor::K1) if constant => HomogeneousKind::Constant {
            value: indices.first().map_or(0, |&i| seq[i]),
        },
        (Coloring::IncreasingPairs, PairColor::K1) => HomogeneousKind::NonIncreasing,
        (Coloring::DistinctPairs, PairColor::K1) => unreachable!("equality classes are constant"),
    }
}

fn result(seq: &[u64], indices: Vec<usize>, coloring: Coloring, color: PairColor) -> HomogeneousResult {
    let kind = kind_for(seq, &indices, coloring, color);
    HomogeneousResult {
        indices,
        kind,
        color: Some(color),
    }
}

/// Greedy pivot-partition extraction for an arbitrary colouring.
///
/// The least unused index is the pivot; the remaining candidates are split by
/// their colour with the pivot and the larger part survives (ties to `K0`).
/// Pivots are then grouped by the colour they had with everything after them;
/// the larger group, plus the last pivot, is homogeneous.
pub fn pivot_partition(seq: &[u64], coloring: Coloring) -> HomogeneousResult {
    let mut candidates: Vec<usize> = (0..seq.len()).collect();
    let mut pivots: Vec<(usize, Option<PairColor>)> = Vec::new();
    while let Some((&pivot, rest)) = candidates.split_first() {
        let (k0, k1): (Vec<usize>, Vec<usize>) = rest
            .iter()
            .partition(|&&l| coloring.color(seq, pivot, l) == PairColor::K0);
        if rest.is_empty() {
            pivots.push((pivot, None));
            break;
        }
        if k0.len() >= k1.len() {
            pivots.push((pivot, Some(PairColor::K0)));
            candidates = k0;
        } else {
            pivots.push((pivot, Some(PairColor::K1)));
            candidates = k1;
        }
    }
    let count = |c| pivots.iter().filter(|(_, pc)| *pc == Some(c)).count();
    let color = if count(PairColor::K0) >= count(PairColor::K1) {
        PairColor::K0
    } else {
        PairColor::K1
    };
    let indices = pivots
        .iter()
        .filter(|(_, pc)| pc.is_none_or(|pc| pc == color))
        .map(|&(i, _)| i)
        .collect();
    result(seq, indices, coloring, color)
}

/// Longest subsequence whose consecutive pairs satisfy `rel`, for a
/// transitive `rel`; returns indices.
fn longest_chain(seq: &[u64], rel: impl Fn(u64, u64) -> bool) -> Vec<usize> {
    let n = seq.len();
    let mut best = vec![1usize; n];
    let mut next = vec![usize::MAX; n];
    for k in (0..n).rev() {
        for l in k + 1..n {
            if rel(seq[k], seq[l]) && best[l] + 1 > best[k] {
                best[k] = best[l] + 1;
                next[k] = l;
            }
        }
    }
    let Some(start) = (0..n).max_by_key(|&k| (best[k], std::cmp::Reverse(k))) else {
        return Vec::new();
    };
    let mut out = vec![start];
    while next[*out.last().unwrap()] != usize::MAX {
        out.push(next[*out.last().unwrap()]);
    }
    out
}

/// Largest homogeneous set of the induced colouring, ties to `K0`.
///
/// Both colour classes of the increasing-pairs colouring are transitive, so
/// their homogeneous sets are chains found by a longest-path pass. For the
/// distinct-pairs colouring, `K1` is an equivalence (equal values) and a
/// `K0` set picks one position per value. The pivot-partition result is kept
/// whenever it is at least as large. By the Erdős–Szekeres and pigeonhole
/// bounds the size is at least `⌈√N⌉ ≥ ⌊log₂ N⌋`.
pub fn homogeneous_pairs(seq: &[u64], coloring: Coloring) -> HomogeneousResult {
    let (k0, k1) = match coloring {
        Coloring::IncreasingPairs => (longest_chain(seq, |a, b| a < b), longest_chain(seq, |a, b| a >= b)),
        Coloring::DistinctPairs => {
            let positions = positions_by_value(seq);
            let k0 = sorted(positions.values().map(|p| p[0]).collect());
            let k1 = positions
                .values()
                .max_by_key(|p| p.len())
                .cloned()
                .unwrap_or_default();
            (k0, k1)
        }
    };
    let best = if k0.len() >= k1.len() {
        result(seq, k0, coloring, PairColor::K0)
    } else {
        result(seq, k1, coloring, PairColor::K1)
    };
    let greedy = pivot_partition(seq, coloring);
    if greedy.len() > best.len() {
        greedy
    } else {
        best
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

fn positions_by_value(seq: &[u64]) -> BTreeMap<u64, Vec<usize>> {
    let mut positions: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, &v) in seq.iter().enumerate() {
        positions.entry(v).or_default().push(i);
    }
    positions
}

/// `⌈√n⌉`.
pub fn ceil_sqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    if r * r < n {
        r + 1
    } else {
        r
    }
}

/// Constant-or-injective dichotomy on a finite prefix, with `|H| ≥ ⌈√N⌉`.
///
/// If some value repeats at least `⌈√N⌉` times its positions are returned
/// (the most frequent value, smallest on ties). Otherwise fewer than `√N`
/// repetitions everywhere force at least `√N` distinct values, and the first
/// position of each is returned.
pub fn constant_or_injective(seq: &[u64]) -> HomogeneousResult {
    let threshold = ceil_sqrt(seq.len());
    let positions = positions_by_value(seq);
    let (&value, most) = positions
        .iter()
        .max_by_key(|(&v, p)| (p.len(), std::cmp::Reverse(v)))
        .expect("nonempty sequence");
    if most.len() >= threshold {
        HomogeneousResult {
            indices: most.clone(),
            kind: HomogeneousKind::Constant { value },
            color: None,
        }
    } else {
        HomogeneousResult {
            indices: sorted(positions.values().map(|p| p[0]).collect()),
            kind: HomogeneousKind::Injective,
            color: None,
        }
    }
}

/// Searches a stream prefix for a constant or strictly increasing run of
/// `target` positions, reading at most `fuel` values.
///
/// Longest increasing subsequences are maintained by patience sorting with
/// back-links, and multiplicities alongside. `None` means the fuel ran out;
/// on a finite prefix that is a legitimate outcome.
pub fn constant_or_increasing<I>(stream: I, target: usize, fuel: usize) -> Option<HomogeneousResult>
where
    I: IntoIterator<Item = u64>,
{
    if target == 0 {
        return Some(HomogeneousResult {
            indices: Vec::new(),
            kind: HomogeneousKind::StrictlyIncreasing,
            color: None,
        });
    }
    let mut values: Vec<u64> = Vec::new();
    // tails[len-1] = index of the smallest tail of an increasing run of that length
    let mut tails: Vec<usize> = Vec::new();
    let mut back: Vec<Option<usize>> = Vec::new();
    let mut positions: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, v) in stream.into_iter().take(fuel).enumerate() {
        values.push(v);
        let len = tails.partition_point(|&t| values[t] < v);
        back.push(len.checked_sub(1).map(|l| tails[l]));
        if len == tails.len() {
            tails.push(i);
        } else {
            tails[len] = i;
        }
        if tails.len() >= target {
            let mut indices = vec![tails[target - 1]];
            while let Some(prev) = back[*indices.last().unwrap()] {
                indices.push(prev);
            }
            indices.reverse();
            return Some(HomogeneousResult {
                indices,
                kind: HomogeneousKind::StrictlyIncreasing,
                color: None,
            });
        }
        let run = positions.entry(v).or_default();
        run.push(i);
        if run.len() >= target {
            return Some(HomogeneousResult {
                indices: run.clone(),
                kind: HomogeneousKind::Constant { value: v },
                color: None,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_examples() {
        let up: Vec<u64> = (0..16).collect();
        let r = homogeneous_pairs(&up, Coloring::IncreasingPairs);
        assert!(r.len() >= 4);
        assert_eq!(r.color, Some(PairColor::K0));
        assert_eq!(r.kind, HomogeneousKind::StrictlyIncreasing);
        verify(&up, &r).unwrap();

        let flat = vec![7u64; 16];
        let r = homogeneous_pairs(&flat, Coloring::IncreasingPairs);
        assert!(r.len() >= 4);
        assert_eq!(r.color, Some(PairColor::K1));
        assert_eq!(r.kind, HomogeneousKind::Constant { value: 7 });

        let down: Vec<u64> = (0..16).rev().collect();
        let r = homogeneous_pairs(&down, Coloring::IncreasingPairs);
        assert_eq!(r.color, Some(PairColor::K1));
        assert_eq!(r.kind, HomogeneousKind::NonIncreasing);
        verify(&down, &r).unwrap();
    }

    #[test]
    fn pivot_partition_is_homogeneous() {
        let seq = [3u64, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3];
        for coloring in [Coloring::IncreasingPairs, Coloring::DistinctPairs] {
            let r = pivot_partition(&seq, coloring);
            verify(&seq, &r).unwrap();
            assert!(r.len() >= 2);
        }
        let up: Vec<u64> = (0..16).collect();
        // pivot keeps the majority every time: 16 → 15 → … all K0
        assert_eq!(pivot_partition(&up, Coloring::IncreasingPairs).len(), 16);
    }

    #[test]
    fn injective_examples() {
        let r = constant_or_injective(&[5; 9]);
        assert_eq!(r.kind, HomogeneousKind::Constant { value: 5 });
        assert_eq!(r.len(), 9);
        let seq: Vec<u64> = (0..9).collect();
        let r = constant_or_injective(&seq);
        assert_eq!(r.kind, HomogeneousKind::Injective);
        assert_eq!(r.len(), 9);
        let seq = [0u64, 0, 1, 1, 2, 2, 3, 3, 4];
        let r = constant_or_injective(&seq);
        assert_eq!(r.kind, HomogeneousKind::Injective);
        assert_eq!(r.indices, vec![0, 2, 4, 6, 8]);
        verify(&seq, &r).unwrap();
    }

    #[test]
    fn increasing_stream_examples() {
        let r = constant_or_increasing(0.., 10, 100).unwrap();
        assert_eq!(r.kind, HomogeneousKind::StrictlyIncreasing);
        assert_eq!(r.indices, (0..10).collect::<Vec<_>>());

        let r = constant_or_increasing(std::iter::repeat(3), 10, 100).unwrap();
        assert_eq!(r.kind, HomogeneousKind::Constant { value: 3 });
        assert_eq!(r.indices, (0..10).collect::<Vec<_>>());

        let stream = (0..10u64).rev().chain(std::iter::repeat(0));
        let r = constant_or_increasing(stream, 4, 50).unwrap();
        assert_eq!(r.kind, HomogeneousKind::Constant { value: 0 });
        assert_eq!(r.indices, vec![9, 10, 11, 12]);

        assert!(constant_or_increasing((0..20u64).rev(), 4, 20).is_none());
        assert!(constant_or_increasing(0.., 10, 9).is_none());
    }

    #[test]
    fn verifier_rejects_bad_claims() {
        let seq = [1u64, 2, 2];
        let bad = HomogeneousResult {
            indices: vec![0, 1, 2],
            kind: HomogeneousKind::StrictlyIncreasing,
            color: None,
        };
        assert!(verify(&seq, &bad).is_err());
        let bad = HomogeneousResult {
            indices: vec![1, 0],
            kind: HomogeneousKind::Injective,
            color: None,
        };
        assert_eq!(verify(&seq, &bad), Err(VerifyError::IndicesNotIncreasing));
    }

    #[test]
    fn ceil_sqrt_values() {
        let expected = [0, 1, 2, 2, 2, 3, 3, 3, 3, 3, 4];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(ceil_sqrt(n), e);
        }
        assert_eq!(ceil_sqrt(256), 16);
    }
}
