use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revspace::ramsey::{
    ceil_sqrt, constant_or_increasing, constant_or_injective, homogeneous_pairs, pivot_partition, verify,
    Coloring, HomogeneousKind, PairColor,
};

fn floor_log2(n: usize) -> usize {
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

#[test]
fn ceil_sqrt_matches_definition() {
    for n in 0..2000usize {
        let r = ceil_sqrt(n);
        assert!(r * r >= n);
        assert!(r == 0 || (r - 1) * (r - 1) < n);
    }
}

#[test]
fn constant_or_injective_exhaustive() {
    for len in 1..=8u32 {
        for code in 0..3u64.pow(len) {
            let seq: Vec<u64> = (0..len).map(|i| code / 3u64.pow(i) % 3).collect();
            let h = constant_or_injective(&seq);
            verify(&seq, &h).unwrap();
            assert!(h.len() >= ceil_sqrt(seq.len()), "{seq:?}");
            assert!(matches!(h.kind, HomogeneousKind::Constant { .. } | HomogeneousKind::Injective));
        }
    }
}

#[test]
fn homogeneous_pairs_seeded() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for round in 0..10_000 {
        let alphabet = [2u64, 16, 256, 1 << 32][round % 4];
        let seq: Vec<u64> = (0..256).map(|_| rng.gen_range(0..alphabet)).collect();
        let coloring = if round % 2 == 0 {
            Coloring::IncreasingPairs
        } else {
            Coloring::DistinctPairs
        };
        let h = homogeneous_pairs(&seq, coloring);
        verify(&seq, &h).unwrap();
        assert!(h.len() >= floor_log2(256));
        assert!(h.color.is_some());
    }
}

#[test]
fn homogeneous_pairs_exhaustive_small() {
    // compare with the largest homogeneous set found by brute force
    for len in 2..=7u32 {
        for code in 0..4u64.pow(len) {
            let seq: Vec<u64> = (0..len).map(|i| code / 4u64.pow(i) % 4).collect();
            for coloring in [Coloring::IncreasingPairs, Coloring::DistinctPairs] {
                let h = homogeneous_pairs(&seq, coloring);
                verify(&seq, &h).unwrap();
                let best = (1u32..1 << len)
                    .filter(|mask| {
                        let idx: Vec<usize> = (0..len as usize).filter(|i| mask >> i & 1 == 1).collect();
                        [PairColor::K0, PairColor::K1].iter().any(|&c| {
                            idx.iter().enumerate().all(|(a, &k)| {
                                idx[a + 1..].iter().all(|&l| coloring.color(&seq, k, l) == c)
                            })
                        })
                    })
                    .map(|mask| mask.count_ones() as usize)
                    .max()
                    .unwrap();
                assert_eq!(h.len(), best, "{seq:?} {coloring:?}");
            }
        }
    }
}

#[test]
fn pivot_partition_is_homogeneous() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..2000 {
        let len = rng.gen_range(1..64);
        let seq: Vec<u64> = (0..len).map(|_| rng.gen_range(0..8)).collect();
        for coloring in [Coloring::IncreasingPairs, Coloring::DistinctPairs] {
            verify(&seq, &pivot_partition(&seq, coloring)).unwrap();
        }
    }
}

#[test]
fn non_increasing_colour_means_non_increasing_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..2000 {
        let seq: Vec<u64> = (0..40).map(|_| rng.gen_range(0..5)).collect();
        let h = homogeneous_pairs(&seq, Coloring::IncreasingPairs);
        if h.color == Some(PairColor::K1) {
            assert!(h.indices.windows(2).all(|w| seq[w[0]] >= seq[w[1]]));
        }
    }
}

#[test]
fn increasing_search_is_honest() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..2000 {
        let len = rng.gen_range(1..40);
        let seq: Vec<u64> = (0..len).map(|_| rng.gen_range(0..10)).collect();
        let target = rng.gen_range(1..6);
        let found = constant_or_increasing(seq.iter().copied(), target, seq.len());
        // brute-force: longest strictly increasing subsequence and top multiplicity
        let mut lis = vec![1usize; seq.len()];
        for i in 0..seq.len() {
            for j in 0..i {
                if seq[j] < seq[i] {
                    lis[i] = lis[i].max(lis[j] + 1);
                }
            }
        }
        let longest = lis.iter().copied().max().unwrap_or(0);
        let most = (0..10).map(|v| seq.iter().filter(|&&x| x == v).count()).max().unwrap();
        match found {
            Some(h) => {
                verify(&seq, &h).unwrap();
                assert_eq!(h.len(), target);
            }
            None => assert!(longest < target && most < target),
        }
    }
}
