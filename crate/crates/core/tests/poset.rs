use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revspace::poset::invariant_of_strict_order;
use revspace::Permutation;

/// Random strict order: a random relation on a random linear extension,
/// transitively closed.
fn random_poset(rng: &mut ChaCha8Rng, k: usize) -> Vec<Vec<bool>> {
    let density = rng.gen_range(0.0..0.7);
    let mut lt = vec![vec![false; k]; k];
    for a in 0..k {
        for b in a + 1..k {
            lt[a][b] = rng.gen_bool(density);
        }
    }
    for m in 0..k {
        for a in 0..k {
            for b in 0..k {
                if lt[a][m] && lt[m][b] {
                    lt[a][b] = true;
                }
            }
        }
    }
    let perms = Permutation::all(k);
    let f = &perms[rng.gen_range(0..perms.len())];
    relabel(&lt, f)
}

fn relabel(lt: &[Vec<bool>], f: &Permutation) -> Vec<Vec<bool>> {
    let k = lt.len();
    let mut out = vec![vec![false; k]; k];
    for a in 0..k {
        for b in 0..k {
            out[f.apply(a)][f.apply(b)] = lt[a][b];
        }
    }
    out
}

fn isomorphic(x: &[Vec<bool>], y: &[Vec<bool>]) -> bool {
    x.len() == y.len() && Permutation::all(x.len()).iter().any(|f| relabel(x, f) == y)
}

#[test]
fn certificates_decide_isomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..400 {
        let k = rng.gen_range(0..=6);
        let x = random_poset(&mut rng, k);
        let y = random_poset(&mut rng, k);
        assert_eq!(
            invariant_of_strict_order(&x) == invariant_of_strict_order(&y),
            isomorphic(&x, &y),
            "{x:?} vs {y:?}"
        );
    }
}

#[test]
fn certificates_survive_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let k = rng.gen_range(1..=7);
        let x = random_poset(&mut rng, k);
        let perms = Permutation::all(k);
        let f = &perms[rng.gen_range(0..perms.len())];
        assert_eq!(invariant_of_strict_order(&x), invariant_of_strict_order(&relabel(&x, f)));
    }
}
