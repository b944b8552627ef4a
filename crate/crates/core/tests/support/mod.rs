//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use cube_spectra::cube_fourier::CubeFunction;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest code of length `n ≤ 7` with minimal distance `d`: an exact
/// maximum clique in the graph joining points at distance `≥ d`.
///
/// Branch and bound with a greedy colouring bound. The cube is vertex
/// transitive, so the search fixes `0` in the clique.
pub fn max_code_size(n: usize, d: usize) -> usize {
    assert!((1..=7).contains(&n) && (1..=n).contains(&d));
    let size = 1usize << n;
    let adj: Vec<u128> = (0..size)
        .map(|x| {
            (0..size)
                .filter(|&y| y != x && ((x ^ y) as u32).count_ones() as usize >= d)
                .fold(0u128, |m, y| m | (1u128 << y))
        })
        .collect();
    let mut best = 1;
    expand(&adj, 1, adj[0], &mut best);
    best
}

fn colour_order(adj: &[u128], mut p: u128) -> Vec<(usize, usize)> {
    // (vertex, colour bound), in increasing colour order
    let mut out = Vec::new();
    let mut colour = 0;
    while p != 0 {
        colour += 1;
        let mut q = p;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !(1u128 << v);
            q &= !adj[v];
            p &= !(1u128 << v);
            out.push((v, colour));
        }
    }
    out
}

fn expand(adj: &[u128], size: usize, mut p: u128, best: &mut usize) {
    let order = colour_order(adj, p);
    for &(v, colour) in order.iter().rev() {
        if size + colour <= *best {
            return;
        }
        let next = p & adj[v];
        if next == 0 {
            *best = (*best).max(size + 1);
        } else {
            expand(adj, size + 1, next, best);
        }
        p &= !(1u128 << v);
    }
}

pub fn random_function(n: usize, rng: &mut ChaCha8Rng) -> CubeFunction {
    CubeFunction::from_fn(n, |_| rng.gen_range(-1.0..1.0)).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Plain `O(4ⁿ)` transform straight from the definition.
pub fn naive_wht(f: &CubeFunction) -> Vec<f64> {
    let size = f.len();
    (0..size)
        .map(|s| {
            let sum: f64 = (0..size)
                .map(|x| {
                    let sign = if (x & s).count_ones() % 2 == 0 {
                        1.0
                    } else {
                        -1.0
                    };
                    sign * f.get(x)
                })
                .sum();
            sum / size as f64
        })
        .collect()
}

/// `C(n, k)` for small arguments.
pub fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[test]
fn max_code_sizes_match_known_values() {
    let known = [128, 64, 16, 8, 2, 2, 2];
    for (d, &a) in (1..=7).zip(known.iter()) {
        assert_eq!(max_code_size(7, d), a, "A(7,{d})");
    }
    assert_eq!(max_code_size(5, 3), 4);
    assert_eq!(max_code_size(6, 3), 8);
}
