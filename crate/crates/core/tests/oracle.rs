//! Cross-checks of the fast enumerators against slow, independent ones.

use std::collections::{BTreeSet, VecDeque};

use ldpc_coset::cwgf::{coset_weight_distribution, coset_weight_distribution_with, EnumerationOptions};
use ldpc_coset::random::{random_code, rng_for};
use ldpc_coset::search::{enumerate_codes, SearchConfig, SearchMode};
use ldpc_coset::{Execution, LinearCode};
use rand::Rng;

/// Coset weights by breadth-first search on the coset graph. A coset of `C`
/// is identified by its syndrome against a basis of `C^⊥`; neighbours differ
/// by the syndrome of a unit vector, and the BFS depth is the coset weight.
fn bfs_distribution(code: &LinearCode) -> Vec<u64> {
    let n = code.len();
    let checks = code.dual().rows().to_vec();
    let syndrome = |x: u64| -> usize {
        checks
            .iter()
            .enumerate()
            .fold(0, |acc, (i, h)| acc | (((x & h).count_ones() & 1) as usize) << i)
    };
    let units: Vec<usize> = (0..n).map(|i| syndrome(1 << i)).collect();
    let mut depth = vec![usize::MAX; 1 << checks.len()];
    let mut queue = VecDeque::from([0usize]);
    depth[0] = 0;
    while let Some(s) = queue.pop_front() {
        for &u in &units {
            let t = s ^ u;
            if depth[t] == usize::MAX {
                depth[t] = depth[s] + 1;
                queue.push_back(t);
            }
        }
    }
    let mut hist = vec![0u64; n + 1];
    for d in depth {
        hist[d] += 1;
    }
    hist
}

fn as_u64(code: &LinearCode, exec: Execution) -> Vec<u64> {
    let opts = EnumerationOptions {
        execution: exec,
        ..EnumerationOptions::default()
    };
    coset_weight_distribution_with(code, &opts)
        .unwrap()
        .counts()
        .iter()
        .map(|c| c.try_into().unwrap())
        .collect()
}

#[test]
fn gray_enumeration_matches_coset_graph_bfs() {
    for i in 0..300 {
        let mut rng = rng_for(2024, i);
        let n = rng.gen_range(1..=14);
        let code = random_code(n, &mut rng);
        let expected = bfs_distribution(&code);
        assert_eq!(as_u64(&code, Execution::Sequential), expected, "{}", code.to_code_file());
        assert_eq!(as_u64(&code, Execution::Parallel), expected, "{}", code.to_code_file());
    }
}

#[test]
fn large_codes_use_the_chunked_path() {
    for i in 0..4 {
        let mut rng = rng_for(99, i);
        let code = random_code(18, &mut rng);
        assert_eq!(as_u64(&code, Execution::Parallel), bfs_distribution(&code));
    }
}

#[test]
fn ball_sizes_are_bfs_balls() {
    let mut rng = rng_for(5, 0);
    let code = random_code(12, &mut rng);
    let bfs = bfs_distribution(&code);
    let dist = coset_weight_distribution(&code).unwrap();
    let mut acc = 0u64;
    for (r, count) in bfs.iter().enumerate() {
        acc += count;
        assert_eq!(dist.ball(r), acc.into());
    }
}

/// Every span of words of weight `≤ w` covering `[n]`, by closure under
/// adding one word at a time.
fn closure_spans(n: usize, w: usize) -> Vec<LinearCode> {
    let words: Vec<u64> = (1..1u64 << n).filter(|v| v.count_ones() as usize <= w).collect();
    let mut seen = BTreeSet::from([LinearCode::zero(n).unwrap()]);
    let mut stack = vec![LinearCode::zero(n).unwrap()];
    while let Some(c) = stack.pop() {
        for &v in &words {
            let mut d = c.clone();
            if d.insert_bits(v) && seen.insert(d.clone()) {
                stack.push(d);
            }
        }
    }
    let full = (1u64 << n) - 1;
    seen.into_iter()
        .filter(|c| c.rows().iter().fold(0, |a, r| a | r) == full)
        .collect()
}

#[test]
fn exhaustive_enumeration_matches_closure() {
    for (n, w) in [(3, 3), (4, 2), (6, 3), (6, 2), (8, 4)] {
        let cfg = SearchConfig::new(n, w, SearchMode::Exhaustive);
        assert_eq!(enumerate_codes(&cfg).unwrap(), closure_spans(n, w), "n={n} w={w}");
    }
}

#[test]
fn subspace_counts_are_galois_numbers() {
    // With w = n every subspace is a low-weight span. Among them, the ones
    // covering [n] are counted by inclusion–exclusion over the coordinates
    // they miss: Σ_j (-1)^j C(n,j) G(n-j), where G is the Galois number.
    let galois = [1i64, 2, 5, 16, 67, 374, 2825];
    for n in 1..=6usize {
        let mut expected = 0i64;
        let mut binom = 1i64;
        for j in 0..=n {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            expected += sign * binom * galois[n - j];
            binom = binom * (n - j) as i64 / (j + 1) as i64;
        }
        let mut cfg = SearchConfig::new(n, n, SearchMode::Exhaustive);
        cfg.override_limits = true;
        assert_eq!(enumerate_codes(&cfg).unwrap().len() as i64, expected, "n={n}");
    }
}
