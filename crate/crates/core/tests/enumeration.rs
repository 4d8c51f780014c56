//! Enumeration completeness, checked against a count that never builds a
//! spec: sequences are counted by total weight, and reversal classes by
//! Burnside (every class has two members except palindromes).

use lobster_core::genlab::{enumerate_small, Catalog};
use lobster_core::lobster::build_tree_from_spec;

/// Vertex weights of the catalog entries: (S1 weights, S2 weights).
fn weights(max_branches: u32, max_leaves: u32) -> (Vec<usize>, Vec<usize>) {
    let s1 = (2..=max_branches).map(|l| 1 + l as usize).collect();
    let mut s2 = Vec::new();
    // Multisets of size b over 1..=max_leaves, by their sum.
    for b in 2..=max_branches as usize {
        let mut ways = vec![vec![0u64; b * max_leaves as usize + 1]; b + 1];
        ways[0][0] = 1;
        for c in 1..=max_leaves as usize {
            for size in 1..=b {
                for sum in c..ways[size].len() {
                    ways[size][sum] += ways[size - 1][sum - c];
                }
            }
        }
        for (sum, &n) in ways[b].iter().enumerate() {
            for _ in 0..n {
                s2.push(1 + b + sum);
            }
        }
    }
    (s1, s2)
}

/// Number of sequences over `items` of total weight exactly w, for w <= cap.
fn by_weight(items: &[usize], cap: usize) -> Vec<u64> {
    let mut out = vec![0u64; cap + 1];
    for &w in items {
        if w <= cap {
            out[w] += 1;
        }
    }
    out
}

fn convolve(a: &[u64], b: &[u64], cap: usize) -> Vec<u64> {
    let mut out = vec![0u64; cap + 1];
    for (i, &x) in a.iter().enumerate().filter(|(_, &x)| x > 0) {
        for (j, &y) in b.iter().enumerate().take(cap + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn doubled(a: &[u64], cap: usize) -> Vec<u64> {
    let mut out = vec![0u64; cap + 1];
    for (i, &x) in a.iter().enumerate() {
        if 2 * i <= cap {
            out[2 * i] += x;
        }
    }
    out
}

fn expected_count(max_vertices: usize, k_max: usize, max_branches: u32, max_leaves: u32) -> u64 {
    let (s1, s2) = weights(max_branches, max_leaves);
    let cap = max_vertices;
    let end = by_weight(&s2, cap);
    let any: Vec<usize> = s1.iter().chain(&s2).copied().collect();
    let any = by_weight(&any, cap);
    let mut total = 0u64;
    for k in 0..=k_max {
        let len = k + 1;
        let (all, palindromes) = if len == 1 {
            (end.clone(), end.clone())
        } else {
            let mut seq = convolve(&end, &end, cap);
            for _ in 0..len - 2 {
                seq = convolve(&seq, &any, cap);
            }
            // A palindrome is fixed by its first half (plus a middle entry).
            let mut half = end.clone();
            for _ in 1..len / 2 {
                half = convolve(&half, &any, cap);
            }
            let mut pal = doubled(&half, cap);
            if len % 2 == 1 {
                pal = convolve(&pal, &any, cap);
            }
            (seq, pal)
        };
        let a: u64 = all.iter().sum();
        let p: u64 = palindromes.iter().sum();
        total += (a + p) / 2;
    }
    total
}

#[test]
fn stream_length_matches_burnside_count() {
    for (v, k, b, c) in [
        (5, 4, 4, 4),
        (12, 2, 3, 3),
        (20, 4, 4, 4),
        (24, 6, 4, 4),
        (30, 3, 3, 2),
    ] {
        let got = enumerate_small(v, k, &Catalog::bounded(b, c)).count() as u64;
        assert_eq!(
            got,
            expected_count(v, k, b, c),
            "max_vertices {v}, k_max {k}"
        );
    }
}

#[test]
fn stream_is_duplicate_free_up_to_reversal() {
    let specs: Vec<_> = enumerate_small(22, 4, &Catalog::bounded(4, 4)).collect();
    let mut seen = std::collections::HashSet::new();
    for s in &specs {
        let key = s.canonical().to_json();
        assert!(seen.insert(key), "{s} twice");
        assert_eq!(&s.canonical(), s);
        assert!(build_tree_from_spec(s).unwrap().n() <= 22);
    }
}

#[test]
fn order_is_by_spine_length_first() {
    let ks: Vec<usize> = enumerate_small(20, 4, &Catalog::bounded(4, 4))
        .map(|s| s.k())
        .collect();
    assert!(ks.windows(2).all(|w| w[0] <= w[1]));
}
