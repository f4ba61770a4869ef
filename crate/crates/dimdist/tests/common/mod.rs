//! Independent oracles shared by the integration suites. These stay
//! deliberately naive — subset scans and full-permutation filters — so they
//! exercise none of the solver machinery they are used to check.
#![allow(dead_code)] // each suite pulls in the oracles it needs

use dimdist::graph::{all_pairs_distances, Graph};

/// Minimum resolving set size by scanning all subsets in size order.
pub fn brute_force_dim(g: &Graph) -> usize {
    let d = all_pairs_distances(g);
    let n = g.n();
    if n == 1 {
        return 1;
    }
    for k in 1..n {
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let resolves = (0..n).all(|u| {
                ((u + 1)..n).all(|v| subset.iter().any(|&s| d.get(s, u) != d.get(s, v)))
            });
            if resolves {
                return k;
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    n - 1
}

fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in (i + 1)..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Image arrays of every adjacency-preserving permutation, found by
/// filtering all n! candidates.
pub fn brute_force_automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    let mut image: Vec<usize> = (0..n).collect();
    fn preserves(g: &Graph, image: &[usize]) -> bool {
        for u in 0..g.n() {
            for v in (u + 1)..g.n() {
                if g.has_edge(u, v) != g.has_edge(image[u], image[v]) {
                    return false;
                }
            }
        }
        true
    }
    fn heap(image: &mut Vec<usize>, k: usize, g: &Graph, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            if preserves(g, image) {
                out.push(image.clone());
            }
            return;
        }
        for i in 0..k {
            heap(image, k - 1, g, out);
            if k.is_multiple_of(2) {
                image.swap(i, k - 1);
            } else {
                image.swap(0, k - 1);
            }
        }
    }
    heap(&mut image, n, g, &mut out);
    out
}

/// Minimum color count over all colorings (enumerated once per color
/// permutation class), each checked against the brute-forced automorphisms.
pub fn naive_distinguishing_number(g: &Graph) -> usize {
    let autos = brute_force_automorphisms(g);
    let n = g.n();
    fn dfs(
        g: &Graph,
        autos: &[Vec<usize>],
        k: u32,
        pos: usize,
        max_used: u32,
        colors: &mut Vec<u32>,
    ) -> bool {
        if pos == g.n() {
            return autos
                .iter()
                .filter(|image| image.iter().enumerate().any(|(i, &v)| i != v))
                .all(|image| (0..g.n()).any(|v| colors[image[v]] != colors[v]));
        }
        for c in 1..=k.min(max_used + 1) {
            colors[pos] = c;
            if dfs(g, autos, k, pos + 1, max_used.max(c), colors) {
                return true;
            }
        }
        false
    }
    for k in 1..=n as u32 {
        let mut colors = vec![0u32; n];
        if dfs(g, &autos, k, 0, 0, &mut colors) {
            return k as usize;
        }
    }
    unreachable!("n distinct colors always distinguish")
}
