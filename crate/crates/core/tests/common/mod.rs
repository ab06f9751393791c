//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's matching or cycle code.

#![allow(dead_code)]

use forcing_core::generators::{gen_random, Probability};
use forcing_core::{Edge, Graph, PerfectMatching};
use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

/// Every perfect matching as a sorted list of `(lo, hi)` pairs, by pairing
/// the lowest free vertex with each free neighbour in turn.
pub fn naive_matchings(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    fn go(g: &Graph, free: &mut Vec<bool>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some(u) = free.iter().position(|&f| f) else {
            let mut m = acc.clone();
            m.sort();
            out.push(m);
            return;
        };
        free[u] = false;
        for v in u + 1..g.order() {
            if free[v] && g.has_edge(u, v) {
                free[v] = false;
                acc.push((u, v));
                go(g, free, acc, out);
                acc.pop();
                free[v] = true;
            }
        }
        free[u] = true;
    }
    let mut out = Vec::new();
    if g.order().is_multiple_of(2) {
        go(g, &mut vec![true; g.order()], &mut Vec::new(), &mut out);
    }
    out
}

/// Smallest subset of `m` contained in no other perfect matching, by trying
/// every subset in order of size.
pub fn naive_forcing_number(g: &Graph, m: &[(usize, usize)]) -> usize {
    let others: Vec<Vec<(usize, usize)>> = naive_matchings(g).into_iter().filter(|x| x != m).collect();
    let n = m.len();
    let mut best = n;
    for subset in 0u32..1 << n {
        let size = subset.count_ones() as usize;
        if size >= best {
            continue;
        }
        let chosen: Vec<(usize, usize)> = (0..n).filter(|i| subset >> i & 1 == 1).map(|i| m[i]).collect();
        if others.iter().all(|o| !chosen.iter().all(|e| o.contains(e))) {
            best = size;
        }
    }
    best
}

/// Every alternating cycle of `m` as a vertex sequence starting at its
/// smallest vertex with a matched edge, found by depth-first search.
pub fn naive_alternating_cycles(g: &Graph, m: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut mate = vec![usize::MAX; g.order()];
    for &(a, b) in m {
        mate[a] = b;
        mate[b] = a;
    }
    fn extend(g: &Graph, mate: &[usize], path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        // The path ends on a matched edge; continue along a non-matching edge.
        let start = path[0];
        let last = *path.last().unwrap();
        for w in 0..g.order() {
            if !g.has_edge(last, w) || mate[last] == w {
                continue;
            }
            if w == start {
                if path.len() >= 4 {
                    out.push(path.clone());
                }
                continue;
            }
            if w < start || path.contains(&w) || path.contains(&mate[w]) || mate[w] < start {
                continue;
            }
            path.push(w);
            path.push(mate[w]);
            extend(g, mate, path, out);
            path.pop();
            path.pop();
        }
    }
    let mut out = Vec::new();
    for s in 0..g.order() {
        if mate[s] > s {
            let mut path = vec![s, mate[s]];
            extend(g, &mate, &mut path, &mut out);
        }
    }
    out
}

pub fn pairs(m: &PerfectMatching) -> Vec<(usize, usize)> {
    m.edges().iter().map(|e| (e.u, e.v)).collect()
}

pub fn to_matching(g: &Graph, m: &[(usize, usize)]) -> PerfectMatching {
    PerfectMatching::new(g, m.iter().map(|&(a, b)| Edge::new(a, b)).collect()).unwrap()
}

/// A seeded random graph with a perfect matching and one of its matchings,
/// drawn with even order in `4..=max_order`.
pub fn random_instance(seed: u64, max_order: usize) -> (Graph, Vec<(usize, usize)>) {
    let mut rng = SplitMix64::seed_from_u64(seed);
    loop {
        let order = 4 + 2 * (rng.next_u64() as usize % ((max_order - 2) / 2));
        let num = 1 + rng.next_u64() % 3;
        let g = gen_random(order, Probability::new(num, 4).unwrap(), rng.next_u64()).unwrap();
        let all = naive_matchings(&g);
        if !all.is_empty() {
            let pick = rng.next_u64() as usize % all.len();
            return (g, all[pick].clone());
        }
    }
}

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}
