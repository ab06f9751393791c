//! Exact forcing numbers, alternating-cycle packings and forcing spectra.
//!
//! A subset `S` of a perfect matching `M` forces `M` exactly when
//! `G - V(S)` has no M-alternating cycle. The solver searches subsets of `M`
//! by increasing size, starting at the cycle-packing lower bound and stopping
//! at a greedy upper bound.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycles::{alternating_cycle_in, for_each_alternating_cycle, AlternatingCycle};
use crate::error::{Error, Result};
use crate::graph::{bits, next_combination, Edge, Graph};
use crate::matching::{enumerate_perfect_matchings_capped, has_perfect_matching, PerfectMatching};
use crate::Limits;

/// Outcome of a forcing-set test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForcingCheck {
    Forcing,
    /// The set does not force; the cycle avoids every vertex of the set.
    NotForcing(AlternatingCycle),
}

impl ForcingCheck {
    pub fn is_forcing(&self) -> bool {
        matches!(self, ForcingCheck::Forcing)
    }
}

/// Tests whether `s ⊆ m` is a forcing set of `m`.
pub fn is_forcing_set(g: &Graph, m: &PerfectMatching, s: &[Edge]) -> Result<ForcingCheck> {
    m.check_in(g)?;
    let mut removed = 0u64;
    for e in s {
        if !m.contains(e) {
            return Err(Error::contract(format!("edge {e} is not in the matching")));
        }
        removed |= 1u64 << e.u | 1u64 << e.v;
    }
    let mate = m.mate(g.order());
    Ok(
        match alternating_cycle_in(g, &mate, g.vertex_mask() & !removed) {
            None => ForcingCheck::Forcing,
            Some(c) => ForcingCheck::NotForcing(AlternatingCycle::from_sequence(c)),
        },
    )
}

/// Optimal forcing set of a perfect matching, with search statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcingCertificate {
    pub matching: PerfectMatching,
    pub optimum: usize,
    pub witness_set: Vec<Edge>,
    /// Cycle-packing bound the search started from.
    pub lower_bound_used: usize,
    /// False when the packing fell back to 4-cycles only.
    pub lower_bound_exact: bool,
    /// Size of the greedy forcing set.
    pub upper_bound: usize,
    /// Number of candidate subsets tested.
    pub nodes_explored: u64,
}

/// Maximum number of disjoint alternating cycles, or a lower bound on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclePacking {
    pub value: usize,
    pub exact: bool,
}

struct Solver<'a> {
    g: &'a Graph,
    m: &'a PerfectMatching,
    mate: Vec<usize>,
    edge_of: Vec<usize>,
    all: u64,
}

impl<'a> Solver<'a> {
    fn new(g: &'a Graph, m: &'a PerfectMatching) -> Self {
        Solver {
            g,
            m,
            mate: m.mate(g.order()),
            edge_of: m.edge_index_of_vertex(g.order()),
            all: g.vertex_mask(),
        }
    }

    fn alive(&self, subset: u64) -> u64 {
        self.all & !self.m.vertices_of_subset(subset)
    }

    fn forces(&self, subset: u64) -> bool {
        alternating_cycle_in(self.g, &self.mate, self.alive(subset)).is_none()
    }

    fn cycle_edge_mask(&self, cycle: &[usize]) -> u64 {
        cycle.iter().fold(0, |acc, &v| acc | 1u64 << self.edge_of[v])
    }

    /// Matching-edge masks of all alternating cycles, failing past `cap`.
    fn cycle_masks(&self, cap: usize) -> Result<Vec<u64>> {
        let mut masks = Vec::new();
        let mut count = 0usize;
        let finished = for_each_alternating_cycle(self.g, &self.mate, self.all, &mut |c| {
            count += 1;
            if count > cap {
                return false;
            }
            masks.push(self.cycle_edge_mask(c));
            true
        });
        if !finished {
            return Err(Error::CycleOverflow { cap });
        }
        Ok(masks)
    }

    /// Matching-edge masks of all alternating 4-cycles inside `alive`.
    fn four_cycle_masks(&self, alive: u64) -> Vec<u64> {
        let edges = self.m.edges();
        let mut out = Vec::new();
        for i in 0..edges.len() {
            if alive & edges[i].mask() != edges[i].mask() {
                continue;
            }
            for j in i + 1..edges.len() {
                if alive & edges[j].mask() != edges[j].mask() {
                    continue;
                }
                let (a, b) = (edges[i].u, edges[i].v);
                let (c, d) = (edges[j].u, edges[j].v);
                let g = self.g;
                let parallel = g.has_edge(a, c) && g.has_edge(b, d);
                let crossed = g.has_edge(a, d) && g.has_edge(b, c);
                let mask = 1u64 << i | 1u64 << j;
                if parallel {
                    out.push(mask);
                }
                if crossed {
                    out.push(mask);
                }
            }
        }
        out
    }

    fn packing(&self, cap: usize) -> Result<usize> {
        Ok(max_disjoint(self.cycle_masks(cap)?, self.m.len()))
    }

    fn packing_bound(&self, cap: usize) -> CyclePacking {
        match self.packing(cap) {
            Ok(value) => CyclePacking { value, exact: true },
            Err(_) => CyclePacking {
                value: max_disjoint(self.four_cycle_masks(self.all), self.m.len()),
                exact: false,
            },
        }
    }

    /// Greedy forcing set: hit the matching edge lying on the most live
    /// alternating 4-cycles (lowest index on ties); once no 4-cycle is left,
    /// hit the lowest matching edge of any remaining alternating cycle.
    fn greedy(&self) -> u64 {
        let n = self.m.len();
        let mut chosen = 0u64;
        loop {
            let alive = self.alive(chosen);
            let fours = self.four_cycle_masks(alive);
            if !fours.is_empty() {
                let mut hits = vec![0usize; n];
                for mask in &fours {
                    for i in bits(*mask) {
                        hits[i] += 1;
                    }
                }
                let best = (0..n).max_by_key(|&i| (hits[i], std::cmp::Reverse(i))).unwrap();
                chosen |= 1u64 << best;
                continue;
            }
            match alternating_cycle_in(self.g, &self.mate, alive) {
                Some(c) => {
                    let mask = self.cycle_edge_mask(&c);
                    chosen |= 1u64 << mask.trailing_zeros();
                }
                None => return chosen,
            }
        }
    }

    fn solve(&self, cycle_cap: usize) -> ForcingCertificate {
        let n = self.m.len();
        let lower = self.packing_bound(cycle_cap);
        let greedy = self.greedy();
        let upper = greedy.count_ones() as usize;
        let mut explored = 0u64;
        let mut best = (upper, greedy);
        'sizes: for k in lower.value..upper {
            let mut combo: Vec<usize> = (0..k).collect();
            loop {
                let mask = combo.iter().fold(0u64, |m, &i| m | 1u64 << i);
                explored += 1;
                if self.forces(mask) {
                    best = (k, mask);
                    break 'sizes;
                }
                if !next_combination(&mut combo, n) {
                    break;
                }
            }
        }
        let (optimum, mask) = best;
        ForcingCertificate {
            matching: self.m.clone(),
            optimum,
            witness_set: bits(mask).map(|i| self.m.edges()[i]).collect(),
            lower_bound_used: lower.value,
            lower_bound_exact: lower.exact,
            upper_bound: upper,
            nodes_explored: explored,
        }
    }
}

/// Largest family of pairwise disjoint masks, by branch and bound.
fn max_disjoint(mut masks: Vec<u64>, universe: usize) -> usize {
    masks.sort_unstable_by_key(|m| (m.count_ones(), *m));
    masks.dedup();
    // keep inclusion-minimal masks; a superset never beats its subset
    let mut minimal: Vec<u64> = Vec::new();
    for m in masks {
        if !minimal.iter().any(|&s| s & !m == 0) {
            minimal.push(m);
        }
    }
    let mut by_low: Vec<Vec<u64>> = vec![Vec::new(); universe.max(1)];
    let mut support = 0u64;
    for m in minimal {
        by_low[m.trailing_zeros() as usize].push(m);
        support |= m;
    }
    let mut best = 0;
    pack(&by_low, support, 0, &mut best);
    best
}

fn pack(by_low: &[Vec<u64>], free: u64, count: usize, best: &mut usize) {
    if count > *best {
        *best = count;
    }
    if free == 0 || count + (free.count_ones() as usize) / 2 <= *best {
        return;
    }
    let e = free.trailing_zeros() as usize;
    for &m in &by_low[e] {
        if m & free == m {
            pack(by_low, free & !m, count + 1, best);
        }
    }
    pack(by_low, free & !(1u64 << e), count, best);
}

/// f(G, M) with its certificate, using the default cycle cap.
pub fn forcing_number(g: &Graph, m: &PerfectMatching) -> Result<ForcingCertificate> {
    forcing_number_with(g, m, &Limits::default())
}

pub fn forcing_number_with(g: &Graph, m: &PerfectMatching, limits: &Limits) -> Result<ForcingCertificate> {
    m.check_in(g)?;
    Ok(Solver::new(g, m).solve(limits.cycle_cap))
}

/// c(M): the maximum number of vertex-disjoint M-alternating cycles.
pub fn cycle_packing_number(g: &Graph, m: &PerfectMatching) -> Result<usize> {
    cycle_packing_number_with(g, m, &Limits::default())
}

pub fn cycle_packing_number_with(g: &Graph, m: &PerfectMatching, limits: &Limits) -> Result<usize> {
    m.check_in(g)?;
    Solver::new(g, m).packing(limits.cycle_cap)
}

/// Forcing number of one perfect matching inside a spectrum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingForcing {
    pub matching: PerfectMatching,
    pub forcing: usize,
}

/// Forcing numbers of every perfect matching of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub order: usize,
    /// In canonical (lexicographic) matching order.
    pub per_matching: Vec<MatchingForcing>,
    pub spectrum: Vec<usize>,
    pub min_forcing: usize,
    pub max_forcing: usize,
    pub continuous: bool,
}

impl SpectrumReport {
    pub fn matching_count(&self) -> usize {
        self.per_matching.len()
    }

    pub fn forcing_of(&self, m: &PerfectMatching) -> Option<usize> {
        self.per_matching
            .binary_search_by(|x| x.matching.cmp(m))
            .ok()
            .map(|i| self.per_matching[i].forcing)
    }

    /// n - 1 for a graph of order 2n, `None` for the empty graph.
    pub fn top(&self) -> Option<usize> {
        (self.order / 2).checked_sub(1)
    }

    /// F(G) = n - 1.
    pub fn max_is_top(&self) -> bool {
        self.top() == Some(self.max_forcing)
    }

    /// f(G) = n - 1.
    pub fn min_is_top(&self) -> bool {
        self.top() == Some(self.min_forcing)
    }
}

pub(crate) fn spectrum_from(order: usize, per_matching: Vec<MatchingForcing>) -> SpectrumReport {
    let mut spectrum: Vec<usize> = per_matching.iter().map(|x| x.forcing).collect();
    spectrum.sort_unstable();
    spectrum.dedup();
    let min_forcing = spectrum[0];
    let max_forcing = *spectrum.last().unwrap();
    SpectrumReport {
        order,
        continuous: spectrum.len() == max_forcing - min_forcing + 1,
        per_matching,
        spectrum,
        min_forcing,
        max_forcing,
    }
}

pub fn forcing_profile(g: &Graph) -> Result<SpectrumReport> {
    forcing_profile_with(g, &Limits::default())
}

/// Forcing number of every perfect matching. Matchings are solved in
/// parallel and assembled in canonical order.
pub fn forcing_profile_with(g: &Graph, limits: &Limits) -> Result<SpectrumReport> {
    if !has_perfect_matching(g) {
        return Err(Error::NoPerfectMatching);
    }
    let matchings = enumerate_perfect_matchings_capped(g, limits.matching_cap)?;
    let per_matching = matchings
        .into_par_iter()
        .map(|m| {
            let forcing = Solver::new(g, &m).solve(limits.cycle_cap).optimum;
            MatchingForcing { matching: m, forcing }
        })
        .collect();
    Ok(spectrum_from(g.order(), per_matching))
}

/// Sequential variant of [`forcing_profile_with`] for callers that already
/// parallelise at a coarser grain.
pub fn forcing_profile_serial(g: &Graph, limits: &Limits) -> Result<SpectrumReport> {
    if !has_perfect_matching(g) {
        return Err(Error::NoPerfectMatching);
    }
    let matchings = enumerate_perfect_matchings_capped(g, limits.matching_cap)?;
    let per_matching = matchings
        .into_iter()
        .map(|m| {
            let forcing = Solver::new(g, &m).solve(limits.cycle_cap).optimum;
            MatchingForcing { matching: m, forcing }
        })
        .collect();
    Ok(spectrum_from(g.order(), per_matching))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::enumerate_perfect_matchings;

    fn k33() -> Graph {
        Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn pm(g: &Graph, pairs: &[(usize, usize)]) -> PerfectMatching {
        PerfectMatching::new(g, pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect()).unwrap()
    }

    #[test]
    fn forcing_set_examples() {
        let g = k33();
        for m in enumerate_perfect_matchings(&g).unwrap() {
            let s = &m.edges()[..2];
            assert!(is_forcing_set(&g, &m, s).unwrap().is_forcing());
        }
        let k2 = Graph::complete(2);
        let m = pm(&k2, &[(0, 1)]);
        assert!(is_forcing_set(&k2, &m, &[]).unwrap().is_forcing());

        let c6 = cycle(6);
        let m = pm(&c6, &[(0, 1), (2, 3), (4, 5)]);
        match is_forcing_set(&c6, &m, &[]).unwrap() {
            ForcingCheck::NotForcing(c) => assert_eq!(c.vertices(), &[0, 1, 2, 3, 4, 5]),
            other => panic!("unexpected {other:?}"),
        }
        assert!(is_forcing_set(&c6, &m, &[Edge::new(1, 2)]).is_err());
    }

    #[test]
    fn forcing_number_examples() {
        let g = k33();
        for m in enumerate_perfect_matchings(&g).unwrap() {
            assert_eq!(forcing_number(&g, &m).unwrap().optimum, 2);
        }
        let k2 = Graph::complete(2);
        let cert = forcing_number(&k2, &pm(&k2, &[(0, 1)])).unwrap();
        assert_eq!(cert.optimum, 0);
        assert!(cert.witness_set.is_empty());
        let c6 = cycle(6);
        let cert = forcing_number(&c6, &pm(&c6, &[(0, 1), (2, 3), (4, 5)])).unwrap();
        assert_eq!(cert.optimum, 1);
        assert_eq!(cert.witness_set.len(), 1);
    }

    #[test]
    fn empty_graph_forcing_number() {
        let g = Graph::new(0);
        let m = PerfectMatching::new(&g, vec![]).unwrap();
        assert_eq!(forcing_number(&g, &m).unwrap().optimum, 0);
        let p = forcing_profile(&g).unwrap();
        assert_eq!(p.spectrum, vec![0]);
    }

    #[test]
    fn packing_examples() {
        let c6 = cycle(6);
        for m in enumerate_perfect_matchings(&c6).unwrap() {
            assert_eq!(cycle_packing_number(&c6, &m).unwrap(), 1);
        }
        let k2 = Graph::complete(2);
        assert_eq!(cycle_packing_number(&k2, &pm(&k2, &[(0, 1)])).unwrap(), 0);
        // two disjoint 4-cycles 0-1-2-3 and 4-5-6-7
        let g = Graph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)],
        )
        .unwrap();
        let m = pm(&g, &[(0, 1), (2, 3), (4, 5), (6, 7)]);
        assert_eq!(cycle_packing_number(&g, &m).unwrap(), 2);
    }

    #[test]
    fn packing_cap_overflows_and_solver_falls_back() {
        let g = Graph::complete(8);
        let m = pm(&g, &[(0, 1), (2, 3), (4, 5), (6, 7)]);
        let tight = Limits {
            cycle_cap: 3,
            ..Limits::default()
        };
        assert_eq!(
            cycle_packing_number_with(&g, &m, &tight),
            Err(Error::CycleOverflow { cap: 3 })
        );
        let cert = forcing_number_with(&g, &m, &tight).unwrap();
        assert!(!cert.lower_bound_exact);
        assert_eq!(cert.optimum, 3);
        assert_eq!(cert.optimum, forcing_number(&g, &m).unwrap().optimum);
    }

    #[test]
    fn profile_examples() {
        let p = forcing_profile(&k33()).unwrap();
        assert_eq!(p.spectrum, vec![2]);
        assert!(p.continuous && p.max_is_top() && p.min_is_top());
        let p = forcing_profile(&cycle(6)).unwrap();
        assert_eq!(p.spectrum, vec![1]);
        assert_eq!(p.matching_count(), 2);
        assert_eq!(forcing_profile(&Graph::complete(5)), Err(Error::NoPerfectMatching));
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        let mut empty: Vec<usize> = vec![];
        assert!(!next_combination(&mut empty, 3));
    }

    #[test]
    fn certificate_is_minimal() {
        let g = Graph::complete(8);
        for m in enumerate_perfect_matchings(&g).unwrap().iter().take(10) {
            let cert = forcing_number(&g, m).unwrap();
            assert!(is_forcing_set(&g, m, &cert.witness_set).unwrap().is_forcing());
            for skip in 0..cert.witness_set.len() {
                let mut s = cert.witness_set.clone();
                s.remove(skip);
                assert!(!is_forcing_set(&g, m, &s).unwrap().is_forcing());
            }
        }
    }
}
