//! Matching 2-switches: the transition graph on perfect matchings whose
//! edges flip an alternating 4-cycle, with shortest switch paths and checks
//! of how forcing numbers move along it.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycles::{symmetric_difference, AlternatingCycle};
use crate::error::{Error, Result};
use crate::forcing::{forcing_profile_with, SpectrumReport};
use crate::graph::Graph;
use crate::matching::PerfectMatching;
use crate::Limits;

/// Every alternating 4-cycle of `m`, canonically rotated and sorted.
pub fn alternating_4_cycles(g: &Graph, m: &PerfectMatching) -> Result<Vec<AlternatingCycle>> {
    m.check_in(g)?;
    Ok(four_cycles(g, m))
}

fn four_cycles(g: &Graph, m: &PerfectMatching) -> Vec<AlternatingCycle> {
    let edges = m.edges();
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = (edges[i].u, edges[i].v);
            let (c, d) = (edges[j].u, edges[j].v);
            if g.has_edge(b, c) && g.has_edge(d, a) {
                out.push(AlternatingCycle::from_sequence(vec![a, b, c, d]));
            }
            if g.has_edge(b, d) && g.has_edge(c, a) {
                out.push(AlternatingCycle::from_sequence(vec![a, b, d, c]));
            }
        }
    }
    out.sort();
    out
}

/// `m ⊕ E(c)` for an alternating 4-cycle `c` of `m`.
pub fn two_switch(g: &Graph, m: &PerfectMatching, c: &AlternatingCycle) -> Result<PerfectMatching> {
    m.check_in(g)?;
    if c.len() != 4 {
        return Err(Error::contract(format!("a 2-switch needs a 4-cycle, got length {}", c.len())));
    }
    c.validate(g, m)?;
    Ok(symmetric_difference(m, c))
}

/// An undirected switch-graph edge between node indices `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SwitchEdge {
    pub a: usize,
    pub b: usize,
}

/// Perfect matchings of a graph (canonical order) joined when they differ by
/// one alternating 4-cycle, annotated with forcing numbers. Two matchings
/// differ in exactly the edges of the cycle, so parallel edges cannot arise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchGraph {
    pub nodes: Vec<PerfectMatching>,
    pub forcing: Vec<usize>,
    /// Sorted neighbour indices per node.
    pub adjacency: Vec<Vec<usize>>,
}

impl SwitchGraph {
    /// Builds the switch graph over the matchings of an existing profile.
    pub fn from_profile(g: &Graph, profile: &SpectrumReport) -> Self {
        let nodes: Vec<PerfectMatching> = profile.per_matching.iter().map(|x| x.matching.clone()).collect();
        let forcing = profile.per_matching.iter().map(|x| x.forcing).collect();
        let adjacency = nodes
            .par_iter()
            .map(|m| {
                let mut out: Vec<usize> = four_cycles(g, m)
                    .iter()
                    .map(|c| {
                        let next = symmetric_difference(m, c);
                        nodes.binary_search(&next).expect("switch result is a perfect matching")
                    })
                    .collect();
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect();
        SwitchGraph {
            nodes,
            forcing,
            adjacency,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Edges `a < b` in lexicographic order.
    pub fn edges(&self) -> Vec<SwitchEdge> {
        let mut out = Vec::new();
        for (a, nbrs) in self.adjacency.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&b| b > a).map(|&b| SwitchEdge { a, b }));
        }
        out
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.nodes.len()];
        let mut count = 0;
        for s in 0..self.nodes.len() {
            if seen[s] {
                continue;
            }
            count += 1;
            for (i, d) in self.distances(&[s]).0.iter().enumerate() {
                seen[i] |= d.is_some();
            }
        }
        count
    }

    pub fn index_of(&self, m: &PerfectMatching) -> Option<usize> {
        self.nodes.binary_search(m).ok()
    }

    /// BFS distances from every node in `sources`; `None` where unreachable.
    fn distances(&self, sources: &[usize]) -> (Vec<Option<usize>>, Vec<usize>) {
        let mut dist = vec![None; self.nodes.len()];
        let mut parent = vec![usize::MAX; self.nodes.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            dist[s] = Some(0);
            queue.push_back(s);
        }
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &self.adjacency[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        (dist, parent)
    }
}

pub fn build_switch_graph(g: &Graph) -> Result<SwitchGraph> {
    build_switch_graph_with(g, &Limits::default())
}

pub fn build_switch_graph_with(g: &Graph, limits: &Limits) -> Result<SwitchGraph> {
    let profile = forcing_profile_with(g, limits)?;
    Ok(SwitchGraph::from_profile(g, &profile))
}

/// A sequence of 2-switches; `cycles[i]` turns `matchings[i]` into
/// `matchings[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchPath {
    pub matchings: Vec<PerfectMatching>,
    pub cycles: Vec<AlternatingCycle>,
}

impl SwitchPath {
    /// Number of switches.
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

/// The 4-cycle whose edges are `a ⊕ b` for adjacent switch-graph nodes.
fn cycle_between(a: &PerfectMatching, b: &PerfectMatching) -> AlternatingCycle {
    let old: Vec<_> = a.edges().iter().filter(|e| !b.contains(e)).copied().collect();
    let new: Vec<_> = b.edges().iter().filter(|e| !a.contains(e)).copied().collect();
    let (x, y) = (old[0].u, old[0].v);
    let step = new.iter().find(|e| e.contains(y)).unwrap().other(y);
    let back = old.iter().find(|e| e.contains(step)).unwrap().other(step);
    AlternatingCycle::from_sequence(vec![x, y, step, back])
}

/// Shortest switch path by BFS, expanding neighbours in canonical order.
/// `None` if the matchings lie in different components.
pub fn switch_path(sg: &SwitchGraph, from: &PerfectMatching, to: &PerfectMatching) -> Result<Option<SwitchPath>> {
    let missing = || Error::domain("matching is not a node of the switch graph");
    let s = sg.index_of(from).ok_or_else(missing)?;
    let t = sg.index_of(to).ok_or_else(missing)?;
    let (dist, parent) = sg.distances(&[s]);
    if dist[t].is_none() {
        return Ok(None);
    }
    let mut order = vec![t];
    while *order.last().unwrap() != s {
        order.push(parent[*order.last().unwrap()]);
    }
    order.reverse();
    let matchings: Vec<PerfectMatching> = order.iter().map(|&i| sg.nodes[i].clone()).collect();
    let cycles = matchings.windows(2).map(|w| cycle_between(&w[0], &w[1])).collect();
    Ok(Some(SwitchPath { matchings, cycles }))
}

/// Result of checking `|f(a) - f(b)| <= 1` on every switch-graph edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchBoundCheck {
    pub holds: bool,
    /// First violating edge in edge order.
    pub violation: Option<SwitchEdge>,
}

pub fn verify_switch_bound(sg: &SwitchGraph) -> SwitchBoundCheck {
    let violation = sg
        .edges()
        .into_iter()
        .find(|e| sg.forcing[e.a].abs_diff(sg.forcing[e.b]) > 1);
    SwitchBoundCheck {
        holds: violation.is_none(),
        violation,
    }
}

/// Continuity facts for a graph's forcing spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuityCheck {
    /// `F(G) = n - 1`.
    pub applicable: bool,
    pub spectrum_continuous: bool,
    /// Every matching reaches some matching with forcing number `n - 1` by
    /// 2-switches. False when no such matching exists.
    pub reach_max: bool,
}

impl ContinuityCheck {
    pub fn from_switch_graph(sg: &SwitchGraph, profile: &SpectrumReport) -> Self {
        let top = profile.top();
        let sources: Vec<usize> = (0..sg.node_count()).filter(|&i| Some(sg.forcing[i]) == top).collect();
        let reach_max = !sources.is_empty() && sg.distances(&sources).0.iter().all(Option::is_some);
        ContinuityCheck {
            applicable: profile.max_is_top(),
            spectrum_continuous: profile.continuous,
            reach_max,
        }
    }
}

pub fn verify_spectrum_continuity(g: &Graph) -> Result<ContinuityCheck> {
    verify_spectrum_continuity_with(g, &Limits::default())
}

pub fn verify_spectrum_continuity_with(g: &Graph, limits: &Limits) -> Result<ContinuityCheck> {
    let profile = forcing_profile_with(g, limits)?;
    let sg = SwitchGraph::from_profile(g, &profile);
    Ok(ContinuityCheck::from_switch_graph(&sg, &profile))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_complete_multipartite, gen_h_k};
    use crate::graph::Edge;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn pm(g: &Graph, pairs: &[(usize, usize)]) -> PerfectMatching {
        PerfectMatching::new(g, pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect()).unwrap()
    }

    #[test]
    fn four_cycle_examples() {
        let c6 = cycle(6);
        assert!(alternating_4_cycles(&c6, &pm(&c6, &[(0, 1), (2, 3), (4, 5)])).unwrap().is_empty());
        let k4 = Graph::complete(4);
        let cs = alternating_4_cycles(&k4, &pm(&k4, &[(0, 1), (2, 3)])).unwrap();
        let seqs: Vec<&[usize]> = cs.iter().map(|c| c.vertices()).collect();
        assert_eq!(seqs, [&[0, 1, 2, 3][..], &[0, 1, 3, 2][..]]);
        let k33 = gen_complete_multipartite(&[3, 3]).unwrap();
        assert_eq!(alternating_4_cycles(&k33, &pm(&k33, &[(0, 3), (1, 4), (2, 5)])).unwrap().len(), 3);
    }

    #[test]
    fn two_switch_is_an_involution() {
        let k4 = Graph::complete(4);
        let m = pm(&k4, &[(0, 1), (2, 3)]);
        let c = AlternatingCycle::new(&k4, &m, vec![0, 1, 2, 3]).unwrap();
        let next = two_switch(&k4, &m, &c).unwrap();
        assert_eq!(next, pm(&k4, &[(1, 2), (0, 3)]));
        assert_eq!(two_switch(&k4, &next, &c).unwrap(), m);
        let c6 = cycle(6);
        let m6 = pm(&c6, &[(0, 1), (2, 3), (4, 5)]);
        let long = AlternatingCycle::new(&c6, &m6, (0..6).collect()).unwrap();
        assert!(two_switch(&c6, &m6, &long).is_err());
    }

    #[test]
    fn switch_graph_examples() {
        let k33 = gen_complete_multipartite(&[3, 3]).unwrap();
        let sg = build_switch_graph(&k33).unwrap();
        assert_eq!(sg.node_count(), 6);
        assert_eq!(sg.component_count(), 1);
        assert!(sg.adjacency.iter().all(|n| n.len() == 3));
        assert!(verify_switch_bound(&sg).holds);
        for a in &sg.nodes {
            for b in &sg.nodes {
                let p = switch_path(&sg, a, b).unwrap().unwrap();
                assert!(p.len() <= 3);
                for (i, c) in p.cycles.iter().enumerate() {
                    assert_eq!(two_switch(&k33, &p.matchings[i], c).unwrap(), p.matchings[i + 1]);
                }
            }
        }
        let c6 = build_switch_graph(&cycle(6)).unwrap();
        assert_eq!(c6.edges(), vec![]);
        assert_eq!(c6.component_count(), 2);
        assert_eq!(switch_path(&c6, &c6.nodes[0], &c6.nodes[1]).unwrap(), None);
        let same = switch_path(&c6, &c6.nodes[0], &c6.nodes[0]).unwrap().unwrap();
        assert!(same.is_empty());
        let k4 = build_switch_graph(&Graph::complete(4)).unwrap();
        assert_eq!(k4.edges().len(), 3);
    }

    #[test]
    fn continuity_examples() {
        let h = gen_h_k(4, 1).unwrap().graph;
        let all = ContinuityCheck {
            applicable: true,
            spectrum_continuous: true,
            reach_max: true,
        };
        assert_eq!(verify_spectrum_continuity(&h).unwrap(), all);
        let k33 = gen_complete_multipartite(&[3, 3]).unwrap();
        assert_eq!(verify_spectrum_continuity(&k33).unwrap(), all);
        let c6 = verify_spectrum_continuity(&cycle(6)).unwrap();
        assert!(!c6.applicable && c6.spectrum_continuous);
    }
}
