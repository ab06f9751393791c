//! M-alternating cycles: detection, enumeration and symmetric difference.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, Edge, Graph};
use crate::matching::{avoid_matching_edge, PerfectMatching, UNMATCHED};

/// A cycle given by its cyclic vertex sequence. The sequence starts at the
/// smallest vertex and continues towards its smaller neighbour on the cycle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlternatingCycle {
    vertices: Vec<usize>,
}

impl AlternatingCycle {
    /// Canonicalises a cyclic sequence without validating it.
    pub(crate) fn from_sequence(mut seq: Vec<usize>) -> Self {
        let len = seq.len();
        if len > 0 {
            let (pos, _) = seq.iter().enumerate().min_by_key(|&(_, &v)| v).unwrap();
            seq.rotate_left(pos);
            if len > 2 && seq[len - 1] < seq[1] {
                seq[1..].reverse();
            }
        }
        AlternatingCycle { vertices: seq }
    }

    /// Builds a cycle from a cyclic vertex sequence and checks that it is
    /// alternating with respect to `m` in `g`.
    pub fn new(g: &Graph, m: &PerfectMatching, seq: Vec<usize>) -> Result<Self> {
        let c = AlternatingCycle::from_sequence(seq);
        c.validate(g, m)?;
        Ok(c)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges of the cycle in traversal order.
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| Edge::new(self.vertices[i], self.vertices[(i + 1) % n]))
            .collect()
    }

    pub fn vertex_mask(&self) -> u64 {
        self.vertices.iter().fold(0, |m, &v| m | 1u64 << v)
    }

    /// Checks the alternating-cycle invariants against `(g, m)`.
    pub fn validate(&self, g: &Graph, m: &PerfectMatching) -> Result<()> {
        let n = self.vertices.len();
        if n < 4 || n % 2 == 1 {
            return Err(Error::contract(format!(
                "alternating cycle needs even length >= 4, got {n}"
            )));
        }
        if self.vertices.iter().any(|&v| v >= g.order()) {
            return Err(Error::contract("cycle vertex out of range"));
        }
        if (self.vertex_mask().count_ones() as usize) != n {
            return Err(Error::contract("cycle repeats a vertex"));
        }
        let edges = self.edges();
        if edges.iter().any(|e| !g.has_edge(e.u, e.v)) {
            return Err(Error::contract("cycle uses a non-edge"));
        }
        let in_m: Vec<bool> = edges.iter().map(|e| m.contains(e)).collect();
        if (0..n).any(|i| in_m[i] == in_m[(i + 1) % n]) {
            return Err(Error::contract("cycle does not alternate with the matching"));
        }
        Ok(())
    }
}

/// Finds an M-alternating cycle of `g[alive]` using only vertices in
/// `alive`. `mate` must restrict to a perfect matching of `g[alive]`.
///
/// Every alternating cycle passes through some matching edge `ab`, and a
/// cycle through `ab` exists exactly when `g[alive] - ab` has a perfect
/// matching. That is an augmenting path between `a` and `b` for the matching
/// with `ab` removed, found with a blossom search. The last matching edge
/// never needs checking since a cycle holds at least two matching edges.
pub(crate) fn alternating_cycle_in(g: &Graph, mate: &[usize], alive: u64) -> Option<Vec<usize>> {
    let heads: Vec<usize> = bits(alive).filter(|&v| mate[v] > v).collect();
    let skip_last = heads.len().saturating_sub(1);
    for &a in &heads[..skip_last] {
        let b = mate[a];
        if let Some(path) = avoid_matching_edge(g, alive, mate, a, b) {
            // path runs b .. a; closing edge a-b is the matching edge
            return Some(path);
        }
    }
    None
}

/// Some M-alternating cycle of `g`, or `None` if `m` is the unique perfect
/// matching.
pub fn find_alternating_cycle(g: &Graph, m: &PerfectMatching) -> Result<Option<AlternatingCycle>> {
    m.check_in(g)?;
    let mate = m.mate(g.order());
    Ok(alternating_cycle_in(g, &mate, g.vertex_mask()).map(AlternatingCycle::from_sequence))
}

/// `m ⊕ E(c)`.
pub fn apply_cycle(g: &Graph, m: &PerfectMatching, c: &AlternatingCycle) -> Result<PerfectMatching> {
    c.validate(g, m)?;
    Ok(symmetric_difference(m, c))
}

pub(crate) fn symmetric_difference(m: &PerfectMatching, c: &AlternatingCycle) -> PerfectMatching {
    let cyc = c.edges();
    let mut edges: Vec<Edge> = m
        .edges()
        .iter()
        .copied()
        .filter(|e| !cyc.contains(e))
        .collect();
    edges.extend(cyc.into_iter().filter(|e| !m.contains(e)));
    PerfectMatching::from_edges_unchecked(edges)
}

/// Visits every M-alternating cycle of `g[alive]` once. The callback receives
/// the vertex sequence (starting at its smallest vertex, matching edge
/// first) and returns `false` to stop the walk. Returns `false` if stopped.
pub(crate) fn for_each_alternating_cycle(
    g: &Graph,
    mate: &[usize],
    alive: u64,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let mut path = Vec::with_capacity(g.order());
    for s in bits(alive) {
        let t = mate[s];
        if t == UNMATCHED || t < s {
            continue;
        }
        // only vertices above s may appear, so s is the cycle minimum
        let allowed = alive & !((1u64 << (s + 1)) - 1);
        path.clear();
        path.push(s);
        path.push(t);
        let used = 1u64 << s | 1u64 << t;
        if !extend(g, mate, s, allowed, used, &mut path, visit) {
            return false;
        }
    }
    true
}

fn extend(
    g: &Graph,
    mate: &[usize],
    start: usize,
    allowed: u64,
    used: u64,
    path: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let tail = *path.last().unwrap();
    // tail was reached by a matching edge; leave it by a non-matching edge
    if path.len() >= 4 && g.has_edge(tail, start) && mate[tail] != start && !visit(path) {
        return false;
    }
    for w in bits(g.neighbors(tail) & allowed & !used) {
        if mate[tail] == w {
            continue;
        }
        let x = mate[w];
        if x == UNMATCHED || used >> x & 1 == 1 || allowed >> x & 1 == 0 {
            continue;
        }
        path.push(w);
        path.push(x);
        let ok = extend(g, mate, start, allowed, used | 1u64 << w | 1u64 << x, path, visit);
        path.pop();
        path.pop();
        if !ok {
            return false;
        }
    }
    true
}
