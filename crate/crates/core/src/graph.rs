//! Undirected simple graphs on at most 64 vertices, stored as one `u64`
//! adjacency row per vertex.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order representable by [`Graph`].
pub const MAX_ORDER: usize = 64;

/// Iterates the indices of the set bits of `mask`, lowest first.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Mask with the lowest `n` bits set.
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |m, &v| m | (1u64 << v))
}

/// Advances `combo` to the next k-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// An unordered vertex pair, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", from = "[usize; 2]")]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Builds the edge `{a, b}`. Panics if `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "an edge needs two distinct endpoints");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite to `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub(crate) fn mask(&self) -> u64 {
        (1u64 << self.u) | (1u64 << self.v)
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.u, e.v]
    }
}

impl From<[usize; 2]> for Edge {
    fn from(p: [usize; 2]) -> Self {
        Edge::new(p[0], p[1])
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Simple undirected graph with a symmetric, loop-free adjacency bit-matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    rows: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().map(|e| e.to_string()).collect();
        write!(f, "Graph({}; {})", self.order, edges.join(" "))
    }
}

impl Graph {
    /// Edgeless graph on `order` vertices. Panics if `order > MAX_ORDER`.
    pub fn new(order: usize) -> Self {
        assert!(order <= MAX_ORDER, "order {order} exceeds {MAX_ORDER}");
        Graph {
            order,
            rows: vec![0; order],
        }
    }

    pub fn complete(order: usize) -> Self {
        let mut g = Graph::new(order);
        let all = low_mask(order);
        for v in 0..order {
            g.rows[v] = all & !(1u64 << v);
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::domain(format!(
                "order {order} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        let mut g = Graph::new(order);
        for &(a, b) in edges {
            if a >= order || b >= order {
                return Err(Error::domain(format!(
                    "edge {a}-{b} out of range for order {order}"
                )));
            }
            if a == b {
                return Err(Error::domain(format!("loop at vertex {a}")));
            }
            if g.has_edge(a, b) {
                return Err(Error::domain(format!("duplicate edge {a}-{b}")));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Mask of every vertex.
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.order)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.order && b < self.order && self.rows[a] >> b & 1 == 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b && a < self.order && b < self.order);
        self.rows[a] |= 1u64 << b;
        self.rows[b] |= 1u64 << a;
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.order && b < self.order);
        self.rows[a] &= !(1u64 << b);
        self.rows[b] &= !(1u64 << a);
    }

    /// Neighbourhood of `v` as a bit mask.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.order).all(|v| self.degree(v) == k)
    }

    /// All edges in lexicographic order of `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.order).flat_map(move |u| {
            bits(self.rows[u] & !low_mask(u + 1)).map(move |v| Edge { u, v })
        })
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.order * self.order.saturating_sub(1) / 2
    }

    /// Off-diagonal negation of the adjacency matrix.
    pub fn complement(&self) -> Graph {
        let all = self.vertex_mask();
        Graph {
            order: self.order,
            rows: (0..self.order)
                .map(|v| !self.rows[v] & all & !(1u64 << v))
                .collect(),
        }
    }

    /// Subgraph induced by `vertices`, relabelled `0..len` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut seen = 0u64;
        for &v in vertices {
            if v >= self.order {
                return Err(Error::domain(format!(
                    "vertex {v} out of range for order {}",
                    self.order
                )));
            }
            if seen >> v & 1 == 1 {
                return Err(Error::domain(format!("vertex {v} listed twice")));
            }
            seen |= 1u64 << v;
        }
        let mut h = Graph::new(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    h.add_edge(i, j);
                }
            }
        }
        Ok(h)
    }

    /// Copy of the graph with every vertex in `removed` isolated. Vertex
    /// indices are kept, which makes masks interchangeable between the two.
    pub fn isolate(&self, removed: u64) -> Graph {
        Graph {
            order: self.order,
            rows: (0..self.order)
                .map(|v| {
                    if removed >> v & 1 == 1 {
                        0
                    } else {
                        self.rows[v] & !removed
                    }
                })
                .collect(),
        }
    }

    /// Connected components of the subgraph induced by `alive`, ordered by
    /// smallest vertex.
    pub fn components(&self, alive: u64) -> Vec<u64> {
        let mut left = alive & self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let start = left & left.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.rows[v];
                }
                next &= alive & !comp;
                comp |= next;
                frontier = next;
            }
            left &= !comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components(self.vertex_mask()).len() <= 1
    }

    /// Number of odd components of `g - removed`.
    pub fn odd_component_count(&self, removed: &[usize]) -> Result<usize> {
        for &v in removed {
            if v >= self.order {
                return Err(Error::domain(format!("vertex {v} out of range")));
            }
        }
        Ok(self.odd_components_mask(mask_of(removed)))
    }

    pub(crate) fn odd_components_mask(&self, removed: u64) -> usize {
        self.components(self.vertex_mask() & !removed)
            .into_iter()
            .filter(|c| c.count_ones() % 2 == 1)
            .count()
    }

    /// True if no two vertices of `set` are adjacent.
    pub fn is_independent(&self, set: u64) -> bool {
        bits(set).all(|v| self.rows[v] & set == 0)
    }

    /// Number of edges with both ends in `set`.
    pub fn edges_within(&self, set: u64) -> usize {
        bits(set)
            .map(|v| (self.rows[v] & set).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// True if the graph is bipartite.
    pub fn is_bipartite(&self) -> bool {
        let mut colour = vec![u8::MAX; self.order];
        for s in 0..self.order {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in bits(self.rows[v]) {
                    if colour[w] == u8::MAX {
                        colour[w] = colour[v] ^ 1;
                        stack.push(w);
                    } else if colour[w] == colour[v] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(4).complement(), Graph::new(4));
        assert_eq!(Graph::new(3).complement(), Graph::complete(3));
        let p3c = path(3).complement();
        assert_eq!(p3c, Graph::from_edges(3, &[(0, 2)]).unwrap());
        let c7 = cycle(7);
        assert_eq!(c7.complement().complement(), c7);
    }

    #[test]
    fn induced_subgraph_examples() {
        assert_eq!(cycle(6).induced_subgraph(&[0, 1, 2, 3]).unwrap(), path(4));
        assert_eq!(
            Graph::complete(4).induced_subgraph(&[1, 3]).unwrap(),
            Graph::complete(2)
        );
        assert_eq!(cycle(5).induced_subgraph(&[]).unwrap().order(), 0);
        assert!(cycle(5).induced_subgraph(&[5]).is_err());
    }

    #[test]
    fn induced_subgraph_keeps_given_order() {
        let g = path(3);
        let h = g.induced_subgraph(&[2, 0, 1]).unwrap();
        assert!(h.has_edge(0, 2));
        assert!(h.has_edge(1, 2));
        assert!(!h.has_edge(0, 1));
    }

    #[test]
    fn odd_components() {
        let k33 = Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        assert_eq!(k33.odd_component_count(&[0, 1, 2]).unwrap(), 3);
        assert_eq!(cycle(6).odd_component_count(&[]).unwrap(), 0);
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.odd_component_count(&[0]).unwrap(), 3);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(65, &[]).is_err());
    }

    #[test]
    fn degrees_and_edges() {
        let g = cycle(6);
        assert!(g.is_regular(2));
        assert_eq!(g.edge_count(), 6);
        let e: Vec<_> = g.edges().collect();
        assert_eq!(e[0], Edge::new(0, 1));
        assert_eq!(*e.last().unwrap(), Edge::new(4, 5));
        assert!(g.is_bipartite());
        assert!(!cycle(5).is_bipartite());
    }
}
