//! Polynomial recognizers for graphs whose forcing numbers reach `n - 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forcing::forcing_profile_serial;
use crate::graph::{bits, Edge, Graph};
use crate::matching::{
    avoid_matching_edge, enumerate_perfect_matchings_capped, find_perfect_matching,
    has_perfect_matching, PerfectMatching,
};
use crate::Limits;

/// Partite sets of a complete multipartite graph, each sorted, ordered by
/// smallest vertex. `None` if the graph is not complete multipartite.
pub fn is_complete_multipartite(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let comp = g.complement();
    let mut parts = Vec::new();
    for c in comp.components(comp.vertex_mask()) {
        // each complement component must be a clique of the complement,
        // i.e. an independent set of g
        if !g.is_independent(c) {
            return None;
        }
        parts.push(bits(c).collect::<Vec<_>>());
    }
    Some(parts)
}

/// Witness that a graph is `K_{n,n}` plus edges inside one side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnnPlus {
    /// Independent side.
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    /// Edges added inside `b`.
    pub extra_edges: Vec<Edge>,
}

/// Finds an independent set `A` of size `n` joined to every vertex of
/// `B = V - A`. Any such `A` equals `V - N(a)` for each of its members, so
/// one candidate per vertex is enough; the first vertex that yields a valid
/// side wins.
pub fn is_knn_plus(g: &Graph) -> Result<Option<KnnPlus>> {
    let order = g.order();
    if order % 2 == 1 {
        return Err(Error::domain(format!("K_(n,n)+ recognition needs even order, got {order}")));
    }
    let n = order / 2;
    let all = g.vertex_mask();
    if order == 0 {
        return Ok(Some(KnnPlus {
            a: vec![],
            b: vec![],
            extra_edges: vec![],
        }));
    }
    for v in 0..order {
        if g.degree(v) != n {
            continue;
        }
        let a = all & !g.neighbors(v);
        let b = all & !a;
        if a.count_ones() as usize != n || !g.is_independent(a) {
            continue;
        }
        if bits(a).all(|x| g.neighbors(x) == b) {
            let extra_edges = g
                .edges()
                .filter(|e| b >> e.u & 1 == 1 && b >> e.v & 1 == 1)
                .collect();
            return Ok(Some(KnnPlus {
                a: bits(a).collect(),
                b: bits(b).collect(),
                extra_edges,
            }));
        }
    }
    Ok(None)
}

/// Result of the pairwise alternating-cycle test on a perfect matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairwiseCheck {
    pub holds: bool,
    /// First pair of matching edges (in canonical order) whose four vertices
    /// carry no alternating cycle.
    pub failing_pair: Option<(Edge, Edge)>,
}

/// True if the two matching edges span an alternating 4-cycle, using either
/// the parallel pair `{ac, bd}` or the crossed pair `{ad, bc}`.
pub(crate) fn pair_alternates(g: &Graph, e: Edge, f: Edge) -> bool {
    (g.has_edge(e.u, f.u) && g.has_edge(e.v, f.v)) || (g.has_edge(e.u, f.v) && g.has_edge(e.v, f.u))
}

pub(crate) fn first_failing_pair(g: &Graph, m: &PerfectMatching) -> Option<(Edge, Edge)> {
    let edges = m.edges();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if !pair_alternates(g, edges[i], edges[j]) {
                return Some((edges[i], edges[j]));
            }
        }
    }
    None
}

/// Every pair of matching edges induces a subgraph with an alternating
/// cycle; equivalent to `f(G, M) = n - 1`.
pub fn pairwise_alternating_condition(g: &Graph, m: &PerfectMatching) -> Result<PairwiseCheck> {
    m.check_in(g)?;
    let failing_pair = first_failing_pair(g, m);
    Ok(PairwiseCheck {
        holds: failing_pair.is_none(),
        failing_pair,
    })
}

/// Every pair of matching edges induces exactly an alternating 4-cycle.
pub(crate) fn pairs_are_exact_four_cycles(g: &Graph, m: &PerfectMatching) -> bool {
    let edges = m.edges();
    (0..edges.len()).all(|i| {
        (i + 1..edges.len()).all(|j| {
            let span = edges[i].mask() | edges[j].mask();
            pair_alternates(g, edges[i], edges[j]) && g.edges_within(span) == 4
        })
    })
}

/// The first perfect matching (canonical order) with forcing number `n - 1`.
pub fn has_max_forcing_n_minus_1(g: &Graph) -> Result<Option<PerfectMatching>> {
    has_max_forcing_n_minus_1_with(g, &Limits::default())
}

pub fn has_max_forcing_n_minus_1_with(g: &Graph, limits: &Limits) -> Result<Option<PerfectMatching>> {
    if !has_perfect_matching(g) {
        return Err(Error::NoPerfectMatching);
    }
    Ok(enumerate_perfect_matchings_capped(g, limits.matching_cap)?
        .into_iter()
        .find(|m| first_failing_pair(g, m).is_none()))
}

/// Minimal graphs with `F(G) = n - 1`: some perfect matching has every pair
/// of its edges inducing exactly an alternating 4-cycle. Returns `false`
/// when no such matching exists (including when `F(G) < n - 1`).
pub fn is_minimal_max_forcing(g: &Graph) -> Result<bool> {
    is_minimal_max_forcing_with(g, &Limits::default())
}

pub fn is_minimal_max_forcing_with(g: &Graph, limits: &Limits) -> Result<bool> {
    if !has_perfect_matching(g) {
        return Ok(false);
    }
    Ok(enumerate_perfect_matchings_capped(g, limits.matching_cap)?
        .iter()
        .any(|m| pairs_are_exact_four_cycles(g, m)))
}

/// The stricter reading of minimality: `F(G) = n - 1` and *every* matching
/// with forcing number `n - 1` has the exact 4-cycle property.
pub fn is_minimal_max_forcing_every(g: &Graph, limits: &Limits) -> Result<bool> {
    if !has_perfect_matching(g) {
        return Ok(false);
    }
    let top: Vec<PerfectMatching> = enumerate_perfect_matchings_capped(g, limits.matching_cap)?
        .into_iter()
        .filter(|m| first_failing_pair(g, m).is_none())
        .collect();
    Ok(!top.is_empty() && top.iter().all(|m| pairs_are_exact_four_cycles(g, m)))
}

/// Minimality straight from the definition: `F(G) = n - 1` and deleting any
/// edge leaves a graph whose maximum forcing number is below `n - 1` (or
/// that has no perfect matching). Uses exact forcing numbers throughout.
pub fn is_minimal_by_definition(g: &Graph, limits: &Limits) -> Result<bool> {
    let profile = match forcing_profile_serial(g, limits) {
        Ok(p) => p,
        Err(Error::NoPerfectMatching) => return Ok(false),
        Err(e) => return Err(e),
    };
    if !profile.max_is_top() {
        return Ok(false);
    }
    for e in g.edges() {
        let mut h = g.clone();
        h.remove_edge(e.u, e.v);
        match forcing_profile_serial(&h, limits) {
            Ok(p) if p.max_is_top() => return Ok(false),
            Ok(_) | Err(Error::NoPerfectMatching) => {}
            Err(err) => return Err(err),
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassificationTag {
    CompleteMultipartite,
    KnnPlus,
    Neither,
}

impl ClassificationTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClassificationTag::CompleteMultipartite => "CompleteMultipartite",
            ClassificationTag::KnnPlus => "KnnPlus",
            ClassificationTag::Neither => "Neither",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub tag: ClassificationTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub extra_edges: Vec<Edge>,
    pub predicted_min_forcing_is_max: bool,
}

/// Structural prediction of `f(G) = n - 1`: complete multipartite with every
/// part of size at most `n`, or `K_{n,n}` plus edges inside one side.
/// Complete multipartite wins when both recognizers fire.
pub fn classify_min_forcing(g: &Graph) -> Result<ClassificationResult> {
    let order = g.order();
    if order % 2 == 1 {
        return Err(Error::domain(format!("classification needs even order, got {order}")));
    }
    if !has_perfect_matching(g) {
        return Err(Error::NoPerfectMatching);
    }
    let n = order / 2;
    if let Some(parts) = is_complete_multipartite(g) {
        if parts.iter().all(|p| p.len() <= n) {
            return Ok(ClassificationResult {
                tag: ClassificationTag::CompleteMultipartite,
                partition: Some(parts),
                bipartition: None,
                extra_edges: vec![],
                predicted_min_forcing_is_max: true,
            });
        }
    }
    if let Some(k) = is_knn_plus(g)? {
        return Ok(ClassificationResult {
            tag: ClassificationTag::KnnPlus,
            partition: None,
            bipartition: Some((k.a, k.b)),
            extra_edges: k.extra_edges,
            predicted_min_forcing_is_max: true,
        });
    }
    Ok(ClassificationResult {
        tag: ClassificationTag::Neither,
        partition: None,
        bipartition: None,
        extra_edges: vec![],
        predicted_min_forcing_is_max: false,
    })
}

/// Independence number, as the clique number of the complement.
pub fn max_independent_set_size(g: &Graph) -> usize {
    let comp = g.complement();
    let mut best = 0;
    clique_search(&comp, 0, comp.vertex_mask(), &mut best);
    best
}

fn clique_search(g: &Graph, size: usize, candidates: u64, best: &mut usize) {
    if candidates == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + candidates.count_ones() as usize <= *best {
        return;
    }
    let mut cand = candidates;
    while cand != 0 {
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        clique_search(g, size + 1, cand & g.neighbors(v), best);
    }
    *best = (*best).max(size);
}

/// The lowest edge lying in every perfect matching, if any.
pub fn has_fixed_double_bond(g: &Graph) -> Result<Option<Edge>> {
    let m = find_perfect_matching(g).ok_or(Error::NoPerfectMatching)?;
    let mate = m.mate(g.order());
    // a fixed edge lies in every perfect matching, in particular in m
    Ok(m
        .edges()
        .iter()
        .copied()
        .find(|e| avoid_matching_edge(g, g.vertex_mask(), &mate, e.u, e.v).is_none()))
}
