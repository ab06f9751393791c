//! Matching extendability: factor-critical, bicritical and brick tests,
//! l-extendability, deficiency witnesses, and the structure of graphs with
//! `F(G) = n - 1` that are 1-extendable but not 2-extendable.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::connectivity::vertex_connectivity;
use crate::error::{Error, Result};
use crate::graph::{bits, next_combination, Edge, Graph};
use crate::matching::{
    enumerate_perfect_matchings_capped, has_perfect_matching, has_perfect_matching_on,
    matching_number, maximum_matching, PerfectMatching, UNMATCHED,
};
use crate::structure::{first_failing_pair, has_max_forcing_n_minus_1_with, is_knn_plus};
use crate::Limits;

/// Factor-critical: odd order and `G - v` has a perfect matching for every v.
pub fn is_factor_critical(g: &Graph) -> bool {
    factor_critical_on(g, g.vertex_mask())
}

pub(crate) fn factor_critical_on(g: &Graph, alive: u64) -> bool {
    alive.count_ones() % 2 == 1 && bits(alive).all(|v| has_perfect_matching_on(g, alive & !(1u64 << v)))
}

/// Bicritical: at least one edge and `G - u - v` has a perfect matching for
/// every pair of distinct vertices.
pub fn is_bicritical(g: &Graph) -> bool {
    if g.edge_count() == 0 {
        return false;
    }
    let all = g.vertex_mask();
    (0..g.order()).all(|u| {
        (u + 1..g.order()).all(|v| has_perfect_matching_on(g, all & !(1u64 << u | 1u64 << v)))
    })
}

/// A 3-connected bicritical graph.
pub fn is_brick(g: &Graph) -> bool {
    is_bicritical(g) && vertex_connectivity(g) >= 3
}

fn check_extension_domain(g: &Graph, l: usize) -> Result<()> {
    if g.order() < 2 * l + 2 {
        return Err(Error::domain(format!(
            "{l}-extendability needs order at least {}, got {}",
            2 * l + 2,
            g.order()
        )));
    }
    if !g.is_connected() {
        return Err(Error::domain("extendability is only defined for connected graphs"));
    }
    Ok(())
}

/// Calls `visit` with the vertex mask of every matching of size `l`, in
/// lexicographic order of edge lists. Stops early when `visit` returns false.
fn for_each_l_matching(g: &Graph, l: usize, visit: &mut dyn FnMut(u64) -> bool) -> bool {
    let edges: Vec<Edge> = g.edges().collect();
    fn rec(edges: &[Edge], from: usize, left: usize, used: u64, visit: &mut dyn FnMut(u64) -> bool) -> bool {
        if left == 0 {
            return visit(used);
        }
        for i in from..edges.len() {
            let m = edges[i].mask();
            if used & m == 0 && !rec(edges, i + 1, left - 1, used | m, visit) {
                return false;
            }
        }
        true
    }
    rec(&edges, 0, l, 0, visit)
}

/// True iff `g` has a perfect matching and every matching of size `l`
/// extends to one. Requires a connected graph of order at least `2l + 2`.
pub fn is_l_extendable(g: &Graph, l: usize) -> Result<bool> {
    check_extension_domain(g, l)?;
    if !has_perfect_matching(g) {
        return Ok(false);
    }
    let all = g.vertex_mask();
    Ok(for_each_l_matching(g, l, &mut |used| has_perfect_matching_on(g, all & !used)))
}

/// A component of `G - S` in a deficiency witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessComponent {
    pub vertices: Vec<usize>,
    pub factor_critical: bool,
}

/// A set `S` showing that a graph is not l-extendable: `G[S]` holds `l`
/// independent edges, every component of `G - S` is factor-critical, and
/// there are exactly `|S| - 2l + 2` of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficiencyWitness {
    pub s: Vec<usize>,
    pub independent_edges: Vec<Edge>,
    pub components: Vec<WitnessComponent>,
    pub l: usize,
}

impl DeficiencyWitness {
    /// Re-checks every defining property against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let s_mask = self.s.iter().fold(0u64, |m, &v| m | 1u64 << v);
        if self.independent_edges.len() != self.l {
            return Err(Error::contract("wrong number of independent edges"));
        }
        let mut used = 0u64;
        for e in &self.independent_edges {
            if !g.has_edge(e.u, e.v) || e.mask() & !s_mask != 0 || e.mask() & used != 0 {
                return Err(Error::contract(format!("edge {e} is not an independent edge inside S")));
            }
            used |= e.mask();
        }
        let comps = g.components(g.vertex_mask() & !s_mask);
        if comps.len() != self.components.len() {
            return Err(Error::contract("component list does not match G - S"));
        }
        for (c, listed) in comps.iter().zip(&self.components) {
            if bits(*c).collect::<Vec<_>>() != listed.vertices || !listed.factor_critical {
                return Err(Error::contract("component is missing or not factor-critical"));
            }
            if !factor_critical_on(g, *c) {
                return Err(Error::contract("component is not factor-critical"));
            }
        }
        if comps.len() + 2 * self.l != self.s.len() + 2 {
            return Err(Error::contract("odd component count differs from |S| - 2l + 2"));
        }
        Ok(())
    }
}

/// Searches sets `S` by size, then lexicographically, for a deficiency
/// witness. Returns `None` exactly when `g` is l-extendable, given that `g`
/// is (l-1)-extendable (checked, domain error otherwise).
pub fn deficiency_witness(g: &Graph, l: usize) -> Result<Option<DeficiencyWitness>> {
    if l == 0 {
        return Err(Error::domain("deficiency witnesses need l >= 1"));
    }
    check_extension_domain(g, l)?;
    if !is_l_extendable(g, l - 1)? {
        return Err(Error::domain(format!("graph is not {}-extendable", l - 1)));
    }
    let order = g.order();
    let all = g.vertex_mask();
    // factor-criticality of each component, keyed by its vertex mask
    let mut critical: HashMap<u64, bool> = HashMap::new();
    for size in 2 * l..=order {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let s_mask = combo.iter().fold(0u64, |m, &v| m | 1u64 << v);
            let comps = g.components(all & !s_mask);
            if comps.len() + 2 * l == size + 2
                && matching_number(g, s_mask) >= l
                && comps
                    .iter()
                    .all(|&c| *critical.entry(c).or_insert_with(|| factor_critical_on(g, c)))
            {
                return Ok(Some(DeficiencyWitness {
                    s: combo.clone(),
                    independent_edges: independent_edges(g, s_mask, l),
                    components: comps
                        .iter()
                        .map(|&c| WitnessComponent {
                            vertices: bits(c).collect(),
                            factor_critical: true,
                        })
                        .collect(),
                    l,
                }));
            }
            if !next_combination(&mut combo, order) {
                break;
            }
        }
    }
    Ok(None)
}

fn independent_edges(g: &Graph, within: u64, l: usize) -> Vec<Edge> {
    let mate = maximum_matching(g, within);
    bits(within)
        .filter(|&v| mate[v] != UNMATCHED && mate[v] > v)
        .map(|v| Edge::new(v, mate[v]))
        .take(l)
        .collect()
}

/// Which structural alternative explains the failure of 2-extendability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Non2ExtCase {
    /// The v-side induces one triangle plus isolated vertices and the
    /// u-side has two independent edges.
    #[serde(rename = "i")]
    Triangle,
    /// All v-side vertices but the last are independent, the u-side plus the
    /// last v-vertex has two independent edges, and the last pair is joined
    /// to the rest through edges `v_i v_last` and `v_j u_last`.
    #[serde(rename = "ii")]
    Pendant,
}

impl Non2ExtCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            Non2ExtCase::Triangle => "i",
            Non2ExtCase::Pendant => "ii",
        }
    }
}

/// A labeled perfect matching `{u[k] v[k]}` realizing one of the cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Non2ExtStructure {
    pub case: Non2ExtCase,
    pub matching: PerfectMatching,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    /// Case (ii) only: positions `i`, `j` with `v[i] v[last]` and
    /// `v[j] u[last]` edges. Lowest such positions are reported.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partners: Option<[usize; 2]>,
}

fn triangle_plus_isolated(g: &Graph, side: u64) -> Option<u64> {
    if g.edges_within(side) != 3 {
        return None;
    }
    let touched = bits(side)
        .filter(|&x| g.neighbors(x) & side != 0)
        .fold(0u64, |m, x| m | 1u64 << x);
    let triangle = touched.count_ones() == 3 && bits(touched).all(|x| (g.neighbors(x) & side).count_ones() == 2);
    triangle.then_some(touched)
}

pub(crate) fn orient(m: &PerfectMatching, flips: u64) -> (Vec<usize>, Vec<usize>) {
    m.edges()
        .iter()
        .enumerate()
        .map(|(i, e)| if flips >> i & 1 == 1 { (e.v, e.u) } else { (e.u, e.v) })
        .unzip()
}

pub(crate) fn triangle_case(g: &Graph, m: &PerfectMatching) -> Option<Non2ExtStructure> {
    let n = m.len();
    if n < 4 {
        return None;
    }
    for flips in 0..1u64 << n {
        let (u, v) = orient(m, flips);
        let v_mask = v.iter().fold(0u64, |acc, &x| acc | 1u64 << x);
        let u_mask = u.iter().fold(0u64, |acc, &x| acc | 1u64 << x);
        let Some(triangle) = triangle_plus_isolated(g, v_mask) else {
            continue;
        };
        if matching_number(g, u_mask) < 2 {
            continue;
        }
        // isolated pairs first, triangle pairs last
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&k| (triangle >> v[k] & 1, k));
        return Some(Non2ExtStructure {
            case: Non2ExtCase::Triangle,
            matching: m.clone(),
            u: order.iter().map(|&k| u[k]).collect(),
            v: order.iter().map(|&k| v[k]).collect(),
            partners: None,
        });
    }
    None
}

pub(crate) fn pendant_case(g: &Graph, m: &PerfectMatching) -> Option<Non2ExtStructure> {
    let n = m.len();
    for special in 0..n {
        for flips in 0..1u64 << n {
            let (u, v) = orient(m, flips);
            let rest: Vec<usize> = (0..n).filter(|&k| k != special).collect();
            let v_rest = rest.iter().fold(0u64, |acc, &k| acc | 1u64 << v[k]);
            if !g.is_independent(v_rest) {
                continue;
            }
            let s_mask = u.iter().fold(1u64 << v[special], |acc, &x| acc | 1u64 << x);
            if matching_number(g, s_mask) < 2 {
                continue;
            }
            let (us, vs) = (u[special], v[special]);
            let i = rest.iter().position(|&k| g.has_edge(v[k], vs));
            let j = rest.iter().position(|&k| g.has_edge(v[k], us));
            let (Some(i), Some(j)) = (i, j) else {
                continue;
            };
            let order: Vec<usize> = rest.iter().copied().chain([special]).collect();
            return Some(Non2ExtStructure {
                case: Non2ExtCase::Pendant,
                matching: m.clone(),
                u: order.iter().map(|&k| u[k]).collect(),
                v: order.iter().map(|&k| v[k]).collect(),
                partners: Some([i, j]),
            });
        }
    }
    None
}

/// For a graph with `F(G) = n - 1`, `n >= 3`, outside the `K_{n,n}^+`
/// family: a labeled matching with forcing number `n - 1` that shows why the
/// graph is not 2-extendable, or `None` if it is 2-extendable.
pub fn non_2_extendable_structure(g: &Graph) -> Result<Option<Non2ExtStructure>> {
    non_2_extendable_structure_with(g, &Limits::default())
}

pub fn non_2_extendable_structure_with(g: &Graph, limits: &Limits) -> Result<Option<Non2ExtStructure>> {
    let order = g.order();
    if order % 2 == 1 || order < 6 {
        return Err(Error::domain(format!("needs even order at least 6, got {order}")));
    }
    if has_max_forcing_n_minus_1_with(g, limits)?.is_none() {
        return Err(Error::domain("maximum forcing number is below n - 1"));
    }
    if is_knn_plus(g)?.is_some() {
        return Err(Error::domain("graph belongs to the K_(n,n)+ family"));
    }
    let top: Vec<PerfectMatching> = enumerate_perfect_matchings_capped(g, limits.matching_cap)?
        .into_iter()
        .filter(|m| first_failing_pair(g, m).is_none())
        .collect();
    for m in &top {
        if let Some(found) = triangle_case(g, m).or_else(|| pendant_case(g, m)) {
            return Ok(Some(found));
        }
    }
    Ok(None)
}
