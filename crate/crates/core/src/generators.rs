//! Constructors for the extremal graph families, the exhaustive labeled-graph
//! stream, and a seeded random graph generator.

use std::fmt;
use std::str::FromStr;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, MAX_ORDER};
use crate::matching::{matching_number, PerfectMatching};

/// Builds the complete multipartite graph with parts of the given sizes,
/// numbered consecutively.
pub fn gen_complete_multipartite(sizes: &[usize]) -> Result<Graph> {
    if sizes.is_empty() {
        return Err(Error::domain("at least one part is required"));
    }
    if sizes.contains(&0) {
        return Err(Error::domain("part sizes must be positive"));
    }
    let order: usize = sizes.iter().sum();
    if order > MAX_ORDER {
        return Err(Error::domain(format!("order {order} exceeds {MAX_ORDER}")));
    }
    let mut part = Vec::with_capacity(order);
    for (p, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat_n(p, s));
    }
    let mut g = Graph::new(order);
    for a in 0..order {
        for b in a + 1..order {
            if part[a] != part[b] {
                g.add_edge(a, b);
            }
        }
    }
    Ok(g)
}

/// `K_{n,n}` on sides `0..n` and `n..2n`, plus `extra` edges inside the
/// second side (absolute vertex indices).
pub fn gen_knn_plus(n: usize, extra: &[(usize, usize)]) -> Result<Graph> {
    if n == 0 || 2 * n > MAX_ORDER {
        return Err(Error::domain(format!("side size {n} out of range")));
    }
    let mut g = Graph::new(2 * n);
    for a in 0..n {
        for b in n..2 * n {
            g.add_edge(a, b);
        }
    }
    for &(a, b) in extra {
        if a < n || b < n || a >= 2 * n || b >= 2 * n || a == b {
            return Err(Error::domain(format!(
                "extra edge {a}-{b} must join two distinct vertices of {n}..{}",
                2 * n - 1
            )));
        }
        if g.has_edge(a, b) {
            return Err(Error::domain(format!("duplicate extra edge {a}-{b}")));
        }
        g.add_edge(a, b);
    }
    Ok(g)
}

/// How the 4-cycle between two matching edges `u_i v_i` and `u_j v_j` is
/// closed: by `u_i u_j, v_i v_j` or by `u_i v_j, v_i u_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    Parallel,
    Cross,
}

/// A choice of [`PairKind`] for every unordered pair of matching edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSignature {
    n: usize,
    kinds: Vec<PairKind>,
}

impl PairSignature {
    /// Every pair set to `kind`.
    pub fn uniform(n: usize, kind: PairKind) -> Self {
        PairSignature {
            n,
            kinds: vec![kind; n * n.saturating_sub(1) / 2],
        }
    }

    /// All pairs cross except the listed ones, which are parallel.
    pub fn with_parallel(n: usize, parallel: &[(usize, usize)]) -> Result<Self> {
        let mut sig = PairSignature::uniform(n, PairKind::Cross);
        for &(i, j) in parallel {
            sig.set(i, j, PairKind::Parallel)?;
        }
        Ok(sig)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> Result<usize> {
        if i == j || i >= self.n || j >= self.n {
            return Err(Error::domain(format!("invalid pair {i},{j} for {} matching edges", self.n)));
        }
        let (i, j) = (i.min(j), i.max(j));
        // pairs ordered (0,1), (0,2), (1,2), (0,3), ...
        Ok(j * (j - 1) / 2 + i)
    }

    pub fn set(&mut self, i: usize, j: usize, kind: PairKind) -> Result<()> {
        let s = self.slot(i, j)?;
        self.kinds[s] = kind;
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> Result<PairKind> {
        Ok(self.kinds[self.slot(i, j)?])
    }
}

/// A graph together with a distinguished perfect matching `u_side[k] v_side[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub m0: PerfectMatching,
    pub u_side: Vec<usize>,
    pub v_side: Vec<usize>,
}

impl LabeledGraph {
    /// Standard labelling `u_k = k`, `v_k = n + k`.
    fn standard(graph: Graph, n: usize) -> Self {
        let m0 = PerfectMatching::from_edges_unchecked((0..n).map(|k| Edge::new(k, n + k)).collect());
        LabeledGraph {
            graph,
            m0,
            u_side: (0..n).collect(),
            v_side: (n..2 * n).collect(),
        }
    }
}

fn pair_edges(g: &mut Graph, n: usize, i: usize, j: usize, kind: PairKind) {
    match kind {
        PairKind::Parallel => {
            g.add_edge(i, j);
            g.add_edge(n + i, n + j);
        }
        PairKind::Cross => {
            g.add_edge(i, n + j);
            g.add_edge(n + i, j);
        }
    }
}

/// Matching edges `u_k v_k` plus, for each pair, exactly the two edges its
/// kind prescribes. Every pair then induces exactly an alternating 4-cycle.
pub fn gen_minimal_from_signature(sig: &PairSignature) -> Result<LabeledGraph> {
    let n = sig.n;
    if 2 * n > MAX_ORDER {
        return Err(Error::domain(format!("{n} matching edges exceed the order limit")));
    }
    let mut g = Graph::new(2 * n);
    for k in 0..n {
        g.add_edge(k, n + k);
    }
    for j in 0..n {
        for i in 0..j {
            pair_edges(&mut g, n, i, j, sig.get(i, j)?);
        }
    }
    Ok(LabeledGraph::standard(g, n))
}

/// The minimal graph with `k` parallel pairs `(2i, 2i + 1)` and every other
/// pair crossed.
pub fn gen_h_k(n: usize, k: usize) -> Result<LabeledGraph> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if k > (n - 1) / 2 {
        return Err(Error::domain(format!("k = {k} exceeds floor((n-1)/2) = {}", (n - 1) / 2)));
    }
    // The u-side must carry exactly the k edges u_{2i} u_{2i+1}. A pair
    // outside that list cannot be parallel, since its u_i u_j edge would be
    // one more u-side edge. A listed pair cannot be crossed, since the extra
    // u_i u_j edge would leave more than a 4-cycle on its four vertices and
    // break minimality. So the signature is fixed.
    let parallel: Vec<(usize, usize)> = (0..k).map(|i| (2 * i, 2 * i + 1)).collect();
    gen_minimal_from_signature(&PairSignature::with_parallel(n, &parallel)?)
}

/// The two structural alternatives of graphs that are 1-extendable but not
/// 2-extendable while having maximum forcing number `n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Non2ExtFamily {
    /// v-side triangle plus isolated vertices, two independent u-side edges.
    Triangle,
    /// Independent v-side apart from the last vertex, which is joined to
    /// `v_i` and whose partner is joined to `v_j`.
    Pendant,
}

impl FromStr for Non2ExtFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" | "1" | "triangle" => Ok(Non2ExtFamily::Triangle),
            "ii" | "2" | "pendant" => Ok(Non2ExtFamily::Pendant),
            _ => Err(Error::domain(format!("unknown case {s:?}, expected i or ii"))),
        }
    }
}

/// Positions refer to matching-edge indices `0..n`; `u_k = k`, `v_k = n + k`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Non2ExtOptions {
    /// Triangle case: v-side positions of the triangle. Default: the last three.
    pub triangle: Option<[usize; 3]>,
    /// Extra u-side edges as position pairs. Default: `(0,1), (2,3)` for the
    /// triangle case; none for the pendant case with `i != j`, `(0, 1)` when
    /// `i == j`.
    pub u_edges: Option<Vec<(usize, usize)>>,
    /// Pendant case: positions `(i, j)` for the edges `v_i v_last`,
    /// `v_j u_last`. Default `(0, 1)`.
    pub partners: Option<(usize, usize)>,
}

fn check_position(p: usize, n: usize) -> Result<()> {
    if p >= n {
        return Err(Error::domain(format!("position {p} out of range for n = {n}")));
    }
    Ok(())
}

fn add_new_edge(g: &mut Graph, a: usize, b: usize) -> Result<()> {
    if a == b {
        return Err(Error::domain(format!("loop at vertex {a}")));
    }
    if g.has_edge(a, b) {
        return Err(Error::domain(format!("edge {a}-{b} is already present")));
    }
    g.add_edge(a, b);
    Ok(())
}

/// Builds a graph realizing one of the two non-2-extendable alternatives
/// with its designated matching. Defaults give the fewest edges.
pub fn gen_non_2_extendable(family: Non2ExtFamily, n: usize, options: &Non2ExtOptions) -> Result<LabeledGraph> {
    if 2 * n > MAX_ORDER {
        return Err(Error::domain(format!("n = {n} exceeds the order limit")));
    }
    let u_mask = (1u64 << n) - 1;
    let labeled = match family {
        Non2ExtFamily::Triangle => {
            if n < 4 {
                return Err(Error::domain("the triangle case needs n >= 4"));
            }
            if options.partners.is_some() {
                return Err(Error::domain("partners only apply to the pendant case"));
            }
            let mut lg = gen_minimal_from_signature(&PairSignature::uniform(n, PairKind::Cross))?;
            let tri = options.triangle.unwrap_or([n - 3, n - 2, n - 1]);
            for &p in &tri {
                check_position(p, n)?;
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(Error::domain("triangle positions must be distinct"));
            }
            for (a, b) in [(0, 1), (1, 2), (0, 2)] {
                add_new_edge(&mut lg.graph, n + tri[a], n + tri[b])?;
            }
            let u_edges = options.u_edges.clone().unwrap_or_else(|| vec![(0, 1), (2, 3)]);
            for (a, b) in u_edges {
                check_position(a, n)?;
                check_position(b, n)?;
                add_new_edge(&mut lg.graph, a, b)?;
            }
            if matching_number(&lg.graph, u_mask) < 2 {
                return Err(Error::domain("the u-side needs two independent edges"));
            }
            lg
        }
        Non2ExtFamily::Pendant => {
            if n < 3 {
                return Err(Error::domain("the pendant case needs n >= 3"));
            }
            if options.triangle.is_some() {
                return Err(Error::domain("a triangle only applies to the triangle case"));
            }
            let last = n - 1;
            let (i, j) = options.partners.unwrap_or((0, 1));
            if i >= last || j >= last {
                return Err(Error::domain(format!("partners must lie in 0..{last}")));
            }
            let mut sig = PairSignature::uniform(n, PairKind::Cross);
            let mut g;
            if i != j {
                // pair (i, last) parallel supplies v_i v_last and u_i u_last;
                // pair (j, last) crossed supplies v_j u_last and u_j v_last
                sig.set(i, last, PairKind::Parallel)?;
                g = gen_minimal_from_signature(&sig)?.graph;
            } else {
                // crossed pair plus v_i v_last closes a triangle with u_last
                g = gen_minimal_from_signature(&sig)?.graph;
                add_new_edge(&mut g, n + i, n + last)?;
            }
            // with i == j the second independent edge must come from the
            // u-side; u_0 u_1 avoids u_last v_last since last >= 2
            let default_u = if i == j { vec![(0, 1)] } else { vec![] };
            for (a, b) in options.u_edges.clone().unwrap_or(default_u) {
                check_position(a, n)?;
                check_position(b, n)?;
                add_new_edge(&mut g, a, b)?;
            }
            if matching_number(&g, u_mask | 1u64 << (n + last)) < 2 {
                return Err(Error::domain("the u-side plus v_last needs two independent edges"));
            }
            LabeledGraph::standard(g, n)
        }
    };
    Ok(labeled)
}

/// Number of vertex pairs of a graph of the given order.
fn pair_count(order: usize) -> usize {
    order * order.saturating_sub(1) / 2
}

/// The labeled graph whose edge set is `mask`, bit `t` standing for the
/// `t`-th pair in graph6 order `(0,1), (0,2), (1,2), (0,3), ...`.
pub fn labeled_graph_from_mask(order: usize, mask: u64) -> Graph {
    let mut g = Graph::new(order);
    let mut t = 0;
    for j in 1..order {
        for i in 0..j {
            if mask >> t & 1 == 1 {
                g.add_edge(i, j);
            }
            t += 1;
        }
    }
    g
}

/// Largest order enumerated without a filter.
pub const MAX_UNFILTERED_ORDER: usize = 6;
/// Largest order enumerated with a filter.
pub const MAX_FILTERED_ORDER: usize = 8;

/// Every labeled graph of the given order, by ascending edge mask.
pub fn enumerate_labeled_graphs(order: usize) -> Result<impl Iterator<Item = Graph>> {
    if order > MAX_UNFILTERED_ORDER {
        return Err(Error::domain(format!(
            "refusing to enumerate all graphs of order {order} without a filter (limit {MAX_UNFILTERED_ORDER})"
        )));
    }
    let total = 1u64 << pair_count(order);
    Ok((0..total).map(move |m| labeled_graph_from_mask(order, m)))
}

/// Labeled graphs of the given order accepted by `keep`, by ascending edge mask.
pub fn enumerate_labeled_graphs_filtered<F>(order: usize, keep: F) -> Result<impl Iterator<Item = Graph>>
where
    F: Fn(&Graph) -> bool,
{
    if order > MAX_FILTERED_ORDER {
        return Err(Error::domain(format!(
            "refusing to enumerate graphs of order {order} (limit {MAX_FILTERED_ORDER})"
        )));
    }
    let total = 1u64 << pair_count(order);
    Ok((0..total)
        .map(move |m| labeled_graph_from_mask(order, m))
        .filter(move |g| keep(g)))
}

/// A rational probability `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probability {
    num: u64,
    den: u64,
}

impl Probability {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::domain(format!("{num}/{den} is not a probability")));
        }
        Ok(Probability { num, den })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// True with probability `num / den` for a uniform 64-bit draw.
    fn accepts(&self, draw: u64) -> bool {
        (draw as u128) * (self.den as u128) < (self.num as u128) << 64
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Probability {
    type Err = Error;

    /// Accepts `a/b` or a decimal such as `0.25`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::domain(format!("invalid probability {s:?}"));
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let num = a.trim().parse().map_err(|_| bad())?;
            let den = b.trim().parse().map_err(|_| bad())?;
            return Probability::new(num, den);
        }
        let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let whole: u64 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad())? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = whole
            .checked_mul(den)
            .and_then(|w| w.checked_add(frac))
            .ok_or_else(bad)?;
        Probability::new(num, den)
    }
}

/// Random graph: a SplitMix64 stream seeded with `seed` draws one 64-bit
/// word per vertex pair in row-major order `(0,1), (0,2), ..., (1,2), ...`,
/// and the pair becomes an edge when `draw * den < num * 2^64`.
pub fn gen_random(order: usize, p: Probability, seed: u64) -> Result<Graph> {
    if order > MAX_ORDER {
        return Err(Error::domain(format!("order {order} exceeds {MAX_ORDER}")));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut g = Graph::new(order);
    for a in 0..order {
        for b in a + 1..order {
            if p.accepts(rng.next_u64()) {
                g.add_edge(a, b);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::encode_graph6;

    #[test]
    fn multipartite_examples() {
        assert_eq!(gen_complete_multipartite(&[2, 2, 2]).unwrap().edge_count(), 12);
        assert_eq!(gen_complete_multipartite(&[3, 3]).unwrap().edge_count(), 9);
        assert_eq!(gen_complete_multipartite(&[1, 1, 1, 1]).unwrap(), Graph::complete(4));
        assert!(gen_complete_multipartite(&[]).is_err());
        assert!(gen_complete_multipartite(&[2, 0]).is_err());
    }

    #[test]
    fn knn_plus_examples() {
        assert_eq!(gen_knn_plus(3, &[]).unwrap(), gen_complete_multipartite(&[3, 3]).unwrap());
        assert_eq!(gen_knn_plus(2, &[(2, 3)]).unwrap().edge_count(), 5);
        assert!(gen_knn_plus(3, &[(0, 4)]).is_err());
        assert!(gen_knn_plus(3, &[(3, 4), (4, 3)]).is_err());
    }

    #[test]
    fn signature_slots_cover_every_pair_once() {
        let n = 5;
        let mut seen = vec![false; n * (n - 1) / 2];
        let sig = PairSignature::uniform(n, PairKind::Cross);
        for j in 0..n {
            for i in 0..j {
                let s = sig.slot(i, j).unwrap();
                assert!(!seen[s]);
                seen[s] = true;
                assert_eq!(sig.slot(j, i).unwrap(), s);
            }
        }
        assert!(sig.slot(2, 2).is_err());
    }

    #[test]
    fn all_cross_signature_is_complete_bipartite() {
        let lg = gen_minimal_from_signature(&PairSignature::uniform(3, PairKind::Cross)).unwrap();
        assert_eq!(lg.graph, gen_knn_plus(3, &[]).unwrap());
        assert_eq!(lg.m0.to_string(), "0-3 1-4 2-5");
    }

    #[test]
    fn h_k_shapes() {
        let h = gen_h_k(3, 1).unwrap().graph;
        assert_eq!((h.order(), h.edge_count()), (6, 9));
        assert!(h.is_regular(3));
        assert!(gen_h_k(6, 2).unwrap().graph.is_regular(6));
        assert!(gen_h_k(4, 2).is_err());
        assert!(gen_h_k(0, 0).is_err());
    }

    #[test]
    fn non_2_extendable_defaults() {
        let a = gen_non_2_extendable(Non2ExtFamily::Triangle, 4, &Non2ExtOptions::default()).unwrap();
        // K_{4,4} plus a v-side triangle and two u-side edges
        assert_eq!(a.graph.edge_count(), 16 + 3 + 2);
        let c = gen_non_2_extendable(Non2ExtFamily::Pendant, 3, &Non2ExtOptions::default()).unwrap();
        assert!(c.graph.is_regular(3));
        let b = gen_non_2_extendable(
            Non2ExtFamily::Pendant,
            3,
            &Non2ExtOptions {
                partners: Some((0, 0)),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(b.graph.edge_count(), 9 + 2);
        assert!(gen_non_2_extendable(Non2ExtFamily::Triangle, 3, &Non2ExtOptions::default()).is_err());
        let bad = Non2ExtOptions {
            u_edges: Some(vec![(0, 1), (1, 2)]),
            ..Default::default()
        };
        assert!(gen_non_2_extendable(Non2ExtFamily::Triangle, 4, &bad).is_err());
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_labeled_graphs(3).unwrap().count(), 8);
        assert_eq!(enumerate_labeled_graphs(4).unwrap().count(), 64);
        assert!(enumerate_labeled_graphs(7).is_err());
        let first: Vec<String> = enumerate_labeled_graphs(3).unwrap().take(3).map(|g| encode_graph6(&g).unwrap()).collect();
        assert_eq!(first, ["B?", "B_", "BO"]);
        let with_edges = enumerate_labeled_graphs_filtered(4, |g| g.edge_count() == 6).unwrap().count();
        assert_eq!(with_edges, 1);
    }

    #[test]
    fn probability_parsing() {
        assert_eq!("1/2".parse::<Probability>().unwrap(), Probability::new(1, 2).unwrap());
        let p: Probability = "0.25".parse().unwrap();
        assert_eq!((p.num(), p.den()), (25, 100));
        assert!("3/2".parse::<Probability>().is_err());
        assert!("x".parse::<Probability>().is_err());
        assert_eq!("1".parse::<Probability>().unwrap(), Probability::new(1, 1).unwrap());
    }

    #[test]
    fn random_extremes_and_determinism() {
        let zero = Probability::new(0, 1).unwrap();
        let one = Probability::new(1, 1).unwrap();
        let half = Probability::new(1, 2).unwrap();
        assert_eq!(gen_random(6, zero, 7).unwrap().edge_count(), 0);
        assert_eq!(gen_random(6, one, 7).unwrap(), Graph::complete(6));
        assert_eq!(gen_random(8, half, 42).unwrap(), gen_random(8, half, 42).unwrap());
        assert_ne!(gen_random(8, half, 42).unwrap(), gen_random(8, half, 43).unwrap());
    }
}
