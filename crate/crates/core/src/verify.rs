//! Corpus verification harness. Each block checks one structural claim on
//! every applicable corpus graph; results are merged in corpus order so the
//! report does not depend on the worker count.

use std::cell::OnceCell;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::connectivity::vertex_connectivity;
use crate::error::{Error, Result};
use crate::extend::{
    deficiency_witness, is_bicritical, is_brick, is_l_extendable, non_2_extendable_structure_with, orient,
    triangle_case,
};
use crate::forcing::{forcing_number_with, forcing_profile_serial, SpectrumReport};
use crate::generators::{
    enumerate_labeled_graphs, gen_complete_multipartite, gen_h_k, gen_knn_plus, gen_minimal_from_signature,
    gen_non_2_extendable, gen_random, labeled_graph_from_mask, Non2ExtFamily, Non2ExtOptions, PairKind,
    PairSignature, Probability,
};
use crate::graph::{bits, Edge, Graph};
use crate::io::{encode_graph6, read_graph6_corpus};
use crate::matching::{has_perfect_matching, matching_number, PerfectMatching};
use crate::report::REPORT_VERSION;
use crate::structure::{
    classify_min_forcing, first_failing_pair, has_fixed_double_bond, is_complete_multipartite, is_knn_plus,
    is_minimal_by_definition, is_minimal_max_forcing_every, is_minimal_max_forcing_with, max_independent_set_size,
    pairs_are_exact_four_cycles,
};
use crate::switch::{verify_switch_bound, ContinuityCheck, SwitchGraph};
use crate::Limits;

/// Largest order for which blocks enumerate vertex subsets exhaustively.
const SUBSET_ORDER_LIMIT: usize = 12;
/// Counterexamples kept per block.
const COUNTEREXAMPLE_CAP: usize = 20;

/// A named list of graphs.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub id: String,
    pub graphs: Vec<Graph>,
}

/// Edge probabilities cycled through by the random corpus.
const RANDOM_PROBABILITIES: [(u64, u64); 4] = [(1, 2), (2, 3), (3, 4), (7, 8)];

impl Corpus {
    /// All labeled graphs of the given order (at most 6).
    pub fn exhaustive(order: usize) -> Result<Corpus> {
        Ok(Corpus {
            id: format!("exhaustive-{order}"),
            graphs: enumerate_labeled_graphs(order)?.collect(),
        })
    }

    /// Every generator family up to order 10.
    pub fn families() -> Corpus {
        Corpus {
            id: "families-10".into(),
            graphs: family_graphs(10),
        }
    }

    /// `count` random graphs of the given order, seeds `0..count`, edge
    /// probability cycling through 1/2, 2/3, 3/4, 7/8.
    pub fn random(order: usize, count: u64) -> Result<Corpus> {
        let graphs = (0..count)
            .map(|seed| {
                let (num, den) = RANDOM_PROBABILITIES[(seed % 4) as usize];
                gen_random(order, Probability::new(num, den)?, seed)
            })
            .collect::<Result<_>>()?;
        Ok(Corpus {
            id: format!("random-{order}:{count}"),
            graphs,
        })
    }

    pub fn from_graph6(id: &str, text: &str) -> Result<Corpus> {
        Ok(Corpus {
            id: id.to_string(),
            graphs: read_graph6_corpus(text)?,
        })
    }

    /// Built-in corpora: `exhaustive-N` (N <= 6), `families-10`,
    /// `random-8` (10 000 graphs) and `random-8:COUNT`.
    pub fn builtin(name: &str) -> Option<Result<Corpus>> {
        if let Some(order) = name.strip_prefix("exhaustive-") {
            return Some(order.parse().map_err(|_| bad_corpus(name)).and_then(Corpus::exhaustive));
        }
        if name == "families-10" {
            return Some(Ok(Corpus::families()));
        }
        if let Some(rest) = name.strip_prefix("random-") {
            let (order, count) = rest.split_once(':').unwrap_or((rest, "10000"));
            let parsed = order.parse::<usize>().ok().zip(count.parse::<u64>().ok());
            return Some(match parsed {
                Some((order, count)) if order <= 16 => Corpus::random(order, count),
                _ => Err(bad_corpus(name)),
            });
        }
        None
    }
}

fn bad_corpus(name: &str) -> Error {
    Error::domain(format!("unknown built-in corpus {name:?}"))
}

/// Integer partitions of `total` in non-increasing order.
fn partitions(total: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if total == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=max_part.min(total)).rev() {
        prefix.push(part);
        partitions(total - part, part, prefix, out);
        prefix.pop();
    }
}

/// Graphs from every generator family with at most `max_order` vertices.
pub fn family_graphs(max_order: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    let max_n = max_order / 2;
    for total in (2..=max_order).step_by(2) {
        let mut parts = Vec::new();
        partitions(total, total, &mut vec![], &mut parts);
        for sizes in parts {
            out.push(gen_complete_multipartite(&sizes).expect("valid part sizes"));
        }
    }
    for n in 1..=max_n {
        let b_pairs: Vec<(usize, usize)> = (n..2 * n)
            .flat_map(|a| (a + 1..2 * n).map(move |b| (a, b)))
            .collect();
        for mask in 0u64..1 << b_pairs.len() {
            let extra: Vec<_> = bits(mask).map(|i| b_pairs[i]).collect();
            out.push(gen_knn_plus(n, &extra).expect("extra edges inside side B"));
        }
    }
    for n in 1..=max_n {
        for k in 0..=(n - 1) / 2 {
            out.push(gen_h_k(n, k).expect("k in range").graph);
        }
    }
    for n in 2..=max_n {
        let pairs = n * (n - 1) / 2;
        for mask in 0u64..1 << pairs {
            let mut sig = PairSignature::uniform(n, PairKind::Cross);
            let mut t = 0;
            for j in 0..n {
                for i in 0..j {
                    if mask >> t & 1 == 1 {
                        sig.set(i, j, PairKind::Parallel).expect("pair in range");
                    }
                    t += 1;
                }
            }
            out.push(gen_minimal_from_signature(&sig).expect("valid signature").graph);
        }
    }
    for (family, n, opts) in non_2_extendable_variants(max_n) {
        out.push(gen_non_2_extendable(family, n, &opts).expect("valid options").graph);
    }
    out
}

fn non_2_extendable_variants(max_n: usize) -> Vec<(Non2ExtFamily, usize, Non2ExtOptions)> {
    let mut out = Vec::new();
    for n in 4..=max_n {
        out.push((Non2ExtFamily::Triangle, n, Non2ExtOptions::default()));
        out.push((
            Non2ExtFamily::Triangle,
            n,
            Non2ExtOptions {
                triangle: Some([0, 1, 2]),
                u_edges: Some(vec![(0, 3), (1, 2), (2, 3)]),
                partners: None,
            },
        ));
    }
    for n in 3..=max_n {
        let last = n - 1;
        for i in 0..last {
            for j in 0..last {
                out.push((
                    Non2ExtFamily::Pendant,
                    n,
                    Non2ExtOptions {
                        partners: Some((i, j)),
                        ..Default::default()
                    },
                ));
            }
        }
        out.push((
            Non2ExtFamily::Pendant,
            n,
            Non2ExtOptions {
                partners: Some((0, 1)),
                u_edges: Some(vec![(0, 1), (1, last)]),
                triangle: None,
            },
        ));
    }
    out
}

/// A verification block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockSpec {
    pub id: &'static str,
    pub claim: &'static str,
    /// Informational blocks are reported but never fail a run.
    pub asserted: bool,
}

pub const BLOCKS: &[BlockSpec] = &[
    BlockSpec { id: "thm13", claim: "bipartite G of order 2n: f(G) = n-1 iff G = K_(n,n)", asserted: true },
    BlockSpec { id: "lem22", claim: "every matching: pairwise alternating condition iff f(G,M) = n-1", asserted: true },
    BlockSpec { id: "lem22min", claim: "minimal (some matching with exact 4-cycles) iff minimal by edge deletion", asserted: true },
    BlockSpec { id: "lem22min_every", claim: "every top matching has exact 4-cycles iff minimal by edge deletion (recorded)", asserted: false },
    BlockSpec { id: "lem23", claim: "F = n-1 > 0: kappa >= n, no fixed double bond; minimal graphs are n-regular with kappa = n", asserted: true },
    BlockSpec { id: "lem24", claim: "bicritical iff o(G-X) <= |X|-2 for all |X| >= 2", asserted: true },
    BlockSpec { id: "lem25", claim: "F = n-1: K_(n,n)+ iff independence number >= n, otherwise a brick", asserted: true },
    BlockSpec { id: "lem31", claim: "(l-1)-extendable G: deficiency witness exists iff not l-extendable, l = 1, 2", asserted: true },
    BlockSpec { id: "lem32", claim: "complete multipartite iff no induced K2+K1", asserted: true },
    BlockSpec { id: "thm33", claim: "f(G) = n-1 iff complete multipartite with parts <= n or K_(n,n)+", asserted: true },
    BlockSpec { id: "thm41", claim: "F = n-1, n >= 3, outside K_(n,n)+: 1-extendable, and structure found iff not 2-extendable", asserted: true },
    BlockSpec { id: "cor42", claim: "minimal, n >= 3, outside K_(n,n)+: never the triangle case; not 2-extendable iff the restricted pendant case", asserted: true },
    BlockSpec { id: "lem51", claim: "f(G) >= floor(kappa/2)", asserted: true },
    BlockSpec { id: "cor52", claim: "F = n-1: f(G) >= floor(n/2)", asserted: true },
    BlockSpec { id: "facts", claim: "spanning-subgraph and matching-split lower bounds on f(G,M)", asserted: true },
    BlockSpec { id: "lem56", claim: "every 2-switch changes the forcing number by at most 1", asserted: true },
    BlockSpec { id: "thm57", claim: "F = n-1: continuous spectrum and every matching switches to a top matching", asserted: true },
    BlockSpec { id: "reach_other", claim: "F < n-1: every matching switches to a matching with f = F (recorded)", asserted: false },
    BlockSpec { id: "tutte", claim: "perfect matching iff o(G-S) <= |S| for all S (all graphs)", asserted: true },
];

pub fn block_ids() -> Vec<&'static str> {
    BLOCKS.iter().map(|b| b.id).collect()
}

/// Resolves `all` or a comma-separated id list.
pub fn select_blocks(selection: &str) -> Result<Vec<BlockSpec>> {
    if selection.trim() == "all" {
        return Ok(BLOCKS.to_vec());
    }
    selection
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|id| {
            BLOCKS
                .iter()
                .find(|b| b.id == id)
                .copied()
                .ok_or_else(|| Error::domain(format!("unknown theorem block {id:?}; known: {}", block_ids().join(","))))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockResult {
    pub id: String,
    pub claim: String,
    pub asserted: bool,
    pub checked: u64,
    pub passed: u64,
    /// graph6 strings of the first failing graphs.
    pub counterexamples: Vec<String>,
    /// Summed compute time across workers, only when timings are requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cpu_ms: Option<u64>,
}

impl BlockResult {
    pub fn ok(&self) -> bool {
        !self.asserted || self.passed == self.checked
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub version: u32,
    pub corpus_id: String,
    pub graphs_total: u64,
    pub graphs_with_pm: u64,
    pub blocks: Vec<BlockResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.blocks.iter().all(BlockResult::ok)
    }

    pub fn block(&self, id: &str) -> Option<&BlockResult> {
        self.blocks.iter().find(|b| b.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
    pub timings: bool,
    pub limits: Limits,
}

/// Runs the selected blocks over `corpus`.
pub fn verify_corpus(corpus: &Corpus, blocks: &[BlockSpec], opts: &VerifyOptions) -> Result<VerificationReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))?;
    let per_graph: Vec<Result<GraphOutcome>> = pool.install(|| {
        corpus
            .graphs
            .par_iter()
            .map(|g| evaluate(g, blocks, &opts.limits))
            .collect()
    });
    let mut results: Vec<BlockResult> = blocks
        .iter()
        .map(|b| BlockResult {
            id: b.id.to_string(),
            claim: b.claim.to_string(),
            asserted: b.asserted,
            checked: 0,
            passed: 0,
            counterexamples: vec![],
            cpu_ms: None,
        })
        .collect();
    let mut elapsed = vec![Duration::ZERO; blocks.len()];
    let mut with_pm = 0;
    for (g, outcome) in corpus.graphs.iter().zip(per_graph) {
        let outcome = outcome?;
        with_pm += u64::from(outcome.has_pm);
        for (i, (verdict, time)) in outcome.verdicts.into_iter().enumerate() {
            elapsed[i] += time;
            let Some(pass) = verdict else { continue };
            let r = &mut results[i];
            r.checked += 1;
            if pass {
                r.passed += 1;
            } else if r.counterexamples.len() < COUNTEREXAMPLE_CAP {
                r.counterexamples.push(encode_graph6(g).unwrap_or_else(|_| format!("{g:?}")));
            }
        }
    }
    if opts.timings {
        for (r, t) in results.iter_mut().zip(elapsed) {
            r.cpu_ms = Some(t.as_millis() as u64);
        }
    }
    Ok(VerificationReport {
        version: REPORT_VERSION,
        corpus_id: corpus.id.clone(),
        graphs_total: corpus.graphs.len() as u64,
        graphs_with_pm: with_pm,
        blocks: results,
    })
}

struct GraphOutcome {
    has_pm: bool,
    verdicts: Vec<(Option<bool>, Duration)>,
}

/// Lazily computed facts about one corpus graph, shared across blocks.
struct Subject<'a> {
    g: &'a Graph,
    limits: &'a Limits,
    n: usize,
    profile: OnceCell<SpectrumReport>,
    switch: OnceCell<SwitchGraph>,
    knn_plus: OnceCell<bool>,
    kappa: OnceCell<usize>,
    minimal: OnceCell<bool>,
    two_ext: OnceCell<bool>,
}

impl<'a> Subject<'a> {
    fn profile(&self) -> Result<&SpectrumReport> {
        if self.profile.get().is_none() {
            let p = forcing_profile_serial(self.g, self.limits)?;
            let _ = self.profile.set(p);
        }
        Ok(self.profile.get().unwrap())
    }

    fn top(&self) -> Result<bool> {
        Ok(self.n >= 1 && self.profile()?.max_is_top())
    }

    fn switch(&self) -> Result<&SwitchGraph> {
        let p = self.profile()?;
        Ok(self.switch.get_or_init(|| SwitchGraph::from_profile(self.g, p)))
    }

    fn knn_plus(&self) -> Result<bool> {
        if let Some(&v) = self.knn_plus.get() {
            return Ok(v);
        }
        let v = is_knn_plus(self.g)?.is_some();
        let _ = self.knn_plus.set(v);
        Ok(v)
    }

    fn kappa(&self) -> usize {
        *self.kappa.get_or_init(|| vertex_connectivity(self.g))
    }

    fn minimal(&self) -> Result<bool> {
        if let Some(&v) = self.minimal.get() {
            return Ok(v);
        }
        let v = is_minimal_max_forcing_with(self.g, self.limits)?;
        let _ = self.minimal.set(v);
        Ok(v)
    }

    fn two_extendable(&self) -> Result<bool> {
        if let Some(&v) = self.two_ext.get() {
            return Ok(v);
        }
        let v = is_l_extendable(self.g, 2)?;
        let _ = self.two_ext.set(v);
        Ok(v)
    }
}

fn evaluate(g: &Graph, blocks: &[BlockSpec], limits: &Limits) -> Result<GraphOutcome> {
    let has_pm = has_perfect_matching(g);
    let subject = Subject {
        g,
        limits,
        n: g.order() / 2,
        profile: OnceCell::new(),
        switch: OnceCell::new(),
        knn_plus: OnceCell::new(),
        kappa: OnceCell::new(),
        minimal: OnceCell::new(),
        two_ext: OnceCell::new(),
    };
    let mut verdicts = Vec::with_capacity(blocks.len());
    for b in blocks {
        let start = Instant::now();
        let verdict = if b.id == "tutte" {
            check_tutte(g, has_pm)
        } else if has_pm {
            run_block(b.id, &subject)?
        } else {
            None
        };
        verdicts.push((verdict, start.elapsed()));
    }
    Ok(GraphOutcome { has_pm, verdicts })
}

fn run_block(id: &str, s: &Subject) -> Result<Option<bool>> {
    let g = s.g;
    let n = s.n;
    Ok(match id {
        "thm13" => {
            if !g.is_bipartite() {
                return Ok(None);
            }
            let is_knn = is_complete_multipartite(g)
                .is_some_and(|parts| parts.len() == 2 && parts.iter().all(|p| p.len() == n));
            Some(s.profile()?.min_is_top() == is_knn)
        }
        "lem22" => Some(
            s.profile()?
                .per_matching
                .iter()
                .all(|x| first_failing_pair(g, &x.matching).is_none() == (x.forcing + 1 == n)),
        ),
        "lem22min" | "lem22min_every" => {
            if n < 2 {
                return Ok(None);
            }
            let by_definition = is_minimal_by_definition(g, s.limits)?;
            let reading = if id == "lem22min" {
                s.minimal()?
            } else {
                is_minimal_max_forcing_every(g, s.limits)?
            };
            Some(reading == by_definition)
        }
        "lem23" => {
            if n < 2 || !s.top()? {
                return Ok(None);
            }
            let mut ok = s.kappa() >= n && has_fixed_double_bond(g)?.is_none();
            if s.minimal()? {
                ok &= g.is_regular(n) && s.kappa() == n;
            }
            Some(ok)
        }
        "lem24" => {
            if g.order() > SUBSET_ORDER_LIMIT {
                return Ok(None);
            }
            let all = g.vertex_mask();
            let by_components = (0..=all)
                .filter(|x| x.count_ones() >= 2)
                .all(|x| g.odd_components_mask(x) + 2 <= x.count_ones() as usize);
            Some(is_bicritical(g) == by_components)
        }
        "lem25" => {
            if n < 1 || !s.top()? {
                return Ok(None);
            }
            let knn = s.knn_plus()?;
            Some(knn == (max_independent_set_size(g) >= n) && (knn || is_brick(g)))
        }
        "lem31" => {
            if !g.is_connected() || g.order() > SUBSET_ORDER_LIMIT {
                return Ok(None);
            }
            let mut checked = false;
            let mut ok = true;
            for l in 1..=2 {
                if g.order() < 2 * l + 2 || !is_l_extendable(g, l - 1)? {
                    break;
                }
                checked = true;
                let witness = deficiency_witness(g, l)?;
                ok &= witness.is_some() != is_l_extendable(g, l)?;
                if let Some(w) = witness {
                    ok &= w.validate(g).is_ok();
                }
            }
            checked.then_some(ok)
        }
        "lem32" => Some(is_complete_multipartite(g).is_some() == !has_induced_edge_plus_vertex(g)),
        "thm33" => Some(classify_min_forcing(g)?.predicted_min_forcing_is_max == s.profile()?.min_is_top()),
        "thm41" => {
            if n < 3 || !s.top()? || s.knn_plus()? {
                return Ok(None);
            }
            let structure = non_2_extendable_structure_with(g, s.limits)?;
            Some(is_l_extendable(g, 1)? && structure.is_some() == !s.two_extendable()?)
        }
        "cor42" => {
            if n < 3 || !s.minimal()? || s.knn_plus()? {
                return Ok(None);
            }
            let (triangle, pendant) = corollary_configurations(g, s.limits)?;
            Some(!triangle && pendant == !s.two_extendable()?)
        }
        "lem51" => Some(s.profile()?.min_forcing >= s.kappa() / 2),
        "cor52" => {
            if !s.top()? {
                return Ok(None);
            }
            Some(s.profile()?.min_forcing >= n / 2)
        }
        "facts" => {
            let p = s.profile()?;
            let first = &p.per_matching[0];
            let last = &p.per_matching[p.per_matching.len() - 1];
            Some(check_facts(g, &first.matching, first.forcing, s.limits)?
                && check_facts(g, &last.matching, last.forcing, s.limits)?)
        }
        "lem56" => Some(verify_switch_bound(s.switch()?).holds),
        "thm57" => {
            if !s.top()? {
                return Ok(None);
            }
            let c = ContinuityCheck::from_switch_graph(s.switch()?, s.profile()?);
            Some(c.spectrum_continuous && c.reach_max)
        }
        "reach_other" => {
            if s.top()? {
                return Ok(None);
            }
            let p = s.profile()?;
            let sg = s.switch()?;
            let sources: Vec<usize> = (0..sg.node_count()).filter(|&i| sg.forcing[i] == p.max_forcing).collect();
            Some(reaches_all(sg, &sources))
        }
        other => return Err(Error::domain(format!("unknown theorem block {other:?}"))),
    })
}

fn reaches_all(sg: &SwitchGraph, sources: &[usize]) -> bool {
    let mut seen = vec![false; sg.node_count()];
    let mut stack = sources.to_vec();
    for &x in sources {
        seen[x] = true;
    }
    while let Some(x) = stack.pop() {
        for &y in &sg.adjacency[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.iter().all(|&b| b)
}

/// Three vertices spanning exactly one edge.
fn has_induced_edge_plus_vertex(g: &Graph) -> bool {
    let n = g.order();
    (0..n).any(|a| {
        (a + 1..n).any(|b| {
            (b + 1..n).any(|c| {
                let count = [g.has_edge(a, b), g.has_edge(a, c), g.has_edge(b, c)]
                    .iter()
                    .filter(|&&e| e)
                    .count();
                count == 1
            })
        })
    })
}

/// Tutte's condition by brute force, compared with the matching algorithm.
fn check_tutte(g: &Graph, has_pm: bool) -> Option<bool> {
    if g.order() > SUBSET_ORDER_LIMIT {
        return None;
    }
    let all = g.vertex_mask();
    let tutte = (0..=all).all(|x| g.odd_components_mask(x) <= x.count_ones() as usize);
    Some(tutte == has_pm)
}

/// Checks the spanning-subgraph bound (dropping every other non-matching
/// edge) and the split bound (first half of the matching against the rest).
fn check_facts(g: &Graph, m: &PerfectMatching, f: usize, limits: &Limits) -> Result<bool> {
    let mut sparse = g.clone();
    let others: Vec<Edge> = g.edges().filter(|e| !m.contains(e)).collect();
    for e in others.iter().skip(1).step_by(2) {
        sparse.remove_edge(e.u, e.v);
    }
    let mut ok = forcing_number_with(&sparse, m, limits)?.optimum <= f;
    let half = m.len() / 2;
    if half >= 1 {
        let (first, second) = m.edges().split_at(half);
        let part = |edges: &[Edge]| -> Result<usize> {
            let vertices: Vec<usize> = edges.iter().flat_map(|e| [e.u, e.v]).collect();
            let h = g.induced_subgraph(&vertices)?;
            let relabeled = (0..edges.len()).map(|i| Edge::new(2 * i, 2 * i + 1)).collect();
            let hm = PerfectMatching::new(&h, relabeled)?;
            Ok(forcing_number_with(&h, &hm, limits)?.optimum)
        };
        ok &= part(first)? + part(second)? <= f;
    }
    Ok(ok)
}

/// For a minimal graph: whether any top matching admits the triangle case,
/// and whether one admits the pendant case with distinct partners and an
/// independent u-side apart from the last vertex.
fn corollary_configurations(g: &Graph, limits: &Limits) -> Result<(bool, bool)> {
    let matchings = crate::matching::enumerate_perfect_matchings_capped(g, limits.matching_cap)?;
    let mut triangle = false;
    let mut pendant = false;
    for m in matchings.iter().filter(|m| pairs_are_exact_four_cycles(g, m)) {
        triangle |= triangle_case(g, m).is_some();
        pendant |= restricted_pendant(g, m);
    }
    Ok((triangle, pendant))
}

fn restricted_pendant(g: &Graph, m: &PerfectMatching) -> bool {
    let n = m.len();
    for special in 0..n {
        for flips in 0..1u64 << n {
            let (u, v) = orient(m, flips);
            let rest: Vec<usize> = (0..n).filter(|&k| k != special).collect();
            let u_rest = rest.iter().fold(0u64, |acc, &k| acc | 1u64 << u[k]);
            let v_rest = rest.iter().fold(0u64, |acc, &k| acc | 1u64 << v[k]);
            if !g.is_independent(u_rest) || !g.is_independent(v_rest) {
                continue;
            }
            let s_mask = u_rest | 1u64 << u[special] | 1u64 << v[special];
            if matching_number(g, s_mask) < 2 {
                continue;
            }
            let (us, vs) = (u[special], v[special]);
            let found = rest
                .iter()
                .any(|&i| g.has_edge(v[i], vs) && rest.iter().any(|&j| j != i && g.has_edge(v[j], us)));
            if found {
                return true;
            }
        }
    }
    false
}

/// graph6 string of the labeled graph with the given edge mask; handy for
/// reproducing exhaustive-corpus counterexamples.
pub fn exhaustive_graph6(order: usize, mask: u64) -> String {
    encode_graph6(&labeled_graph_from_mask(order, mask)).expect("small order")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection() {
        assert_eq!(select_blocks("all").unwrap().len(), BLOCKS.len());
        let two = select_blocks("thm33, lem56").unwrap();
        assert_eq!(two.iter().map(|b| b.id).collect::<Vec<_>>(), ["thm33", "lem56"]);
        assert!(select_blocks("nope").is_err());
    }

    #[test]
    fn builtin_names() {
        assert_eq!(Corpus::builtin("exhaustive-4").unwrap().unwrap().graphs.len(), 64);
        assert_eq!(Corpus::builtin("random-8:12").unwrap().unwrap().graphs.len(), 12);
        assert!(Corpus::builtin("exhaustive-7").unwrap().is_err());
        assert!(Corpus::builtin("whatever").is_none());
    }

    #[test]
    fn partitions_of_six() {
        let mut out = Vec::new();
        partitions(6, 6, &mut vec![], &mut out);
        assert_eq!(out.len(), 11);
        assert_eq!(out[0], vec![6]);
        assert_eq!(out[10], vec![1; 6]);
    }

    #[test]
    fn small_exhaustive_run_passes() {
        let corpus = Corpus::exhaustive(4).unwrap();
        let report = verify_corpus(&corpus, BLOCKS, &VerifyOptions::default()).unwrap();
        assert!(report.all_passed(), "{}", report.to_json());
        assert_eq!(report.graphs_total, 64);
        assert_eq!(report.block("tutte").unwrap().checked, 64);
    }
}
