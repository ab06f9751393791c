//! Versioned report records for single-graph analyses, plus CSV output for
//! forcing spectra.

use std::fmt::Write as _;

use serde::Serialize;

use crate::connectivity::vertex_connectivity;
use crate::error::{Error, Result};
use crate::extend::{
    deficiency_witness, is_bicritical, is_brick, is_factor_critical, is_l_extendable,
    non_2_extendable_structure_with, DeficiencyWitness, Non2ExtStructure,
};
use crate::forcing::{forcing_profile_with, SpectrumReport};
use crate::graph::{Edge, Graph};
use crate::io::encode_graph6;
use crate::matching::has_perfect_matching;
use crate::structure::{classify_min_forcing, has_max_forcing_n_minus_1_with, is_knn_plus, ClassificationResult};
use crate::switch::{verify_switch_bound, ContinuityCheck, SwitchBoundCheck, SwitchGraph};
use crate::Limits;

/// Schema version stamped on every report record.
pub const REPORT_VERSION: u32 = 1;

/// Which sections an analysis should compute.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub profile: bool,
    pub classify: bool,
    pub extend: bool,
    pub switch: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphRecord {
    pub order: usize,
    pub edge_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph6: Option<String>,
    pub edges: Vec<Edge>,
}

impl GraphRecord {
    pub fn new(g: &Graph) -> Self {
        GraphRecord {
            order: g.order(),
            edge_count: g.edge_count(),
            graph6: encode_graph6(g).ok(),
            edges: g.edges().collect(),
        }
    }
}

/// l-extendability at one level, with a deficiency witness when it fails
/// and the level below holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendabilityLevel {
    pub l: usize,
    pub extendable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<DeficiencyWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendabilityRecord {
    pub connected: bool,
    pub vertex_connectivity: usize,
    pub factor_critical: bool,
    pub bicritical: bool,
    pub brick: bool,
    /// Levels 1 and 2 where the graph is connected and large enough.
    pub levels: Vec<ExtendabilityLevel>,
    /// Whether the non-2-extendable structure search applies: `F(G) = n - 1`,
    /// `n >= 3`, outside `K_{n,n}^+`.
    pub structure_applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_2_extendable: Option<Non2ExtStructure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwitchRecord {
    pub node_count: usize,
    pub edge_count: usize,
    pub component_count: usize,
    pub bound: SwitchBoundCheck,
    pub continuity: ContinuityCheck,
    pub graph: SwitchGraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub version: u32,
    pub graph: GraphRecord,
    pub has_perfect_matching: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<SpectrumReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extendability: Option<ExtendabilityRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub switch: Option<SwitchRecord>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report records always serialize")
    }
}

/// Runs the requested analyses. A profile also carries the classification.
/// Fails with [`Error::NoPerfectMatching`] when a forcing-based section is
/// requested for a graph without a perfect matching.
pub fn analyze(g: &Graph, req: &AnalysisRequest, limits: &Limits) -> Result<AnalysisReport> {
    let has_pm = has_perfect_matching(g);
    if (req.profile || req.classify || req.switch) && !has_pm {
        return Err(Error::NoPerfectMatching);
    }
    let profile = if req.profile || req.switch {
        Some(forcing_profile_with(g, limits)?)
    } else {
        None
    };
    let classification = if req.profile || req.classify {
        Some(classify_min_forcing(g)?)
    } else {
        None
    };
    let extendability = if req.extend {
        Some(extendability_record(g, limits)?)
    } else {
        None
    };
    let switch = match (&profile, req.switch) {
        (Some(p), true) => {
            let sg = SwitchGraph::from_profile(g, p);
            Some(SwitchRecord {
                node_count: sg.node_count(),
                edge_count: sg.edges().len(),
                component_count: sg.component_count(),
                bound: verify_switch_bound(&sg),
                continuity: ContinuityCheck::from_switch_graph(&sg, p),
                graph: sg,
            })
        }
        _ => None,
    };
    Ok(AnalysisReport {
        version: REPORT_VERSION,
        graph: GraphRecord::new(g),
        has_perfect_matching: has_pm,
        profile: if req.profile { profile } else { None },
        classification,
        extendability,
        switch,
    })
}

fn extendability_record(g: &Graph, limits: &Limits) -> Result<ExtendabilityRecord> {
    let connected = g.is_connected();
    let mut levels = Vec::new();
    let mut below = has_perfect_matching(g);
    for l in 1..=2 {
        if !connected || g.order() < 2 * l + 2 {
            break;
        }
        let extendable = is_l_extendable(g, l)?;
        let witness = if !extendable && below {
            deficiency_witness(g, l)?
        } else {
            None
        };
        levels.push(ExtendabilityLevel { l, extendable, witness });
        below = extendable;
    }
    let order = g.order();
    let structure_applicable = order >= 6
        && order.is_multiple_of(2)
        && has_perfect_matching(g)
        && has_max_forcing_n_minus_1_with(g, limits)?.is_some()
        && is_knn_plus(g)?.is_none();
    let non_2_extendable = if structure_applicable {
        non_2_extendable_structure_with(g, limits)?
    } else {
        None
    };
    Ok(ExtendabilityRecord {
        connected,
        vertex_connectivity: vertex_connectivity(g),
        factor_critical: is_factor_critical(g),
        bicritical: is_bicritical(g),
        brick: is_brick(g),
        levels,
        structure_applicable,
        non_2_extendable,
    })
}

/// One CSV row per perfect matching: `index,matching,forcing`, matchings
/// written as space-separated `u-v` pairs.
pub fn spectrum_csv(profile: &SpectrumReport) -> String {
    let mut out = String::from("index,matching,forcing\n");
    for (i, row) in profile.per_matching.iter().enumerate() {
        let _ = writeln!(out, "{i},{},{}", row.matching, row.forcing);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_complete_multipartite, gen_non_2_extendable, Non2ExtFamily, Non2ExtOptions};

    #[test]
    fn k33_profile_report() {
        let k33 = gen_complete_multipartite(&[3, 3]).unwrap();
        let req = AnalysisRequest {
            profile: true,
            ..Default::default()
        };
        let r = analyze(&k33, &req, &Limits::default()).unwrap();
        let p = r.profile.as_ref().unwrap();
        assert_eq!(p.spectrum, vec![2]);
        assert_eq!(r.classification.as_ref().unwrap().tag.as_str(), "CompleteMultipartite");
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["version"], 1);
        assert_eq!(json["graph"]["graph6"], "EFz_");
        assert_eq!(json["profile"]["per_matching"][0]["matching"][0], serde_json::json!([0, 3]));
        assert!(json.get("switch").is_none());
        let csv = spectrum_csv(p);
        assert_eq!(csv.lines().count(), 7);
        assert_eq!(csv.lines().nth(1), Some("0,0-3 1-4 2-5,2"));
    }

    #[test]
    fn missing_matching_is_reported() {
        let g = Graph::complete(5);
        let req = AnalysisRequest {
            profile: true,
            ..Default::default()
        };
        assert!(matches!(analyze(&g, &req, &Limits::default()), Err(Error::NoPerfectMatching)));
        let ext = AnalysisRequest {
            extend: true,
            ..Default::default()
        };
        let r = analyze(&g, &ext, &Limits::default()).unwrap();
        assert!(r.extendability.unwrap().factor_critical);
    }

    #[test]
    fn extendability_and_switch_sections() {
        let lg = gen_non_2_extendable(Non2ExtFamily::Pendant, 3, &Non2ExtOptions::default()).unwrap();
        let req = AnalysisRequest {
            extend: true,
            switch: true,
            ..Default::default()
        };
        let r = analyze(&lg.graph, &req, &Limits::default()).unwrap();
        let ext = r.extendability.unwrap();
        assert_eq!(ext.levels.len(), 2);
        assert!(ext.levels[0].extendable && !ext.levels[1].extendable);
        assert!(ext.levels[1].witness.is_some());
        assert!(ext.structure_applicable && ext.non_2_extendable.is_some());
        let sw = r.switch.unwrap();
        assert!(sw.bound.holds && sw.continuity.reach_max);
        assert!(r.profile.is_none());
    }
}
