//! The JSON report for one form.

use serde::{Deserialize, Serialize};
use venkov_core::pipeline::{PipelineOutput, Stage, StageError};
use venkov_core::QuadraticForm;

/// Outcome of one form, ordered by severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Status {
    Pass,
    Fail,
    InputError,
    AssertionError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::InputError => 2,
            Status::AssertionError => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RidgeCounts {
    pub primitive: usize,
    pub non_primitive: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Census {
    pub tetrahedron: usize,
    pub pyramid: usize,
    pub octahedron: usize,
    pub prism: usize,
    pub cube: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Venkov {
    pub f0: usize,
    pub f1: usize,
    pub f2: usize,
    pub rank_delta0: usize,
    pub rank_delta1: usize,
    pub h1_trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Graph {
    pub v: usize,
    pub red_edges: usize,
    pub blue_edges: usize,
    pub components: usize,
    pub isolated: usize,
    pub cyclomatic: usize,
    pub half_belt_cycles: usize,
    pub tc_cycles: usize,
    pub basic_cycle_rank: usize,
    pub ggm_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ErrorInfo {
    /// Pipeline stage, or `input` for unreadable or invalid form files.
    pub stage: String,
    pub message: String,
}

/// Wall-clock milliseconds per stage. Only present when requested, since it
/// breaks byte-for-byte reproducibility.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings(pub std::collections::BTreeMap<String, f64>);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportDocument {
    pub form_id: String,
    pub status: Status,
    pub dim: Option<usize>,
    /// Gram matrix entries as exact rationals, `p/q` or integers.
    pub gram: Option<Vec<Vec<String>>>,
    pub pyramid_tc: bool,
    pub completed_stage: Option<String>,
    pub facet_pairs: Option<usize>,
    pub vertices: Option<usize>,
    pub ridge_counts: Option<RidgeCounts>,
    pub dual3_census: Option<Census>,
    pub venkov: Option<Venkov>,
    pub graph: Option<Graph>,
    pub ordine3_irreducible: Option<bool>,
    pub skeleton_match: Option<bool>,
    pub triangle_span: Option<bool>,
    pub error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<Timings>,
}

fn gram_strings(q: &QuadraticForm) -> Vec<Vec<String>> {
    let g = q.gram();
    (0..g.rows())
        .map(|r| g.row(r).iter().map(ToString::to_string).collect())
        .collect()
}

impl ReportDocument {
    fn empty(form_id: &str, status: Status, pyramid_tc: bool) -> Self {
        ReportDocument {
            form_id: form_id.to_owned(),
            status,
            dim: None,
            gram: None,
            pyramid_tc,
            completed_stage: None,
            facet_pairs: None,
            vertices: None,
            ridge_counts: None,
            dual3_census: None,
            venkov: None,
            graph: None,
            ordine3_irreducible: None,
            skeleton_match: None,
            triangle_span: None,
            error: None,
            timings: None,
        }
    }

    pub fn from_output(form_id: &str, q: &QuadraticForm, out: &PipelineOutput, pyramid_tc: bool) -> Self {
        let a = &out.artifacts;
        let mut r = Self::empty(form_id, Status::Pass, pyramid_tc);
        r.dim = Some(out.dim);
        r.gram = Some(gram_strings(q));
        r.completed_stage = Some(out.completed.name().to_owned());
        r.facet_pairs = Some(a.relevant.len());
        if out.completed >= Stage::Vertices {
            r.vertices = Some(a.vertices.len());
        }
        r.ridge_counts = out.ridge_counts.map(|c| RidgeCounts {
            primitive: c.primitive,
            non_primitive: c.non_primitive,
        });
        r.dual3_census = out.census.map(|c| Census {
            tetrahedron: c.tetrahedron,
            pyramid: c.pyramid,
            octahedron: c.octahedron,
            prism: c.prism,
            cube: c.cube,
        });
        if let Some(c) = &out.checks {
            r.venkov = Some(Venkov {
                f0: c.f_vector[0],
                f1: c.f_vector[1],
                f2: c.f_vector[2],
                rank_delta0: c.cohomology.rank_delta0,
                rank_delta1: c.cohomology.rank_delta1,
                h1_trivial: c.cohomology.h1_trivial,
            });
            r.graph = Some(Graph {
                v: c.ggm.vertices,
                red_edges: c.red_edges,
                blue_edges: c.blue_edges,
                components: c.ggm.components,
                isolated: c.skeleton.isolated,
                cyclomatic: c.ggm.cyclomatic,
                half_belt_cycles: c.half_belt_cycles,
                tc_cycles: c.tc_cycles,
                basic_cycle_rank: c.ggm.basic_cycle_rank,
                ggm_holds: c.ggm.holds,
            });
            r.ordine3_irreducible = Some(c.ordine);
            r.skeleton_match = Some(c.skeleton.matches);
            r.triangle_span = Some(c.triangle_span);
        }
        if !out.passes() {
            r.status = Status::Fail;
        }
        r
    }

    pub fn from_stage_error(form_id: &str, q: &QuadraticForm, e: &StageError, pyramid_tc: bool) -> Self {
        // Every error the pipeline raises on a validated form is internal.
        let mut r = Self::empty(form_id, Status::AssertionError, pyramid_tc);
        r.dim = Some(q.dim());
        r.gram = Some(gram_strings(q));
        r.error = Some(ErrorInfo {
            stage: e.stage.name().to_owned(),
            message: e.error.to_string(),
        });
        r
    }

    pub fn from_input_error(form_id: &str, message: String, pyramid_tc: bool) -> Self {
        let mut r = Self::empty(form_id, Status::InputError, pyramid_tc);
        r.error = Some(ErrorInfo {
            stage: "input".to_owned(),
            message,
        });
        r
    }

    /// Single-line JSON followed by a newline.
    pub fn to_line(&self) -> String {
        let mut s = serde_json::to_string(self).expect("reports serialise");
        s.push('\n');
        s
    }
}

/// The JSON Schema the reports follow.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

/// The JSON Schema of `summary.json`.
pub const SUMMARY_SCHEMA: &str = include_str!("../schema/summary.schema.json");
