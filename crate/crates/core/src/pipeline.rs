//! The per-form pipeline: relevant vectors, H-representation, vertices, faces
//! down to codimension 3, dual cells, and (for `d >= 4`) the Venkov checks.

use alloc::vec::Vec;
use core::fmt;

use crate::dual::{
    dual3_cells_of_faces, dedup_by_translation, dual_cell_of_face, ridge_type, Dual3Census,
    Dual3Type, DualCell, RidgeType,
};
use crate::lattice::relevant_vectors;
use crate::venkov::{
    build_venkov_complex, build_venkov_graph, cohomology_check, ggm_check, half_belt_cycles,
    ordine_check, skeleton_check, triangle_span_check, trivially_contractible_cycles,
    CohomologyReport, CycleVector, GgmReport, RidgeEdge, SkeletonReport, VenkovComplex,
    VenkovGraph,
};
use crate::voronoi::{build_hrep, enumerate_vertices, face_lattice, FaceLattice, HalfSpace};
use crate::{Error, LatticeVector, QuadraticForm, RationalVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    Relevant,
    HRep,
    Vertices,
    Faces,
    Dual,
    Venkov,
}

impl Stage {
    pub const ALL: [Stage; 6] = [
        Stage::Relevant,
        Stage::HRep,
        Stage::Vertices,
        Stage::Faces,
        Stage::Dual,
        Stage::Venkov,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Relevant => "relevant",
            Stage::HRep => "hrep",
            Stage::Vertices => "vertices",
            Stage::Faces => "faces",
            Stage::Dual => "dual",
            Stage::Venkov => "venkov",
        }
    }

    pub fn from_name(s: &str) -> Option<Stage> {
        Stage::ALL.into_iter().find(|st| st.name() == s)
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An error together with the stage that raised it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageError {
    pub stage: Stage,
    pub error: Error,
}

impl fmt::Display for StageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stage {}: {}", self.stage, self.error)
    }
}

impl core::error::Error for StageError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Lowest face dimension to compute. The dual and Venkov stages need
    /// `d - 3`; a higher value stops the run after the face stage.
    pub down_to_dim: Option<usize>,
    /// Count the base 4-cycle of a pyramid whose apex is the origin as a
    /// trivially contractible cycle.
    pub pyramid_tc: bool,
    /// Last stage to run.
    pub stop_after: Option<Stage>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            down_to_dim: None,
            pyramid_tc: true,
            stop_after: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RidgeCounts {
    pub primitive: usize,
    pub non_primitive: usize,
}

/// Everything decided about the Venkov complex and graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub f_vector: [usize; 3],
    pub cohomology: CohomologyReport,
    pub red_edges: usize,
    pub blue_edges: usize,
    pub ggm: GgmReport,
    pub skeleton: SkeletonReport,
    pub ordine: bool,
    pub triangle_span: bool,
    pub half_belt_cycles: usize,
    pub tc_cycles: usize,
}

impl CheckReport {
    /// The sufficient conditions and structural checks that must hold for
    /// every Voronoi parallelohedron. 3-irreducibility is not among them: it
    /// fails legitimately, for example for `Z^d`.
    pub fn passes(&self) -> bool {
        self.cohomology.h1_trivial && self.ggm.holds && self.skeleton.matches && self.triangle_span
    }
}

/// Intermediate results of a run, kept for inspection and testing.
#[derive(Clone, Debug, Default)]
pub struct Artifacts {
    pub relevant: Vec<LatticeVector>,
    pub hrep: Vec<HalfSpace>,
    pub vertices: Vec<RationalVector>,
    pub lattice: Option<FaceLattice>,
    pub ridge_cells: Vec<(DualCell, RidgeType)>,
    /// Dual 3-cells of the `(d-3)`-faces, one per face.
    pub dual3_cells: Vec<(DualCell, Dual3Type)>,
    /// Translation classes of `dual3_cells`.
    pub dual3_representatives: Vec<(DualCell, Dual3Type)>,
    pub complex: Option<VenkovComplex>,
    pub graph: Option<VenkovGraph>,
    pub half_belt: Vec<CycleVector>,
    pub trivially_contractible: Vec<CycleVector>,
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub dim: usize,
    /// Last stage that completed.
    pub completed: Stage,
    pub ridge_counts: Option<RidgeCounts>,
    /// `None` when `d < 3` or the dual stage did not run.
    pub census: Option<Dual3Census>,
    /// `None` when `d < 4` or the Venkov stage did not run.
    pub checks: Option<CheckReport>,
    pub artifacts: Artifacts,
}

impl PipelineOutput {
    /// True unless a check that must hold came out false. Geometry-only runs
    /// pass.
    pub fn passes(&self) -> bool {
        self.checks.as_ref().is_none_or(CheckReport::passes)
    }
}

/// Runs the stages in order, calling `on_stage` after each one completes.
pub fn run_pipeline(
    q: &QuadraticForm,
    options: &PipelineOptions,
    mut on_stage: impl FnMut(Stage),
) -> Result<PipelineOutput, StageError> {
    let d = q.dim();
    let last = options.stop_after.unwrap_or(Stage::Venkov);
    let mut a = Artifacts::default();
    let mut out = PipelineOutput {
        dim: d,
        completed: Stage::Relevant,
        ridge_counts: None,
        census: None,
        checks: None,
        artifacts: Artifacts::default(),
    };
    let at = |stage: Stage| move |error: Error| StageError { stage, error };
    let finish = |mut out: PipelineOutput, a: Artifacts, stage: Stage| {
        out.completed = stage;
        out.artifacts = a;
        Ok(out)
    };

    a.relevant = relevant_vectors(q);
    on_stage(Stage::Relevant);
    if last == Stage::Relevant {
        return finish(out, a, Stage::Relevant);
    }

    a.hrep = build_hrep(q, &a.relevant);
    on_stage(Stage::HRep);
    if last == Stage::HRep {
        return finish(out, a, Stage::HRep);
    }

    a.vertices = enumerate_vertices(&a.hrep).map_err(at(Stage::Vertices))?;
    on_stage(Stage::Vertices);
    if last == Stage::Vertices {
        return finish(out, a, Stage::Vertices);
    }

    let needed = d.saturating_sub(3);
    let lowest = options.down_to_dim.unwrap_or(needed);
    let lattice = face_lattice(&a.vertices, &a.hrep, lowest).map_err(at(Stage::Faces))?;
    on_stage(Stage::Faces);
    let enough = lattice.lowest() <= needed;
    a.lattice = Some(lattice);
    if last == Stage::Faces || !enough {
        return finish(out, a, Stage::Faces);
    }
    let lattice = a.lattice.as_ref().expect("just set");

    let mut counts = RidgeCounts::default();
    for (i, face) in lattice.ridges().iter().enumerate() {
        let cell = dual_cell_of_face(q, face, i).map_err(at(Stage::Dual))?;
        let kind = ridge_type(&cell).map_err(at(Stage::Dual))?;
        match kind {
            RidgeType::Primitive => counts.primitive += 1,
            RidgeType::NonPrimitive => counts.non_primitive += 1,
        }
        a.ridge_cells.push((cell, kind));
    }
    out.ridge_counts = Some(counts);
    if d >= 3 {
        a.dual3_cells = dual3_cells_of_faces(q, lattice).map_err(at(Stage::Dual))?;
        a.dual3_representatives = dedup_by_translation(&a.dual3_cells);
        out.census = Some(Dual3Census::of(&a.dual3_representatives));
    }
    on_stage(Stage::Dual);
    if last == Stage::Dual || d < 4 {
        return finish(out, a, Stage::Dual);
    }

    let venkov = at(Stage::Venkov);
    let complex = build_venkov_complex(d, &a.dual3_representatives).map_err(venkov)?;
    let ridge_edges: Vec<RidgeEdge> = lattice
        .ridges()
        .iter()
        .zip(&a.ridge_cells)
        .map(|(face, (_, kind))| {
            debug_assert_eq!(face.facets.len(), 2, "a ridge lies in exactly two facets");
            RidgeEdge {
                facets: [
                    a.hrep[face.facets[0]].normal.clone(),
                    a.hrep[face.facets[1]].normal.clone(),
                ],
                kind: *kind,
            }
        })
        .collect();
    let graph = build_venkov_graph(&a.relevant, &ridge_edges).map_err(venkov)?;
    let primitive: Vec<DualCell> = a
        .ridge_cells
        .iter()
        .filter(|(_, k)| *k == RidgeType::Primitive)
        .map(|(c, _)| c.clone())
        .collect();
    a.half_belt = half_belt_cycles(&graph, &primitive).map_err(venkov)?;
    a.trivially_contractible =
        trivially_contractible_cycles(&graph, &a.dual3_cells, options.pyramid_tc)
            .map_err(venkov)?;
    let mut basic: Vec<CycleVector> = a.half_belt.clone();
    basic.extend(a.trivially_contractible.iter().cloned());

    let census = out.census.expect("d >= 3");
    let ggm = ggm_check(&graph, &basic);
    let checks = CheckReport {
        f_vector: complex.f_vector(),
        cohomology: cohomology_check(&complex),
        red_edges: graph.red_edges.len(),
        blue_edges: graph.blue_edges.len(),
        ggm,
        skeleton: skeleton_check(&complex, &graph),
        ordine: ordine_check(&census),
        triangle_span: triangle_span_check(&complex, &graph.red_index(), &basic),
        half_belt_cycles: a.half_belt.len(),
        tc_cycles: a.trivially_contractible.len(),
    };
    out.checks = Some(checks);
    a.complex = Some(complex);
    a.graph = Some(graph);
    on_stage(Stage::Venkov);
    finish(out, a, Stage::Venkov)
}

/// [`run_pipeline`] with default options and no progress callback.
pub fn run(q: &QuadraticForm) -> Result<PipelineOutput, StageError> {
    run_pipeline(q, &PipelineOptions::default(), |_| {})
}
