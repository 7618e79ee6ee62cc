//! Venkov complex, Venkov graphs and the three sufficient-condition checks.
//!
//! Vertices of both structures are parity classes: a facet pair `{F, -F}`
//! with facet vector `t` is identified with the class of `t` in `Z^d / 2Z^d`.
//! Simplices are oriented by sorting their parity classes as bit strings.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dual::{Dual3Census, Dual3Type, DualCell, RidgeType};
use crate::linalg::{integer_rank, rank_of_rows};
use crate::{Error, LatticeVector, ParityClass, Rational, Result};

/// An unordered pair of distinct parity classes, stored sorted.
pub type Edge = [ParityClass; 2];

pub fn edge(a: ParityClass, b: ParityClass) -> Edge {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

fn parity_of_sum(a: &LatticeVector, b: &LatticeVector) -> ParityClass {
    (a + b).parity()
}

/// A 2-simplex of the Venkov complex: three distinct parity classes, sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VenkovTriangle([ParityClass; 3]);

impl VenkovTriangle {
    pub fn new(a: ParityClass, b: ParityClass, c: ParityClass) -> Result<Self> {
        let mut labels = [a, b, c];
        labels.sort();
        if labels[0] == labels[1] || labels[1] == labels[2] {
            return Err(Error::DegenerateTriple(labels));
        }
        Ok(VenkovTriangle(labels))
    }

    pub fn labels(&self) -> [ParityClass; 3] {
        self.0
    }

    pub fn edges(&self) -> [Edge; 3] {
        let [a, b, c] = self.0;
        [[a, b], [a, c], [b, c]]
    }
}

/// The eight triangles of an octahedron surface whose antipodal vertex pairs
/// are `(a, a2)`, `(b, b2)` and `(c, c2)`.
fn octahedron_surface(
    [a, b, c, a2, b2, c2]: [ParityClass; 6],
) -> Result<Vec<VenkovTriangle>> {
    [
        [a, b, c],
        [a2, b2, c2],
        [a2, b, c],
        [a, b2, c2],
        [a, b2, c],
        [a2, b, c2],
        [a, b, c2],
        [a2, b2, c],
    ]
    .into_iter()
    .map(|[x, y, z]| VenkovTriangle::new(x, y, z))
    .collect()
}

/// The triples contributed by one dual 3-cell.
pub fn triangles_of_dual3_cell(cell: &Dual3Type) -> Result<Vec<VenkovTriangle>> {
    let s = parity_of_sum;
    let mut out = match cell {
        Dual3Type::Tetrahedron { points: [a, b, c, d] } => octahedron_surface([
            s(a, b),
            s(a, c),
            s(a, d),
            s(c, d),
            s(b, d),
            s(b, c),
        ])?,
        Dual3Type::Pyramid {
            apex,
            base: [a, b, c, d],
        } => octahedron_surface([
            s(apex, a),
            s(apex, b),
            s(a, d),
            s(apex, c),
            s(apex, d),
            s(a, b),
        ])?,
        Dual3Type::Octahedron {
            pairs: [(a, d), (b, e), (c, f)],
        } => {
            let _ = d;
            octahedron_surface([s(a, b), s(a, c), s(b, c), s(a, e), s(a, f), s(b, f)])?
        }
        Dual3Type::Prism { bottom: [a, b, c], .. } => {
            vec![VenkovTriangle::new(s(a, b), s(a, c), s(b, c))?]
        }
        Dual3Type::Cube { .. } => Vec::new(),
    };
    out.sort();
    out.dedup();
    Ok(out)
}

/// A 2-dimensional simplicial complex on parity classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VenkovComplex {
    vertices: Vec<ParityClass>,
    edges: Vec<Edge>,
    triangles: Vec<VenkovTriangle>,
}

impl VenkovComplex {
    /// The homogeneous complex generated by the given triangles.
    pub fn from_triangles<I: IntoIterator<Item = VenkovTriangle>>(triangles: I) -> Self {
        let triangles: BTreeSet<VenkovTriangle> = triangles.into_iter().collect();
        let edges: BTreeSet<Edge> = triangles.iter().flat_map(|t| t.edges()).collect();
        let vertices: BTreeSet<ParityClass> =
            triangles.iter().flat_map(|t| t.labels()).collect();
        VenkovComplex {
            vertices: vertices.into_iter().collect(),
            edges: edges.into_iter().collect(),
            triangles: triangles.into_iter().collect(),
        }
    }

    /// An arbitrary complex given by its simplices, for synthetic checks.
    /// Faces of the given simplices are added.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = ParityClass>,
        edges: impl IntoIterator<Item = Edge>,
        triangles: impl IntoIterator<Item = VenkovTriangle>,
    ) -> Self {
        let triangles: BTreeSet<VenkovTriangle> = triangles.into_iter().collect();
        let mut e: BTreeSet<Edge> = edges.into_iter().map(|[a, b]| edge(a, b)).collect();
        e.extend(triangles.iter().flat_map(|t| t.edges()));
        let mut v: BTreeSet<ParityClass> = vertices.into_iter().collect();
        v.extend(e.iter().flatten());
        VenkovComplex {
            vertices: v.into_iter().collect(),
            edges: e.into_iter().collect(),
            triangles: triangles.into_iter().collect(),
        }
    }

    pub fn vertices(&self) -> &[ParityClass] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangles(&self) -> &[VenkovTriangle] {
        &self.triangles
    }

    pub fn f_vector(&self) -> [usize; 3] {
        [self.vertices.len(), self.edges.len(), self.triangles.len()]
    }

    /// Disjoint union; the caller guarantees the label sets do not collide.
    pub fn union(&self, other: &VenkovComplex) -> VenkovComplex {
        VenkovComplex::from_parts(
            self.vertices.iter().chain(&other.vertices).copied(),
            self.edges.iter().chain(&other.edges).copied(),
            self.triangles.iter().chain(&other.triangles).copied(),
        )
    }
}

/// Union of the triples of all given dual 3-cells. Defined for `d >= 4`.
pub fn build_venkov_complex(dim: usize, cells: &[(DualCell, Dual3Type)]) -> Result<VenkovComplex> {
    if dim < 4 {
        return Err(Error::DimensionTooSmall(dim));
    }
    let mut all = Vec::new();
    for (_, t) in cells {
        all.extend(triangles_of_dual3_cell(t)?);
    }
    Ok(VenkovComplex::from_triangles(all))
}

/// Graph on facet pairs; red edges come from primitive ridges, blue edges
/// from non-primitive ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VenkovGraph {
    pub vertices: Vec<ParityClass>,
    pub red_edges: Vec<Edge>,
    pub blue_edges: Vec<Edge>,
}

/// The two facets of a ridge, as facet vectors, and its type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RidgeEdge {
    pub facets: [LatticeVector; 2],
    pub kind: RidgeType,
}

pub fn build_venkov_graph(facet_vectors: &[LatticeVector], ridges: &[RidgeEdge]) -> Result<VenkovGraph> {
    let vertices: BTreeSet<ParityClass> = facet_vectors.iter().map(LatticeVector::parity).collect();
    let mut red = BTreeSet::new();
    let mut blue = BTreeSet::new();
    for r in ridges {
        let (a, b) = (r.facets[0].parity(), r.facets[1].parity());
        let e = edge(a, b);
        match r.kind {
            RidgeType::Primitive => red.insert(e),
            RidgeType::NonPrimitive => blue.insert(e),
        };
    }
    if let Some([a, b]) = red.intersection(&blue).next() {
        return Err(Error::RedBlueConflict(*a, *b));
    }
    Ok(VenkovGraph {
        vertices: vertices.into_iter().collect(),
        red_edges: red.into_iter().collect(),
        blue_edges: blue.into_iter().collect(),
    })
}

impl VenkovGraph {
    /// Number of connected components of the red graph, isolated vertices
    /// included.
    pub fn red_components(&self) -> usize {
        let index: BTreeMap<ParityClass, usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.vertices.len();
        for [a, b] in &self.red_edges {
            let (ra, rb) = (find(&mut parent, index[a]), find(&mut parent, index[b]));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        components
    }

    pub fn isolated_vertices(&self) -> usize {
        let touched: BTreeSet<ParityClass> = self.red_edges.iter().flatten().copied().collect();
        self.vertices.iter().filter(|v| !touched.contains(v)).count()
    }

    pub fn red_index(&self) -> EdgeIndex {
        EdgeIndex::new(&self.red_edges)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkeletonReport {
    pub matches: bool,
    pub isolated: usize,
}

/// The 1-skeleton of the complex against the red graph: the edge sets must
/// coincide and the complex may only miss isolated graph vertices.
pub fn skeleton_check(complex: &VenkovComplex, graph: &VenkovGraph) -> SkeletonReport {
    let graph_vertices: BTreeSet<_> = graph.vertices.iter().collect();
    let matches = complex.edges() == graph.red_edges.as_slice()
        && complex.vertices().iter().all(|v| graph_vertices.contains(v));
    SkeletonReport {
        matches,
        isolated: graph.isolated_vertices(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub f1: usize,
    pub rank_delta0: usize,
    pub rank_delta1: usize,
    pub h1_trivial: bool,
}

fn unit(sign: i32) -> BigInt {
    BigInt::from(sign)
}

/// `H^1 = 0` iff `rank(delta_0) + rank(delta_1) = f_1`.
pub fn cohomology_check(complex: &VenkovComplex) -> CohomologyReport {
    let vindex: BTreeMap<ParityClass, usize> = complex
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (*v, i))
        .collect();
    let eindex = EdgeIndex::new(complex.edges());
    let f0 = complex.vertices().len();
    let f1 = complex.edges().len();

    let delta0: Vec<Vec<BigInt>> = complex
        .edges()
        .iter()
        .map(|[a, b]| {
            let mut row = vec![BigInt::zero(); f0];
            row[vindex[a]] = unit(-1);
            row[vindex[b]] = unit(1);
            row
        })
        .collect();
    let delta1: Vec<Vec<BigInt>> = complex
        .triangles()
        .iter()
        .map(|t| {
            let [u, v, w] = t.labels();
            let mut row = vec![BigInt::zero(); f1];
            row[eindex.get(&[v, w]).expect("edge of triangle")] = unit(1);
            row[eindex.get(&[u, w]).expect("edge of triangle")] = unit(-1);
            row[eindex.get(&[u, v]).expect("edge of triangle")] = unit(1);
            row
        })
        .collect();
    let rank_delta0 = integer_rank(delta0, f0);
    let rank_delta1 = integer_rank(delta1, f1);
    CohomologyReport {
        f1,
        rank_delta0,
        rank_delta1,
        h1_trivial: rank_delta0 + rank_delta1 == f1,
    }
}

/// A fixed order on a set of edges.
#[derive(Clone, Debug, Default)]
pub struct EdgeIndex {
    edges: Vec<Edge>,
    map: BTreeMap<Edge, usize>,
}

impl EdgeIndex {
    pub fn new(edges: &[Edge]) -> Self {
        EdgeIndex {
            edges: edges.to_vec(),
            map: edges.iter().enumerate().map(|(i, e)| (*e, i)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn get(&self, e: &Edge) -> Option<usize> {
        self.map.get(e).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
}

/// A 1-chain over oriented edges; edge `[a, b]` (with `a < b`) is oriented
/// from `a` to `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleVector {
    pub coeffs: Vec<Rational>,
}

impl CycleVector {
    /// The chain of a closed walk `x_0, x_1, ..., x_{k-1}` (returning to
    /// `x_0`); every step must be an edge of `index`.
    pub fn from_closed_walk(walk: &[ParityClass], index: &EdgeIndex) -> Result<Self> {
        let mut coeffs = vec![Rational::zero(); index.len()];
        for (i, &a) in walk.iter().enumerate() {
            let b = walk[(i + 1) % walk.len()];
            let e = edge(a, b);
            let k = index.get(&e).ok_or(Error::MissingRedEdge(e[0], e[1]))?;
            if a < b {
                coeffs[k] += Rational::one();
            } else {
                coeffs[k] -= Rational::one();
            }
        }
        Ok(CycleVector { coeffs })
    }

    /// Sorted indices of the edges with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    /// Boundary is zero: at every vertex the signed coefficients cancel.
    pub fn is_closed(&self, index: &EdgeIndex) -> bool {
        let mut balance: BTreeMap<ParityClass, Rational> = BTreeMap::new();
        for (k, [a, b]) in index.edges().iter().enumerate() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            *balance.entry(*a).or_insert_with(Rational::zero) -= c;
            *balance.entry(*b).or_insert_with(Rational::zero) += c;
        }
        balance.values().all(Zero::is_zero)
    }
}

fn dedup_cycles(cycles: Vec<CycleVector>) -> Vec<CycleVector> {
    let mut seen = BTreeSet::new();
    cycles
        .into_iter()
        .filter(|c| seen.insert(c.support()))
        .collect()
}

/// Half-belt cycles: for each primitive ridge with tiles `t0, t1, t2`, the
/// triangle on the facet pairs of `t1 - t0`, `t2 - t1`, `t0 - t2`.
pub fn half_belt_cycles(graph: &VenkovGraph, primitive_ridges: &[DualCell]) -> Result<Vec<CycleVector>> {
    let index = graph.red_index();
    let mut out = Vec::new();
    for cell in primitive_ridges {
        let [t0, t1, t2] = [&cell.points[0], &cell.points[1], &cell.points[2]];
        let walk = [(t1 - t0).parity(), (t2 - t1).parity(), (t0 - t2).parity()];
        out.push(CycleVector::from_closed_walk(&walk, &index)?);
    }
    Ok(dedup_cycles(out))
}

/// Facet vectors around the origin of a dual 3-cell, in cyclic order, when
/// every 2-face of the cell at the origin is a triangle.
pub fn link_of_origin(cell: &Dual3Type, include_pyramid_apex: bool) -> Option<Vec<LatticeVector>> {
    match cell {
        Dual3Type::Tetrahedron { points } => {
            if !points.iter().any(LatticeVector::is_zero) {
                return None;
            }
            Some(points.iter().filter(|p| !p.is_zero()).cloned().collect())
        }
        Dual3Type::Octahedron { pairs } => {
            let at = pairs.iter().position(|(a, b)| a.is_zero() || b.is_zero())?;
            let others: Vec<&(LatticeVector, LatticeVector)> =
                (0..3).filter(|&i| i != at).map(|i| &pairs[i]).collect();
            let (b, e) = others[0];
            let (c, f) = others[1];
            Some(vec![b.clone(), c.clone(), e.clone(), f.clone()])
        }
        Dual3Type::Pyramid { apex, base } if include_pyramid_apex && apex.is_zero() => {
            Some(base.to_vec())
        }
        _ => None,
    }
}

/// Cycles of facet pairs around the (d-3)-faces of the cell whose dual
/// 3-cells have only triangular 2-faces at the origin.
///
/// `cells` are the per-face dual cells (each contains the origin), not
/// translation representatives.
pub fn trivially_contractible_cycles(
    graph: &VenkovGraph,
    cells: &[(DualCell, Dual3Type)],
    include_pyramid_apex: bool,
) -> Result<Vec<CycleVector>> {
    let index = graph.red_index();
    let mut out = Vec::new();
    for (_, t) in cells {
        if let Some(link) = link_of_origin(t, include_pyramid_apex) {
            let walk: Vec<ParityClass> = link.iter().map(LatticeVector::parity).collect();
            out.push(CycleVector::from_closed_walk(&walk, &index)?);
        }
    }
    Ok(dedup_cycles(out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GgmReport {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub cyclomatic: usize,
    pub basic_cycle_rank: usize,
    pub holds: bool,
}

/// Compares the rank of the basic cycles with the cyclomatic number
/// `e - v + k` of the red graph.
pub fn ggm_check(graph: &VenkovGraph, cycles: &[CycleVector]) -> GgmReport {
    let v = graph.vertices.len();
    let e = graph.red_edges.len();
    let k = graph.red_components();
    let cyclomatic = e + k - v;
    let rows: Vec<&[Rational]> = cycles.iter().map(|c| c.coeffs.as_slice()).collect();
    let basic_cycle_rank = rank_of_rows(&rows, e);
    GgmReport {
        vertices: v,
        edges: e,
        components: k,
        cyclomatic,
        basic_cycle_rank,
        holds: basic_cycle_rank == cyclomatic,
    }
}

/// True iff no dual 3-cell is a prism or a cube.
pub fn ordine_check(census: &Dual3Census) -> bool {
    census.prism == 0 && census.cube == 0
}

/// Every cycle (indexed by `cycle_edges`) lies in the rational span of the
/// triangle boundaries of `complex`.
pub fn triangle_span_check(
    complex: &VenkovComplex,
    cycle_edges: &EdgeIndex,
    cycles: &[CycleVector],
) -> bool {
    let index = EdgeIndex::new(complex.edges());
    let n = index.len();
    let mut boundaries: Vec<Vec<Rational>> = complex
        .triangles()
        .iter()
        .map(|t| {
            let mut row = vec![Rational::zero(); n];
            let [u, v, w] = t.labels();
            row[index.get(&[v, w]).expect("edge of triangle")] = Rational::one();
            row[index.get(&[u, w]).expect("edge of triangle")] = -Rational::one();
            row[index.get(&[u, v]).expect("edge of triangle")] = Rational::one();
            row
        })
        .collect();
    let base = rank_of_rows(&boundaries, n);
    for c in cycles {
        let mut row = vec![Rational::zero(); n];
        for k in c.support() {
            let Some(j) = index.get(&cycle_edges.edges()[k]) else {
                return false;
            };
            row[j] = c.coeffs[k].clone();
        }
        boundaries.push(row);
    }
    rank_of_rows(&boundaries, n) == base
}
