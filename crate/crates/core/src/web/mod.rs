//! `sl_n` web graphs built from standard rectangular multicolored NCMs.
//!
//! Geometry is exact: every position lives on the integer lattice in
//! quarter units, so boundary point `p` sits at `(4p, 0)`.

mod arrangement;
mod build;
mod convention;
mod embedding;
mod iso;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::matching::{ColoredArc, MatchingError};

pub use arrangement::{arrangement_from_ncm, ArcEvents, Arrangement, Crossing, Event};
pub use build::{standardize_boundary, web_from_ncm, web_from_tableau};
pub use convention::{apply_convention_34, check_convention_34};
pub use embedding::{
    check_planarity, edge_path, rotation_system, EdgeEnd, HalfPoint, PlanarityReport,
};
pub use iso::{
    map_edges, web_equal_anchored, web_equal_geometric, Anchored, CompareMode, Mismatch,
    VertexMap,
};

/// Lattice points per unit of boundary spacing.
pub const UNIT: i64 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WebError {
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error("degenerate arrangement: {0}")]
    DegenerateArrangement(String),
    #[error("edge {0} does not exist")]
    UnknownEdge(usize),
    #[error("webs have different boundaries: {a} vs {b} points")]
    MismatchedBoundary { a: u32, b: u32 },
    #[error("webs are for different ranks: sl_{a} vs sl_{b}")]
    MismatchedRank { a: u32, b: u32 },
    #[error("edge provenance is required but missing on edge {0}")]
    MissingProvenance(usize),
    #[error("no edge flips put vertex {vertex} into the sl_{n} convention")]
    ConventionUnreachable { n: u32, vertex: usize },
    #[error("the sl_3/sl_4 convention does not apply to sl_{0}")]
    UnsupportedRank(u32),
    #[error("malformed web: {0}")]
    Malformed(String),
}

/// An exact lattice point, in quarter units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: i64,
    pub y: i64,
}

impl Point2 {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// Boundary vertex with its label in `1..=N`.
    Boundary(u32),
    Interior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WebVertex {
    pub kind: VertexKind,
    pub pos: Point2,
}

/// One arc running over an edge. `along` is true when the arc's clockwise
/// traversal runs from the edge's tail to its head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strand {
    pub arc: ColoredArc,
    pub along: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WebEdge {
    pub tail: VertexId,
    pub head: VertexId,
    pub weight: u32,
    /// Orientation carries no meaning (weight-2 edges in the sl_4 convention,
    /// boundary-to-boundary strands in sl_2).
    pub undirected: bool,
    /// Arcs running over this edge; empty for webs read from text.
    pub provenance: Vec<Strand>,
}

impl WebEdge {
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

/// A planar directed edge-weighted graph with labeled boundary.
///
/// Vertex `VertexId(p - 1)` is boundary point `p`; interior vertices follow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WebGraph {
    n: u32,
    size: u32,
    vertices: Vec<WebVertex>,
    edges: Vec<WebEdge>,
}

impl WebGraph {
    /// Assembles a web from interior positions and edges, checking only that
    /// the pieces fit together (endpoints exist, weights in range, interior
    /// vertices strictly above the boundary line).
    pub fn from_parts(
        n: u32,
        size: u32,
        interior: Vec<Point2>,
        edges: Vec<WebEdge>,
    ) -> Result<Self, WebError> {
        if n < 2 {
            return Err(WebError::Malformed(format!("rank {n} has no edge weights")));
        }
        let mut vertices: Vec<WebVertex> = (1..=size)
            .map(|p| WebVertex {
                kind: VertexKind::Boundary(p),
                pos: Point2::new(UNIT * p as i64, 0),
            })
            .collect();
        for pos in interior {
            if pos.y <= 0 {
                return Err(WebError::Malformed(format!(
                    "interior vertex at ({},{}) is not above the boundary",
                    pos.x, pos.y
                )));
            }
            vertices.push(WebVertex {
                kind: VertexKind::Interior,
                pos,
            });
        }
        for (i, e) in edges.iter().enumerate() {
            if e.tail.0 >= vertices.len() || e.head.0 >= vertices.len() || e.tail == e.head {
                return Err(WebError::Malformed(format!("edge {i} has bad endpoints")));
            }
            if e.weight == 0 || e.weight >= n {
                return Err(WebError::Malformed(format!(
                    "edge {i} has weight {} outside 1..{n}",
                    e.weight
                )));
            }
        }
        Ok(Self {
            n,
            size,
            vertices,
            edges,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of boundary vertices, `N`.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn vertices(&self) -> &[WebVertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexId) -> &WebVertex {
        &self.vertices[v.0]
    }

    pub fn edges(&self) -> &[WebEdge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &WebEdge {
        &self.edges[e.0]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn boundary_vertex(&self, label: u32) -> VertexId {
        VertexId(label as usize - 1)
    }

    pub fn is_boundary(&self, v: VertexId) -> bool {
        v.0 < self.size as usize
    }

    pub fn interior_count(&self) -> usize {
        self.vertices.len() - self.size as usize
    }

    /// 1-based interior id as used by the text format.
    pub fn interior_id(&self, v: VertexId) -> Option<usize> {
        (!self.is_boundary(v)).then(|| v.0 - self.size as usize + 1)
    }

    /// Incident edges of every vertex, in edge-id order.
    pub fn incidence(&self) -> Vec<Vec<EdgeId>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.tail.0].push(EdgeId(i));
            inc[e.head.0].push(EdgeId(i));
        }
        inc
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.tail == v) + usize::from(e.head == v))
            .sum()
    }

    /// The same web with provenance dropped and edges renumbered in the
    /// order the text format prints them.
    pub fn canonical(&self) -> WebGraph {
        let mut edges: Vec<WebEdge> = self
            .edges
            .iter()
            .map(|e| WebEdge {
                provenance: Vec::new(),
                ..e.clone()
            })
            .collect();
        edges.sort_by_key(|e| (e.tail, e.head, e.weight, e.undirected));
        WebGraph {
            edges,
            ..self.clone()
        }
    }
}

/// Interior vertex whose net flow is nonzero mod `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowViolation {
    pub vertex: VertexId,
    /// In-weight minus out-weight.
    pub net: i64,
}

impl fmt::Display for FlowViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertex {} has net flow {}", self.vertex.0, self.net)
    }
}

/// Flow conservation mod `n` at every interior vertex.
pub fn check_flow(w: &WebGraph) -> Result<(), FlowViolation> {
    let mut net = vec![0i64; w.vertices.len()];
    for e in &w.edges {
        net[e.head.0] += e.weight as i64;
        net[e.tail.0] -= e.weight as i64;
    }
    let n = w.n as i64;
    match (w.size as usize..w.vertices.len()).find(|&v| net[v].rem_euclid(n) != 0) {
        Some(v) => Err(FlowViolation {
            vertex: VertexId(v),
            net: net[v],
        }),
        None => Ok(()),
    }
}

/// Mirror image across `x = (N + 1) / 2`. Boundary labels, positions and
/// provenance arcs are reflected; edge directions and weights are kept.
pub fn reflect_web(w: &WebGraph) -> WebGraph {
    let size = w.size as usize;
    let map = |v: VertexId| {
        if v.0 < size {
            VertexId(size - 1 - v.0)
        } else {
            v
        }
    };
    let mirror_x = UNIT * (w.size as i64 + 1);
    let mut vertices = w.vertices.clone();
    for (i, v) in w.vertices.iter().enumerate() {
        let j = map(VertexId(i)).0;
        vertices[j] = WebVertex {
            kind: match v.kind {
                VertexKind::Boundary(p) => VertexKind::Boundary(w.size + 1 - p),
                VertexKind::Interior => VertexKind::Interior,
            },
            pos: Point2::new(mirror_x - v.pos.x, v.pos.y),
        };
    }
    let edges = w
        .edges
        .iter()
        .map(|e| WebEdge {
            tail: map(e.tail),
            head: map(e.head),
            weight: e.weight,
            undirected: e.undirected,
            provenance: e
                .provenance
                .iter()
                .map(|s| Strand {
                    arc: ColoredArc {
                        color: w.n - s.arc.color,
                        arc: s.arc.arc.reflect(w.size),
                    },
                    // the mirrored arc runs clockwise the other way
                    along: !s.along,
                })
                .collect(),
        })
        .collect();
    WebGraph {
        vertices,
        edges,
        ..*w
    }
}

fn flip_in_place(w: &mut WebGraph, id: EdgeId) {
    let n = w.n;
    let e = &mut w.edges[id.0];
    std::mem::swap(&mut e.tail, &mut e.head);
    e.weight = n - e.weight;
    for s in &mut e.provenance {
        s.along = !s.along;
    }
}

/// Reverses each listed edge and replaces its weight `x` by `n - x`.
pub fn flip_edges(w: &WebGraph, edges: &[EdgeId]) -> Result<WebGraph, WebError> {
    let set: BTreeSet<EdgeId> = edges.iter().copied().collect();
    if let Some(bad) = set.iter().find(|e| e.0 >= w.edges.len()) {
        return Err(WebError::UnknownEdge(bad.0));
    }
    let mut out = w.clone();
    for id in set {
        flip_in_place(&mut out, id);
    }
    Ok(out)
}

/// Interior edges carrying exactly one arc.
pub fn single_arc_interior_edges(w: &WebGraph) -> Result<Vec<EdgeId>, WebError> {
    let mut out = Vec::new();
    for (i, e) in w.edges.iter().enumerate() {
        if e.provenance.is_empty() {
            return Err(WebError::MissingProvenance(i));
        }
        if !w.is_boundary(e.tail) && !w.is_boundary(e.head) && e.provenance.len() == 1 {
            out.push(EdgeId(i));
        }
    }
    Ok(out)
}

/// A broken structural invariant of a web.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WebViolation {
    BoundaryDegree { label: u32, degree: usize },
    InteriorDegree { vertex: VertexId, degree: usize },
    Weight { edge: EdgeId, weight: u32 },
    Flow(FlowViolation),
    Planarity(String),
    Detached { vertex: VertexId },
    Provenance { edge: EdgeId, strands: usize },
}

impl fmt::Display for WebViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::BoundaryDegree { label, degree } => {
                write!(f, "boundary vertex {label} has degree {degree}")
            }
            Self::InteriorDegree { vertex, degree } => {
                write!(f, "interior vertex {} has degree {degree}", vertex.0)
            }
            Self::Weight { edge, weight } => write!(f, "edge {edge} has weight {weight}"),
            Self::Flow(v) => v.fmt(f),
            Self::Planarity(msg) => write!(f, "not plane: {msg}"),
            Self::Detached { vertex } => {
                write!(f, "vertex {} is in a component without boundary", vertex.0)
            }
            Self::Provenance { edge, strands } => {
                write!(f, "edge {edge} carries {strands} strands")
            }
        }
    }
}

/// Checks degrees, weights, flow, planarity, that every component reaches
/// the boundary, and (when present) the one-or-two-strand provenance rule.
pub fn check_web(w: &WebGraph) -> Result<(), WebViolation> {
    for v in 0..w.vertices.len() {
        let id = VertexId(v);
        let degree = w.degree(id);
        match w.vertices[v].kind {
            VertexKind::Boundary(label) if degree != 1 => {
                return Err(WebViolation::BoundaryDegree { label, degree })
            }
            VertexKind::Interior if degree != 3 => {
                return Err(WebViolation::InteriorDegree { vertex: id, degree })
            }
            _ => {}
        }
    }
    for (i, e) in w.edges.iter().enumerate() {
        if e.weight == 0 || e.weight >= w.n {
            return Err(WebViolation::Weight {
                edge: EdgeId(i),
                weight: e.weight,
            });
        }
        let strands = e.provenance.len();
        if strands > 2 {
            return Err(WebViolation::Provenance {
                edge: EdgeId(i),
                strands,
            });
        }
        if strands == 2 && e.provenance[0].along == e.provenance[1].along {
            return Err(WebViolation::Provenance {
                edge: EdgeId(i),
                strands,
            });
        }
    }
    check_flow(w).map_err(WebViolation::Flow)?;
    let report = check_planarity(w);
    if let Some(v) = report.detached {
        return Err(WebViolation::Detached { vertex: v });
    }
    if !report.is_plane() {
        return Err(WebViolation::Planarity(report.to_string()));
    }
    Ok(())
}
