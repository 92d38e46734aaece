//! Rotation system and face tracing of a positioned web.
//!
//! Edges are drawn as the arc pieces they came from: a straight segment, or
//! two slope +-1 legs meeting at an apex when the piece runs over the top of
//! its arc. The apex is recovered from the endpoint positions alone, so webs
//! read from text embed the same way as freshly built ones.

use std::cmp::Ordering;
use std::fmt;

use super::{EdgeId, VertexId, WebGraph};

/// A point in half lattice units (apexes can fall on half-points).
pub type HalfPoint = [i64; 2];

/// Polyline of edge `e` from tail to head, in half lattice units.
pub fn edge_path(w: &WebGraph, e: EdgeId) -> Vec<HalfPoint> {
    let edge = w.edge(e);
    let p = w.vertex(edge.tail).pos;
    let q = w.vertex(edge.head).pos;
    let (p, q) = ([2 * p.x, 2 * p.y], [2 * q.x, 2 * q.y]);
    let (l, r) = if p[0] <= q[0] { (p, q) } else { (q, p) };
    // Lines of slope +1 through l and slope -1 through r meet at the apex.
    let ax = (l[0] + r[0] + r[1] - l[1]) / 2;
    let ay = ax - l[0] + l[1];
    // Pieces along one leg stay within a lattice unit of it; pieces over an
    // apex rise at least a lattice unit and a half above both ends.
    let bends = l[0] < ax && ax < r[0] && ay - l[1].max(r[1]) > 2;
    if bends {
        vec![p, [ax, ay], q]
    } else {
        vec![p, q]
    }
}

/// One end of an edge, seen from the vertex it is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeEnd {
    pub edge: EdgeId,
    pub at_tail: bool,
}

impl EdgeEnd {
    fn dart(self) -> usize {
        2 * self.edge.0 + usize::from(!self.at_tail)
    }
}

fn angle_cmp(a: HalfPoint, b: HalfPoint) -> Ordering {
    let half = |v: HalfPoint| u8::from(!(v[1] > 0 || (v[1] == 0 && v[0] > 0)));
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a[0] * b[1] - a[1] * b[0];
        0.cmp(&cross)
    })
}

/// Counterclockwise cyclic order of edge ends around every vertex.
pub fn rotation_system(w: &WebGraph) -> Vec<Vec<EdgeEnd>> {
    let mut rot: Vec<Vec<(HalfPoint, EdgeEnd)>> = vec![Vec::new(); w.vertices().len()];
    for e in w.edge_ids() {
        let path = edge_path(w, e);
        let (s, s1) = (path[0], path[1]);
        let (t, t1) = (path[path.len() - 1], path[path.len() - 2]);
        let edge = w.edge(e);
        rot[edge.tail.0].push(([s1[0] - s[0], s1[1] - s[1]], EdgeEnd { edge: e, at_tail: true }));
        rot[edge.head.0].push(([t1[0] - t[0], t1[1] - t[1]], EdgeEnd { edge: e, at_tail: false }));
    }
    rot.into_iter()
        .map(|mut ends| {
            ends.sort_by(|a, b| angle_cmp(a.0, b.0));
            ends.into_iter().map(|(_, end)| end).collect()
        })
        .collect()
}

/// Result of face-tracing the rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarityReport {
    pub vertices: usize,
    pub edges: usize,
    /// Faces traced, counting each component's outer face separately.
    pub faces: usize,
    pub components: usize,
    /// Components whose `V - E + F` is not 2.
    pub nonplanar_components: usize,
    /// Components whose boundary vertices do not share a face.
    pub split_boundary_components: usize,
    /// Some vertex of a component with no boundary vertex.
    pub detached: Option<VertexId>,
}

impl PlanarityReport {
    pub fn is_plane(&self) -> bool {
        self.nonplanar_components == 0 && self.split_boundary_components == 0
    }

    /// Euler characteristic with all outer faces merged into one.
    pub fn merged_euler(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + (self.faces + 1 - self.components) as i64
    }
}

impl fmt::Display for PlanarityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "V={} E={} F={} C={} nonplanar={} split_boundary={}",
            self.vertices,
            self.edges,
            self.faces,
            self.components,
            self.nonplanar_components,
            self.split_boundary_components
        )
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Traces faces and checks that each component is a plane graph whose
/// boundary vertices share one face.
pub fn check_planarity(w: &WebGraph) -> PlanarityReport {
    let nv = w.vertices().len();
    let rot = rotation_system(w);
    let mut position = vec![0usize; 2 * w.edges().len()];
    for ends in &rot {
        for (i, end) in ends.iter().enumerate() {
            position[end.dart()] = i;
        }
    }

    let mut parent: Vec<usize> = (0..nv).collect();
    for e in w.edges() {
        let (a, b) = (find(&mut parent, e.tail.0), find(&mut parent, e.head.0));
        parent[a] = b;
    }
    let comp: Vec<usize> = (0..nv).map(|v| find(&mut parent, v)).collect();

    let mut faces_of = vec![0usize; nv];
    let mut edges_of = vec![0usize; nv];
    let mut verts_of = vec![0usize; nv];
    for v in 0..nv {
        verts_of[comp[v]] += 1;
        if rot[v].is_empty() {
            faces_of[comp[v]] += 1;
        }
    }
    for e in w.edges() {
        edges_of[comp[e.tail.0]] += 1;
    }

    let has_boundary = |c: usize| (0..w.size() as usize).any(|v| comp[v] == c);
    let mut boundary_face_found = vec![false; nv];
    let mut visited = vec![false; 2 * w.edges().len()];
    let mut faces = 0;
    for start in 0..visited.len() {
        if visited[start] {
            continue;
        }
        faces += 1;
        let mut boundary_seen = 0usize;
        let mut c = usize::MAX;
        let mut d = start;
        while !visited[d] {
            visited[d] = true;
            let edge = w.edge(EdgeId(d / 2));
            let (from, to) = if d % 2 == 0 {
                (edge.tail, edge.head)
            } else {
                (edge.head, edge.tail)
            };
            c = comp[from.0];
            if w.is_boundary(from) {
                boundary_seen += 1;
            }
            // leave `to` along the next end counterclockwise after the one we came in on
            let back = 2 * (d / 2) + usize::from(d % 2 == 0);
            let ends = &rot[to.0];
            d = ends[(position[back] + 1) % ends.len()].dart();
        }
        let boundary_in_comp = (0..w.size() as usize).filter(|&v| comp[v] == c).count();
        if boundary_in_comp > 0 && boundary_seen == boundary_in_comp {
            boundary_face_found[c] = true;
        }
        faces_of[c] += 1;
    }

    let roots: Vec<usize> = (0..nv).filter(|&v| comp[v] == v).collect();
    let mut report = PlanarityReport {
        vertices: nv,
        edges: w.edges().len(),
        faces: faces + (0..nv).filter(|&v| rot[v].is_empty()).count(),
        components: roots.len(),
        nonplanar_components: 0,
        split_boundary_components: 0,
        detached: None,
    };
    for &c in &roots {
        if verts_of[c] as i64 - edges_of[c] as i64 + faces_of[c] as i64 != 2 {
            report.nonplanar_components += 1;
        }
        if !has_boundary(c) {
            report.detached.get_or_insert(VertexId(c));
        } else if !boundary_face_found[c] {
            report.split_boundary_components += 1;
        }
    }
    report
}
