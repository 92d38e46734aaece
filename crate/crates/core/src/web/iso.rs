//! Comparing webs up to relabelling of interior vertices, with the boundary
//! held fixed.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::{EdgeId, Point2, VertexId, WebEdge, WebError, WebGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompareMode {
    /// Incidence only.
    UndirectedUnweighted,
    /// Direction and weight must agree; edges marked undirected compare
    /// without orientation.
    Exact,
}

/// `map[v]` is the vertex of the second web matched to vertex `v` of the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap(pub Vec<VertexId>);

impl VertexMap {
    pub fn get(&self, v: VertexId) -> VertexId {
        self.0[v.0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    VertexCount { a: usize, b: usize },
    EdgeCount { a: usize, b: usize },
    /// No interior vertex of the second web can play this vertex's part.
    NoImage { vertex: VertexId },
    /// Boundary vertices are joined differently.
    Boundary { label: u32 },
    /// The vertex cannot be reached from the boundary.
    Unreachable { vertex: VertexId },
    /// The graphs agree as undirected graphs but this edge of the first web
    /// differs in direction or weight.
    EdgeAttributes { edge: EdgeId },
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::VertexCount { a, b } => write!(f, "vertex counts differ ({a} vs {b})"),
            Self::EdgeCount { a, b } => write!(f, "edge counts differ ({a} vs {b})"),
            Self::NoImage { vertex } => write!(f, "no image for vertex {}", vertex.0),
            Self::Boundary { label } => write!(f, "boundary vertex {label} is attached differently"),
            Self::Unreachable { vertex } => {
                write!(f, "vertex {} is not reachable from the boundary", vertex.0)
            }
            Self::EdgeAttributes { edge } => {
                write!(f, "edge {edge} differs in direction or weight")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Anchored {
    Equal(VertexMap),
    Unequal(Mismatch),
}

impl Anchored {
    pub fn is_equal(&self) -> bool {
        matches!(self, Self::Equal(_))
    }
}

/// How an edge looks from one of its endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Sig {
    Plain,
    Out(u32),
    In(u32),
    Free(u32),
}

fn sig(e: &WebEdge, from: VertexId, mode: CompareMode) -> Sig {
    match mode {
        CompareMode::UndirectedUnweighted => Sig::Plain,
        CompareMode::Exact if e.undirected => Sig::Free(e.weight),
        CompareMode::Exact if e.tail == from => Sig::Out(e.weight),
        CompareMode::Exact => Sig::In(e.weight),
    }
}

struct Side<'a> {
    w: &'a WebGraph,
    adj: Vec<Vec<(VertexId, EdgeId)>>,
}

impl<'a> Side<'a> {
    fn new(w: &'a WebGraph) -> Self {
        let mut adj = vec![Vec::new(); w.vertices().len()];
        for (i, e) in w.edges().iter().enumerate() {
            adj[e.tail.0].push((e.head, EdgeId(i)));
            adj[e.head.0].push((e.tail, EdgeId(i)));
        }
        Self { w, adj }
    }

    /// Sorted signatures of the edges between `u` and `v`, seen from `u`.
    fn between(&self, u: VertexId, v: VertexId, mode: CompareMode) -> Vec<Sig> {
        let mut out: Vec<Sig> = self.adj[u.0]
            .iter()
            .filter(|(x, _)| *x == v)
            .map(|&(_, e)| sig(self.w.edge(e), u, mode))
            .collect();
        out.sort_unstable();
        out
    }
}

struct Search<'a> {
    a: Side<'a>,
    b: Side<'a>,
    mode: CompareMode,
    order: Vec<(VertexId, VertexId)>, // (vertex, already-placed neighbour)
    map: Vec<Option<VertexId>>,
    used: Vec<bool>,
    deepest: usize,
}

impl Search<'_> {
    fn consistent(&self, v: VertexId, c: VertexId) -> bool {
        if self.a.adj[v.0].len() != self.b.adj[c.0].len() {
            return false;
        }
        let mut mapped_a = 0;
        for &(u, _) in &self.a.adj[v.0] {
            if let Some(fu) = self.map[u.0] {
                mapped_a += 1;
                if self.a.between(v, u, self.mode) != self.b.between(c, fu, self.mode) {
                    return false;
                }
            }
        }
        let mapped_b = self.b.adj[c.0].iter().filter(|(x, _)| self.used[x.0]).count();
        mapped_a == mapped_b
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        self.deepest = self.deepest.max(depth);
        let (v, parent) = self.order[depth];
        let anchor = self.map[parent.0].expect("parent placed before child");
        let mut candidates: Vec<VertexId> = self.b.adj[anchor.0]
            .iter()
            .map(|&(x, _)| x)
            .filter(|x| !self.used[x.0] && !self.b.w.is_boundary(*x))
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
        for c in candidates {
            if self.consistent(v, c) {
                self.map[v.0] = Some(c);
                self.used[c.0] = true;
                if self.extend(depth + 1) {
                    return true;
                }
                self.map[v.0] = None;
                self.used[c.0] = false;
            }
        }
        false
    }
}

fn anchored(a: &WebGraph, b: &WebGraph, mode: CompareMode) -> Anchored {
    let (na, nb) = (a.vertices().len(), b.vertices().len());
    if na != nb {
        return Anchored::Unequal(Mismatch::VertexCount { a: na, b: nb });
    }
    let (ea, eb) = (a.edges().len(), b.edges().len());
    if ea != eb {
        return Anchored::Unequal(Mismatch::EdgeCount { a: ea, b: eb });
    }
    let size = a.size() as usize;
    let sa = Side::new(a);
    let sb = Side::new(b);

    let mut map = vec![None; na];
    let mut used = vec![false; na];
    for v in 0..size {
        map[v] = Some(VertexId(v));
        used[v] = true;
    }
    for v in 0..size {
        let id = VertexId(v);
        if sa.adj[v].len() != sb.adj[v].len() {
            return Anchored::Unequal(Mismatch::Boundary { label: v as u32 + 1 });
        }
        for &(u, _) in &sa.adj[v] {
            if a.is_boundary(u) && sa.between(id, u, mode) != sb.between(id, u, mode) {
                return Anchored::Unequal(Mismatch::Boundary { label: v as u32 + 1 });
            }
        }
    }

    // Breadth-first discovery order of interior vertices from the boundary.
    let mut order = Vec::with_capacity(na - size);
    let mut seen = vec![false; na];
    let mut queue: VecDeque<VertexId> = (0..size).map(VertexId).collect();
    seen[..size].fill(true);
    while let Some(u) = queue.pop_front() {
        for &(x, _) in &sa.adj[u.0] {
            if !seen[x.0] {
                seen[x.0] = true;
                order.push((x, u));
                queue.push_back(x);
            }
        }
    }
    if let Some(v) = (0..na).find(|&v| !seen[v]) {
        return Anchored::Unequal(Mismatch::Unreachable { vertex: VertexId(v) });
    }

    let mut search = Search {
        a: sa,
        b: sb,
        mode,
        order,
        map,
        used,
        deepest: 0,
    };
    if search.extend(0) {
        Anchored::Equal(VertexMap(
            search.map.into_iter().map(|v| v.expect("complete map")).collect(),
        ))
    } else {
        let vertex = search
            .order
            .get(search.deepest)
            .map_or(VertexId(size), |&(v, _)| v);
        Anchored::Unequal(Mismatch::NoImage { vertex })
    }
}

/// Looks for a bijection between the webs that fixes every boundary label
/// and carries edges to edges (with direction and weight in `Exact` mode).
pub fn web_equal_anchored(
    a: &WebGraph,
    b: &WebGraph,
    mode: CompareMode,
) -> Result<Anchored, WebError> {
    if a.size() != b.size() {
        return Err(WebError::MismatchedBoundary {
            a: a.size(),
            b: b.size(),
        });
    }
    if a.n() != b.n() {
        return Err(WebError::MismatchedRank { a: a.n(), b: b.n() });
    }
    let result = anchored(a, b, mode);
    if mode == CompareMode::UndirectedUnweighted || result.is_equal() {
        return Ok(result);
    }
    // Explain an exact failure by an edge, when the shapes agree.
    Ok(match anchored(a, b, CompareMode::UndirectedUnweighted) {
        Anchored::Equal(map) => {
            let images = map_edges(a, b, &map, &a.edge_ids().collect::<Vec<_>>());
            let edge = a
                .edge_ids()
                .zip(images)
                .find(|&(e, img)| {
                    let (x, y) = (a.edge(e), b.edge(img));
                    sig(x, x.tail, CompareMode::Exact) != sig(y, map.get(x.tail), CompareMode::Exact)
                })
                .map(|(e, _)| e);
            match edge {
                Some(edge) => Anchored::Unequal(Mismatch::EdgeAttributes { edge }),
                None => result,
            }
        }
        other => other,
    })
}

/// Images of `edges` (of `a`) in `b` under a vertex map. Parallel edges are
/// matched in id order, preferring identical direction and weight.
pub fn map_edges(a: &WebGraph, b: &WebGraph, map: &VertexMap, edges: &[EdgeId]) -> Vec<EdgeId> {
    let mut taken = vec![false; b.edges().len()];
    let mut by_pair: HashMap<(VertexId, VertexId), Vec<EdgeId>> = HashMap::new();
    for e in b.edge_ids() {
        let x = b.edge(e);
        let key = (x.tail.min(x.head), x.tail.max(x.head));
        by_pair.entry(key).or_default().push(e);
    }
    edges
        .iter()
        .map(|&e| {
            let x = a.edge(e);
            let (u, v) = (map.get(x.tail), map.get(x.head));
            let pool = by_pair.get(&(u.min(v), u.max(v))).map_or(&[][..], Vec::as_slice);
            let same = pool.iter().copied().find(|&f| {
                let y = b.edge(f);
                !taken[f.0] && y.tail == u && y.weight == x.weight
            });
            let pick = same
                .or_else(|| pool.iter().copied().find(|f| !taken[f.0]))
                .expect("vertex map carries edges to edges");
            taken[pick.0] = true;
            pick
        })
        .collect()
}

/// Literal comparison by vertex positions: both webs must occupy the same
/// points with the same edges between them.
pub fn web_equal_geometric(a: &WebGraph, b: &WebGraph, mode: CompareMode) -> bool {
    if a.size() != b.size() || a.vertices().len() != b.vertices().len() {
        return false;
    }
    let key = |w: &WebGraph, e: &WebEdge| -> (Point2, Point2, Option<u32>, bool) {
        let (p, q) = (w.vertex(e.tail).pos, w.vertex(e.head).pos);
        match mode {
            CompareMode::UndirectedUnweighted => (p.min(q), p.max(q), None, false),
            CompareMode::Exact if e.undirected => (p.min(q), p.max(q), Some(e.weight), true),
            CompareMode::Exact => (p, q, Some(e.weight), false),
        }
    };
    let mut pa: Vec<Point2> = a.vertices().iter().map(|v| v.pos).collect();
    let mut pb: Vec<Point2> = b.vertices().iter().map(|v| v.pos).collect();
    pa.sort_unstable();
    pb.sort_unstable();
    if pa != pb {
        return false;
    }
    let mut ka: Vec<_> = a.edges().iter().map(|e| key(a, e)).collect();
    let mut kb: Vec<_> = b.edges().iter().map(|e| key(b, e)).collect();
    ka.sort_unstable();
    kb.sort_unstable();
    ka == kb
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::web::{flip_edges, Point2};

    fn edge(tail: usize, head: usize, weight: u32) -> WebEdge {
        WebEdge {
            tail: VertexId(tail),
            head: VertexId(head),
            weight,
            undirected: false,
            provenance: vec![],
        }
    }

    // A single sl_3 sink with three boundary legs.
    fn claw() -> WebGraph {
        WebGraph::from_parts(
            3,
            3,
            vec![Point2::new(8, 4)],
            vec![edge(0, 3, 1), edge(1, 3, 1), edge(2, 3, 1)],
        )
        .unwrap()
    }

    #[test]
    fn identity() {
        let w = claw();
        assert!(web_equal_anchored(&w, &w, CompareMode::Exact).unwrap().is_equal());
    }

    #[test]
    fn flipped_edge_is_reported() {
        let w = claw();
        let f = flip_edges(&w, &[EdgeId(1)]).unwrap();
        assert!(web_equal_anchored(&w, &f, CompareMode::UndirectedUnweighted)
            .unwrap()
            .is_equal());
        assert_eq!(
            web_equal_anchored(&w, &f, CompareMode::Exact).unwrap(),
            Anchored::Unequal(Mismatch::EdgeAttributes { edge: EdgeId(1) })
        );
    }

    #[test]
    fn boundary_sizes_must_agree() {
        let small = WebGraph::from_parts(2, 2, vec![], vec![edge(0, 1, 1)]).unwrap();
        assert!(matches!(
            web_equal_anchored(&claw(), &small, CompareMode::Exact),
            Err(WebError::MismatchedBoundary { a: 3, b: 2 })
        ));
    }

    #[test]
    fn relabelled_interior_still_matches() {
        // two interior vertices listed in opposite orders
        let a = WebGraph::from_parts(
            3,
            4,
            vec![Point2::new(10, 4), Point2::new(14, 8)],
            vec![
                edge(0, 4, 1),
                edge(1, 4, 1),
                edge(4, 5, 2),
                edge(2, 5, 1),
                edge(5, 3, 1),
            ],
        );
        // the degree pattern is not a valid web, but the matcher does not care
        let a = a.unwrap();
        let b = WebGraph::from_parts(
            3,
            4,
            vec![Point2::new(14, 8), Point2::new(10, 4)],
            vec![
                edge(0, 5, 1),
                edge(1, 5, 1),
                edge(5, 4, 2),
                edge(2, 4, 1),
                edge(4, 3, 1),
            ],
        )
        .unwrap();
        match web_equal_anchored(&a, &b, CompareMode::Exact).unwrap() {
            Anchored::Equal(map) => {
                assert_eq!(map.get(VertexId(4)), VertexId(5));
                assert_eq!(map.get(VertexId(5)), VertexId(4));
            }
            other => panic!("expected a match, got {other:?}"),
        }
        assert!(web_equal_geometric(&a, &b, CompareMode::Exact));
    }

    #[test]
    fn rewired_boundary_is_rejected() {
        let a = claw();
        let b = WebGraph::from_parts(
            3,
            3,
            vec![Point2::new(8, 4), Point2::new(9, 4)],
            vec![edge(0, 3, 1), edge(1, 3, 1), edge(2, 4, 1)],
        )
        .unwrap();
        assert!(!web_equal_anchored(&a, &b, CompareMode::UndirectedUnweighted)
            .unwrap()
            .is_equal());
    }
}
