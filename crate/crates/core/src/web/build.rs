//! Resolving a standard rectangular NCM into a web: a Y at every shared
//! boundary point, a dumbbell at every crossing, and the remaining arc
//! pieces as single-arc edges.

use crate::matching::{ncm_from_tableau, ColoredArc, MulticoloredNcm};
use crate::tableau::StandardTableau;

use super::arrangement::{arrangement_from_ncm, Event};
use super::{flip_in_place, EdgeId, Point2, Strand, VertexId, WebEdge, WebError, WebGraph, UNIT};

/// Edge joining two arcs that run over it in opposite directions. The edge
/// follows the higher color and is weighted by the color difference.
/// `first` runs from `a` to `b`, `second` from `b` to `a`.
fn two_arc_edge(a: VertexId, b: VertexId, first: ColoredArc, second: ColoredArc) -> WebEdge {
    let (tail, head, weight) = if first.color > second.color {
        (a, b, first.color - second.color)
    } else {
        (b, a, second.color - first.color)
    };
    let along_first = tail == a;
    WebEdge {
        tail,
        head,
        weight,
        undirected: false,
        provenance: vec![
            Strand {
                arc: first,
                along: along_first,
            },
            Strand {
                arc: second,
                along: !along_first,
            },
        ],
    }
}

/// The web of a standard rectangular NCM, before boundary standardisation.
///
/// Interior vertices are numbered Y vertices first (by boundary point), then
/// dumbbell pairs by crossing position, top vertex before bottom.
pub fn web_from_ncm(m: &MulticoloredNcm) -> Result<WebGraph, WebError> {
    let arr = arrangement_from_ncm(m)?;
    let size = m.size() as usize;
    let boundary = |p: u32| VertexId(p as usize - 1);

    let mut interior = Vec::with_capacity(arr.junctions.len() + 2 * arr.crossings.len());
    let mut junction_vertex = vec![None; size + 1];
    for &p in &arr.junctions {
        junction_vertex[p as usize] = Some(VertexId(size + interior.len()));
        interior.push(Point2::new(UNIT * p as i64, 1));
    }
    let first_dumbbell = size + interior.len();
    for c in &arr.crossings {
        interior.push(c.point);
        interior.push(Point2::new(c.point.x, c.point.y - 1));
    }
    let top = |index: usize| VertexId(first_dumbbell + 2 * index);
    let bottom = |index: usize| VertexId(first_dumbbell + 2 * index + 1);

    let mut edges = Vec::new();

    // Y stems: the arc ending at p comes down into the boundary, the arc
    // starting at p goes up out of it.
    let ending = |p: u32| m.colored_arcs().find(|a| a.arc.end == p);
    let starting = |p: u32| m.colored_arcs().find(|a| a.arc.start == p);
    for &p in &arr.junctions {
        let y = junction_vertex[p as usize].expect("junction vertex");
        let down = ending(p).expect("junction has an incoming arc");
        let up = starting(p).expect("junction has an outgoing arc");
        edges.push(two_arc_edge(boundary(p), y, up, down));
    }

    // Dumbbell bars: the left arc runs top -> bottom, the right arc bottom -> top.
    for (index, c) in arr.crossings.iter().enumerate() {
        edges.push(two_arc_edge(top(index), bottom(index), c.left, c.right));
    }

    // Single-arc pieces between consecutive stops.
    for a in &arr.arcs {
        let stations: Vec<(VertexId, VertexId)> = a
            .events
            .iter()
            .filter_map(|ev| match *ev {
                Event::Boundary(p) => Some((boundary(p), boundary(p))),
                Event::Junction(p) => {
                    let y = junction_vertex[p as usize].expect("junction vertex");
                    Some((y, y))
                }
                Event::Crossing { index, descending } => Some(if descending {
                    (top(index), bottom(index))
                } else {
                    (bottom(index), top(index))
                }),
                Event::Apex => None,
            })
            .collect();
        for pair in stations.windows(2) {
            edges.push(WebEdge {
                tail: pair[0].1,
                head: pair[1].0,
                weight: a.arc.color,
                undirected: false,
                provenance: vec![Strand {
                    arc: a.arc,
                    along: true,
                }],
            });
        }
    }

    WebGraph::from_parts(m.n(), m.size(), interior, edges)
}

/// Rewrites every boundary edge to leave the boundary with weight 1, by
/// flipping the edges that end top-color arcs. A strand joining two boundary
/// points directly (only possible for `n = 2`) cannot point out of both
/// ends, so it is marked undirected instead.
pub fn standardize_boundary(w: &WebGraph) -> WebGraph {
    let mut out = w.clone();
    for i in 0..out.edges.len() {
        let e = &out.edges[i];
        match (out.is_boundary(e.tail), out.is_boundary(e.head)) {
            (true, true) => out.edges[i].undirected = true,
            (false, true) => flip_in_place(&mut out, EdgeId(i)),
            _ => {}
        }
    }
    debug_assert!(out
        .edges
        .iter()
        .filter(|e| out.is_boundary(e.tail) || out.is_boundary(e.head))
        .all(|e| e.weight == 1));
    out
}

/// `w_T`: the standardised web of the tableau's multicolored NCM.
pub fn web_from_tableau(t: &StandardTableau) -> Result<WebGraph, WebError> {
    let m = ncm_from_tableau(t)?;
    Ok(standardize_boundary(&web_from_ncm(&m)?))
}
