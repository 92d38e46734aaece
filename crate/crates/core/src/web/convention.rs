//! The customary drawing conventions for `sl_3` and `sl_4` webs.
//!
//! For `sl_3` every edge has weight 1 and interior vertices are sources or
//! sinks. For `sl_4` weight-2 edges carry no direction and the weight-1 edges
//! again make every interior vertex a source or a sink.

use super::{flip_in_place, EdgeId, VertexId, WebError, WebGraph};

/// Rewrites `w` into the convention by edge flips. Orientation of edges that
/// become undirected is normalised to run from the lower vertex id.
pub fn apply_convention_34(w: &WebGraph) -> Result<WebGraph, WebError> {
    let n = w.n();
    if n != 3 && n != 4 {
        return Err(WebError::UnsupportedRank(n));
    }
    let mut out = w.clone();
    for i in 0..out.edges.len() {
        let weight = out.edges[i].weight;
        if weight == n - 1 && weight != 1 {
            flip_in_place(&mut out, EdgeId(i));
        }
        let e = &mut out.edges[i];
        if n == 4 && e.weight == 2 {
            e.undirected = true;
            if e.head < e.tail {
                std::mem::swap(&mut e.tail, &mut e.head);
                for s in &mut e.provenance {
                    s.along = !s.along;
                }
            }
        }
    }
    check_convention_34(&out)?;
    Ok(out)
}

/// Checks that `w` is already in the convention, naming the first vertex
/// where it fails.
pub fn check_convention_34(w: &WebGraph) -> Result<(), WebError> {
    let n = w.n();
    if n != 3 && n != 4 {
        return Err(WebError::UnsupportedRank(n));
    }
    let fail = |v: VertexId| WebError::ConventionUnreachable { n, vertex: v.0 };
    for e in w.edges() {
        let ok = match e.weight {
            1 => !e.undirected,
            2 => n == 4 && e.undirected,
            _ => false,
        };
        if !ok {
            return Err(fail(e.tail));
        }
        if w.is_boundary(e.head) || (e.undirected && w.is_boundary(e.tail)) {
            return Err(fail(e.head));
        }
    }
    let mut ins = vec![0usize; w.vertices().len()];
    let mut outs = vec![0usize; w.vertices().len()];
    for e in w.edges().iter().filter(|e| e.weight == 1) {
        outs[e.tail.0] += 1;
        ins[e.head.0] += 1;
    }
    match (w.size() as usize..w.vertices().len()).find(|&v| ins[v] > 0 && outs[v] > 0) {
        Some(v) => Err(fail(VertexId(v))),
        None => Ok(()),
    }
}
