//! Arcs drawn as slope +-1 triangles over the boundary line, and where they
//! meet.

use std::collections::{BTreeSet, HashSet};

use crate::matching::{is_standard_rectangular, ColoredArc, MatchingError, MulticoloredNcm};

use super::{Point2, WebError, UNIT};

/// Two arcs `(i,j)` and `(i',j')` with `i < i' < j < j'`. The crossing lies
/// on the descending side of `left` and the ascending side of `right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub left: ColoredArc,
    pub right: ColoredArc,
    pub point: Point2,
}

impl Crossing {
    fn new(left: ColoredArc, right: ColoredArc) -> Self {
        let (i2, j) = (right.arc.start as i64, left.arc.end as i64);
        Self {
            left,
            right,
            point: Point2::new(UNIT * (i2 + j) / 2, UNIT * (j - i2) / 2),
        }
    }
}

/// One stop along an arc's clockwise traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Event {
    /// A boundary point on no other arc.
    Boundary(u32),
    /// A boundary point shared with an arc of the neighbouring color.
    Junction(u32),
    /// Index into [`Arrangement::crossings`]; `descending` is true when the
    /// arc is the crossing's `left` arc.
    Crossing { index: usize, descending: bool },
    Apex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcEvents {
    pub arc: ColoredArc,
    pub events: Vec<Event>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    /// Sorted by `(x, y)` of the crossing point.
    pub crossings: Vec<Crossing>,
    /// One entry per arc, in `(color, start)` order.
    pub arcs: Vec<ArcEvents>,
    /// Boundary points lying on two arcs, ascending.
    pub junctions: Vec<u32>,
}

fn apex(a: &ColoredArc) -> Point2 {
    let (i, j) = (a.arc.start as i64, a.arc.end as i64);
    Point2::new(UNIT * (i + j) / 2, UNIT * (j - i) / 2)
}

/// Computes every crossing of a standard rectangular NCM and the ordered
/// events along each arc.
pub fn arrangement_from_ncm(m: &MulticoloredNcm) -> Result<Arrangement, WebError> {
    is_standard_rectangular(m).map_err(MatchingError::NotStandardRectangular)?;
    let arcs: Vec<ColoredArc> = m.colored_arcs().collect();

    let mut crossings = Vec::new();
    for (k, a) in arcs.iter().enumerate() {
        for b in &arcs[k + 1..] {
            if a.arc.crosses(&b.arc) {
                let (left, right) = if a.arc.start < b.arc.start { (*a, *b) } else { (*b, *a) };
                crossings.push(Crossing::new(left, right));
            }
        }
    }
    crossings.sort_by_key(|c| (c.point.x, c.point.y));

    let apexes: HashSet<Point2> = arcs.iter().map(apex).collect();
    let mut seen = HashSet::new();
    for c in &crossings {
        if !seen.insert(c.point) {
            return Err(WebError::DegenerateArrangement(format!(
                "two crossings meet at ({},{})",
                c.point.x, c.point.y
            )));
        }
        if apexes.contains(&c.point) {
            return Err(WebError::DegenerateArrangement(format!(
                "crossing of {} and {} hits an apex",
                c.left, c.right
            )));
        }
    }

    let mut endpoint_count = vec![0u8; m.size() as usize + 1];
    for a in &arcs {
        endpoint_count[a.arc.start as usize] += 1;
        endpoint_count[a.arc.end as usize] += 1;
    }
    let site = |p: u32| {
        if endpoint_count[p as usize] > 1 {
            Event::Junction(p)
        } else {
            Event::Boundary(p)
        }
    };
    let junctions: BTreeSet<u32> = (1..=m.size())
        .filter(|&p| endpoint_count[p as usize] > 1)
        .collect();

    let arcs = arcs
        .iter()
        .map(|a| {
            let mut events = vec![site(a.arc.start)];
            // crossings are already in x order
            events.extend(crossings.iter().enumerate().filter_map(|(index, c)| {
                (c.right == *a).then_some(Event::Crossing {
                    index,
                    descending: false,
                })
            }));
            events.push(Event::Apex);
            events.extend(crossings.iter().enumerate().filter_map(|(index, c)| {
                (c.left == *a).then_some(Event::Crossing {
                    index,
                    descending: true,
                })
            }));
            events.push(site(a.arc.end));
            ArcEvents { arc: *a, events }
        })
        .collect();

    Ok(Arrangement {
        crossings,
        arcs,
        junctions: junctions.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::{Arc, MulticoloredNcm};

    fn ncm(n: u32, size: u32, layers: &[&[(u32, u32)]]) -> MulticoloredNcm {
        MulticoloredNcm::new(
            n,
            size,
            layers
                .iter()
                .map(|l| l.iter().map(|&(i, j)| Arc::new(i, j)).collect())
                .collect(),
        )
        .unwrap()
    }

    // Independent oracle: scan every pair of arcs for interleaving.
    fn brute_crossings(m: &MulticoloredNcm) -> BTreeSet<((u32, u32), (u32, u32))> {
        let arcs: Vec<_> = m.colored_arcs().map(|c| c.arc).collect();
        let mut out = BTreeSet::new();
        for a in &arcs {
            for b in &arcs {
                if a.start < b.start && b.start < a.end && a.end < b.end {
                    out.insert(((a.start, a.end), (b.start, b.end)));
                }
            }
        }
        out
    }

    fn found(arr: &Arrangement) -> BTreeSet<((u32, u32), (u32, u32))> {
        arr.crossings
            .iter()
            .map(|c| {
                (
                    (c.left.arc.start, c.left.arc.end),
                    (c.right.arc.start, c.right.arc.end),
                )
            })
            .collect()
    }

    #[test]
    fn intro_matching() {
        let m = ncm(
            5,
            10,
            &[&[(1, 4), (2, 3)], &[(3, 7), (4, 5)], &[(5, 6), (7, 8)], &[(6, 10), (8, 9)]],
        );
        let arr = arrangement_from_ncm(&m).unwrap();
        let expected: BTreeSet<_> = [((1, 4), (3, 7)), ((3, 7), (6, 10))].into_iter().collect();
        assert_eq!(found(&arr), expected);
        assert_eq!(found(&arr), brute_crossings(&m));
        assert_eq!(arr.junctions, vec![3, 4, 5, 6, 7, 8]);
        // (1,4) x (3,7) sits at x = 3.5, y = 0.5
        assert_eq!(arr.crossings[0].point, Point2::new(14, 2));
    }

    #[test]
    fn four_by_three_matching() {
        let m = ncm(
            4,
            12,
            &[&[(1, 2), (3, 4), (5, 8)], &[(2, 10), (4, 6), (8, 9)], &[(6, 7), (9, 12), (10, 11)]],
        );
        let arr = arrangement_from_ncm(&m).unwrap();
        let expected: BTreeSet<_> = [((4, 6), (5, 8)), ((2, 10), (9, 12))].into_iter().collect();
        assert_eq!(found(&arr), expected);
        assert_eq!(found(&arr), brute_crossings(&m));
    }

    #[test]
    fn single_arc() {
        let arr = arrangement_from_ncm(&ncm(2, 2, &[&[(1, 2)]])).unwrap();
        assert!(arr.crossings.is_empty());
        assert!(arr.junctions.is_empty());
        assert_eq!(
            arr.arcs[0].events,
            vec![Event::Boundary(1), Event::Apex, Event::Boundary(2)]
        );
    }

    #[test]
    fn events_are_ordered() {
        let m = ncm(
            5,
            10,
            &[&[(1, 4), (2, 3)], &[(3, 7), (4, 5)], &[(5, 6), (7, 8)], &[(6, 10), (8, 9)]],
        );
        let arr = arrangement_from_ncm(&m).unwrap();
        let a37 = arr.arcs.iter().find(|a| a.arc.arc == Arc::new(3, 7)).unwrap();
        assert_eq!(
            a37.events,
            vec![
                Event::Junction(3),
                Event::Crossing { index: 0, descending: false },
                Event::Apex,
                Event::Crossing { index: 1, descending: true },
                Event::Junction(7),
            ]
        );
    }

    #[test]
    fn rejects_nonstandard() {
        let m = ncm(3, 4, &[&[(1, 2)], &[(3, 4)]]);
        assert!(matches!(arrangement_from_ncm(&m), Err(WebError::Matching(_))));
    }
}
