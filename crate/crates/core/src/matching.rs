//! Arcs, colored noncrossing matchings and their multicolored stacks.

use std::fmt;

use thiserror::Error;

use crate::tableau::{validate, Grid, StandardTableau, TableauError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("arc ({start},{end}) must satisfy 1 <= start < end <= {size}")]
    BadArc { start: u32, end: u32, size: u32 },
    #[error("color {color} is outside 1..={max}")]
    BadColor { color: u32, max: u32 },
    #[error("point {point} is used twice in layer {color}")]
    NotAMatching { color: u32, point: u32 },
    #[error("arcs {a} and {b} cross inside layer {color}")]
    Crossing { color: u32, a: Arc, b: Arc },
    #[error("boundary point {point} lies on no arc")]
    Uncovered { point: u32 },
    #[error("a multicolored matching needs at least two rows, got {rows}")]
    TooFewRows { rows: usize },
    #[error("matching is not standard rectangular: {0}")]
    NotStandardRectangular(Violation),
    #[error("rotated grid is not the rotation of a standard tableau")]
    BadRotatedGrid,
    #[error(transparent)]
    Tableau(#[from] TableauError),
}

/// An arc `(start, end)` with `start < end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub start: u32,
    pub end: u32,
}

impl Arc {
    pub fn new(start: u32, end: u32) -> Self {
        assert!(start < end, "arc ({start},{end}) is not increasing");
        Self { start, end }
    }

    /// True when `self` and `other` interleave as `i < i' < j < j'` in
    /// either order.
    pub fn crosses(&self, other: &Arc) -> bool {
        let (a, b) = if self.start < other.start {
            (self, other)
        } else {
            (other, self)
        };
        a.start < b.start && b.start < a.end && a.end < b.end
    }

    /// Mirror image across `x = (size + 1) / 2`.
    pub fn reflect(&self, size: u32) -> Arc {
        Arc::new(size + 1 - self.end, size + 1 - self.start)
    }

    pub fn touches(&self, point: u32) -> bool {
        self.start == point || self.end == point
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.start, self.end)
    }
}

/// Arcs of a single color, sorted by start point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredMatching {
    color: u32,
    arcs: Vec<Arc>,
}

impl ColoredMatching {
    pub fn color(&self) -> u32 {
        self.color
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }
}

/// A multicolored noncrossing matching on `1..=size`, with one layer per
/// color `1..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MulticoloredNcm {
    n: u32,
    size: u32,
    layers: Vec<ColoredMatching>,
}

/// A colored arc, used wherever an arc must be reported with its layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredArc {
    pub color: u32,
    pub arc: Arc,
}

impl fmt::Display for ColoredArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.arc, self.color)
    }
}

impl MulticoloredNcm {
    /// Builds and checks a multicolored NCM. `layers[x - 1]` holds the arcs of
    /// color `x`; there must be exactly `n - 1` layers.
    pub fn new(n: u32, size: u32, layers: Vec<Vec<Arc>>) -> Result<Self, MatchingError> {
        if n < 2 || layers.len() != (n - 1) as usize {
            return Err(MatchingError::TooFewRows {
                rows: layers.len() + 1,
            });
        }
        let mut covered = vec![false; size as usize + 1];
        let mut out = Vec::with_capacity(layers.len());
        for (idx, mut arcs) in layers.into_iter().enumerate() {
            let color = idx as u32 + 1;
            arcs.sort_unstable();
            let mut used = vec![false; size as usize + 1];
            for a in &arcs {
                if a.start == 0 || a.start >= a.end || a.end > size {
                    return Err(MatchingError::BadArc {
                        start: a.start,
                        end: a.end,
                        size,
                    });
                }
                for p in [a.start, a.end] {
                    if std::mem::replace(&mut used[p as usize], true) {
                        return Err(MatchingError::NotAMatching { color, point: p });
                    }
                    covered[p as usize] = true;
                }
            }
            for (i, a) in arcs.iter().enumerate() {
                if let Some(b) = arcs[i + 1..].iter().find(|b| a.crosses(b)) {
                    return Err(MatchingError::Crossing { color, a: *a, b: *b });
                }
            }
            out.push(ColoredMatching { color, arcs });
        }
        if let Some(point) = (1..=size).find(|&p| !covered[p as usize]) {
            return Err(MatchingError::Uncovered { point });
        }
        Ok(Self {
            n,
            size,
            layers: out,
        })
    }

    /// The `n` of `sl_n`; colors run over `1..n`.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of boundary points, `N`.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn layers(&self) -> &[ColoredMatching] {
        &self.layers
    }

    /// Arcs of color `color` (1-based).
    pub fn layer(&self, color: u32) -> &[Arc] {
        &self.layers[color as usize - 1].arcs
    }

    /// Every arc with its color, sorted by `(color, start)`.
    pub fn colored_arcs(&self) -> impl Iterator<Item = ColoredArc> + '_ {
        self.layers.iter().flat_map(|l| {
            l.arcs.iter().map(move |&arc| ColoredArc {
                color: l.color,
                arc,
            })
        })
    }
}

/// The first broken condition found by [`is_standard_rectangular`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub arc: ColoredArc,
    pub point: u32,
    pub reason: &'static str,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arc {} at point {}: {}", self.arc, self.point, self.reason)
    }
}

/// Pairs each value of `ends`, in iteration order, with the rightmost (or
/// leftmost) unpaired smaller entry of `pool`.
fn pair_rows(
    pool: &[u32],
    ends: impl Iterator<Item = u32>,
    pick_rightmost: bool,
) -> Option<Vec<Arc>> {
    let mut paired = vec![false; pool.len()];
    let mut arcs = Vec::with_capacity(pool.len());
    for j in ends {
        let mut candidates = (0..pool.len()).filter(|&c| !paired[c] && pool[c] < j);
        let chosen = if pick_rightmost {
            candidates.next_back()
        } else {
            candidates.next()
        }?;
        paired[chosen] = true;
        arcs.push(Arc::new(pool[chosen], j));
    }
    Some(arcs)
}

/// The multicolored NCM of a tableau: row `x + 1`, read left to right, is
/// paired against the rightmost smaller unpaired entry of row `x`.
pub fn ncm_from_tableau(t: &StandardTableau) -> Result<MulticoloredNcm, MatchingError> {
    let shape = t.shape();
    if shape.rows() < 2 {
        return Err(MatchingError::TooFewRows { rows: shape.rows() });
    }
    let layers = (1..shape.rows())
        .map(|x| {
            pair_rows(t.row(x), t.row(x + 1).iter().copied(), true)
                .expect("standard tableau always pairs")
        })
        .collect();
    MulticoloredNcm::new(shape.rows() as u32, shape.size() as u32, layers)
}

/// The multicolored NCM read off a rotated tableau: row `x`, right to left,
/// is paired against the leftmost smaller unpaired entry of row `x + 1`.
pub fn ncm_from_rotated_tableau(rho: &Grid) -> Result<MulticoloredNcm, MatchingError> {
    let rows = rho.len();
    if rows < 2 {
        return Err(MatchingError::TooFewRows { rows });
    }
    let size = rho.iter().map(Vec::len).sum::<usize>() as u32;
    let layers = (0..rows - 1)
        .map(|x| pair_rows(&rho[x + 1], rho[x].iter().rev().copied(), false))
        .collect::<Option<Vec<_>>>()
        .ok_or(MatchingError::BadRotatedGrid)?;
    MulticoloredNcm::new(rows as u32, size, layers)
}

/// Mirrors every arc and swaps color `x` with `n - x`.
pub fn reflect_ncm(m: &MulticoloredNcm) -> MulticoloredNcm {
    let mut layers = vec![Vec::new(); m.layers.len()];
    for ca in m.colored_arcs() {
        layers[(m.n - ca.color) as usize - 1].push(ca.arc.reflect(m.size));
    }
    for l in &mut layers {
        l.sort_unstable();
    }
    MulticoloredNcm {
        n: m.n,
        size: m.size,
        layers: layers
            .into_iter()
            .enumerate()
            .map(|(i, arcs)| ColoredMatching {
                color: i as u32 + 1,
                arcs,
            })
            .collect(),
    }
}

/// Checks the shared-endpoint pattern of NCMs coming from rectangular
/// tableaux. Violations are reported in `(layer, start)` order.
pub fn is_standard_rectangular(m: &MulticoloredNcm) -> Result<(), Violation> {
    let top = m.n - 1;
    // (color, arc) lists of arcs through each point.
    let mut at: Vec<Vec<ColoredArc>> = vec![Vec::new(); m.size as usize + 1];
    for ca in m.colored_arcs() {
        at[ca.arc.start as usize].push(ca);
        at[ca.arc.end as usize].push(ca);
    }
    for ca in m.colored_arcs() {
        let others = |p: u32| -> Vec<ColoredArc> {
            at[p as usize].iter().copied().filter(|o| *o != ca).collect()
        };
        let fail = |point, reason| Violation {
            arc: ca,
            point,
            reason,
        };
        let (i, j, x) = (ca.arc.start, ca.arc.end, ca.color);
        let at_start = others(i);
        if x > 1 {
            if at_start.len() != 1 {
                return Err(fail(i, "start must be shared with exactly one other arc"));
            }
            if at_start[0].color != x - 1 {
                return Err(fail(i, "start must be shared with an arc of the previous color"));
            }
        } else if !at_start.is_empty() {
            return Err(fail(i, "start of a color-1 arc must lie on no other arc"));
        }
        let at_end = others(j);
        if x < top {
            if at_end.len() != 1 {
                return Err(fail(j, "end must be shared with exactly one other arc"));
            }
            if at_end[0].color != x + 1 {
                return Err(fail(j, "end must be shared with an arc of the next color"));
            }
        } else if !at_end.is_empty() {
            return Err(fail(j, "end of a top-color arc must lie on no other arc"));
        }
    }
    Ok(())
}

/// Inverse of [`ncm_from_tableau`] on standard rectangular NCMs.
pub fn tableau_from_ncm(m: &MulticoloredNcm) -> Result<StandardTableau, MatchingError> {
    is_standard_rectangular(m).map_err(MatchingError::NotStandardRectangular)?;
    let mut grid: Grid = Vec::with_capacity(m.n as usize);
    let mut first: Vec<u32> = m.layer(1).iter().map(|a| a.start).collect();
    first.sort_unstable();
    grid.push(first);
    for l in &m.layers {
        let mut row: Vec<u32> = l.arcs.iter().map(|a| a.end).collect();
        row.sort_unstable();
        grid.push(row);
    }
    let t = validate(&grid)?;
    let back = ncm_from_tableau(&t)?;
    if back != *m {
        let arc = m
            .colored_arcs()
            .find(|ca| !back.layer(ca.color).contains(&ca.arc))
            .expect("distinct NCMs differ in some arc");
        return Err(MatchingError::NotStandardRectangular(Violation {
            arc,
            point: arc.arc.start,
            reason: "arc is not produced by the reconstructed tableau",
        }));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::validate;

    pub(crate) fn ncm(n: u32, size: u32, layers: &[&[(u32, u32)]]) -> MulticoloredNcm {
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

    fn syt(grid: &[&[u32]]) -> StandardTableau {
        validate(&grid.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn crossing_predicate() {
        assert!(Arc::new(1, 3).crosses(&Arc::new(2, 4)));
        assert!(Arc::new(2, 4).crosses(&Arc::new(1, 3)));
        assert!(!Arc::new(1, 4).crosses(&Arc::new(2, 3)));
        assert!(!Arc::new(1, 2).crosses(&Arc::new(2, 3)));
        assert!(!Arc::new(1, 2).crosses(&Arc::new(3, 4)));
    }

    #[test]
    fn construction_rejects_bad_layers() {
        let bad = |layers: Vec<Vec<Arc>>| MulticoloredNcm::new(2, 4, layers).unwrap_err();
        assert!(matches!(
            bad(vec![vec![Arc::new(1, 3), Arc::new(2, 4)]]),
            MatchingError::Crossing { color: 1, .. }
        ));
        assert!(matches!(
            bad(vec![vec![Arc::new(1, 2), Arc::new(2, 4)]]),
            MatchingError::NotAMatching { point: 2, .. }
        ));
        assert!(matches!(
            bad(vec![vec![Arc::new(1, 2)]]),
            MatchingError::Uncovered { point: 3 }
        ));
        assert!(matches!(
            bad(vec![vec![Arc::new(1, 5)]]),
            MatchingError::BadArc { .. }
        ));
    }

    #[test]
    fn cross_color_crossings_are_allowed() {
        let m = ncm(4, 8, &[&[(1, 4), (2, 3)], &[(3, 7), (4, 5)], &[(5, 6), (7, 8)]]);
        assert!(Arc::new(1, 4).crosses(&Arc::new(3, 7)));
        assert_eq!(is_standard_rectangular(&m), Ok(()));
    }

    #[test]
    fn smallest_standard_rectangular() {
        assert_eq!(is_standard_rectangular(&ncm(2, 2, &[&[(1, 2)]])), Ok(()));
    }

    #[test]
    fn standard_rectangular_witness() {
        // point 2 ends a color-1 arc but no color-2 arc starts there
        let m = ncm(3, 4, &[&[(1, 2)], &[(3, 4)]]);
        let v = is_standard_rectangular(&m).unwrap_err();
        assert_eq!(v.arc.arc, Arc::new(1, 2));
        assert_eq!(v.point, 2);
    }

    #[test]
    fn ncm_from_sl3_example() {
        let t = syt(&[&[1, 2, 3], &[4, 5, 8], &[6, 7, 9]]);
        let m = ncm_from_tableau(&t).unwrap();
        assert_eq!(m, ncm(3, 9, &[&[(1, 8), (2, 5), (3, 4)], &[(4, 7), (5, 6), (8, 9)]]));
    }

    #[test]
    fn single_row_is_rejected() {
        assert!(matches!(
            ncm_from_tableau(&syt(&[&[1, 2, 3]])),
            Err(MatchingError::TooFewRows { rows: 1 })
        ));
    }

    #[test]
    fn reconstruction_two_rows() {
        let m = ncm(2, 4, &[&[(1, 2), (3, 4)]]);
        let t = tableau_from_ncm(&m).unwrap();
        assert_eq!(t, syt(&[&[1, 3], &[2, 4]]));
        assert_eq!(ncm_from_tableau(&t).unwrap(), m);
    }

    #[test]
    fn reconstruction_rejects_nonstandard() {
        let m = ncm(3, 4, &[&[(1, 2)], &[(3, 4)]]);
        assert!(matches!(
            tableau_from_ncm(&m),
            Err(MatchingError::NotStandardRectangular(_))
        ));
    }

    #[test]
    fn one_column_rotation_reverses_colors() {
        for n in 2..=5u32 {
            let t = validate(&(1..=n).map(|v| vec![v]).collect::<Vec<_>>()).unwrap();
            let m = ncm_from_tableau(&t).unwrap();
            let rho = crate::tableau::rotate180(&t);
            let r = ncm_from_rotated_tableau(&rho).unwrap();
            for x in 1..n {
                assert_eq!(r.layer(x), m.layer(n - x));
                // the chain (x, x+1) of T becomes (n - x, n - x + 1) in color x
                assert_eq!(r.layer(x), &[Arc::new(n - x, n - x + 1)]);
            }
        }
    }
}
