//! Exhaustive checking of the tableau / matching / web correspondences over
//! every tableau of a shape.
//!
//! Each tableau is checked independently; per-shape results are combined by
//! merging, keeping the failure of the lowest-indexed tableau, so the report
//! does not depend on scheduling.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;

use crate::format::print_web;
use crate::matching::{
    is_standard_rectangular, ncm_from_rotated_tableau, ncm_from_tableau, reflect_ncm,
    tableau_from_ncm, MulticoloredNcm,
};
use crate::tableau::{
    count_syt, enumerate_syt, evacuate, evacuate_fast, promote, rotate180, Shape,
    StandardTableau, TableauError,
};
use crate::web::{
    apply_convention_34, arrangement_from_ncm, check_web, flip_edges, map_edges, reflect_web,
    single_arc_interior_edges, standardize_boundary, web_equal_anchored, web_equal_geometric,
    web_from_ncm, Anchored, CompareMode, EdgeId, WebGraph,
};

/// Named checks, declared in the order reports list them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Conventions34,
    EvacuationInvolution,
    FlipInvolution,
    LeftSquare,
    NcmRoundTrip,
    PpLemma,
    PromotionPeriod,
    ReflectNcmInvolution,
    ReflectWebInvolution,
    RightSquareEdgeSets,
    RightSquareStrong,
    RightSquareWeak,
    RotatedNcm,
    WebInvariants,
}

impl Check {
    pub const ALL: [Check; 14] = [
        Check::Conventions34,
        Check::EvacuationInvolution,
        Check::FlipInvolution,
        Check::LeftSquare,
        Check::NcmRoundTrip,
        Check::PpLemma,
        Check::PromotionPeriod,
        Check::ReflectNcmInvolution,
        Check::ReflectWebInvolution,
        Check::RightSquareEdgeSets,
        Check::RightSquareStrong,
        Check::RightSquareWeak,
        Check::RotatedNcm,
        Check::WebInvariants,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Conventions34 => "conventions_34",
            Check::EvacuationInvolution => "evacuation_involution",
            Check::FlipInvolution => "flip_involution",
            Check::LeftSquare => "left_square",
            Check::NcmRoundTrip => "ncm_round_trip",
            Check::PpLemma => "pp_lemma",
            Check::PromotionPeriod => "promotion_period",
            Check::ReflectNcmInvolution => "reflect_ncm_involution",
            Check::ReflectWebInvolution => "reflect_web_involution",
            Check::RightSquareEdgeSets => "right_square_edge_sets",
            Check::RightSquareStrong => "right_square_strong",
            Check::RightSquareWeak => "right_square_weak",
            Check::RotatedNcm => "rotated_ncm",
            Check::WebInvariants => "web_invariants",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of one check on one tableau. A failure carries a one-line
/// description of the offending object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Skipped,
    Fail(String),
}

impl Outcome {
    fn from_result(r: Result<(), String>) -> Self {
        match r {
            Ok(()) => Outcome::Pass,
            Err(msg) => Outcome::Fail(msg),
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn one_line(text: &str) -> String {
    text.trim_end().replace('\n', ";")
}

fn web_witness(label: &str, w: &WebGraph) -> String {
    format!("{label}={}", one_line(&print_web(w)))
}

fn ncm_witness(m: &MulticoloredNcm) -> String {
    let arcs: Vec<String> = m.colored_arcs().map(|a| a.to_string()).collect();
    arcs.join(",")
}

/// Everything the web checks share for one tableau.
struct Webs {
    raw: WebGraph,
    w_t: WebGraph,
    w_e: WebGraph,
    phi: WebGraph,
    e_t: Vec<EdgeId>,
}

impl Webs {
    fn build(t: &StandardTableau, e: &StandardTableau) -> Result<Self, String> {
        let m_t = ncm_from_tableau(t).map_err(|err| err.to_string())?;
        let m_e = ncm_from_tableau(e).map_err(|err| err.to_string())?;
        let raw = web_from_ncm(&m_t).map_err(|err| err.to_string())?;
        let w_t = standardize_boundary(&raw);
        let w_e = standardize_boundary(&web_from_ncm(&m_e).map_err(|err| err.to_string())?);
        let phi = reflect_web(&w_t);
        let e_t = single_arc_interior_edges(&w_t).map_err(|err| err.to_string())?;
        Ok(Self {
            raw,
            w_t,
            w_e,
            phi,
            e_t,
        })
    }
}

fn has_matchings(t: &StandardTableau) -> bool {
    t.shape().rows() >= 2
}

/// `phi(M^T) = M^{E(T)}`.
pub fn check_left_square(t: &StandardTableau) -> Outcome {
    if !has_matchings(t) {
        return Outcome::Skipped;
    }
    Outcome::from_result(left_square(t, &evacuate(t)))
}

fn left_square(t: &StandardTableau, e: &StandardTableau) -> Result<(), String> {
    let lhs = reflect_ncm(&ncm_from_tableau(t).map_err(|err| err.to_string())?);
    let rhs = ncm_from_tableau(e).map_err(|err| err.to_string())?;
    ensure(lhs == rhs, || format!("reflected={} evacuated={}", ncm_witness(&lhs), ncm_witness(&rhs)))
}

/// The three parts of the right square for one tableau.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightSquare {
    /// `phi(w_T)` and `w_{E(T)}` agree as undirected unweighted graphs.
    pub weak: Outcome,
    /// `phi(E_T) = E_{E(T)}`.
    pub edge_sets: Outcome,
    /// Flipping `phi(E_T)` in `phi(w_T)` gives exactly `w_{E(T)}`.
    pub strong: Outcome,
}

pub fn check_right_square(t: &StandardTableau) -> RightSquare {
    if !has_matchings(t) {
        return RightSquare {
            weak: Outcome::Skipped,
            edge_sets: Outcome::Skipped,
            strong: Outcome::Skipped,
        };
    }
    match Webs::build(t, &evacuate(t)) {
        Ok(webs) => right_square(&webs),
        Err(msg) => RightSquare {
            weak: Outcome::Fail(msg.clone()),
            edge_sets: Outcome::Fail(msg.clone()),
            strong: Outcome::Fail(msg),
        },
    }
}

fn right_square(webs: &Webs) -> RightSquare {
    let map = match web_equal_anchored(&webs.phi, &webs.w_e, CompareMode::UndirectedUnweighted) {
        Ok(Anchored::Equal(map)) => map,
        Ok(Anchored::Unequal(why)) => {
            let msg = format!("{why} {}", web_witness("reflected", &webs.phi));
            return RightSquare {
                weak: Outcome::Fail(msg),
                edge_sets: Outcome::Fail("no boundary-fixing isomorphism".into()),
                strong: Outcome::Fail("no boundary-fixing isomorphism".into()),
            };
        }
        Err(err) => {
            let msg = err.to_string();
            return RightSquare {
                weak: Outcome::Fail(msg.clone()),
                edge_sets: Outcome::Fail(msg.clone()),
                strong: Outcome::Fail(msg),
            };
        }
    };

    // reflection keeps edge ids, so phi(E_T) has the same ids as E_T
    let edge_sets = match single_arc_interior_edges(&webs.w_e) {
        Ok(e_e) => {
            let image: BTreeSet<EdgeId> =
                map_edges(&webs.phi, &webs.w_e, &map, &webs.e_t).into_iter().collect();
            let target: BTreeSet<EdgeId> = e_e.into_iter().collect();
            Outcome::from_result(ensure(image == target, || {
                format!("image={image:?} expected={target:?}")
            }))
        }
        Err(err) => Outcome::Fail(err.to_string()),
    };

    let strong = flip_edges(&webs.phi, &webs.e_t)
        .map_err(|err| err.to_string())
        .and_then(|flipped| {
            match web_equal_anchored(&flipped, &webs.w_e, CompareMode::Exact) {
                Ok(Anchored::Equal(_)) => {}
                Ok(Anchored::Unequal(why)) => {
                    return Err(format!("{why} {}", web_witness("flipped", &flipped)))
                }
                Err(err) => return Err(err.to_string()),
            }
            ensure(web_equal_geometric(&flipped, &webs.w_e, CompareMode::Exact), || {
                format!("positions differ {}", web_witness("flipped", &flipped))
            })
        });

    RightSquare {
        weak: Outcome::Pass,
        edge_sets,
        strong: Outcome::from_result(strong),
    }
}

/// For `n` in `{3, 4}`: the conventional forms of `phi(w_T)` and
/// `w_{E(T)}` coincide exactly.
pub fn check_conventions_34(t: &StandardTableau) -> Outcome {
    if !matches!(t.shape().rows(), 3 | 4) {
        return Outcome::Skipped;
    }
    match Webs::build(t, &evacuate(t)) {
        Ok(webs) => conventions(&webs),
        Err(msg) => Outcome::Fail(msg),
    }
}

fn conventions(webs: &Webs) -> Outcome {
    let result = (|| {
        let a = apply_convention_34(&webs.phi).map_err(|err| err.to_string())?;
        let b = apply_convention_34(&webs.w_e).map_err(|err| err.to_string())?;
        match web_equal_anchored(&a, &b, CompareMode::Exact).map_err(|err| err.to_string())? {
            Anchored::Equal(_) => Ok(()),
            Anchored::Unequal(why) => Err(format!("{why} {}", web_witness("reflected", &a))),
        }
    })();
    Outcome::from_result(result)
}

fn web_invariants(t: &StandardTableau, webs: &Webs) -> Result<(), String> {
    for (label, w) in [("raw", &webs.raw), ("standard", &webs.w_t), ("reflected", &webs.phi)] {
        check_web(w).map_err(|v| format!("{label}: {v} {}", web_witness(label, w)))?;
    }
    let m = ncm_from_tableau(t).map_err(|err| err.to_string())?;
    let arr = arrangement_from_ncm(&m).map_err(|err| err.to_string())?;
    let interior = webs.w_t.interior_count();
    let expected = 2 * arr.crossings.len() + arr.junctions.len();
    ensure(interior == expected, || {
        format!("{interior} interior vertices, expected {expected}")
    })?;
    let edges = webs.w_t.edges().len();
    ensure(2 * edges == 3 * interior + webs.w_t.size() as usize, || {
        format!("{edges} edges for {interior} interior vertices")
    })?;
    for e in webs.w_t.edges() {
        if webs.w_t.is_boundary(e.tail) || webs.w_t.is_boundary(e.head) {
            let outward = webs.w_t.is_boundary(e.tail) || e.undirected;
            ensure(outward && e.weight == 1, || {
                format!("boundary edge {:?}->{:?} weight {}", e.tail, e.head, e.weight)
            })?;
        }
    }
    let weights = |w: &WebGraph| {
        let mut v: Vec<u32> = w.edges().iter().map(|e| e.weight).collect();
        v.sort_unstable();
        v
    };
    ensure(weights(&webs.phi) == weights(&webs.w_t), || {
        "reflection changed the weight multiset".to_string()
    })
}

fn rotated_ncm(t: &StandardTableau, e: &StandardTableau) -> Result<(), String> {
    let m_t = ncm_from_tableau(t).map_err(|err| err.to_string())?;
    let m_e = ncm_from_tableau(e).map_err(|err| err.to_string())?;
    let rho = ncm_from_rotated_tableau(&rotate180(t)).map_err(|err| err.to_string())?;
    let n = m_t.n();
    let size = m_t.size();
    for x in 1..n {
        ensure(rho.layer(x) == m_t.layer(n - x), || {
            format!("rotated layer {x} differs: {}", ncm_witness(&rho))
        })?;
        let mut mirrored: Vec<_> = rho.layer(x).iter().map(|a| a.reflect(size)).collect();
        mirrored.sort_unstable();
        ensure(mirrored == m_e.layer(x), || {
            format!("mirrored rotated layer {x} differs from evacuated: {}", ncm_witness(&m_e))
        })?;
    }
    Ok(())
}

fn ncm_round_trip(t: &StandardTableau) -> Result<(), String> {
    let m = ncm_from_tableau(t).map_err(|err| err.to_string())?;
    is_standard_rectangular(&m).map_err(|v| v.to_string())?;
    let k = t.shape().cols();
    ensure(m.layers().iter().all(|l| l.arcs().len() == k), || {
        format!("layer sizes differ from {k}: {}", ncm_witness(&m))
    })?;
    let back = tableau_from_ncm(&m).map_err(|err| err.to_string())?;
    ensure(back == *t, || format!("reconstructed {back}"))
}

fn reflect_ncm_involution(t: &StandardTableau) -> Result<(), String> {
    let m = ncm_from_tableau(t).map_err(|err| err.to_string())?;
    let r = reflect_ncm(&m);
    is_standard_rectangular(&r).map_err(|v| format!("reflection not standard: {v}"))?;
    ensure(reflect_ncm(&r) == m, || ncm_witness(&r))
}

fn promotion_period(t: &StandardTableau) -> Result<(), String> {
    let mut p = t.clone();
    for _ in 0..t.shape().size() {
        p = promote(&p);
    }
    ensure(p == *t, || format!("after N promotions {p}"))
}

fn flip_involution(webs: &Webs) -> Result<(), String> {
    let all: Vec<EdgeId> = webs.w_t.edge_ids().collect();
    let once = flip_edges(&webs.w_t, &all).map_err(|err| err.to_string())?;
    crate::web::check_flow(&once).map_err(|v| format!("after flipping all edges: {v}"))?;
    let twice = flip_edges(&once, &all).map_err(|err| err.to_string())?;
    ensure(twice == webs.w_t, || web_witness("twice", &twice))
}

/// Runs every check on one tableau, in [`Check::ALL`] order.
pub fn check_tableau(t: &StandardTableau) -> [Outcome; 14] {
    let e = evacuate(t);
    let mut out: BTreeMap<Check, Outcome> = BTreeMap::new();
    out.insert(
        Check::EvacuationInvolution,
        Outcome::from_result(ensure(evacuate(&e) == *t, || format!("E(E(T))={}", evacuate(&e)))),
    );
    let fast = evacuate_fast(t);
    out.insert(
        Check::PpLemma,
        Outcome::from_result(ensure(fast == e, || format!("fast={fast} slow={e}"))),
    );
    out.insert(Check::PromotionPeriod, Outcome::from_result(promotion_period(t)));

    if has_matchings(t) {
        out.insert(Check::LeftSquare, Outcome::from_result(left_square(t, &e)));
        out.insert(Check::NcmRoundTrip, Outcome::from_result(ncm_round_trip(t)));
        out.insert(Check::RotatedNcm, Outcome::from_result(rotated_ncm(t, &e)));
        out.insert(
            Check::ReflectNcmInvolution,
            Outcome::from_result(reflect_ncm_involution(t)),
        );
        match Webs::build(t, &e) {
            Ok(webs) => {
                out.insert(
                    Check::WebInvariants,
                    Outcome::from_result(web_invariants(t, &webs)),
                );
                out.insert(
                    Check::ReflectWebInvolution,
                    Outcome::from_result(ensure(reflect_web(&webs.phi) == webs.w_t, || {
                        web_witness("reflected", &webs.phi)
                    })),
                );
                out.insert(Check::FlipInvolution, Outcome::from_result(flip_involution(&webs)));
                let rs = right_square(&webs);
                out.insert(Check::RightSquareWeak, rs.weak);
                out.insert(Check::RightSquareEdgeSets, rs.edge_sets);
                out.insert(Check::RightSquareStrong, rs.strong);
                if matches!(t.shape().rows(), 3 | 4) {
                    out.insert(Check::Conventions34, conventions(&webs));
                }
            }
            Err(msg) => {
                for c in [
                    Check::WebInvariants,
                    Check::ReflectWebInvolution,
                    Check::FlipInvolution,
                    Check::RightSquareWeak,
                    Check::RightSquareEdgeSets,
                    Check::RightSquareStrong,
                ] {
                    out.insert(c, Outcome::Fail(msg.clone()));
                }
            }
        }
    }
    Check::ALL.map(|c| out.remove(&c).unwrap_or(Outcome::Skipped))
}

/// Aggregated status of one check over a shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Skipped,
    /// Failure of the first (lowest reading word) failing tableau.
    Fail { tableau: StandardTableau, detail: String },
}

impl Status {
    fn token(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Skipped => "skip",
            Status::Fail { .. } => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub shape: Shape,
    /// Hook-length count.
    pub expected_count: BigUint,
    /// Tableaux actually checked; zero when the budget stopped the run.
    pub tableau_count: u64,
    pub budget_error: Option<TableauError>,
    pub checks: BTreeMap<Check, Status>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = (Check, &Status)> {
        self.checks
            .iter()
            .filter(|(_, s)| matches!(s, Status::Fail { .. }))
            .map(|(c, s)| (*c, s))
    }

    pub fn passed(&self) -> bool {
        self.budget_error.is_none() && self.failures().next().is_none()
    }

    pub fn status(&self, check: Check) -> &Status {
        &self.checks[&check]
    }

    /// Report lines `<shape> <check> <status> <witness-or-dash>`, sorted.
    pub fn lines(&self) -> Vec<String> {
        let mut lines = Vec::with_capacity(self.checks.len() + 1);
        lines.push(match &self.budget_error {
            None => format!("{} enumeration pass count={}", self.shape, self.tableau_count),
            Some(err) => format!("{} enumeration fail {}", self.shape, one_line(&err.to_string())),
        });
        for (check, status) in &self.checks {
            let witness = match status {
                Status::Fail { tableau, detail } => {
                    let word: Vec<String> =
                        tableau.reading_word().iter().map(u32::to_string).collect();
                    format!("word={} {}", word.join(","), one_line(detail))
                }
                _ => "-".to_string(),
            };
            lines.push(format!("{} {} {} {}", self.shape, check, status.token(), witness));
        }
        lines.sort();
        lines
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Serializes reports in the order given, one line per check.
pub fn render_reports(reports: &[VerificationReport]) -> String {
    reports.iter().map(ToString::to_string).collect()
}

/// Per-check running state: whether anything ran and the earliest failure.
#[derive(Debug, Clone, Default)]
struct Tally {
    ran: [bool; 14],
    first_fail: [Option<(usize, String)>; 14],
}

impl Tally {
    fn of(index: usize, outcomes: [Outcome; 14]) -> Self {
        let mut t = Tally::default();
        for (slot, outcome) in outcomes.into_iter().enumerate() {
            match outcome {
                Outcome::Pass => t.ran[slot] = true,
                Outcome::Skipped => {}
                Outcome::Fail(msg) => {
                    t.ran[slot] = true;
                    t.first_fail[slot] = Some((index, msg));
                }
            }
        }
        t
    }

    fn merge(mut self, mut other: Tally) -> Tally {
        for slot in 0..14 {
            self.ran[slot] |= other.ran[slot];
            let earlier = match (&self.first_fail[slot], &other.first_fail[slot]) {
                (_, None) => false,
                (None, Some(_)) => true,
                (Some((a, _)), Some((b, _))) => b < a,
            };
            if earlier {
                self.first_fail[slot] = other.first_fail[slot].take();
            }
        }
        self
    }
}

/// How per-tableau work is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Data-parallel over tableaux; identical to `Sequential` when the crate
    /// is built without the `parallel` feature.
    #[default]
    Parallel,
}

fn tally(tableaux: &[StandardTableau], execution: Execution) -> Tally {
    #[cfg(feature = "parallel")]
    if execution == Execution::Parallel {
        use rayon::prelude::*;
        return tableaux
            .par_iter()
            .enumerate()
            .map(|(i, t)| Tally::of(i, check_tableau(t)))
            .reduce(Tally::default, Tally::merge);
    }
    let _ = execution;
    tableaux
        .iter()
        .enumerate()
        .map(|(i, t)| Tally::of(i, check_tableau(t)))
        .fold(Tally::default(), Tally::merge)
}

/// Checks every tableau of one shape.
pub fn verify_shape(shape: Shape, budget: u64, execution: Execution) -> VerificationReport {
    let expected_count = count_syt(shape);
    let tableaux = match enumerate_syt(shape, budget) {
        Ok(ts) => ts,
        Err(err) => {
            return VerificationReport {
                shape,
                expected_count,
                tableau_count: 0,
                budget_error: Some(err),
                checks: BTreeMap::new(),
            }
        }
    };
    let mut tally = tally(&tableaux, execution);
    let checks = Check::ALL
        .iter()
        .enumerate()
        .map(|(slot, &check)| {
            let status = match tally.first_fail[slot].take() {
                Some((index, detail)) => Status::Fail {
                    tableau: tableaux[index].clone(),
                    detail,
                },
                None if tally.ran[slot] => Status::Pass,
                None => Status::Skipped,
            };
            (check, status)
        })
        .collect();
    VerificationReport {
        shape,
        expected_count,
        tableau_count: tableaux.len() as u64,
        budget_error: None,
        checks,
    }
}

/// Verifies each shape in turn; a shape over budget is reported, not fatal.
/// Reports come back sorted by shape.
pub fn run_suite(shapes: &[Shape], budget: u64, execution: Execution) -> Vec<VerificationReport> {
    let mut shapes = shapes.to_vec();
    shapes.sort_unstable();
    shapes.dedup();
    shapes
        .into_iter()
        .map(|s| verify_shape(s, budget, execution))
        .collect()
}
