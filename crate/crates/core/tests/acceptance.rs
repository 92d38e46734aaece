//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use webvac::format::{
    parse_ncm, parse_tableau, parse_web, print_ncm, print_tableau, print_web,
};
use webvac::matching::{ncm_from_tableau, reflect_ncm};
use webvac::render::{render_ncm, render_web, Format, Kind, RenderSpec};
use webvac::tableau::{
    count_syt, enumerate_syt, evacuate, evacuate_fast, validate, Shape, StandardTableau,
    DEFAULT_BUDGET,
};
use webvac::verify::{run_suite, Check, Execution, Status, VerificationReport};
use webvac::web::{reflect_web, web_from_tableau};

fn shape(n: usize, k: usize) -> Shape {
    Shape::new(n, k).unwrap()
}

fn shape_set() -> Vec<Shape> {
    let mut v: Vec<Shape> = (1..=8).map(|k| shape(2, k)).collect();
    v.extend([(3, 2), (3, 3), (3, 4), (4, 2), (4, 3), (5, 2)].map(|(n, k)| shape(n, k)));
    v
}

fn all_tableaux() -> Vec<StandardTableau> {
    shape_set()
        .into_iter()
        .flat_map(|s| enumerate_syt(s, DEFAULT_BUDGET).unwrap())
        .collect()
}

type Verdict = Result<String, String>;
type Rows<'a> = &'a [&'a [u32]];

fn criterion_golden() -> Verdict {
    let cases: [(Rows, Rows); 3] = [
        (&[&[1, 3], &[2, 4], &[5, 6]], &[&[1, 2], &[3, 5], &[4, 6]]),
        (
            &[&[1, 3, 5], &[2, 4, 8], &[6, 9, 10], &[7, 11, 12]],
            &[&[1, 2, 6], &[3, 4, 7], &[5, 9, 11], &[8, 10, 12]],
        ),
        (
            &[&[1, 2], &[3, 4], &[5, 7], &[6, 8], &[9, 10]],
            &[&[1, 2], &[3, 5], &[4, 6], &[7, 8], &[9, 10]],
        ),
    ];
    let grid = |g: &[&[u32]]| g.iter().map(|r| r.to_vec()).collect::<Vec<_>>();
    let mut slowest = Duration::ZERO;
    for (t, e) in cases {
        let t = validate(&grid(t)).map_err(|err| err.to_string())?;
        let expected = validate(&grid(e)).map_err(|err| err.to_string())?;
        // best of several runs, to keep scheduler noise out of a microsecond timing
        let mut best = Duration::MAX;
        let mut got = None;
        for _ in 0..5 {
            let start = Instant::now();
            let r = evacuate(&t);
            best = best.min(start.elapsed());
            got = Some(r);
        }
        let got = got.unwrap();
        if got != expected {
            return Err(format!("E({t}) = {got}, expected {expected}"));
        }
        if best >= Duration::from_millis(1) {
            return Err(format!("E({t}) took {best:?}"));
        }
        slowest = slowest.max(best);
    }
    Ok(format!("3 tableaux, slowest {slowest:?}"))
}

fn criterion_pp(ts: &[StandardTableau]) -> Verdict {
    let start = Instant::now();
    match ts.iter().find(|t| evacuate_fast(t) != evacuate(t)) {
        Some(t) => Err(format!("mismatch at {t}")),
        None => Ok(format!("{} tableaux in {:?}", ts.len(), start.elapsed())),
    }
}

/// Every listed check passed (not skipped) on every listed shape.
fn all_pass(reports: &[VerificationReport], shapes: &[Shape], checks: &[Check]) -> Verdict {
    let mut tableaux = 0;
    for r in reports.iter().filter(|r| shapes.contains(&r.shape)) {
        if let Some(err) = &r.budget_error {
            return Err(format!("{}: {err}", r.shape));
        }
        tableaux += r.tableau_count;
        for &c in checks {
            match r.status(c) {
                Status::Pass => {}
                Status::Skipped => return Err(format!("{} {c} was skipped", r.shape)),
                Status::Fail { tableau, detail } => {
                    return Err(format!("{} {c} fails at {tableau}: {detail}", r.shape))
                }
            }
        }
    }
    Ok(format!("{tableaux} tableaux"))
}

/// Independent hook-length product for a rectangle.
fn hook_oracle(n: u64, k: u64) -> u128 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 1..=(n * k) as u128 {
        num *= i;
    }
    for r in 0..n {
        for c in 0..k {
            den *= ((n - r) + (k - c) - 1) as u128;
        }
    }
    num / den
}

/// Counts fillings of an n x k grid that are standard, by trying every
/// permutation of 1..N.
fn brute_force_count(n: usize, k: usize) -> u64 {
    fn permute(cells: &mut Vec<u32>, used: &mut [bool], n: usize, k: usize, count: &mut u64) {
        let pos = cells.len();
        if pos == n * k {
            let ok = (0..n * k).all(|p| {
                let (r, c) = (p / k, p % k);
                (c == 0 || cells[p - 1] < cells[p]) && (r == 0 || cells[p - k] < cells[p])
            });
            *count += u64::from(ok);
            return;
        }
        for v in 1..=(n * k) as u32 {
            if !used[v as usize] {
                used[v as usize] = true;
                cells.push(v);
                permute(cells, used, n, k, count);
                cells.pop();
                used[v as usize] = false;
            }
        }
    }
    let mut count = 0;
    permute(&mut Vec::new(), &mut vec![false; n * k + 1], n, k, &mut count);
    count
}

fn criterion_counting() -> Verdict {
    for (n, k, expected) in [(2, 2, 2u64), (2, 3, 5), (3, 3, 42), (4, 3, 462), (5, 2, 42)] {
        let s = shape(n, k);
        let listed = enumerate_syt(s, DEFAULT_BUDGET).map_err(|e| e.to_string())?.len() as u64;
        let counted: u64 = count_syt(s).try_into().map_err(|_| "count overflow".to_string())?;
        let hooks = hook_oracle(n as u64, k as u64) as u64;
        if listed != expected || counted != expected || hooks != expected {
            return Err(format!(
                "{s}: enumerated {listed}, counted {counted}, hook oracle {hooks}, expected {expected}"
            ));
        }
        if n * k <= 9 {
            let brute = brute_force_count(n, k);
            if brute != expected {
                return Err(format!("{s}: brute force found {brute}"));
            }
        }
    }
    Ok("5 shapes, brute force on N <= 9".into())
}

fn criterion_round_trips(ts: &[StandardTableau]) -> Verdict {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let picks: Vec<&StandardTableau> = (0..1000).map(|_| ts.choose(&mut rng).unwrap()).collect();
    for t in &picks {
        let e = evacuate(t);
        let text = print_tableau(&e);
        let back = parse_tableau(&text).map_err(|err| format!("{e}: {err}"))?;
        if back != e || print_tableau(&back) != text {
            return Err(format!("tableau {e} does not round-trip"));
        }
        if t.shape().rows() < 2 {
            continue;
        }
        let m = ncm_from_tableau(t).map_err(|err| err.to_string())?;
        for m in [m.clone(), reflect_ncm(&m)] {
            let text = print_ncm(&m);
            let back = parse_ncm(&text).map_err(|err| format!("{t}: {err}"))?;
            if back != m || print_ncm(&back) != text {
                return Err(format!("ncm of {t} does not round-trip"));
            }
        }
        let w = web_from_tableau(t).map_err(|err| err.to_string())?;
        for w in [w.clone(), reflect_web(&w)] {
            let text = print_web(&w);
            let back = parse_web(&text).map_err(|err| format!("{t}: {err}"))?;
            if back != w.canonical() || print_web(&back) != text {
                return Err(format!("web of {t} does not round-trip"));
            }
        }
    }
    // renders are byte-identical across runs
    let mut renders = 0;
    for t in picks.iter().filter(|t| t.shape().rows() >= 2).take(50) {
        let m = ncm_from_tableau(t).map_err(|err| err.to_string())?;
        let w = web_from_tableau(t).map_err(|err| err.to_string())?;
        for format in [Format::Svg, Format::Tikz] {
            let ncm_spec = RenderSpec::new(Kind::Ncm, format);
            let web_spec = RenderSpec::new(Kind::Web, format);
            let a = (render_ncm(&m, &ncm_spec), render_web(&w, &web_spec));
            let b = (render_ncm(&m, &ncm_spec), render_web(&w, &web_spec));
            if a != b || a.0.is_err() || a.1.is_err() {
                return Err(format!("render of {t} is not deterministic"));
            }
            renders += 2;
        }
    }
    Ok(format!("1000 samples, {renders} renders"))
}

fn main() -> ExitCode {
    let ts = all_tableaux();
    let shapes = shape_set();
    let start = Instant::now();
    let reports = run_suite(&shapes, DEFAULT_BUDGET, Execution::Parallel);
    let suite_time = start.elapsed();

    let conv_shapes: Vec<Shape> = [(3, 2), (3, 3), (3, 4), (4, 2), (4, 3)]
        .map(|(n, k)| shape(n, k))
        .to_vec();
    let results: Vec<(&str, Verdict)> = vec![
        ("golden evacuations", criterion_golden()),
        ("evacuation by rotation and complement", criterion_pp(&ts)),
        ("left square", all_pass(&reports, &shapes, &[Check::LeftSquare])),
        (
            "right square, undirected",
            all_pass(&reports, &shapes, &[Check::RightSquareWeak]).and_then(|msg| {
                if suite_time < Duration::from_secs(60) {
                    Ok(format!("{msg}, suite {suite_time:?}"))
                } else {
                    Err(format!("suite took {suite_time:?}"))
                }
            }),
        ),
        (
            "right square, exact after flips",
            all_pass(&reports, &shapes, &[Check::RightSquareStrong, Check::RightSquareEdgeSets]),
        ),
        ("sl3/sl4 conventions", all_pass(&reports, &conv_shapes, &[Check::Conventions34])),
        ("web invariants", all_pass(&reports, &shapes, &[Check::WebInvariants])),
        ("counting oracle", criterion_counting()),
        (
            "involutions",
            all_pass(
                &reports,
                &shapes,
                &[
                    Check::EvacuationInvolution,
                    Check::ReflectNcmInvolution,
                    Check::ReflectWebInvolution,
                    Check::FlipInvolution,
                ],
            ),
        ),
        ("format round-trips", criterion_round_trips(&ts)),
    ];

    let mut failed = 0;
    for (i, (name, verdict)) in results.iter().enumerate() {
        match verdict {
            Ok(msg) => println!("criterion {:>2} PASS {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
