//! Line-oriented text formats for tableaux, matchings and webs.
//!
//! Every format is newline-terminated with single spaces between tokens.
//! Parsers are strict: a document is accepted only if printing the parsed
//! value reproduces it byte for byte.

use std::fmt::Write as _;

use thiserror::Error;

use crate::matching::{Arc, MatchingError, MulticoloredNcm};
use crate::tableau::{validate, StandardTableau, TableauError};
use crate::web::{Point2, VertexId, WebEdge, WebError, WebGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Web(#[from] WebError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Splits a document into lines, insisting on a final newline and on single
/// spaces between tokens.
fn lines(text: &str) -> Result<Vec<Vec<&str>>, ParseError> {
    let Some(body) = text.strip_suffix('\n') else {
        return Err(syntax(text.lines().count().max(1), "missing trailing newline"));
    };
    body.split('\n')
        .enumerate()
        .map(|(i, l)| {
            let toks: Vec<&str> = l.split(' ').collect();
            if toks.iter().any(|t| t.is_empty()) {
                Err(syntax(i + 1, "tokens must be separated by single spaces"))
            } else {
                Ok(toks)
            }
        })
        .collect()
}

/// Base-10 without sign or leading zeros, so numbers print back unchanged.
fn number<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, ParseError> {
    let canonical = tok == "0" || (!tok.starts_with('0') && tok.bytes().all(|b| b.is_ascii_digit()));
    if !canonical {
        return Err(syntax(line, format!("`{tok}` is not a plain decimal number")));
    }
    tok.parse()
        .map_err(|_| syntax(line, format!("`{tok}` is out of range")))
}

fn signed(tok: &str, line: usize) -> Result<i64, ParseError> {
    match tok.strip_prefix('-') {
        Some(rest) if rest != "0" => Ok(-number::<i64>(rest, line)?),
        Some(_) => Err(syntax(line, "negative zero")),
        None => number(tok, line),
    }
}

fn header<'a>(
    lines: &'a [Vec<&'a str>],
    keyword: &str,
) -> Result<(&'a str, &'a str), ParseError> {
    match lines.first().map(Vec::as_slice) {
        Some([k, a, b]) if *k == keyword => Ok((a, b)),
        _ => Err(syntax(1, format!("expected `{keyword} <a> <b>`"))),
    }
}

pub fn print_tableau(t: &StandardTableau) -> String {
    let shape = t.shape();
    let mut out = format!("tableau {} {}\n", shape.rows(), shape.cols());
    for r in 1..=shape.rows() {
        let row: Vec<String> = t.row(r).iter().map(u32::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_tableau(text: &str) -> Result<StandardTableau, ParseError> {
    let lines = lines(text)?;
    let (n, k) = header(&lines, "tableau")?;
    let (n, k): (usize, usize) = (number(n, 1)?, number(k, 1)?);
    if lines.len() != n + 1 {
        return Err(syntax(lines.len(), format!("expected {n} rows")));
    }
    let grid = lines[1..]
        .iter()
        .enumerate()
        .map(|(r, toks)| {
            if toks.len() != k {
                return Err(syntax(r + 2, format!("expected {k} entries")));
            }
            toks.iter().map(|t| number(t, r + 2)).collect()
        })
        .collect::<Result<Vec<Vec<u32>>, _>>()?;
    Ok(validate(&grid)?)
}

pub fn print_ncm(m: &MulticoloredNcm) -> String {
    let mut out = format!("ncm {} {}\n", m.n(), m.size());
    for ca in m.colored_arcs() {
        writeln!(out, "arc {} {} {}", ca.color, ca.arc.start, ca.arc.end).expect("write to string");
    }
    out
}

pub fn parse_ncm(text: &str) -> Result<MulticoloredNcm, ParseError> {
    let lines = lines(text)?;
    let (n, size) = header(&lines, "ncm")?;
    let (n, size): (u32, u32) = (number(n, 1)?, number(size, 1)?);
    if n < 2 {
        return Err(syntax(1, "rank must be at least 2"));
    }
    let mut layers = vec![Vec::new(); n as usize - 1];
    let mut last = None;
    for (idx, toks) in lines.iter().enumerate().skip(1) {
        let line = idx + 1;
        let [kw, c, i, j] = toks.as_slice() else {
            return Err(syntax(line, "expected `arc <color> <i> <j>`"));
        };
        if *kw != "arc" {
            return Err(syntax(line, "expected `arc <color> <i> <j>`"));
        }
        let (c, i, j): (u32, u32, u32) = (number(c, line)?, number(i, line)?, number(j, line)?);
        if c == 0 || c >= n {
            return Err(syntax(line, format!("color {c} outside 1..{n}")));
        }
        if i >= j {
            return Err(syntax(line, format!("arc ({i},{j}) does not increase")));
        }
        if last.is_some_and(|prev| prev >= (c, i)) {
            return Err(syntax(line, "arcs must be sorted by color then start"));
        }
        last = Some((c, i));
        layers[c as usize - 1].push(Arc::new(i, j));
    }
    Ok(MulticoloredNcm::new(n, size, layers)?)
}

fn endpoint(w: &WebGraph, v: VertexId) -> String {
    match w.interior_id(v) {
        Some(id) => format!("i{id}"),
        None => format!("b{}", v.0 + 1),
    }
}

/// Prints the web with edges in canonical order; line `k` of the edge block
/// is the edge numbered `k` by the CLI.
pub fn print_web(w: &WebGraph) -> String {
    let w = w.canonical();
    let mut out = format!("web {} {}\n", w.n(), w.size());
    for v in w.size() as usize..w.vertices().len() {
        let pos = w.vertex(VertexId(v)).pos;
        let id = w.interior_id(VertexId(v)).expect("interior vertex");
        writeln!(out, "ivertex {id} {} {}", pos.x, pos.y).expect("write to string");
    }
    for e in w.edges() {
        writeln!(
            out,
            "edge {} {} {} {}",
            endpoint(&w, e.tail),
            endpoint(&w, e.head),
            e.weight,
            if e.undirected { "u" } else { "-" }
        )
        .expect("write to string");
    }
    out
}

pub fn parse_web(text: &str) -> Result<WebGraph, ParseError> {
    let lines = lines(text)?;
    let (n, size) = header(&lines, "web")?;
    let (n, size): (u32, u32) = (number(n, 1)?, number(size, 1)?);
    let mut interior = Vec::new();
    let mut rest = 1;
    while let Some(toks) = lines.get(rest) {
        let line = rest + 1;
        let [kw, id, x, y] = toks.as_slice() else { break };
        if *kw != "ivertex" {
            break;
        }
        if number::<usize>(id, line)? != interior.len() + 1 {
            return Err(syntax(line, format!("expected interior id {}", interior.len() + 1)));
        }
        interior.push(Point2::new(signed(x, line)?, signed(y, line)?));
        rest += 1;
    }
    let vertex = |tok: &str, line: usize| -> Result<VertexId, ParseError> {
        let (base, id, count) = match tok.split_at_checked(1) {
            Some(("b", id)) => (0, id, size as usize),
            Some(("i", id)) => (size as usize, id, interior.len()),
            _ => return Err(syntax(line, format!("bad endpoint `{tok}`"))),
        };
        let id: usize = number(id, line)?;
        if id == 0 || id > count {
            return Err(syntax(line, format!("endpoint `{tok}` does not exist")));
        }
        Ok(VertexId(base + id - 1))
    };
    let mut edges: Vec<WebEdge> = Vec::new();
    for (idx, toks) in lines.iter().enumerate().skip(rest) {
        let line = idx + 1;
        let [kw, tail, head, weight, flags] = toks.as_slice() else {
            return Err(syntax(line, "expected `edge <tail> <head> <weight> <flags>`"));
        };
        if *kw != "edge" {
            return Err(syntax(line, "expected `edge <tail> <head> <weight> <flags>`"));
        }
        let undirected = match *flags {
            "-" => false,
            "u" => true,
            other => return Err(syntax(line, format!("unknown flag `{other}`"))),
        };
        let e = WebEdge {
            tail: vertex(tail, line)?,
            head: vertex(head, line)?,
            weight: number(weight, line)?,
            undirected,
            provenance: Vec::new(),
        };
        let key = |e: &WebEdge| (e.tail, e.head, e.weight, e.undirected);
        if edges.last().is_some_and(|prev| key(prev) > key(&e)) {
            return Err(syntax(line, "edges must be sorted by tail, head, weight"));
        }
        edges.push(e);
    }
    Ok(WebGraph::from_parts(n, size, interior, edges)?)
}

/// A parsed document of any of the three kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Tableau(StandardTableau),
    Ncm(MulticoloredNcm),
    Web(WebGraph),
}

/// Parses by the keyword on the first line.
pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    match text.split([' ', '\n']).next() {
        Some("tableau") => parse_tableau(text).map(Document::Tableau),
        Some("ncm") => parse_ncm(text).map(Document::Ncm),
        Some("web") => parse_web(text).map(Document::Web),
        _ => Err(syntax(1, "expected a `tableau`, `ncm` or `web` header")),
    }
}
