//! SVG and TikZ drawings of matchings and webs.
//!
//! Output is a pure function of the input and the [`RenderSpec`]; numbers
//! are printed with two decimals so documents are byte-stable.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::format::Document;
use crate::matching::MulticoloredNcm;
use crate::web::{edge_path, HalfPoint, VertexKind, WebGraph, UNIT};

pub const DEFAULT_PALETTE: [&str; 8] = [
    "blue", "red", "green", "violet", "orange", "cyan", "magenta", "brown",
];

/// Two-strand edges are drawn in a neutral color.
const NEUTRAL: &str = "gray";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("cannot render {0}")]
    UnsupportedKind(String),
    #[error("unknown render format `{0}` (expected svg or tikz)")]
    UnknownFormat(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Ncm,
    Web,
}

impl FromStr for Kind {
    type Err = RenderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ncm" => Ok(Kind::Ncm),
            "web" => Ok(Kind::Web),
            other => Err(RenderError::UnsupportedKind(format!("kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Svg,
    Tikz,
}

impl FromStr for Format {
    type Err = RenderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "svg" => Ok(Format::Svg),
            "tikz" => Ok(Format::Tikz),
            other => Err(RenderError::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub kind: Kind,
    pub format: Format,
    /// Multiplier on the base size of one boundary step (40px or 1cm).
    pub scale: f64,
    /// Color `c` is drawn with `palette[(c - 1) % palette.len()]`.
    pub palette: Vec<String>,
}

impl RenderSpec {
    pub fn new(kind: Kind, format: Format) -> Self {
        Self {
            kind,
            format,
            scale: 1.0,
            palette: DEFAULT_PALETTE.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn color(&self, c: u32) -> &str {
        if self.palette.is_empty() {
            return NEUTRAL;
        }
        &self.palette[(c as usize - 1) % self.palette.len()]
    }

    /// Drawing units per boundary step.
    fn step(&self) -> f64 {
        match self.format {
            Format::Svg => 40.0 * self.scale,
            Format::Tikz => self.scale,
        }
    }
}

/// Renders a parsed document; the document must match `spec.kind`.
pub fn render(doc: &Document, spec: &RenderSpec) -> Result<String, RenderError> {
    match (doc, spec.kind) {
        (Document::Ncm(m), Kind::Ncm) => render_ncm(m, spec),
        (Document::Web(w), Kind::Web) => render_web(w, spec),
        (Document::Tableau(_), _) => Err(RenderError::UnsupportedKind("a tableau".into())),
        (Document::Ncm(_), Kind::Web) => Err(RenderError::UnsupportedKind("an ncm as a web".into())),
        (Document::Web(_), Kind::Ncm) => Err(RenderError::UnsupportedKind("a web as an ncm".into())),
    }
}

struct Canvas {
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    fn svg(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.2}\" height=\"{h:.2}\" viewBox=\"0 0 {w:.2} {h:.2}\">\n\
             <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{body}</svg>\n",
            w = self.width,
            h = self.height,
            body = self.body
        )
    }
}

fn tikz(body: &str) -> String {
    format!("\\begin{{tikzpicture}}[>=stealth]\n{body}\\end{{tikzpicture}}\n")
}

/// Baseline with labeled points and one semicircle per arc.
pub fn render_ncm(m: &MulticoloredNcm, spec: &RenderSpec) -> Result<String, RenderError> {
    if m.size() == 0 || m.colored_arcs().next().is_none() {
        return Err(RenderError::UnsupportedKind("an empty matching".into()));
    }
    let s = spec.step();
    let size = m.size() as f64;
    let mut body = String::new();
    match spec.format {
        Format::Svg => {
            let base = s * (size + 1.0) / 2.0 + s;
            let width = s * (size + 1.0);
            writeln!(
                body,
                "<line x1=\"{:.2}\" y1=\"{base:.2}\" x2=\"{:.2}\" y2=\"{base:.2}\" stroke=\"black\"/>",
                s / 2.0,
                width - s / 2.0
            )
            .expect("write to string");
            for ca in m.colored_arcs() {
                let (x1, x2) = (s * ca.arc.start as f64, s * ca.arc.end as f64);
                let r = (x2 - x1) / 2.0;
                writeln!(
                    body,
                    "<path d=\"M {x1:.2} {base:.2} A {r:.2} {r:.2} 0 0 1 {x2:.2} {base:.2}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2.00\"/>",
                    spec.color(ca.color)
                )
                .expect("write to string");
            }
            for p in 1..=m.size() {
                writeln!(
                    body,
                    "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"{:.2}\">{p}</text>",
                    s * p as f64,
                    base + s * 0.5,
                    s * 0.35
                )
                .expect("write to string");
            }
            Ok(Canvas {
                width,
                height: base + s,
                body,
            }
            .svg())
        }
        Format::Tikz => {
            writeln!(body, "\\draw (0.50,0.00) -- ({:.2},0.00);", s * size + 0.5).expect("write to string");
            for ca in m.colored_arcs() {
                let (x1, x2) = (s * ca.arc.start as f64, s * ca.arc.end as f64);
                writeln!(
                    body,
                    "\\draw[{}, thick] ({x1:.2},0.00) arc[start angle=180, end angle=0, radius={:.2}];",
                    spec.color(ca.color),
                    (x2 - x1) / 2.0
                )
                .expect("write to string");
            }
            for p in 1..=m.size() {
                writeln!(body, "\\node[below] at ({:.2},0.00) {{{p}}};", s * p as f64)
                    .expect("write to string");
            }
            Ok(tikz(&body))
        }
    }
}

fn edge_color<'a>(w: &WebGraph, e: usize, spec: &'a RenderSpec) -> &'a str {
    match w.edges()[e].provenance.as_slice() {
        [single] => spec.color(single.arc.color),
        [] => "black",
        _ => NEUTRAL,
    }
}

/// Point halfway along a polyline and the direction of the segment there.
fn midpoint(path: &[[f64; 2]]) -> ([f64; 2], [f64; 2]) {
    let seg_len = |a: [f64; 2], b: [f64; 2]| ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
    let total: f64 = path.windows(2).map(|w| seg_len(w[0], w[1])).sum();
    let mut left = total / 2.0;
    for w in path.windows(2) {
        let l = seg_len(w[0], w[1]);
        if l >= left && l > 0.0 {
            let t = left / l;
            let dir = [(w[1][0] - w[0][0]) / l, (w[1][1] - w[0][1]) / l];
            return ([w[0][0] + t * (w[1][0] - w[0][0]), w[0][1] + t * (w[1][1] - w[0][1])], dir);
        }
        left -= l;
    }
    (path[0], [1.0, 0.0])
}

/// Vertices at their lattice positions, edges along their arc pieces with an
/// arrowhead at the midpoint (none on undirected edges) and a weight label.
pub fn render_web(w: &WebGraph, spec: &RenderSpec) -> Result<String, RenderError> {
    if w.edges().is_empty() {
        return Err(RenderError::UnsupportedKind("an empty web".into()));
    }
    let s = spec.step();
    // half lattice units -> drawing units, y up
    let to_xy = |p: HalfPoint| [p[0] as f64 * s / (2 * UNIT) as f64, p[1] as f64 * s / (2 * UNIT) as f64];
    let top = w
        .vertices()
        .iter()
        .map(|v| v.pos.y)
        .chain(w.edge_ids().flat_map(|e| edge_path(w, e)).map(|p| p[1] / 2))
        .max()
        .unwrap_or(0) as f64
        * s
        / UNIT as f64;
    let width = s * (w.size() as f64 + 1.0);
    let height = top + 1.5 * s;
    let flip = |p: [f64; 2]| [p[0], top + s * 0.5 - p[1]];

    let mut body = String::new();
    for (i, e) in w.edges().iter().enumerate() {
        let path: Vec<[f64; 2]> = edge_path(w, crate::web::EdgeId(i)).into_iter().map(to_xy).collect();
        let color = edge_color(w, i, spec);
        let (mid, dir) = midpoint(&path);
        let normal = [-dir[1], dir[0]];
        let label = [mid[0] + normal[0] * s * 0.18, mid[1] + normal[1] * s * 0.18];
        match spec.format {
            Format::Svg => {
                let pts: Vec<String> = path
                    .iter()
                    .map(|&p| {
                        let q = flip(p);
                        format!("{:.2},{:.2}", q[0], q[1])
                    })
                    .collect();
                writeln!(
                    body,
                    "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2.00\"/>",
                    pts.join(" ")
                )
                .expect("write to string");
                if !e.undirected {
                    let a = s * 0.12;
                    let tip = [mid[0] + dir[0] * a, mid[1] + dir[1] * a];
                    let b1 = [mid[0] - dir[0] * a + normal[0] * a, mid[1] - dir[1] * a + normal[1] * a];
                    let b2 = [mid[0] - dir[0] * a - normal[0] * a, mid[1] - dir[1] * a - normal[1] * a];
                    let [tip, b1, b2] = [tip, b1, b2].map(flip);
                    writeln!(
                        body,
                        "<polygon points=\"{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}\" fill=\"{color}\"/>",
                        tip[0], tip[1], b1[0], b1[1], b2[0], b2[1]
                    )
                    .expect("write to string");
                }
                let l = flip(label);
                writeln!(
                    body,
                    "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"{:.2}\">{}</text>",
                    l[0],
                    l[1],
                    s * 0.3,
                    e.weight
                )
                .expect("write to string");
            }
            Format::Tikz => {
                let pts: Vec<String> = path.iter().map(|p| format!("({:.2},{:.2})", p[0], p[1])).collect();
                writeln!(body, "\\draw[{color}, thick] {};", pts.join(" -- ")).expect("write to string");
                if !e.undirected {
                    // a tiny arrowed segment puts the head mid-edge
                    writeln!(
                        body,
                        "\\draw[{color}, thick, ->] ({:.2},{:.2}) -- ({:.2},{:.2});",
                        mid[0] - dir[0] * 0.01,
                        mid[1] - dir[1] * 0.01,
                        mid[0],
                        mid[1]
                    )
                    .expect("write to string");
                }
                writeln!(
                    body,
                    "\\node[font=\\scriptsize] at ({:.2},{:.2}) {{{}}};",
                    label[0], label[1], e.weight
                )
                .expect("write to string");
            }
        }
    }
    for v in w.vertices() {
        let p = to_xy([2 * v.pos.x, 2 * v.pos.y]);
        match (spec.format, v.kind) {
            (Format::Svg, VertexKind::Interior) => {
                let q = flip(p);
                writeln!(
                    body,
                    "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{:.2}\" fill=\"black\"/>",
                    q[0],
                    q[1],
                    s * 0.06
                )
                .expect("write to string");
            }
            (Format::Svg, VertexKind::Boundary(label)) => {
                let q = flip(p);
                writeln!(
                    body,
                    "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"{:.2}\">{label}</text>",
                    q[0],
                    q[1] + s * 0.4,
                    s * 0.35
                )
                .expect("write to string");
            }
            (Format::Tikz, VertexKind::Interior) => {
                writeln!(body, "\\fill ({:.2},{:.2}) circle[radius=0.06];", p[0], p[1])
                    .expect("write to string");
            }
            (Format::Tikz, VertexKind::Boundary(label)) => {
                writeln!(body, "\\node[below] at ({:.2},{:.2}) {{{label}}};", p[0], p[1])
                    .expect("write to string");
            }
        }
    }
    match spec.format {
        Format::Svg => {
            let base = flip([0.0, 0.0])[1];
            let line = format!(
                "<line x1=\"{:.2}\" y1=\"{base:.2}\" x2=\"{:.2}\" y2=\"{base:.2}\" stroke=\"black\" stroke-dasharray=\"4 4\"/>\n",
                s / 2.0,
                width - s / 2.0
            );
            Ok(Canvas {
                width,
                height,
                body: line + &body,
            }
            .svg())
        }
        Format::Tikz => Ok(tikz(&body)),
    }
}
