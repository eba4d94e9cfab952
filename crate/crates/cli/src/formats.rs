//! Text formats for digraphs.
//!
//! - `matrix`: `n` lines of `n` space-separated 0/1 entries.
//! - `edges`: a `# n=<n>` header, then one `u v` line per arc.
//! - `json`: `{"n": .., "arcs": [[u, v], ..], "labels": [..], "tuple": {..}}`,
//!   with `labels` and `tuple` optional.
//! - `dot`: a Graphviz `digraph` (write-only).

use std::fmt::Write as _;

use dsrg::{Digraph, ParamTuple};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Matrix,
    Edges,
    Json,
    Dot,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error: {0}")]
pub struct ParseError(pub String);

fn parse_err(msg: impl Into<String>) -> ParseError {
    ParseError(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleJson {
    pub n: i64,
    pub k: i64,
    pub mu: i64,
    pub lambda: i64,
    pub t: i64,
}

impl From<ParamTuple> for TupleJson {
    fn from(p: ParamTuple) -> Self {
        TupleJson { n: p.n, k: p.k, mu: p.mu, lambda: p.lambda, t: p.t }
    }
}

impl From<TupleJson> for ParamTuple {
    fn from(p: TupleJson) -> Self {
        ParamTuple::raw(p.n, p.k, p.mu, p.lambda, p.t)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    arcs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tuple: Option<TupleJson>,
}

/// A parsed graph file: the digraph and the tuple it claims, if any.
#[derive(Debug, Clone)]
pub struct GraphFile {
    pub digraph: Digraph,
    pub tuple: Option<ParamTuple>,
}

pub fn to_matrix(d: &Digraph) -> String {
    let mut out = String::new();
    for row in d.adjacency().rows() {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn to_edges(d: &Digraph) -> String {
    let mut out = format!("# n={}\n", d.order());
    for (u, v) in d.arcs() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn to_json(d: &Digraph, tuple: Option<ParamTuple>) -> String {
    let doc = GraphJson {
        n: d.order(),
        arcs: d.arcs().map(|(u, v)| [u, v]).collect(),
        labels: d.labels().map(<[String]>::to_vec).unwrap_or_default(),
        tuple: tuple.map(TupleJson::from),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("graph serializes");
    s.push('\n');
    s
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(d: &Digraph, tuple: Option<ParamTuple>) -> String {
    let mut out = String::from("digraph dsrg {\n");
    if let Some(p) = tuple {
        writeln!(out, "  label=\"{p}\";").unwrap();
    }
    for v in 0..d.order() {
        writeln!(out, "  {v} [label=\"{}\"];", dot_escape(&d.label(v))).unwrap();
    }
    for (u, v) in d.arcs() {
        writeln!(out, "  {u} -> {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn render(d: &Digraph, tuple: Option<ParamTuple>, format: Format) -> String {
    match format {
        Format::Matrix => to_matrix(d),
        Format::Edges => to_edges(d),
        Format::Json => to_json(d, tuple),
        Format::Dot => to_dot(d, tuple),
    }
}

fn parse_matrix(text: &str) -> Result<Digraph, ParseError> {
    let rows: Vec<Vec<i64>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, line)| {
            line.split_whitespace()
                .map(|tok| match tok {
                    "0" => Ok(0),
                    "1" => Ok(1),
                    other => Err(parse_err(format!("row {i}: entry {other:?} is not 0 or 1"))),
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let matrix = dsrg::IntMatrix::from_rows(rows).map_err(|e| parse_err(e.to_string()))?;
    Digraph::from_matrix(matrix).map_err(|e| parse_err(e.to_string()))
}

fn parse_edges(text: &str) -> Result<Digraph, ParseError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| parse_err("empty input"))?;
    let n: usize = header
        .strip_prefix('#')
        .map(str::trim)
        .and_then(|h| h.strip_prefix("n="))
        .and_then(|n| n.trim().parse().ok())
        .ok_or_else(|| parse_err(format!("expected a \"# n=<n>\" header, found {header:?}")))?;
    let mut arcs = Vec::new();
    for line in lines.filter(|l| !l.starts_with('#')) {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = parts.as_slice() else {
            return Err(parse_err(format!("expected \"u v\", found {line:?}")));
        };
        let parse = |s: &str| s.parse::<usize>().map_err(|_| parse_err(format!("bad vertex {s:?}")));
        arcs.push((parse(u)?, parse(v)?));
    }
    Digraph::from_arcs(n, arcs).map_err(|e| parse_err(e.to_string()))
}

fn parse_json(text: &str) -> Result<GraphFile, ParseError> {
    let doc: GraphJson = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let mut d = Digraph::from_arcs(doc.n, doc.arcs.iter().map(|a| (a[0], a[1]))).map_err(|e| parse_err(e.to_string()))?;
    if !doc.labels.is_empty() {
        if doc.labels.len() != doc.n {
            return Err(parse_err(format!("{} labels for {} vertices", doc.labels.len(), doc.n)));
        }
        d = d.with_labels(doc.labels);
    }
    Ok(GraphFile { digraph: d, tuple: doc.tuple.map(ParamTuple::from) })
}

/// Parses `matrix`, `edges` or `json`, chosen by the first non-blank
/// character: `{` for json, `#` for edges, anything else for matrix.
pub fn parse_graph(text: &str) -> Result<GraphFile, ParseError> {
    let trimmed = text.trim_start();
    match trimmed.chars().next() {
        None => Err(parse_err("empty input")),
        Some('{') => parse_json(trimmed),
        Some('#') => Ok(GraphFile { digraph: parse_edges(trimmed)?, tuple: None }),
        Some(_) => Ok(GraphFile { digraph: parse_matrix(trimmed)?, tuple: None }),
    }
}
