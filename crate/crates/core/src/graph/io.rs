//! Edge-list text and JSON graph files.
//!
//! Edge-list text: a header line `n <count>` followed by one edge per line,
//! `i j` or `i j mult`. Blank lines and `#` comments are ignored.
//!
//! JSON: `{"n": int, "edges": [[i, j, mult], ...]}` with an optional
//! `"labels"` array; loops are `[i, i, loops]`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{build_graph, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Json,
    EdgeList,
}

impl GraphFormat {
    /// `.json` selects JSON; anything else is edge-list text.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => GraphFormat::Json,
            _ => GraphFormat::EdgeList,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

pub fn to_json(g: &Graph) -> String {
    let doc = GraphJson {
        n: g.n(),
        edges: g.edges().into_iter().map(|(i, j, m)| [i, j, m as usize]).collect(),
        labels: g.labels().map(<[String]>::to_vec),
    };
    serde_json::to_string(&doc).expect("graph serialises")
}

pub fn parse_json(text: &str) -> Result<Graph> {
    let doc: GraphJson =
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
    let mut edges = Vec::with_capacity(doc.edges.len());
    for [i, j, m] in doc.edges {
        let mult =
            u32::try_from(m).map_err(|_| Error::Parse { line: 0, message: format!("multiplicity {m} too large") })?;
        edges.push((i, j, mult));
    }
    let g = build_graph(doc.n, &edges)?;
    match doc.labels {
        Some(labels) if labels.len() == g.n() => Ok(g.with_labels(labels)),
        Some(labels) => {
            Err(Error::Parse { line: 0, message: format!("{} labels for {} vertices", labels.len(), g.n()) })
        }
        None => Ok(g),
    }
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (i, j, m) in g.edges() {
        if m == 1 {
            out.push_str(&format!("{i} {j}\n"));
        } else {
            out.push_str(&format!("{i} {j} {m}\n"));
        }
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |message: String| Error::Parse { line: line_no, message };
        if n.is_none() {
            match fields.as_slice() {
                ["n", count] => {
                    n = Some(count.parse::<usize>().map_err(|e| bad(format!("vertex count: {e}")))?);
                    continue;
                }
                _ => return Err(bad(format!("expected header `n <count>`, found `{line}`"))),
            }
        }
        let parse = |s: &str| s.parse::<usize>().map_err(|_| bad(format!("not an index: `{s}`")));
        let (i, j, m) = match fields.as_slice() {
            [i, j] => (parse(i)?, parse(j)?, 1),
            [i, j, m] => (parse(i)?, parse(j)?, parse(m)?),
            _ => return Err(bad(format!("expected `i j [mult]`, found `{line}`"))),
        };
        let m = u32::try_from(m).map_err(|_| bad(format!("multiplicity {m} too large")))?;
        edges.push((i, j, m));
    }
    let n = n.ok_or(Error::Parse { line: 0, message: "missing header `n <count>`".into() })?;
    build_graph(n, &edges)
}

/// Reads a graph, choosing the format from the extension; a file whose first
/// non-blank character is `{` is read as JSON regardless.
pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') || GraphFormat::from_path(path) == GraphFormat::Json {
        parse_json(&text)
    } else {
        parse_edge_list(&text)
    }
}

pub fn save_graph(g: &Graph, path: impl AsRef<Path>, format: GraphFormat) -> Result<()> {
    let body = match format {
        GraphFormat::Json => to_json(g),
        GraphFormat::EdgeList => to_edge_list(g),
    };
    fs::write(path, body)?;
    Ok(())
}
