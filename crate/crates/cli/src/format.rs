//! Plain-text and JSON path files, edge lists and graph specs.

use anyhow::{anyhow, bail, Context, Result};
use elegant_core::graphs::GraphInstance;
use serde::{Deserialize, Serialize};

/// One path (or graph labeling) read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathRecord {
    /// 1-based line number in the source.
    pub line: usize,
    /// Target given by a JSON record.
    pub n: Option<usize>,
    pub labels: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct JsonPath {
    n: usize,
    labels: Vec<u64>,
}

/// Parses space-separated decimal labels.
pub fn parse_labels(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| anyhow!("not a label: {t:?}")))
        .collect()
}

/// Reads every path in `text`. Blank lines and lines starting with `#` are
/// skipped; lines starting with `{` are JSON records `{"n": .., "labels": [..]}`.
pub fn parse_paths(text: &str) -> Result<Vec<PathRecord>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let rec = if line.starts_with('{') {
            let j: JsonPath =
                serde_json::from_str(line).with_context(|| format!("line {}", i + 1))?;
            PathRecord {
                line: i + 1,
                n: Some(j.n),
                labels: j.labels,
            }
        } else {
            let labels = parse_labels(line).with_context(|| format!("line {}", i + 1))?;
            PathRecord {
                line: i + 1,
                n: None,
                labels,
            }
        };
        out.push(rec);
    }
    Ok(out)
}

pub fn path_text<T: ToString>(labels: &[T]) -> String {
    labels
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn path_json(n: usize, labels: &[u32]) -> String {
    let j = JsonPath {
        n,
        labels: labels.iter().map(|&p| p as u64).collect(),
    };
    serde_json::to_string(&j).expect("plain data serializes")
}

/// Edge list with one `u v` pair per line, 0-based. The vertex count is one
/// more than the largest index.
pub fn parse_edge_list(text: &str) -> Result<GraphInstance> {
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [a, b] = parts[..] else {
            bail!("line {}: expected two vertex indices", i + 1);
        };
        let a: usize = a
            .parse()
            .with_context(|| format!("line {}: bad vertex {a:?}", i + 1))?;
        let b: usize = b
            .parse()
            .with_context(|| format!("line {}: bad vertex {b:?}", i + 1))?;
        edges.push((a, b));
    }
    let vertices = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    Ok(GraphInstance::new(vertices, edges)?)
}

/// A named generator, or a path to an edge-list file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphSpec {
    Path(usize),
    Star(usize),
    Complete(usize),
    Petersen,
    Caterpillar(usize),
    CaterpillarPlus(usize),
    CaterpillarMinus(usize),
}

impl GraphSpec {
    /// `None` when `s` names no generator.
    pub fn parse(s: &str) -> Option<Result<Self>> {
        if s == "petersen" {
            return Some(Ok(GraphSpec::Petersen));
        }
        let (name, arg) = s.split_once(':')?;
        let make: fn(usize) -> GraphSpec = match name {
            "path" => GraphSpec::Path,
            "star" => GraphSpec::Star,
            "complete" => GraphSpec::Complete,
            "caterpillar" => GraphSpec::Caterpillar,
            "caterpillar-plus" => GraphSpec::CaterpillarPlus,
            "caterpillar-minus" => GraphSpec::CaterpillarMinus,
            _ => return None,
        };
        Some(match arg.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(make(k)),
            _ => Err(anyhow!("bad size in graph spec {s:?}")),
        })
    }

    pub fn build(self) -> GraphInstance {
        match self {
            GraphSpec::Path(n) => GraphInstance::path(n),
            GraphSpec::Star(n) => GraphInstance::star(n),
            GraphSpec::Complete(k) => GraphInstance::complete(k),
            GraphSpec::Petersen => GraphInstance::petersen(),
            GraphSpec::Caterpillar(n) => GraphInstance::regular_caterpillar(n),
            GraphSpec::CaterpillarPlus(n) => GraphInstance::caterpillar_extra_leaf(n),
            GraphSpec::CaterpillarMinus(n) => GraphInstance::caterpillar_missing_leaf(n),
        }
    }
}

/// Resolves a generator name or reads an edge-list file.
pub fn load_graph(spec: &str) -> Result<(Option<GraphSpec>, GraphInstance)> {
    match GraphSpec::parse(spec) {
        Some(parsed) => {
            let g = parsed?;
            Ok((Some(g), g.build()))
        }
        None => {
            let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
            Ok((
                None,
                parse_edge_list(&text).with_context(|| format!("parsing {spec}"))?,
            ))
        }
    }
}
