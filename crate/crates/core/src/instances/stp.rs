//! SteinLib STP reader. Only the graph section is used.

use super::InstanceError;
use crate::graph::Graph;
use crate::Scalar;

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, InstanceError> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| InstanceError::MalformedSection { line, detail: format!("expected {what}") })
}

/// Parses `SECTION Graph` with its `Nodes`, `Edges` and `E u v w` lines
/// (1-based ids). Other sections are skipped.
pub fn parse_stp<W: Scalar>(text: &str) -> Result<Graph<W>, InstanceError> {
    let mut nodes: Option<usize> = None;
    let mut declared_edges: Option<usize> = None;
    let mut edges: Vec<(usize, usize, W)> = Vec::new();
    let mut section: Option<String> = None;
    let mut saw_graph = false;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        let Some(head) = toks.next() else { continue };
        let key = head.to_ascii_lowercase();
        match (section.as_deref(), key.as_str()) {
            (_, "eof") => break,
            (None, "section") => {
                let name = toks.next().map(str::to_ascii_lowercase).ok_or_else(|| {
                    InstanceError::MalformedSection { line, detail: "missing section name".into() }
                })?;
                saw_graph |= name == "graph";
                section = Some(name);
            }
            (Some(_), "section") => {
                return Err(InstanceError::MalformedSection { line, detail: "section opened before END".into() });
            }
            (Some(_), "end") => section = None,
            (Some("graph"), "nodes") => nodes = Some(number(toks.next(), line, "node count")?),
            (Some("graph"), "edges") => declared_edges = Some(number(toks.next(), line, "edge count")?),
            (Some("graph"), "e") => {
                let u: usize = number(toks.next(), line, "edge tail")?;
                let v: usize = number(toks.next(), line, "edge head")?;
                let w: f64 = number(toks.next(), line, "edge weight")?;
                if u == 0 || v == 0 {
                    return Err(InstanceError::MalformedSection { line, detail: "vertex ids start at 1".into() });
                }
                edges.push((u - 1, v - 1, W::of(w)));
            }
            (Some("graph"), "a" | "arcs") => {
                return Err(InstanceError::MalformedSection { line, detail: "directed arcs are not supported".into() });
            }
            (Some("graph"), _) => {
                return Err(InstanceError::MalformedSection { line, detail: format!("unexpected entry {head}") });
            }
            _ => {}
        }
    }
    if !saw_graph {
        return Err(InstanceError::MalformedSection { line: 0, detail: "no graph section".into() });
    }
    if section.is_some() {
        return Err(InstanceError::MalformedSection { line: text.lines().count(), detail: "unterminated section".into() });
    }
    let n = nodes.ok_or_else(|| InstanceError::MalformedSection { line: 0, detail: "missing Nodes".into() })?;
    if let Some(declared) = declared_edges {
        if declared != edges.len() {
            return Err(InstanceError::CountMismatch { what: "edges", declared, found: edges.len() });
        }
    }
    Ok(Graph::weighted(n, edges)?)
}
