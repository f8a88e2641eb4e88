//! Native line format: a header `n m weighted|unweighted`, then one
//! `u v [w]` line per edge. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use super::InstanceError;
use crate::graph::Graph;
use crate::Scalar;

fn parse_err(line: usize, detail: impl Into<String>) -> InstanceError {
    InstanceError::Parse { line, detail: detail.into() }
}

pub fn parse_native<W: Scalar>(text: &str) -> Result<Graph<W>, InstanceError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let [n, m, flag] = toks[..] else {
        return Err(parse_err(hline, "header must be `n m weighted|unweighted`"));
    };
    let n: usize = n.parse().map_err(|_| parse_err(hline, "bad vertex count"))?;
    let m: usize = m.parse().map_err(|_| parse_err(hline, "bad edge count"))?;
    let weighted = match flag {
        "weighted" | "1" | "true" => true,
        "unweighted" | "0" | "false" => false,
        other => return Err(parse_err(hline, format!("bad weight flag {other}"))),
    };
    let mut pairs = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(if weighted { m } else { 0 });
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let expected = if weighted { 3 } else { 2 };
        if toks.len() != expected {
            return Err(parse_err(line, format!("expected {expected} fields")));
        }
        let u: usize = toks[0].parse().map_err(|_| parse_err(line, "bad vertex"))?;
        let v: usize = toks[1].parse().map_err(|_| parse_err(line, "bad vertex"))?;
        pairs.push((u, v));
        if weighted {
            let w: f64 = toks[2].parse().map_err(|_| parse_err(line, "bad weight"))?;
            weights.push(W::of(w));
        }
    }
    if pairs.len() != m {
        return Err(InstanceError::CountMismatch { what: "edges", declared: m, found: pairs.len() });
    }
    let g = if weighted {
        Graph::weighted(n, pairs.into_iter().zip(weights).map(|((u, v), w)| (u, v, w)))?
    } else {
        Graph::unweighted(n, pairs)?
    };
    Ok(g)
}

/// Serializes with shortest round-trip number formatting, so integer
/// weights come out without a fractional part.
pub fn write_native<W: Scalar>(g: &Graph<W>) -> String {
    let mut out = String::new();
    let flag = if g.is_weighted() { "weighted" } else { "unweighted" };
    writeln!(out, "{} {} {flag}", g.n(), g.m()).unwrap();
    for (e, edge) in g.edges().iter().enumerate() {
        if g.is_weighted() {
            writeln!(out, "{} {} {}", edge.u, edge.v, g.weight(e).to_f64_lossy()).unwrap();
        } else {
            writeln!(out, "{} {}", edge.u, edge.v).unwrap();
        }
    }
    out
}
