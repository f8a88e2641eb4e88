//! TSPLIB reader for symmetric instances with planar or explicit weights.

use super::InstanceError;
use crate::graph::Graph;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WeightType {
    Euc2d,
    Ceil2d,
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    FullMatrix,
    UpperRow,
    LowerDiagRow,
}

fn parse_err(line: usize, detail: impl Into<String>) -> InstanceError {
    InstanceError::Parse { line, detail: detail.into() }
}

/// Builds the complete graph of a TSPLIB file. `EUC_2D` distances are
/// rounded to the nearest integer, `CEIL_2D` rounded up.
pub fn parse_tsplib<W: Scalar>(text: &str) -> Result<Graph<W>, InstanceError> {
    let mut dimension: Option<usize> = None;
    let mut weight_type: Option<WeightType> = None;
    let mut format: Option<Format> = None;
    let mut coords: Vec<(f64, f64)> = Vec::new();
    let mut explicit: Vec<f64> = Vec::new();
    let mut section: Option<&str> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed == "EOF" {
            break;
        }
        let starts_keyword = trimmed.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
        if starts_keyword {
            section = None;
            let (key, value) = match trimmed.split_once(':') {
                Some((k, v)) => (k.trim(), v.trim()),
                None => (trimmed, ""),
            };
            match key {
                "DIMENSION" => dimension = Some(value.parse().map_err(|_| parse_err(line, "bad DIMENSION"))?),
                "TYPE" if !matches!(value, "TSP" | "HCP") => {
                    return Err(InstanceError::UnsupportedWeightType(format!("problem type {value}")));
                }
                "EDGE_WEIGHT_TYPE" => {
                    weight_type = Some(match value {
                        "EUC_2D" => WeightType::Euc2d,
                        "CEIL_2D" => WeightType::Ceil2d,
                        "EXPLICIT" => WeightType::Explicit,
                        other => return Err(InstanceError::UnsupportedWeightType(other.to_string())),
                    })
                }
                "EDGE_WEIGHT_FORMAT" => {
                    format = Some(match value {
                        "FULL_MATRIX" => Format::FullMatrix,
                        "UPPER_ROW" => Format::UpperRow,
                        "LOWER_DIAG_ROW" => Format::LowerDiagRow,
                        other => return Err(InstanceError::UnsupportedWeightType(format!("EXPLICIT {other}"))),
                    })
                }
                "NODE_COORD_SECTION" => section = Some("coords"),
                "EDGE_WEIGHT_SECTION" => section = Some("weights"),
                "DISPLAY_DATA_SECTION" | "TOUR_SECTION" | "FIXED_EDGES_SECTION" => section = Some("skip"),
                _ => {}
            }
            continue;
        }
        match section {
            Some("coords") => {
                let toks: Vec<&str> = trimmed.split_whitespace().collect();
                if toks.len() < 3 {
                    return Err(parse_err(line, "coordinate line needs id, x and y"));
                }
                let x = toks[1].parse().map_err(|_| parse_err(line, "bad x coordinate"))?;
                let y = toks[2].parse().map_err(|_| parse_err(line, "bad y coordinate"))?;
                coords.push((x, y));
            }
            Some("weights") => {
                for tok in trimmed.split_whitespace() {
                    explicit.push(tok.parse().map_err(|_| parse_err(line, format!("bad weight {tok}")))?);
                }
            }
            Some(_) => {}
            None => return Err(parse_err(line, "data outside of a section")),
        }
    }

    let n = dimension.ok_or_else(|| parse_err(0, "missing DIMENSION"))?;
    let weight_type = weight_type.ok_or_else(|| parse_err(0, "missing EDGE_WEIGHT_TYPE"))?;
    let mut weight = vec![0.0; n * n];
    match weight_type {
        WeightType::Euc2d | WeightType::Ceil2d => {
            if coords.len() != n {
                return Err(InstanceError::CountMismatch { what: "coordinates", declared: n, found: coords.len() });
            }
            for u in 0..n {
                for v in u + 1..n {
                    let d = ((coords[u].0 - coords[v].0).powi(2) + (coords[u].1 - coords[v].1).powi(2)).sqrt();
                    weight[u * n + v] = if weight_type == WeightType::Euc2d { (d + 0.5).floor() } else { d.ceil() };
                }
            }
        }
        WeightType::Explicit => {
            let format = format.ok_or_else(|| parse_err(0, "missing EDGE_WEIGHT_FORMAT"))?;
            let expected = match format {
                Format::FullMatrix => n * n,
                Format::UpperRow => n * n.saturating_sub(1) / 2,
                Format::LowerDiagRow => n * (n + 1) / 2,
            };
            if explicit.len() != expected {
                return Err(InstanceError::CountMismatch { what: "weights", declared: expected, found: explicit.len() });
            }
            let mut it = explicit.iter().copied();
            match format {
                Format::FullMatrix => {
                    for u in 0..n {
                        for v in 0..n {
                            let w = it.next().unwrap();
                            if u < v {
                                weight[u * n + v] = w;
                            } else if u > v && weight[v * n + u] != w {
                                return Err(InstanceError::UnsupportedWeightType("asymmetric FULL_MATRIX".into()));
                            }
                        }
                    }
                }
                Format::UpperRow => {
                    for u in 0..n {
                        for v in u + 1..n {
                            weight[u * n + v] = it.next().unwrap();
                        }
                    }
                }
                Format::LowerDiagRow => {
                    for u in 0..n {
                        for v in 0..=u {
                            let w = it.next().unwrap();
                            if v < u {
                                weight[v * n + u] = w;
                            }
                        }
                    }
                }
            }
        }
    }
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            let w = weight[u * n + v];
            if w == 0.0 {
                return Err(InstanceError::ZeroWeightEdge { u, v });
            }
            edges.push((u, v, W::of(w)));
        }
    }
    Ok(Graph::weighted(n, edges)?)
}
