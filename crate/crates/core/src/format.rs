//! Text formats for graphs: edge lists, graph6, and graph-JSON.
//!
//! Edge list: one edge `u v` per line (decimal, 0-based); `#` starts a
//! comment; blank lines are ignored. A line holding a single id declares a
//! vertex without adding an edge, which is how isolated vertices are written.
//!
//! graph6: the standard encoding, one graph per line, with an optional
//! `>>graph6<<` header.
//!
//! Graph-JSON: `{"n": 4, "edges": [[0, 1], ...]}`.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Edges,
    Graph6,
    Json,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edges" | "edgelist" => Ok(GraphFormat::Edges),
            "g6" | "graph6" => Ok(GraphFormat::Graph6),
            "json" => Ok(GraphFormat::Json),
            other => Err(Error::Validation(format!("unknown graph format `{other}`"))),
        }
    }
}

/// Guesses the format of `source` from its first meaningful line.
pub fn detect_format(source: &str) -> GraphFormat {
    let trimmed = source.trim_start();
    if trimmed.starts_with('{') {
        return GraphFormat::Json;
    }
    let first = source
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty());
    match first {
        Some(line)
            if line.starts_with(">>graph6<<")
                || line.bytes().all(|b| (63..=126).contains(&b)) =>
        {
            GraphFormat::Graph6
        }
        _ => GraphFormat::Edges,
    }
}

/// Parses a graph in any supported format, detecting it from the content.
pub fn parse_graph(source: &str) -> Result<Graph> {
    parse_graph_as(source, detect_format(source))
}

pub fn parse_graph_as(source: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::Edges => parse_edge_list(source),
        GraphFormat::Graph6 => {
            let mut graphs = parse_graph6_lines(source)?;
            match graphs.len() {
                1 => Ok(graphs.pop().unwrap()),
                0 => Err(Error::Graph6 {
                    byte: 0,
                    message: "no graph present".into(),
                }),
                k => Err(Error::Graph6 {
                    byte: 0,
                    message: format!("expected one graph, found {k}"),
                }),
            }
        }
        GraphFormat::Json => parse_graph_json(source),
    }
}

pub fn parse_edge_list(source: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut max_id: Option<VertexId> = None;
    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let ids = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<VertexId>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("`{tok}` is not a vertex id"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        match ids.as_slice() {
            [v] => max_id = max_id.max(Some(*v)),
            [u, v] => {
                if u == v {
                    return Err(Error::SelfLoop(*u));
                }
                max_id = max_id.max(Some((*u).max(*v)));
                edges.push((*u, *v));
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `u v`, found {} fields", ids.len()),
                })
            }
        }
    }
    let n = match max_id {
        Some(m) => m.checked_add(1).ok_or_else(|| Error::Parse {
            line: 0,
            message: "vertex id overflow".into(),
        })?,
        None => {
            return Err(Error::Parse {
                line: 0,
                message: "empty graph".into(),
            })
        }
    };
    if n > MAX_VERTICES {
        return Err(Error::Validation(format!("{n} vertices exceeds the supported maximum")));
    }
    Graph::from_edges(n, edges)
}

/// Upper bound on vertex counts accepted from text input.
pub const MAX_VERTICES: usize = 1 << 20;

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let mut touched = vec![false; g.n()];
    for e in g.edges() {
        touched[e.0] = true;
        touched[e.1] = true;
        writeln!(out, "{} {}", e.0, e.1).unwrap();
    }
    for v in (0..g.n()).filter(|&v| !touched[v]) {
        writeln!(out, "{v}").unwrap();
    }
    out
}

/// Decodes every non-empty line of `source` as a graph6 string.
pub fn parse_graph6_lines(source: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for raw in source.split('\n') {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if !line.trim().is_empty() {
            out.push(decode_graph6_at(line.trim_end().as_bytes(), offset)?);
        }
        offset += raw.len() + 1;
    }
    Ok(out)
}

pub fn decode_graph6(data: &[u8]) -> Result<Graph> {
    decode_graph6_at(data, 0)
}

fn decode_graph6_at(data: &[u8], base: usize) -> Result<Graph> {
    let err = |byte: usize, message: &str| Error::Graph6 {
        byte: base + byte,
        message: message.to_string(),
    };
    let mut pos = 0;
    if data.starts_with(b">>graph6<<") {
        pos = 10;
    }
    let sextet = |i: usize| -> Result<u64> {
        match data.get(i) {
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
            Some(_) => Err(err(i, "byte outside the printable range 63..=126")),
            None => Err(err(i, "unexpected end of input")),
        }
    };
    let n = if data.get(pos) != Some(&126) {
        let n = sextet(pos)?;
        pos += 1;
        n
    } else if data.get(pos + 1) != Some(&126) {
        let mut n = 0;
        for i in 0..3 {
            n = (n << 6) | sextet(pos + 1 + i)?;
        }
        pos += 4;
        n
    } else {
        let mut n = 0;
        for i in 0..6 {
            n = (n << 6) | sextet(pos + 2 + i)?;
        }
        pos += 8;
        n
    } as usize;
    if n == 0 {
        return Err(err(pos - 1, "graph must have at least one vertex"));
    }
    if n > MAX_VERTICES {
        return Err(err(0, "vertex count exceeds the supported maximum"));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    let body = &data[pos.min(data.len())..];
    if body.len() != needed {
        return Err(err(
            pos + body.len().min(needed),
            &format!("expected {needed} adjacency bytes, found {}", body.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = sextet(pos + k / 6)?;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let last = sextet(pos + k / 6)?;
        if last & ((1 << (6 - k % 6)) - 1) != 0 {
            return Err(err(pos + k / 6, "non-zero padding bits"));
        }
    }
    Graph::from_edges(n, edges)
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ascii")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<[VertexId; 2]>,
}

pub fn parse_graph_json(source: &str) -> Result<Graph> {
    let doc: GraphJson = serde_json::from_str(source).map_err(|e| Error::Json(e.to_string()))?;
    if doc.n == 0 {
        return Err(Error::Validation("graph must have at least one vertex".into()));
    }
    if doc.n > MAX_VERTICES {
        return Err(Error::Validation(format!("{} vertices exceeds the supported maximum", doc.n)));
    }
    Graph::from_edges(doc.n, doc.edges.into_iter().map(|[u, v]| (u, v)))
}

pub fn write_graph_json(g: &Graph) -> String {
    let doc = GraphJson {
        n: g.n(),
        edges: g.edges().map(|e| [e.0, e.1]).collect(),
    };
    serde_json::to_string(&doc).expect("graph json serializes")
}

pub fn write_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Edges => write_edge_list(g),
        GraphFormat::Graph6 => encode_graph6(g) + "\n",
        GraphFormat::Json => write_graph_json(g) + "\n",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_triangle() {
        let g = parse_graph("0 1\n1 2\n2 0").unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn edge_list_comments_and_isolated() {
        let g = parse_edge_list("# header\n\n0 1 # edge\n3\n").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 1);
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_self_loop() {
        assert_eq!(parse_graph("0 0"), Err(Error::SelfLoop(0)));
    }

    #[test]
    fn edge_list_reports_line() {
        match parse_edge_list("0 1\n1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_edge_list("0 1 2"), Err(Error::Parse { line: 1, .. })));
    }

    // Hand decode of "C~": 'C' = 67 gives n = 4; '~' = 126 gives the six
    // upper-triangle bits 111111, i.e. all pairs adjacent.
    #[test]
    fn graph6_k4() {
        assert_eq!(detect_format("C~\n"), GraphFormat::Graph6);
        assert_eq!(parse_graph("C~").unwrap(), Graph::complete(4));
        assert_eq!(encode_graph6(&Graph::complete(4)), "C~");
    }

    #[test]
    fn graph6_known_strings() {
        // bits (0,1)=1 (0,2)=0 (1,2)=1 padded to 101000 -> 40 + 63 = 'g'.
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(encode_graph6(&p3), "Bg");
        assert_eq!(decode_graph6(b">>graph6<<Bg").unwrap(), p3);
        assert_eq!(decode_graph6(b"@").unwrap(), Graph::new(1));
    }

    #[test]
    fn graph6_large_header() {
        let g = Graph::cycle(100);
        let s = encode_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(decode_graph6(s.as_bytes()).unwrap(), g);
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(decode_graph6(b"C"), Err(Error::Graph6 { byte: 1, .. })));
        assert!(matches!(decode_graph6(b"C~~"), Err(Error::Graph6 { .. })));
        assert!(matches!(decode_graph6(b"Bi"), Err(Error::Graph6 { byte: 1, .. })));
        assert!(matches!(decode_graph6(b"C\x7f"), Err(Error::Graph6 { .. })));
    }

    #[test]
    fn json_graph() {
        let g = parse_graph(r#"{"n": 4, "edges": [[0,1],[1,2],[2,3]]}"#).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(parse_graph(&write_graph_json(&g)).unwrap(), g);
        assert!(matches!(parse_graph(r#"{"n": 2, "edges": [[0,0]]}"#), Err(Error::SelfLoop(0))));
        assert!(matches!(parse_graph(r#"{"n": 2, "edges": [[0,5]]}"#), Err(Error::Validation(_))));
    }
}
