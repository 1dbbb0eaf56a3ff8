//! Line-oriented text formats.
//!
//! Graph files:
//!
//! ```text
//! 4 6
//! 0: 1 2 3
//! 1: 0 3 2
//! 2: 0 1 3
//! 3: 0 2 1
//! outer: 0 1 2
//! ```
//!
//! The header is `n m`, followed by one line `v: u1 u2 ...` per vertex
//! listing its neighbours in clockwise order. The optional `outer:` line
//! selects `D` by its boundary walk; either direction of the cycle works.
//!
//! Assignment files start with `k`, then one line `u v : a>b ...` per edge
//! with matched pairs `(u, a)(v, b)`. Edges left out get the empty matching.
//! Colouring files hold `v=c` lines. In every format blank lines and text
//! after `#` are ignored.

use std::fmt::Write as _;

use crate::dp::{Coloring, CorrespondenceAssignment, DpError, Label};
use crate::plane_graph::{Graph, GraphError, Plane, PlaneGraph, Vertex};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Dp(#[from] DpError),
}

fn syntax(line: usize, message: impl Into<String>) -> IoError {
    IoError::Syntax { line, message: message.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_num<T: std::str::FromStr>(line: usize, token: &str) -> Result<T, IoError> {
    token.parse().map_err(|_| syntax(line, format!("expected a number, found `{token}`")))
}

fn parse_list(line: usize, tokens: &str) -> Result<Vec<Vertex>, IoError> {
    tokens.split_whitespace().map(|t| parse_num(line, t)).collect()
}

/// Parses a graph file. The outer face is designated when an `outer:` line
/// is present.
pub fn parse_graph(text: &str) -> Result<Plane, IoError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, "missing `n m` header"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = head[..] else {
        return Err(syntax(hl, "header must be `n m`"));
    };
    let (n, m): (usize, usize) = (parse_num(hl, n)?, parse_num(hl, m)?);
    let mut rotations: Vec<Option<Vec<Vertex>>> = vec![None; n];
    let mut outer = None;
    for (ln, line) in lines {
        let (tag, rest) = line.split_once(':').ok_or_else(|| syntax(ln, "expected `v: ...` or `outer: ...`"))?;
        let tag = tag.trim();
        if tag == "outer" {
            if outer.is_some() {
                return Err(syntax(ln, "duplicate outer line"));
            }
            outer = Some(parse_list(ln, rest)?);
            continue;
        }
        let v: Vertex = parse_num(ln, tag)?;
        if v >= n {
            return Err(syntax(ln, format!("vertex {v} out of range for n = {n}")));
        }
        if rotations[v].is_some() {
            return Err(syntax(ln, format!("duplicate rotation for vertex {v}")));
        }
        rotations[v] = Some(parse_list(ln, rest)?);
    }
    let rotations: Vec<Vec<Vertex>> = rotations
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| syntax(0, format!("no rotation line for vertex {v}"))))
        .collect::<Result<_, _>>()?;
    let pg = PlaneGraph::build(rotations)?;
    if pg.graph().edge_count() != m {
        return Err(syntax(hl, format!("header says {m} edges, rotations give {}", pg.graph().edge_count())));
    }
    let plane = Plane::new(pg)?;
    Ok(match outer {
        Some(boundary) => plane.with_outer_boundary(&boundary)?,
        None => plane,
    })
}

/// Parses only the rotation system; unlike [`parse_graph`] this accepts
/// disconnected graphs, whose faces cannot be traced.
pub fn parse_rotation_system(text: &str) -> Result<PlaneGraph, IoError> {
    let stripped: String =
        content_lines(text).filter(|(_, l)| !l.starts_with("outer")).map(|(_, l)| format!("{l}\n")).collect();
    let mut lines = content_lines(&stripped);
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, "missing `n m` header"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let [n, _] = head[..] else {
        return Err(syntax(hl, "header must be `n m`"));
    };
    let n: usize = parse_num(hl, n)?;
    let mut rotations = vec![Vec::new(); n];
    for (ln, line) in lines {
        let (tag, rest) = line.split_once(':').ok_or_else(|| syntax(ln, "expected `v: ...`"))?;
        let v: Vertex = parse_num(ln, tag.trim())?;
        if v >= n {
            return Err(syntax(ln, format!("vertex {v} out of range for n = {n}")));
        }
        rotations[v] = parse_list(ln, rest)?;
    }
    Ok(PlaneGraph::build(rotations)?)
}

pub fn write_rotation_system(pg: &PlaneGraph, outer: Option<&[Vertex]>) -> String {
    let mut out = format!("{} {}\n", pg.graph().vertex_count(), pg.graph().edge_count());
    for (v, rot) in pg.rotations().iter().enumerate() {
        let list: Vec<String> = rot.iter().map(|u| u.to_string()).collect();
        let _ = writeln!(out, "{v}: {}", list.join(" "));
    }
    if let Some(b) = outer {
        let list: Vec<String> = b.iter().map(|u| u.to_string()).collect();
        let _ = writeln!(out, "outer: {}", list.join(" "));
    }
    out
}

pub fn write_graph(plane: &Plane) -> String {
    let outer = plane.outer_face().ok().map(|f| f.vertices());
    write_rotation_system(plane.plane_graph(), outer.as_deref())
}

/// Parses an assignment file against `graph`.
pub fn parse_assignment(text: &str, graph: &Graph) -> Result<CorrespondenceAssignment, IoError> {
    let mut lines = content_lines(text);
    let (kl, kline) = lines.next().ok_or_else(|| syntax(1, "missing `k` line"))?;
    let k: usize = parse_num(kl, kline)?;
    let mut out = CorrespondenceAssignment::empty(graph, k);
    let mut seen = std::collections::BTreeSet::new();
    for (ln, line) in lines {
        let (ends, pairs) = line.split_once(':').ok_or_else(|| syntax(ln, "expected `u v : a>b ...`"))?;
        let ends = parse_list(ln, ends)?;
        let [u, v] = ends[..] else {
            return Err(syntax(ln, "edge must be `u v`"));
        };
        if !graph.has_edge(u, v) {
            return Err(syntax(ln, format!("{u}-{v} is not an edge")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(syntax(ln, format!("duplicate matching for {u}-{v}")));
        }
        let pairs: Vec<(Label, Label)> = pairs
            .split_whitespace()
            .map(|t| {
                let (a, b) = t.split_once('>').ok_or_else(|| syntax(ln, format!("expected `a>b`, found `{t}`")))?;
                Ok((parse_num(ln, a)?, parse_num(ln, b)?))
            })
            .collect::<Result<_, IoError>>()?;
        out.set_matching(u, v, &pairs).map_err(|e| syntax(ln, e.to_string()))?;
    }
    Ok(out)
}

/// One line per edge with `u < v`, including edges with empty matchings.
pub fn write_assignment(assignment: &CorrespondenceAssignment) -> String {
    let mut out = format!("{}\n", assignment.k());
    for r in assignment.records() {
        let pairs: Vec<String> = r.pairs.iter().map(|(a, b)| format!("{a}>{b}")).collect();
        let _ = writeln!(out, "{} {} : {}", r.u, r.v, pairs.join(" "));
    }
    out
}

/// Parses `v=c` lines into a colouring on `n` vertices.
pub fn parse_coloring(text: &str, n: usize) -> Result<Coloring, IoError> {
    let mut out = Coloring::empty(n);
    for (ln, line) in content_lines(text) {
        for token in line.split_whitespace() {
            let (v, c) = token.split_once('=').ok_or_else(|| syntax(ln, format!("expected `v=c`, found `{token}`")))?;
            let (v, c): (Vertex, Label) = (parse_num(ln, v)?, parse_num(ln, c)?);
            if v >= n {
                return Err(syntax(ln, format!("vertex {v} out of range for n = {n}")));
            }
            if out.get(v).is_some() {
                return Err(syntax(ln, format!("vertex {v} coloured twice")));
            }
            if c == 0 {
                return Err(syntax(ln, "labels start at 1"));
            }
            out.set(v, c);
        }
    }
    Ok(out)
}

pub fn write_coloring(coloring: &Coloring) -> String {
    coloring.support().map(|(v, c)| format!("{v}={c}\n")).collect()
}

/// Parses a whitespace or comma separated vertex list such as `0,1,2`.
pub fn parse_vertex_set(text: &str) -> Result<Vec<Vertex>, IoError> {
    text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(|t| parse_num(1, t)).collect()
}
