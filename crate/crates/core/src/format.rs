//! Text and JSON instance formats.
//!
//! Graph text, one declaration per line, `#` starts a comment:
//!
//! ```text
//! graph 4
//! class 0 0 1
//! class 1 2 3
//! edge 0 2
//! ```
//!
//! Hypergraph text:
//!
//! ```text
//! hypergraph 3
//! aside 0 1
//! bside 0 1 2
//! edge 0 0 1
//! ```

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::apps::hypergraph::{HyperEdge, Hypergraph};
use crate::error::{Error, Result};
use crate::graph::{PartitionedGraph, SimpleGraph};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, numbered from 1, split into words.
fn tokens(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn number(line: usize, w: &str) -> Result<usize> {
    w.parse().map_err(|_| parse_err(line, format!("`{w}` is not a non-negative integer")))
}

fn numbers(line: usize, ws: &[&str]) -> Result<Vec<usize>> {
    ws.iter().map(|w| number(line, w)).collect()
}

pub fn parse_instance(text: &str) -> Result<PartitionedGraph> {
    let mut n = None;
    let mut classes = Vec::new();
    let mut edges = Vec::new();
    for (line, words) in tokens(text) {
        match words[0] {
            "graph" => {
                if words.len() != 2 {
                    return Err(parse_err(line, "expected `graph <n>`"));
                }
                if n.is_some() {
                    return Err(parse_err(line, "`graph` declared twice"));
                }
                n = Some(number(line, words[1])?);
            }
            "class" => {
                if words.len() < 2 {
                    return Err(parse_err(line, "expected `class <id> <v>...`"));
                }
                classes.push((number(line, words[1])?, numbers(line, &words[2..])?));
            }
            "edge" => {
                if words.len() != 3 {
                    return Err(parse_err(line, "expected `edge <u> <v>`"));
                }
                let (u, v) = (number(line, words[1])?, number(line, words[2])?);
                if u == v {
                    return Err(parse_err(line, format!("self-loop at vertex {u}")));
                }
                edges.push((u, v));
            }
            other => return Err(parse_err(line, format!("unknown declaration `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing `graph <n>` line"))?;
    PartitionedGraph::new(SimpleGraph::from_edges(n, edges)?, classes)
}

pub fn print_instance(g: &PartitionedGraph) -> String {
    let mut out = format!("graph {}\n", g.n());
    for c in 0..g.class_count() {
        let _ = write!(out, "class {}", g.label(c));
        for v in g.class(c) {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    for (u, v) in g.graph().edges() {
        let _ = writeln!(out, "edge {u} {v}");
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonClass {
    id: usize,
    vertices: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonInstance {
    n: usize,
    classes: Vec<JsonClass>,
    edges: Vec<[usize; 2]>,
}

pub fn parse_instance_json(text: &str) -> Result<PartitionedGraph> {
    let inst: JsonInstance = serde_json::from_str(text)?;
    let graph = SimpleGraph::from_edges(inst.n, inst.edges.iter().map(|e| (e[0], e[1])))?;
    PartitionedGraph::new(graph, inst.classes.into_iter().map(|c| (c.id, c.vertices)).collect())
}

pub fn print_instance_json(g: &PartitionedGraph) -> String {
    let inst = JsonInstance {
        n: g.n(),
        classes: (0..g.class_count()).map(|c| JsonClass { id: g.label(c), vertices: g.class(c).to_vec() }).collect(),
        edges: g.graph().edges().map(|(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&inst).expect("instance serializes")
}

/// Reads an instance, as JSON when the extension is `.json` and as text otherwise.
pub fn read_instance(path: &Path) -> Result<PartitionedGraph> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        parse_instance_json(&text)
    } else {
        parse_instance(&text)
    }
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut r = None;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut edges = Vec::new();
    for (line, words) in tokens(text) {
        match words[0] {
            "hypergraph" => {
                if words.len() != 2 {
                    return Err(parse_err(line, "expected `hypergraph <r>`"));
                }
                if r.is_some() {
                    return Err(parse_err(line, "`hypergraph` declared twice"));
                }
                r = Some(number(line, words[1])?);
            }
            "aside" => a.extend(numbers(line, &words[1..])?),
            "bside" => b.extend(numbers(line, &words[1..])?),
            "edge" => {
                if words.len() < 3 {
                    return Err(parse_err(line, "expected `edge <a> <b>...`"));
                }
                edges.push(HyperEdge { a: number(line, words[1])?, b: numbers(line, &words[2..])? });
            }
            other => return Err(parse_err(line, format!("unknown declaration `{other}`"))),
        }
    }
    let r = r.ok_or_else(|| parse_err(0, "missing `hypergraph <r>` line"))?;
    Hypergraph::new(r, a, b, edges)
}

pub fn print_hypergraph(h: &Hypergraph) -> String {
    let join = |vs: &[usize]| vs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let mut out = format!("hypergraph {}\n", h.r);
    let _ = writeln!(out, "aside {}", join(&h.a));
    let _ = writeln!(out, "bside {}", join(&h.b));
    for e in &h.edges {
        let _ = writeln!(out, "edge {} {}", e.a, join(&e.b));
    }
    out
}
