//! Simple undirected graphs in the DIMACS edge format.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Vertices are `0..vertices`; edges are stored as `(low, high)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::validation("graph needs at least one vertex"));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::validation(format!("self-loop at vertex {}", u + 1)));
            }
            if u >= vertices || v >= vertices {
                return Err(Error::validation("edge endpoint out of range"));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph {
            vertices,
            edges: set,
        })
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.vertices, self.edges.len());
        for (u, v) in &self.edges {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        }
        out
    }
}

/// Parses `p edge V E` followed by `e u v` lines (1-based).
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut vertices = None;
    let mut edges = Vec::new();
    for line in text.lines().map(str::trim) {
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            [] | ["c", ..] => {}
            ["p", "edge" | "col", v, _] => {
                vertices = Some(
                    v.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad vertex count `{v}`")))?,
                );
            }
            ["e", u, v] => {
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .ok()
                        .filter(|&x| x >= 1)
                        .ok_or_else(|| Error::Parse(format!("bad vertex `{s}`")))
                };
                edges.push((parse(u)? - 1, parse(v)? - 1));
            }
            _ => return Err(Error::Parse(format!("unrecognised line `{line}`"))),
        }
    }
    let vertices = vertices.ok_or_else(|| Error::Parse("missing `p edge` header".into()))?;
    Graph::new(vertices, edges)
}
