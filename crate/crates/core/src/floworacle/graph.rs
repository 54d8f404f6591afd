use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DssSpec, SurvivingSequence};
use crate::rational::{self, Rational};

/// Edge weight: an exact rational or the distinguished unbounded value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Weight {
    Finite(Rational),
    Unbounded,
}

impl Weight {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Weight::Finite(value) => Some(value),
            Weight::Unbounded => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, Weight::Unbounded)
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Weight::Finite(a), Weight::Finite(b)) => a.cmp(b),
            (Weight::Finite(_), Weight::Unbounded) => Ordering::Less,
            (Weight::Unbounded, Weight::Finite(_)) => Ordering::Greater,
            (Weight::Unbounded, Weight::Unbounded) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(value) => f.write_str(&rational::render(value)),
            Weight::Unbounded => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Vertex {
    Source,
    Sink,
    /// Original storage node `U_id`.
    In(usize),
    Out(usize),
    /// Rebuilt node at sequence position `j` (1-based).
    RepairedIn(usize),
    RepairedOut(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Source => f.write_str("s"),
            Vertex::Sink => f.write_str("t"),
            Vertex::In(id) => write!(f, "In{id}"),
            Vertex::Out(id) => write!(f, "Out{id}"),
            Vertex::RepairedIn(j) => write!(f, "In'{j}"),
            Vertex::RepairedOut(j) => write!(f, "Out'{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: Weight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl FlowGraph {
    pub fn new() -> Self {
        Self {
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, vertex: Vertex) -> usize {
        self.vertices.push(vertex);
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize, weight: Weight) {
        self.edges.push(Edge { from, to, weight });
    }

    pub fn index_of(&self, vertex: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&v| v == vertex)
    }

    pub fn source(&self) -> Option<usize> {
        self.index_of(Vertex::Source)
    }

    pub fn sink(&self) -> Option<usize> {
        self.index_of(Vertex::Sink)
    }

    pub fn is_acyclic(&self) -> bool {
        let mut indegree = vec![0usize; self.vertices.len()];
        for e in &self.edges {
            indegree[e.to] += 1;
        }
        let mut queue: VecDeque<usize> = (0..self.vertices.len())
            .filter(|&v| indegree[v] == 0)
            .collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for e in self.edges.iter().filter(|e| e.from == v) {
                indegree[e.to] -= 1;
                if indegree[e.to] == 0 {
                    queue.push_back(e.to);
                }
            }
        }
        seen == self.vertices.len()
    }

    /// Graphviz DOT rendering for manual inspection.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph flow {\n  rankdir=LR;\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.vertices[e.from], self.vertices[e.to], e.weight
            );
        }
        out.push_str("}\n");
        out
    }
}

impl Default for FlowGraph {
    fn default() -> Self {
        Self::new()
    }
}

/// Builds the flow graph that replays `seq` on `spec`: `2 + 2n + 2k` vertices.
pub fn build_flow_graph(spec: &DssSpec, seq: &SurvivingSequence) -> Result<FlowGraph> {
    crate::ensure_valid(spec)?;
    seq.check(spec).map_err(Error::InvalidSequence)?;

    let mut g = FlowGraph::new();
    let s = g.add_vertex(Vertex::Source);
    let t = g.add_vertex(Vertex::Sink);

    // current[id - 1] = vertex currently holding U_id's data
    let mut current = Vec::with_capacity(spec.n);
    for node in spec.nodes_by_id() {
        let input = g.add_vertex(Vertex::In(node.id));
        let output = g.add_vertex(Vertex::Out(node.id));
        g.add_edge(s, input, Weight::Unbounded);
        g.add_edge(input, output, Weight::Finite(node.alpha.clone()));
        current.push(output);
    }

    for (j, entry) in seq.entries.iter().enumerate() {
        let node = spec.node(entry.node).expect("checked");
        let input = g.add_vertex(Vertex::RepairedIn(j + 1));
        let output = g.add_vertex(Vertex::RepairedOut(j + 1));
        for &helper in &node.surviving_sets[entry.set_index] {
            g.add_edge(
                current[helper - 1],
                input,
                Weight::Finite(spec.beta.clone()),
            );
        }
        g.add_edge(input, output, Weight::Finite(node.alpha.clone()));
        g.add_edge(output, t, Weight::Unbounded);
        current[entry.node - 1] = output;
    }
    Ok(g)
}
