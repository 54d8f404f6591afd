//! Edmonds-Karp over exact rationals. Shortest augmenting paths bound the number
//! of augmentations by `O(VE)` regardless of the weights, so rational capacities
//! terminate.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::graph::{FlowGraph, Vertex, Weight};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutEdge {
    pub from: Vertex,
    pub to: Vertex,
    #[serde(with = "rational::as_string")]
    pub weight: Rational,
}

/// Max-flow value with a minimum cut proving it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCertificate {
    #[serde(with = "rational::as_string")]
    pub flow_value: Rational,
    /// Vertices reachable from the source in the final residual graph.
    pub source_side: Vec<Vertex>,
    pub sink_side: Vec<Vertex>,
    pub cut_edges: Vec<CutEdge>,
}

impl CutCertificate {
    pub fn cut_weight(&self) -> Rational {
        self.cut_edges.iter().map(|e| &e.weight).sum()
    }
}

struct Arc {
    to: usize,
    residual: Weight,
}

fn positive(w: &Weight) -> bool {
    match w {
        Weight::Unbounded => true,
        Weight::Finite(value) => value.is_positive(),
    }
}

/// Exact maximum `s`-`t` flow. Fails with [`Error::UnboundedFlow`] when an
/// augmenting path consists of unbounded edges only.
pub fn max_flow(g: &FlowGraph) -> Result<CutCertificate> {
    let s = g
        .source()
        .ok_or_else(|| Error::Precondition("flow graph has no source".into()))?;
    let t = g
        .sink()
        .ok_or_else(|| Error::Precondition("flow graph has no sink".into()))?;
    let n = g.vertices.len();

    // arc 2i is edge i, arc 2i + 1 its reverse
    let mut arcs = Vec::with_capacity(2 * g.edges.len());
    let mut adjacency = vec![Vec::new(); n];
    for e in &g.edges {
        if let Weight::Finite(w) = &e.weight {
            if w.is_negative() {
                return Err(Error::Precondition(format!(
                    "negative edge weight {w} on {} -> {}",
                    g.vertices[e.from], g.vertices[e.to]
                )));
            }
        }
        adjacency[e.from].push(arcs.len());
        arcs.push(Arc {
            to: e.to,
            residual: e.weight.clone(),
        });
        adjacency[e.to].push(arcs.len());
        arcs.push(Arc {
            to: e.from,
            residual: Weight::Finite(Rational::zero()),
        });
    }

    let mut flow = Rational::zero();
    loop {
        let mut via = vec![usize::MAX; n];
        let mut reached = vec![false; n];
        reached[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            if v == t {
                break;
            }
            for &a in &adjacency[v] {
                let to = arcs[a].to;
                if !reached[to] && positive(&arcs[a].residual) {
                    reached[to] = true;
                    via[to] = a;
                    queue.push_back(to);
                }
            }
        }
        if !reached[t] || s == t {
            break;
        }

        let mut bottleneck = Weight::Unbounded;
        let mut v = t;
        while v != s {
            let a = via[v];
            if arcs[a].residual < bottleneck {
                bottleneck = arcs[a].residual.clone();
            }
            v = arcs[a ^ 1].to;
        }
        let delta = match bottleneck {
            Weight::Finite(delta) => delta,
            Weight::Unbounded => return Err(Error::UnboundedFlow),
        };

        let mut v = t;
        while v != s {
            let a = via[v];
            if let Weight::Finite(r) = &mut arcs[a].residual {
                *r -= &delta;
            }
            if let Weight::Finite(r) = &mut arcs[a ^ 1].residual {
                *r += &delta;
            }
            v = arcs[a ^ 1].to;
        }
        flow += delta;
    }

    let mut reachable = vec![false; n];
    reachable[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &a in &adjacency[v] {
            let to = arcs[a].to;
            if !reachable[to] && positive(&arcs[a].residual) {
                reachable[to] = true;
                queue.push_back(to);
            }
        }
    }

    let mut cut_edges = Vec::new();
    for e in &g.edges {
        if reachable[e.from] && !reachable[e.to] {
            match &e.weight {
                Weight::Finite(w) => cut_edges.push(CutEdge {
                    from: g.vertices[e.from],
                    to: g.vertices[e.to],
                    weight: w.clone(),
                }),
                // a saturated unbounded edge would have required an unbounded flow
                Weight::Unbounded => return Err(Error::UnboundedFlow),
            }
        }
    }
    let (source_side, sink_side): (Vec<_>, Vec<_>) = (0..n).partition(|&v| reachable[v]);
    Ok(CutCertificate {
        flow_value: flow,
        source_side: source_side.into_iter().map(|v| g.vertices[v]).collect(),
        sink_side: sink_side.into_iter().map(|v| g.vertices[v]).collect(),
        cut_edges,
    })
}
