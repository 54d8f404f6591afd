//! Bitmask form of a validated spec and the branch-and-bound search over node tuples.
//!
//! A position's cut term depends only on its node, its surviving set and the set
//! of nodes at earlier positions, so the best set can be chosen per position and
//! the search only ranges over ordered tuples of distinct nodes.

use rayon::prelude::*;

use crate::model::DssSpec;
use crate::rational::Rational;

#[derive(Debug, Clone)]
pub(crate) struct Prepared {
    pub n: usize,
    pub k: usize,
    pub alphas: Vec<Rational>,
    pub beta: Rational,
    /// surviving sets per node index, bit `j` = node id `j + 1`
    pub sets: Vec<Vec<u64>>,
}

/// Result of a search restricted to one first node.
#[derive(Debug, Clone)]
pub(crate) struct Found {
    pub value: Rational,
    /// 0-based node indices per position
    pub nodes: Vec<usize>,
}

impl Prepared {
    /// The spec must validate.
    pub fn new(spec: &DssSpec) -> Self {
        let nodes = spec.nodes_by_id();
        Self {
            n: spec.n,
            k: spec.k,
            alphas: nodes.iter().map(|node| node.alpha.clone()).collect(),
            beta: spec.beta.clone(),
            sets: nodes
                .iter()
                .map(|node| {
                    node.surviving_sets
                        .iter()
                        .map(|set| set.iter().fold(0u64, |mask, &id| mask | 1 << (id - 1)))
                        .collect()
                })
                .collect(),
        }
    }

    /// `|set \ prior|` for one surviving set.
    pub fn multiplicity(&self, node: usize, set: usize, prior: u64) -> usize {
        (self.sets[node][set] & !prior).count_ones() as usize
    }

    /// Smallest `|set \ prior|` over the node's surviving sets.
    pub fn min_multiplicity(&self, node: usize, prior: u64) -> usize {
        self.sets[node]
            .iter()
            .map(|&set| (set & !prior).count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    /// `min(alpha, m * beta)`.
    pub fn cut_term(&self, node: usize, multiplicity: usize) -> Rational {
        let bandwidth = &self.beta * Rational::from_integer(multiplicity.into());
        if bandwidth < self.alphas[node] {
            bandwidth
        } else {
            self.alphas[node].clone()
        }
    }

    /// Lowest set index whose term equals the smallest achievable term at this position.
    pub fn best_set_for_cut(&self, node: usize, prior: u64) -> usize {
        let target = self.cut_term(node, self.min_multiplicity(node, prior));
        (0..self.sets[node].len())
            .find(|&s| self.cut_term(node, self.multiplicity(node, s, prior)) == target)
            .expect("node has at least one surviving set")
    }

    /// Lowest set index with the smallest multiplicity.
    pub fn best_set_for_size(&self, node: usize, prior: u64) -> usize {
        let target = self.min_multiplicity(node, prior);
        (0..self.sets[node].len())
            .find(|&s| self.multiplicity(node, s, prior) == target)
            .expect("node has at least one surviving set")
    }

    fn usable(&self, node: usize) -> bool {
        !self.sets[node].is_empty()
    }

    /// Minimises `sum_j cost(node_j, min multiplicity_j)` over ordered `k`-tuples of
    /// distinct nodes. Costs must be nonnegative. The search is split by first node;
    /// each part prunes against its own incumbent only, so the result and the number
    /// of completed tuples do not depend on how parts are scheduled.
    ///
    /// Returns the first minimiser in lexicographic node order and the number of
    /// tuples that reached full length.
    pub fn minimise<F>(&self, prune: bool, cost: F) -> (Option<Found>, u64)
    where
        F: Fn(usize, usize) -> Rational + Sync,
    {
        let roots: Vec<usize> = (0..self.n).filter(|&v| self.usable(v)).collect();
        let parts: Vec<(Option<Found>, u64)> = roots
            .par_iter()
            .map(|&root| {
                let mut search = Search {
                    prep: self,
                    cost: &cost,
                    prune,
                    best: None,
                    examined: 0,
                    stack: Vec::with_capacity(self.k),
                };
                if self.k == 0 {
                    return (None, 0);
                }
                let first = cost(root, self.min_multiplicity(root, 0));
                search.stack.push(root);
                search.descend(1 << root, first);
                (search.best, search.examined)
            })
            .collect();

        let mut best: Option<Found> = None;
        let mut examined = 0;
        for (found, count) in parts {
            examined += count;
            if let Some(found) = found {
                if best.as_ref().is_none_or(|b| found.value < b.value) {
                    best = Some(found);
                }
            }
        }
        (best, examined)
    }

    /// Every ordered `k`-tuple of distinct usable nodes with per-position minimum
    /// multiplicities, in lexicographic order.
    pub fn for_each_tuple(&self, mut visit: impl FnMut(&[usize], &[usize])) {
        fn go(
            prep: &Prepared,
            prior: u64,
            nodes: &mut Vec<usize>,
            mults: &mut Vec<usize>,
            visit: &mut dyn FnMut(&[usize], &[usize]),
        ) {
            if nodes.len() == prep.k {
                visit(nodes, mults);
                return;
            }
            for v in 0..prep.n {
                if prior & (1 << v) != 0 || !prep.usable(v) {
                    continue;
                }
                nodes.push(v);
                mults.push(prep.min_multiplicity(v, prior));
                go(prep, prior | 1 << v, nodes, mults, visit);
                nodes.pop();
                mults.pop();
            }
        }
        go(self, 0, &mut Vec::new(), &mut Vec::new(), &mut visit);
    }
}

struct Search<'a, F> {
    prep: &'a Prepared,
    cost: &'a F,
    prune: bool,
    best: Option<Found>,
    examined: u64,
    stack: Vec<usize>,
}

impl<F: Fn(usize, usize) -> Rational> Search<'_, F> {
    fn beaten(&self, partial: &Rational) -> bool {
        self.prune && self.best.as_ref().is_some_and(|b| *partial >= b.value)
    }

    fn descend(&mut self, prior: u64, partial: Rational) {
        if self.stack.len() == self.prep.k {
            self.examined += 1;
            if self.best.as_ref().is_none_or(|b| partial < b.value) {
                self.best = Some(Found {
                    value: partial,
                    nodes: self.stack.clone(),
                });
            }
            return;
        }
        if self.beaten(&partial) {
            return;
        }
        for v in 0..self.prep.n {
            if prior & (1 << v) != 0 || !self.prep.usable(v) {
                continue;
            }
            let term = (self.cost)(v, self.prep.min_multiplicity(v, prior));
            let next = &partial + term;
            if self.beaten(&next) {
                continue;
            }
            self.stack.push(v);
            self.descend(prior | 1 << v, next);
            self.stack.pop();
        }
    }
}
