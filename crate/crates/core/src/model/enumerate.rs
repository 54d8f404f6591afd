use num_bigint::BigUint;
use num_traits::Zero;

use super::{DssSpec, SequenceEntry, SurvivingSequence};
use crate::rational::factorial;

/// Every ordered `k`-tuple of distinct nodes crossed with every surviving-set choice,
/// in canonical order. The spec should validate; ids are assumed to be `1..=n`.
pub fn enumerate_sequences(spec: &DssSpec) -> SequenceIter {
    let set_counts = spec
        .nodes_by_id()
        .iter()
        .map(|node| node.surviving_sets.len())
        .collect();
    SequenceIter::new(set_counts, spec.k)
}

/// Closed-form number of sequences: `k! * e_k(c_1, .., c_n)` where `c_i` is the
/// number of surviving sets of `U_i` and `e_k` the elementary symmetric polynomial.
pub fn count_sequences(spec: &DssSpec) -> BigUint {
    let counts: Vec<usize> = spec
        .nodes_by_id()
        .iter()
        .map(|node| node.surviving_sets.len())
        .collect();
    let k = spec.k;
    if k > counts.len() {
        return BigUint::zero();
    }
    // esym[j] = e_j over the nodes processed so far
    let mut esym = vec![BigUint::zero(); k + 1];
    esym[0] = BigUint::from(1u32);
    for &c in &counts {
        let c = BigUint::from(c);
        for j in (1..=k).rev() {
            let add = &esym[j - 1] * &c;
            esym[j] += add;
        }
    }
    factorial(k) * &esym[k]
}

/// Odometer over `(node, set)` positions; see [`enumerate_sequences`].
///
/// Nodes without surviving sets never occupy a position.
#[derive(Debug, Clone)]
pub struct SequenceIter {
    set_counts: Vec<usize>,
    k: usize,
    /// (0-based node index, set index) per position
    positions: Vec<(usize, usize)>,
    used: Vec<bool>,
    done: bool,
}

impl SequenceIter {
    fn new(set_counts: Vec<usize>, k: usize) -> Self {
        let usable = set_counts.iter().filter(|&&c| c > 0).count();
        let mut iter = Self {
            used: vec![false; set_counts.len()],
            set_counts,
            k,
            positions: Vec::with_capacity(k),
            done: k > usable,
        };
        if !iter.done {
            iter.fill();
        }
        iter
    }

    fn next_usable(&self, from: usize) -> Option<usize> {
        (from..self.set_counts.len()).find(|&v| !self.used[v] && self.set_counts[v] > 0)
    }

    /// Extends `positions` to length `k` with the smallest usable nodes. Always
    /// succeeds because at least `k` nodes are usable.
    fn fill(&mut self) {
        while self.positions.len() < self.k {
            let node = self.next_usable(0).expect("enough usable nodes");
            self.used[node] = true;
            self.positions.push((node, 0));
        }
    }

    fn advance(&mut self) {
        while let Some((node, set)) = self.positions.pop() {
            if set + 1 < self.set_counts[node] {
                self.positions.push((node, set + 1));
                self.fill();
                return;
            }
            self.used[node] = false;
            if let Some(next) = self.next_usable(node + 1) {
                self.used[next] = true;
                self.positions.push((next, 0));
                self.fill();
                return;
            }
        }
        self.done = true;
    }

    fn current(&self) -> SurvivingSequence {
        SurvivingSequence::new(
            self.positions
                .iter()
                .map(|&(node, set_index)| SequenceEntry {
                    node: node + 1,
                    set_index,
                })
                .collect(),
        )
    }
}

impl Iterator for SequenceIter {
    type Item = SurvivingSequence;

    fn next(&mut self) -> Option<SurvivingSequence> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::int;

    /// Independent recursive enumeration, sorted into canonical order.
    fn brute_force(spec: &DssSpec) -> Vec<SurvivingSequence> {
        fn go(spec: &DssSpec, prefix: &mut Vec<SequenceEntry>, out: &mut Vec<SurvivingSequence>) {
            if prefix.len() == spec.k {
                out.push(SurvivingSequence::new(prefix.clone()));
                return;
            }
            for node in &spec.nodes {
                if prefix.iter().any(|e| e.node == node.id) {
                    continue;
                }
                for set_index in 0..node.surviving_sets.len() {
                    prefix.push(SequenceEntry {
                        node: node.id,
                        set_index,
                    });
                    go(spec, prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(spec, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    #[test]
    fn six_node_stream_matches_brute_force() {
        let spec = fixtures::six_node();
        let stream: Vec<_> = enumerate_sequences(&spec).collect();
        let oracle = brute_force(&spec);
        // set counts (2,4,4,4,2,2): 2 * e_2 = 2 * (18^2 - 60) / 2
        assert_eq!(oracle.len(), 264);
        assert_eq!(stream, oracle);
        assert_eq!(count_sequences(&spec), BigUint::from(264u32));
    }

    #[test]
    fn one_set_per_node_counts_permutations() {
        let mut spec = fixtures::six_node();
        for node in &mut spec.nodes {
            node.surviving_sets.truncate(1);
        }
        assert_eq!(enumerate_sequences(&spec).count(), 30);
        assert_eq!(count_sequences(&spec), BigUint::from(30u32));
    }

    #[test]
    fn homogeneous_all_subsets_count() {
        let spec = fixtures::homogeneous_all_subsets(4, 2, 3, int(2), int(1));
        assert_eq!(count_sequences(&spec), BigUint::from(12u32));
        assert_eq!(enumerate_sequences(&spec).count(), 12);
    }

    #[test]
    fn k_one_enumerates_nodes_and_sets() {
        let spec = DssSpec {
            n: 2,
            k: 1,
            beta: int(1),
            nodes: vec![
                super::super::NodeSpec::new(1, int(1), vec![vec![2]]),
                super::super::NodeSpec::new(2, int(1), vec![vec![1]]),
            ],
        };
        let all: Vec<_> = enumerate_sequences(&spec).collect();
        assert_eq!(
            all,
            vec![
                SurvivingSequence::from_pairs(&[(1, 0)]),
                SurvivingSequence::from_pairs(&[(2, 0)])
            ]
        );
        assert_eq!(count_sequences(&spec), BigUint::from(2u32));

        let mut table = fixtures::six_node();
        table.k = 1;
        assert_eq!(enumerate_sequences(&table).count(), 18);
    }
}
