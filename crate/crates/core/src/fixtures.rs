//! Reference systems used by tests, benches and the CLI.

use crate::model::{DssSpec, NodeSpec};
use crate::rational::{int, Rational};

/// The (6, 2) heterogeneous system: repair degrees and storage `2,2,2,3,2,2`, `beta = 1`.
pub fn six_node() -> DssSpec {
    let sets: [&[&[usize]]; 6] = [
        &[&[4, 6], &[2, 6]],
        &[&[1, 3], &[1, 5], &[4, 3], &[4, 5]],
        &[&[2, 4], &[2, 6], &[5, 4], &[5, 6]],
        &[&[1, 3, 5], &[2, 3, 5], &[1, 6, 5], &[2, 6, 5]],
        &[&[2, 4], &[3, 4]],
        &[&[3, 1], &[4, 1]],
    ];
    let alphas = [2, 2, 2, 3, 2, 2];
    DssSpec {
        n: 6,
        k: 2,
        beta: int(1),
        nodes: sets
            .iter()
            .zip(alphas)
            .enumerate()
            .map(|(i, (sets, alpha))| {
                NodeSpec::new(i + 1, int(alpha), sets.iter().map(|s| s.to_vec()).collect())
            })
            .collect(),
    }
}

/// All `size`-subsets of `items`, each in ascending order, lexicographically ordered.
pub fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn go(
        items: &[usize],
        size: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, size, 0, &mut Vec::with_capacity(size), &mut out);
    out
}

/// Every node `i` may be repaired by any `degrees[i]` other nodes; storage `alphas[i]`.
pub fn all_subsets(degrees: &[usize], alphas: &[Rational], k: usize, beta: Rational) -> DssSpec {
    assert_eq!(degrees.len(), alphas.len());
    let n = degrees.len();
    DssSpec {
        n,
        k,
        beta,
        nodes: (1..=n)
            .map(|id| {
                let others: Vec<usize> = (1..=n).filter(|&j| j != id).collect();
                NodeSpec::new(
                    id,
                    alphas[id - 1].clone(),
                    subsets(&others, degrees[id - 1]),
                )
            })
            .collect(),
    }
}

/// Homogeneous `(n, k, d)` system with all `d`-subsets as surviving sets.
pub fn homogeneous_all_subsets(
    n: usize,
    k: usize,
    d: usize,
    alpha: Rational,
    beta: Rational,
) -> DssSpec {
    all_subsets(&vec![d; n], &vec![alpha; n], k, beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(
            subsets(&[1, 2, 3, 4], 2),
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
        assert_eq!(subsets(&[1, 2], 0), vec![Vec::<usize>::new()]);
        assert!(subsets(&[1], 2).is_empty());
    }

    #[test]
    fn homogeneous_fixture_validates() {
        let spec = homogeneous_all_subsets(5, 3, 4, int(2), int(1));
        assert!(spec.validate().ok);
        assert_eq!(spec.nodes[0].surviving_sets, vec![vec![2, 3, 4, 5]]);
    }
}
