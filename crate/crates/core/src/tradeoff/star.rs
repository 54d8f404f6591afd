use serde::{Deserialize, Serialize};

use crate::capacity::sequence_for;
use crate::error::{Error, Result};
use crate::model::{DssSpec, SurvivingSequence};
use crate::prepared::Prepared;
use crate::rational::Rational;

/// The surviving sequence minimising the total number of fresh helpers
/// `sum_j |eta_j \ {U_1..U_(j-1)}|`, which does not depend on `alpha` or `beta`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarSequence {
    pub sequence: SurvivingSequence,
    pub term_sizes: Vec<usize>,
    pub size_sum: usize,
    pub size_min: usize,
}

/// First minimiser of the fresh-helper count in canonical order.
pub fn star_sequence(spec: &DssSpec) -> Result<StarSequence> {
    crate::ensure_valid(spec)?;
    let prep = Prepared::new(spec);
    star_from_prepared(&prep)
}

pub(crate) fn star_from_prepared(prep: &Prepared) -> Result<StarSequence> {
    let (found, _) = prep.minimise(true, |_, m| Rational::from_integer(m.into()));
    let found = found.ok_or_else(|| Error::Precondition("no surviving sequence exists".into()))?;
    let sequence = sequence_for(&found.nodes, |node, prior| {
        prep.best_set_for_size(node, prior)
    });
    let mut prior = 0u64;
    let term_sizes: Vec<usize> = sequence
        .entries
        .iter()
        .map(|e| {
            let m = prep.multiplicity(e.node - 1, e.set_index, prior);
            prior |= 1 << (e.node - 1);
            m
        })
        .collect();
    Ok(StarSequence {
        size_sum: term_sizes.iter().sum(),
        size_min: term_sizes.iter().copied().min().unwrap_or(0),
        sequence,
        term_sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::enumerate_sequences;
    use crate::rational::int;

    /// Brute force over the full sequence space.
    fn oracle(spec: &DssSpec) -> (usize, SurvivingSequence) {
        let mut best: Option<(usize, SurvivingSequence)> = None;
        for seq in enumerate_sequences(spec) {
            let mut sum = 0;
            for (j, e) in seq.entries.iter().enumerate() {
                let set = &spec.node(e.node).unwrap().surviving_sets[e.set_index];
                sum += set
                    .iter()
                    .filter(|h| !seq.entries[..j].iter().any(|p| p.node == **h))
                    .count();
            }
            if best.as_ref().is_none_or(|(b, _)| sum < *b) {
                best = Some((sum, seq));
            }
        }
        best.unwrap()
    }

    #[test]
    fn six_node_star_sequence() {
        let spec = fixtures::six_node();
        let star = star_sequence(&spec).unwrap();
        assert_eq!(star.term_sizes, vec![2, 1]);
        assert_eq!(star.size_sum, 3);
        assert_eq!(star.size_min, 1);
        let (sum, seq) = oracle(&spec);
        assert_eq!(sum, 3);
        assert_eq!(seq, star.sequence);
    }

    #[test]
    fn homogeneous_star_sequence() {
        let spec = fixtures::homogeneous_all_subsets(4, 2, 3, int(2), int(1));
        let star = star_sequence(&spec).unwrap();
        assert_eq!(star.term_sizes, vec![3, 2]);
        assert_eq!(star.size_sum, 5);
        assert_eq!(oracle(&spec).1, star.sequence);
    }

    #[test]
    fn k_one_picks_smallest_degree() {
        let mut spec = fixtures::six_node();
        spec.k = 1;
        let star = star_sequence(&spec).unwrap();
        assert_eq!(star.term_sizes, vec![2]);
        assert_eq!(star.sequence, SurvivingSequence::from_pairs(&[(1, 0)]));
    }
}
