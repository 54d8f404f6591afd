//! Per-sequence cut values and the capacity as their minimum.
//!
//! Position `j` of a surviving sequence contributes
//! `min(alpha_j, |eta_j \ {U_1..U_(j-1)}| * beta)` where `alpha_j` is the storage of
//! the node at that position and `eta_j` its chosen surviving set.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{enumerate_sequences, DssSpec, SequenceEntry, SurvivingSequence};
use crate::prepared::Prepared;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutTerm {
    /// Storage of the node at this position.
    #[serde(with = "rational::as_string")]
    pub storage: Rational,
    /// `multiplicity * beta`.
    #[serde(with = "rational::as_string")]
    pub bandwidth: Rational,
    /// Helpers of the chosen set that are not at earlier positions.
    pub multiplicity: usize,
}

impl CutTerm {
    pub fn value(&self) -> &Rational {
        if self.bandwidth < self.storage {
            &self.bandwidth
        } else {
            &self.storage
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutTerms {
    pub terms: Vec<CutTerm>,
    #[serde(with = "rational::as_string")]
    pub value: Rational,
}

impl fmt::Display for CutTerms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, term) in self.terms.iter().enumerate() {
            if j > 0 {
                f.write_str(" + ")?;
            }
            write!(
                f,
                "min{{{}, {}}}",
                rational::render(&term.storage),
                rational::render(&term.bandwidth)
            )?;
        }
        write!(f, " = {}", rational::render(&self.value))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapacityResult {
    #[serde(with = "rational::as_string")]
    pub capacity: Rational,
    pub argmin_sequence: SurvivingSequence,
    pub argmin_terms: CutTerms,
    /// Complete sequences evaluated. For the pruned strategy each evaluated node
    /// tuple counts once, with its best set choices.
    pub sequences_examined: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Branch and bound over node tuples with per-position best set choice.
    #[default]
    Pruned,
    /// Evaluate every surviving sequence in canonical order.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CapacityOptions {
    pub strategy: Strategy,
    /// Worker threads for the pruned search; `None` uses the global pool.
    pub threads: Option<usize>,
}

/// Evaluates one surviving sequence. Earlier-position nodes are removed from each
/// set before counting; position 1 removes nothing.
pub fn sequence_value(spec: &DssSpec, seq: &SurvivingSequence) -> Result<CutTerms> {
    seq.check(spec).map_err(Error::InvalidSequence)?;
    let mut terms = Vec::with_capacity(seq.len());
    let mut value = Rational::zero();
    for (j, entry) in seq.entries.iter().enumerate() {
        let node = spec.node(entry.node).expect("checked");
        let prior = &seq.entries[..j];
        let multiplicity = node.surviving_sets[entry.set_index]
            .iter()
            .filter(|helper| !prior.iter().any(|e| e.node == **helper))
            .count();
        let term = CutTerm {
            storage: node.alpha.clone(),
            bandwidth: &spec.beta * Rational::from_integer(multiplicity.into()),
            multiplicity,
        };
        value += term.value();
        terms.push(term);
    }
    Ok(CutTerms { terms, value })
}

/// Capacity with default options (pruned search, global thread pool).
pub fn capacity(spec: &DssSpec) -> Result<CapacityResult> {
    capacity_with(spec, &CapacityOptions::default())
}

/// Minimum of [`sequence_value`] over all surviving sequences. The reported
/// minimiser is the first one in canonical order, for every strategy and thread count.
pub fn capacity_with(spec: &DssSpec, options: &CapacityOptions) -> Result<CapacityResult> {
    crate::ensure_valid(spec)?;
    match options.strategy {
        Strategy::Exhaustive => exhaustive(spec),
        Strategy::Pruned => {
            let prep = Prepared::new(spec);
            crate::with_threads(options.threads, || pruned(spec, &prep))?
        }
    }
}

fn exhaustive(spec: &DssSpec) -> Result<CapacityResult> {
    let mut best: Option<(SurvivingSequence, CutTerms)> = None;
    let mut examined = 0u64;
    for seq in enumerate_sequences(spec) {
        examined += 1;
        let terms = sequence_value(spec, &seq)?;
        if best.as_ref().is_none_or(|(_, b)| terms.value < b.value) {
            best = Some((seq, terms));
        }
    }
    let (argmin_sequence, argmin_terms) =
        best.ok_or_else(|| Error::Precondition("no surviving sequence exists".into()))?;
    Ok(CapacityResult {
        capacity: argmin_terms.value.clone(),
        argmin_sequence,
        argmin_terms,
        sequences_examined: examined,
    })
}

fn pruned(spec: &DssSpec, prep: &Prepared) -> Result<CapacityResult> {
    let (found, examined) = prep.minimise(true, |node, m| prep.cut_term(node, m));
    let found = found.ok_or_else(|| Error::Precondition("no surviving sequence exists".into()))?;
    let argmin_sequence = sequence_for(&found.nodes, |node, prior| {
        prep.best_set_for_cut(node, prior)
    });
    let argmin_terms = sequence_value(spec, &argmin_sequence)?;
    debug_assert_eq!(argmin_terms.value, found.value);
    Ok(CapacityResult {
        capacity: argmin_terms.value.clone(),
        argmin_sequence,
        argmin_terms,
        sequences_examined: examined,
    })
}

/// Attaches a set choice to every position of a node tuple (0-based indices).
pub(crate) fn sequence_for(
    nodes: &[usize],
    choose: impl Fn(usize, u64) -> usize,
) -> SurvivingSequence {
    let mut prior = 0u64;
    let mut entries = Vec::with_capacity(nodes.len());
    for &node in nodes {
        entries.push(SequenceEntry {
            node: node + 1,
            set_index: choose(node, prior),
        });
        prior |= 1 << node;
    }
    SurvivingSequence::new(entries)
}

/// Closed form for a homogeneous `(n, k, d)` system where any `d` nodes can repair:
/// `sum_{i=1..k} min(alpha, (d - i + 1) * gamma / d)`.
pub fn homogeneous_capacity(
    n: usize,
    k: usize,
    d: usize,
    alpha: &Rational,
    gamma: &Rational,
) -> Result<Rational> {
    if k < 1 || k > n {
        return Err(Error::Precondition(format!(
            "need 1 <= k <= n (k = {k}, n = {n})"
        )));
    }
    if d < 1 || d + 1 < k || d + 1 > n {
        return Err(Error::Precondition(format!(
            "need max(1, k - 1) <= d <= n - 1 (d = {d}, k = {k}, n = {n})"
        )));
    }
    if alpha.is_negative() || gamma.is_negative() {
        return Err(Error::Precondition(
            "alpha and gamma must be nonnegative".into(),
        ));
    }
    let per_helper = gamma / Rational::from_integer(d.into());
    Ok((1..=k)
        .map(|i| {
            let bandwidth = &per_helper * Rational::from_integer((d + 1 - i).into());
            if bandwidth < *alpha {
                bandwidth
            } else {
                alpha.clone()
            }
        })
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Feasibility {
    pub feasible: bool,
    #[serde(with = "rational::as_string")]
    pub file_size: Rational,
    #[serde(with = "rational::as_string")]
    pub capacity: Rational,
    /// The minimising sequence when the file does not fit.
    pub bottleneck: Option<SurvivingSequence>,
}

/// Whether a file of size `file_size` can be stored, i.e. `file_size <= capacity`.
pub fn feasibility(spec: &DssSpec, file_size: &Rational) -> Result<Feasibility> {
    if file_size.is_negative() {
        return Err(Error::Precondition("file size must be nonnegative".into()));
    }
    let result = capacity(spec)?;
    let feasible = *file_size <= result.capacity;
    Ok(Feasibility {
        feasible,
        file_size: file_size.clone(),
        capacity: result.capacity,
        bottleneck: (!feasible).then_some(result.argmin_sequence),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{int, ratio};

    fn seq(pairs: &[(usize, usize)]) -> SurvivingSequence {
        SurvivingSequence::from_pairs(pairs)
    }

    #[test]
    fn hand_evaluated_sequences() {
        let spec = fixtures::six_node();
        // <(U2, {U1,U3}), (U1, {U2,U6})>
        let terms = sequence_value(&spec, &seq(&[(2, 0), (1, 1)])).unwrap();
        let pairs: Vec<_> = terms
            .terms
            .iter()
            .map(|t| (t.storage.clone(), t.bandwidth.clone()))
            .collect();
        assert_eq!(pairs, vec![(int(2), int(2)), (int(2), int(1))]);
        assert_eq!(terms.value, int(3));

        // <(U4, {U1,U3,U5}), (U5, {U3,U4})>
        let terms = sequence_value(&spec, &seq(&[(4, 0), (5, 1)])).unwrap();
        let pairs: Vec<_> = terms
            .terms
            .iter()
            .map(|t| (t.storage.clone(), t.bandwidth.clone()))
            .collect();
        assert_eq!(pairs, vec![(int(3), int(3)), (int(2), int(1))]);
        assert_eq!(terms.value, int(4));
    }

    #[test]
    fn zero_beta_gives_zero() {
        let spec = fixtures::six_node().with_beta(int(0));
        for s in enumerate_sequences(&spec) {
            assert_eq!(sequence_value(&spec, &s).unwrap().value, int(0));
        }
        assert_eq!(capacity(&spec).unwrap().capacity, int(0));
    }

    #[test]
    fn invalid_sequence_is_rejected() {
        let spec = fixtures::six_node();
        assert!(matches!(
            sequence_value(&spec, &seq(&[(2, 0), (2, 1)])),
            Err(Error::InvalidSequence(_))
        ));
    }

    #[test]
    fn six_node_capacity_is_three() {
        let result = capacity(&fixtures::six_node()).unwrap();
        assert_eq!(result.capacity, int(3));
        assert_eq!(result.argmin_terms.value, int(3));
        let exhaustive = capacity_with(
            &fixtures::six_node(),
            &CapacityOptions {
                strategy: Strategy::Exhaustive,
                threads: None,
            },
        )
        .unwrap();
        assert_eq!(exhaustive.capacity, int(3));
        assert_eq!(exhaustive.argmin_sequence, result.argmin_sequence);
        assert_eq!(exhaustive.sequences_examined, 264);
    }

    #[test]
    fn six_node_with_k_one() {
        let mut spec = fixtures::six_node();
        spec.k = 1;
        assert_eq!(capacity(&spec).unwrap().capacity, int(2));
    }

    #[test]
    fn homogeneous_examples() {
        let spec = fixtures::homogeneous_all_subsets(4, 2, 3, int(2), int(1));
        assert_eq!(capacity(&spec).unwrap().capacity, int(4));
        assert_eq!(
            homogeneous_capacity(4, 2, 3, &int(2), &int(3)).unwrap(),
            int(4)
        );
        for n in 3..8 {
            assert_eq!(
                homogeneous_capacity(n, 2, 2, &int(10), &int(2)).unwrap(),
                int(3)
            );
        }
        assert_eq!(
            homogeneous_capacity(5, 3, 4, &ratio(7, 3), &int(0)).unwrap(),
            int(0)
        );
        assert!(homogeneous_capacity(4, 5, 3, &int(1), &int(1)).is_err());
        assert!(homogeneous_capacity(4, 3, 1, &int(1), &int(1)).is_err());
        assert!(homogeneous_capacity(4, 2, 4, &int(1), &int(1)).is_err());
        assert!(homogeneous_capacity(4, 2, 3, &int(-1), &int(1)).is_err());
    }

    #[test]
    fn feasibility_examples() {
        let spec = fixtures::six_node();
        assert!(feasibility(&spec, &int(3)).unwrap().feasible);
        assert!(feasibility(&spec, &int(0)).unwrap().feasible);
        let f = feasibility(&spec, &int(4)).unwrap();
        assert!(!f.feasible);
        let witness = f.bottleneck.unwrap();
        assert_eq!(sequence_value(&spec, &witness).unwrap().value, int(3));
        assert!(feasibility(&spec, &int(-1)).is_err());
    }

    #[test]
    fn invalid_spec_is_refused() {
        let mut spec = fixtures::six_node();
        spec.k = 6;
        assert!(matches!(capacity(&spec), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let spec = fixtures::six_node();
        let one = capacity_with(
            &spec,
            &CapacityOptions {
                threads: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        let four = capacity_with(
            &spec,
            &CapacityOptions {
                threads: Some(4),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(one, four);
    }
}
