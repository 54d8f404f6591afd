use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::star::star_from_prepared;
use crate::error::Result;
use crate::model::DssSpec;
use crate::prepared::Prepared;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRepairCheck {
    pub id: usize,
    #[serde(with = "rational::as_string")]
    pub alpha: Rational,
    /// `d_i * beta`
    #[serde(with = "rational::as_string")]
    pub repair_bandwidth: Rational,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairFeasibility {
    pub feasible: bool,
    pub nodes: Vec<NodeRepairCheck>,
}

/// A repair must download at least what the node stores: `alpha_i <= d_i * beta`.
pub fn repair_feasible(spec: &DssSpec) -> RepairFeasibility {
    let nodes: Vec<NodeRepairCheck> = spec
        .nodes_by_id()
        .into_iter()
        .map(|node| {
            let repair_bandwidth = &spec.beta * Rational::from_integer(node.repair_degree().into());
            NodeRepairCheck {
                id: node.id,
                ok: node.alpha <= repair_bandwidth,
                alpha: node.alpha.clone(),
                repair_bandwidth,
            }
        })
        .collect();
    RepairFeasibility {
        feasible: nodes.iter().all(|n| n.ok),
        nodes,
    }
}

/// The chain `k * size_min * beta <= sum_A alpha <= beta * sum_A d` for one
/// reconstruction set `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetBound {
    pub nodes: Vec<usize>,
    #[serde(with = "rational::as_string")]
    pub lower: Rational,
    #[serde(with = "rational::as_string")]
    pub storage: Rational,
    #[serde(with = "rational::as_string")]
    pub upper: Rational,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

impl SubsetBound {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub size_min: usize,
    /// False when only a sample of the `k`-subsets was checked.
    pub exhaustive: bool,
    pub subsets: Vec<SubsetBound>,
    pub all_hold: bool,
}

/// Checks the reconstruction chain for every `k`-subset of nodes, or for
/// `max_subsets` evenly spaced subsets (in lexicographic rank) when there are more.
pub fn reconstruction_bounds(spec: &DssSpec, max_subsets: usize) -> Result<ReconstructionReport> {
    crate::ensure_valid(spec)?;
    let prep = Prepared::new(spec);
    let star = star_from_prepared(&prep)?;
    let (n, k) = (spec.n, spec.k);
    let alphas = spec.alphas();
    let degrees = spec.repair_degrees();
    let lower = Rational::from_integer((k * star.size_min).into()) * &spec.beta;

    let total = binomial(n, k);
    let exhaustive = total <= BigUint::from(max_subsets);
    let ranks: Vec<BigUint> = if exhaustive {
        let total = total.to_usize().expect("bounded by max_subsets");
        (0..total).map(BigUint::from).collect()
    } else {
        (0..max_subsets)
            .map(|i| &total * BigUint::from(i) / BigUint::from(max_subsets))
            .collect()
    };

    let subsets: Vec<SubsetBound> = ranks
        .iter()
        .map(|rank| {
            let nodes = unrank_combination(n, k, rank.clone());
            let storage: Rational = nodes.iter().map(|&id| &alphas[id - 1]).sum();
            let degree_sum: usize = nodes.iter().map(|&id| degrees[id - 1]).sum();
            let upper = &spec.beta * Rational::from_integer(degree_sum.into());
            SubsetBound {
                lower_holds: lower <= storage,
                upper_holds: storage <= upper,
                nodes,
                lower: lower.clone(),
                storage,
                upper,
            }
        })
        .collect();
    Ok(ReconstructionReport {
        size_min: star.size_min,
        exhaustive,
        all_hold: subsets.iter().all(SubsetBound::holds),
        subsets,
    })
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// The `rank`-th `k`-subset of `1..=n` in lexicographic order.
fn unrank_combination(n: usize, k: usize, mut rank: BigUint) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 1;
    while out.len() < k {
        let remaining = k - out.len() - 1;
        // subsets starting with `next` at this position
        let block = binomial(n - next, remaining);
        if rank < block {
            out.push(next);
        } else {
            rank -= block;
        }
        next += 1;
    }
    out
}
