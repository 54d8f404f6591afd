use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::star::{star_from_prepared, StarSequence};
use crate::capacity::capacity;
use crate::error::{Error, Result};
use crate::model::DssSpec;
use crate::prepared::Prepared;
use crate::rational::{self, Rational};

/// How the MSR storage budget is spread over nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AllocationRule {
    /// `alpha_i = c / d_i` with `c` chosen so the `k` largest allocations sum to the file size.
    InverseDegree,
}

/// Minimum-storage point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MsrPoint {
    #[serde(with = "rational::as_string")]
    pub file_size: Rational,
    /// `(B / k) / size_min`; `None` when the star sequence has a position without
    /// fresh helpers, which leaves `beta` unconstrained.
    #[serde(with = "rational::opt_as_string")]
    pub beta_max: Option<Rational>,
    #[serde(with = "rational::vec_as_string")]
    pub alpha: Vec<Rational>,
    pub allocation_rule: AllocationRule,
    pub star: StarSequence,
    /// Whether storage is nondecreasing along the star sequence's nodes.
    pub star_alpha_nondecreasing: bool,
    /// Capacity of the system at (`alpha`, `beta_max`).
    #[serde(with = "rational::opt_as_string")]
    pub capacity_at_point: Option<Rational>,
}

impl MsrPoint {
    /// False when the allocation cannot actually deliver the file through every
    /// surviving sequence.
    pub fn meets_file_size(&self) -> Option<bool> {
        self.capacity_at_point
            .as_ref()
            .map(|c| *c >= self.file_size)
    }
}

/// Minimum-bandwidth point; `alpha_i = d_i * beta` for every node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MbrPoint {
    #[serde(with = "rational::as_string")]
    pub file_size: Rational,
    #[serde(with = "rational::as_string")]
    pub beta: Rational,
    #[serde(with = "rational::vec_as_string")]
    pub alpha: Vec<Rational>,
    pub star: StarSequence,
    #[serde(with = "rational::as_string")]
    pub capacity_at_point: Rational,
}

fn check_file_size(file_size: &Rational) -> Result<()> {
    if file_size.is_positive() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "file size must be positive, got {}",
            rational::render(file_size)
        )))
    }
}

fn q(value: usize) -> Rational {
    Rational::from_integer(value.into())
}

pub fn msr_point(spec: &DssSpec, file_size: &Rational) -> Result<MsrPoint> {
    check_file_size(file_size)?;
    crate::ensure_valid(spec)?;
    let prep = Prepared::new(spec);
    let star = star_from_prepared(&prep)?;
    let degrees = spec.repair_degrees();
    let k = spec.k;

    let beta_max = (star.size_min > 0).then(|| file_size / q(k) / q(star.size_min));

    let mut reciprocals: Vec<Rational> = degrees
        .iter()
        .map(|&d| Rational::new(1.into(), d.into()))
        .collect();
    reciprocals.sort_by(|a, b| b.cmp(a));
    let top: Rational = reciprocals.iter().take(k).sum();
    let c = file_size / top;
    let alpha: Vec<Rational> = degrees.iter().map(|&d| &c / q(d)).collect();

    let star_alpha_nondecreasing = star
        .sequence
        .nodes()
        .map(|id| &alpha[id - 1])
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| w[0] <= w[1]);

    let capacity_at_point = match &beta_max {
        Some(beta) => Some(capacity(&spec.with_alphas(&alpha).with_beta(beta.clone()))?.capacity),
        None => None,
    };

    Ok(MsrPoint {
        file_size: file_size.clone(),
        beta_max,
        alpha,
        allocation_rule: AllocationRule::InverseDegree,
        star,
        star_alpha_nondecreasing,
        capacity_at_point,
    })
}

pub fn mbr_point(spec: &DssSpec, file_size: &Rational) -> Result<MbrPoint> {
    check_file_size(file_size)?;
    crate::ensure_valid(spec)?;
    let prep = Prepared::new(spec);
    let star = star_from_prepared(&prep)?;
    if star.size_sum == 0 {
        return Err(Error::Precondition(
            "star sequence has no fresh helpers".into(),
        ));
    }
    let sum = q(star.size_sum);
    let beta = file_size / &sum;
    let alpha: Vec<Rational> = spec
        .repair_degrees()
        .iter()
        .map(|&d| file_size * q(d) / &sum)
        .collect();
    let capacity_at_point = capacity(&spec.with_alphas(&alpha).with_beta(beta.clone()))?.capacity;
    debug_assert!(!capacity_at_point.is_zero());
    Ok(MbrPoint {
        file_size: file_size.clone(),
        beta,
        alpha,
        star,
        capacity_at_point,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{int, ratio};

    #[test]
    fn six_node_msr() {
        let msr = msr_point(&fixtures::six_node(), &int(3)).unwrap();
        assert_eq!(msr.beta_max, Some(ratio(3, 2)));
        let h = ratio(3, 2);
        assert_eq!(
            msr.alpha,
            vec![h.clone(), h.clone(), h.clone(), int(1), h.clone(), h]
        );
        // U4 with 1 packet plus any other node with 3/2
        assert_eq!(msr.capacity_at_point, Some(ratio(5, 2)));
        assert_eq!(msr.meets_file_size(), Some(false));
    }

    #[test]
    fn six_node_mbr() {
        let mbr = mbr_point(&fixtures::six_node(), &int(3)).unwrap();
        assert_eq!(mbr.beta, int(1));
        assert_eq!(mbr.alpha, [2, 2, 2, 3, 2, 2].map(int).to_vec());
        assert_eq!(mbr.capacity_at_point, int(3));
    }

    #[test]
    fn homogeneous_examples() {
        let spec = fixtures::homogeneous_all_subsets(4, 2, 3, int(1), int(1));
        let msr = msr_point(&spec, &int(2)).unwrap();
        assert_eq!(msr.alpha, vec![int(1); 4]);
        assert_eq!(msr.beta_max, Some(ratio(1, 2)));
        assert_eq!(msr.meets_file_size(), Some(true));

        let spec = fixtures::homogeneous_all_subsets(5, 3, 4, int(1), int(1));
        let mbr = mbr_point(&spec, &int(9)).unwrap();
        assert_eq!(mbr.alpha, vec![int(4); 5]);
        assert_eq!(mbr.beta, int(1));
    }

    #[test]
    fn nonpositive_file_size_is_refused() {
        assert!(msr_point(&fixtures::six_node(), &int(0)).is_err());
        assert!(mbr_point(&fixtures::six_node(), &int(-1)).is_err());
    }
}
