//! Storage versus repair-bandwidth curves.
//!
//! For each `beta` the storage profile `p` is scaled by the smallest `s` such that
//! the system with `alpha_i = s * p_i` has capacity at least `B`. Every node tuple
//! contributes a concave, nondecreasing, piecewise-linear function
//! `f(s) = sum_j min(s * p_j, m_j * beta)`, so the smallest feasible scale is the
//! largest of the per-tuple crossing points, each found exactly from its breakpoints.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::capacity::capacity;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::model::DssSpec;
use crate::prepared::Prepared;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TradeoffPoint {
    #[serde(with = "rational::as_string")]
    pub beta: Rational,
    /// Mean of `d_i * beta` over nodes.
    #[serde(with = "rational::as_string")]
    pub gamma_mean: Rational,
    /// Mean storage at the minimal scale; `None` when infeasible.
    #[serde(with = "rational::opt_as_string")]
    pub alpha_mean: Option<Rational>,
    #[serde(with = "rational::opt_as_string")]
    pub scale: Option<Rational>,
    pub feasible: bool,
}

fn q(value: usize) -> Rational {
    Rational::from_integer(value.into())
}

fn check_inputs(file_size: &Rational, betas: &[Rational]) -> Result<()> {
    if betas.is_empty() {
        return Err(Error::Precondition("beta grid is empty".into()));
    }
    if !file_size.is_positive() {
        return Err(Error::Precondition("file size must be positive".into()));
    }
    if let Some(b) = betas.iter().find(|b| b.is_negative()) {
        return Err(Error::Precondition(format!(
            "beta must be nonnegative, got {}",
            rational::render(b)
        )));
    }
    Ok(())
}

/// Curve for a profile where node `i` has repair degree `profile[i]`, storage
/// proportional to `profile[i]` and may be repaired by any `profile[i]` other nodes.
pub fn tradeoff_curve(
    profile: &[usize],
    k: usize,
    file_size: &Rational,
    betas: &[Rational],
    threads: Option<usize>,
) -> Result<Vec<TradeoffPoint>> {
    let n = profile.len();
    if let Some(&bad) = profile.iter().find(|&&p| p == 0 || p + 1 > n) {
        return Err(Error::Precondition(format!(
            "profile entry {bad} must lie in 1..={}",
            n.saturating_sub(1)
        )));
    }
    let proportions: Vec<Rational> = profile.iter().map(|&p| q(p)).collect();
    let template = fixtures::all_subsets(profile, &proportions, k, Rational::zero());
    tradeoff_curve_for_spec(&template, file_size, betas, threads)
}

/// Curve for an arbitrary system: its surviving sets are kept and its storage
/// vector is used as the profile to be scaled. The template's `beta` is ignored.
pub fn tradeoff_curve_for_spec(
    template: &DssSpec,
    file_size: &Rational,
    betas: &[Rational],
    threads: Option<usize>,
) -> Result<Vec<TradeoffPoint>> {
    check_inputs(file_size, betas)?;
    crate::ensure_valid(template)?;
    let proportions = template.alphas();
    let n = q(template.n);
    let degree_sum = q(template.repair_degrees().iter().sum());
    let profile_mean = proportions.iter().sum::<Rational>() / &n;

    crate::with_threads(threads, || {
        betas
            .par_iter()
            .map(|beta| {
                let spec = template.with_beta(beta.clone());
                let prep = Prepared::new(&spec);
                let scale = min_scale(&prep, &proportions, file_size);
                if let Some(s) = &scale {
                    let alphas: Vec<Rational> = proportions.iter().map(|p| p * s).collect();
                    let reached = capacity(&spec.with_alphas(&alphas))?.capacity;
                    if reached < *file_size {
                        return Err(Error::Precondition(format!(
                            "scale {} reaches capacity {} < {}",
                            rational::render(s),
                            rational::render(&reached),
                            rational::render(file_size)
                        )));
                    }
                }
                Ok(TradeoffPoint {
                    beta: beta.clone(),
                    gamma_mean: beta * &degree_sum / &n,
                    alpha_mean: scale.as_ref().map(|s| s * &profile_mean),
                    feasible: scale.is_some(),
                    scale,
                })
            })
            .collect()
    })?
}

/// Smallest `s` with capacity at least `file_size` under `alpha = s * proportions`.
fn min_scale(prep: &Prepared, proportions: &[Rational], file_size: &Rational) -> Option<Rational> {
    let mut worst = Some(Rational::zero());
    prep.for_each_tuple(|nodes, mults| {
        let Some(current) = worst.as_ref() else {
            return;
        };
        let pieces: Vec<(Rational, Rational)> = nodes
            .iter()
            .zip(mults)
            .map(|(&v, &m)| (proportions[v].clone(), &prep.beta * q(m)))
            .collect();
        match crossing(&pieces, file_size) {
            Some(s) if s > *current => worst = Some(s),
            Some(_) => {}
            None => worst = None,
        }
    });
    worst
}

/// Smallest `s >= 0` with `sum_j min(s * slope_j, cap_j) >= target`, if any.
fn crossing(pieces: &[(Rational, Rational)], target: &Rational) -> Option<Rational> {
    // pieces with zero slope never contribute
    let mut active: Vec<(Rational, &Rational, &Rational)> = pieces
        .iter()
        .filter(|(slope, _)| slope.is_positive())
        .map(|(slope, cap)| (cap / slope, slope, cap))
        .collect();
    let ceiling: Rational = active.iter().map(|(_, _, cap)| *cap).sum();
    if ceiling < *target {
        return None;
    }
    active.sort_by(|a, b| a.0.cmp(&b.0));
    let mut capped = Rational::zero();
    let mut slope: Rational = active.iter().map(|(_, s, _)| *s).sum();
    for (breakpoint, s, cap) in active {
        let value = &capped + &slope * &breakpoint;
        if value >= *target {
            return Some((target - &capped) / &slope);
        }
        capped += cap;
        slope -= s;
    }
    unreachable!("the last breakpoint reaches the ceiling")
}

/// Comparator curve of a homogeneous `(n, k, d)` system from the closed form
/// `sum_i min(alpha, (d - i + 1) * beta)`; `scale` equals the per-node storage.
pub fn homogeneous_curve(
    n: usize,
    k: usize,
    d: usize,
    file_size: &Rational,
    betas: &[Rational],
) -> Result<Vec<TradeoffPoint>> {
    check_inputs(file_size, betas)?;
    if k < 1 || k > n || d < 1 || d + 1 < k || d + 1 > n {
        return Err(Error::Precondition(format!(
            "invalid homogeneous parameters (n = {n}, k = {k}, d = {d})"
        )));
    }
    Ok(betas
        .iter()
        .map(|beta| {
            let pieces: Vec<(Rational, Rational)> =
                (1..=k).map(|i| (q(1), beta * q(d + 1 - i))).collect();
            let alpha = crossing(&pieces, file_size);
            TradeoffPoint {
                beta: beta.clone(),
                gamma_mean: beta * q(d),
                alpha_mean: alpha.clone(),
                feasible: alpha.is_some(),
                scale: alpha,
            }
        })
        .collect())
}

pub const CSV_HEADER: &str = "beta,beta_decimal,gamma_mean,gamma_mean_decimal,alpha_mean,alpha_mean_decimal,feasible,scale,scale_decimal";

/// CSV rendering: each rational as `p/q` followed by a 12-significant-digit
/// decimal column. Infeasible rows leave storage and scale cells empty.
pub fn curve_csv(points: &[TradeoffPoint]) -> String {
    fn pair(value: Option<&Rational>) -> String {
        match value {
            Some(v) => format!("{},{}", rational::render(v), rational::to_decimal(v, 12)),
            None => ",".to_string(),
        }
    }
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            pair(Some(&p.beta)),
            pair(Some(&p.gamma_mean)),
            pair(p.alpha_mean.as_ref()),
            p.feasible,
            pair(p.scale.as_ref())
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::tradeoff::mbr_point;

    #[test]
    fn crossing_examples() {
        // min(s, 2) + min(s, 1) >= 3 first at s = 2
        let pieces = vec![(int(1), int(2)), (int(1), int(1))];
        assert_eq!(crossing(&pieces, &int(3)), Some(int(2)));
        // >= 2 at s = 1
        assert_eq!(crossing(&pieces, &int(2)), Some(int(1)));
        // >= 1 at s = 1/2
        assert_eq!(crossing(&pieces, &int(1)), Some(ratio(1, 2)));
        assert_eq!(crossing(&pieces, &int(4)), None);
        assert_eq!(crossing(&[(int(0), int(5))], &int(1)), None);
    }

    #[test]
    fn homogeneous_curve_hits_closed_form_points() {
        let (n, k, d) = (7, 4, 5);
        let b = int(1);
        let msr_beta = ratio(1, (k * (d - k + 1)) as i64);
        let mbr_beta = ratio(2, (k * (2 * d - k + 1)) as i64);
        let points = homogeneous_curve(n, k, d, &b, &[msr_beta, mbr_beta]).unwrap();
        assert_eq!(points[0].alpha_mean, Some(ratio(1, 4)));
        assert_eq!(points[1].alpha_mean, Some(ratio(2 * 5, 4 * 7)));
    }

    #[test]
    fn mbr_beta_gives_mbr_scale() {
        let profile = [4, 4, 5, 5, 5, 6, 6];
        let props: Vec<Rational> = profile.iter().map(|&p| q(p)).collect();
        let spec = fixtures::all_subsets(&profile, &props, 4, int(1));
        let mbr = mbr_point(&spec, &int(1)).unwrap();
        let points = tradeoff_curve(
            &profile,
            4,
            &int(1),
            std::slice::from_ref(&mbr.beta),
            Some(1),
        )
        .unwrap();
        assert!(points[0].feasible);
        // alpha_i = d_i * beta at the MBR point, so the scale equals beta
        assert_eq!(points[0].scale.as_ref(), Some(&mbr.beta));
    }

    #[test]
    fn zero_beta_is_infeasible() {
        let points = tradeoff_curve(&[2, 2, 2], 1, &int(1), &[int(0)], None).unwrap();
        assert!(!points[0].feasible);
        assert_eq!(points[0].alpha_mean, None);
    }

    #[test]
    fn bad_inputs() {
        assert!(tradeoff_curve(&[2, 2, 2], 1, &int(1), &[], None).is_err());
        assert!(tradeoff_curve(&[3, 2, 2], 1, &int(1), &[int(1)], None).is_err());
        assert!(tradeoff_curve(&[2, 2, 2], 1, &int(0), &[int(1)], None).is_err());
        assert!(tradeoff_curve(&[2, 2, 2], 1, &int(1), &[int(-1)], None).is_err());
    }

    #[test]
    fn csv_layout() {
        let points = vec![
            TradeoffPoint {
                beta: ratio(1, 3),
                gamma_mean: int(1),
                alpha_mean: Some(ratio(3, 2)),
                scale: Some(ratio(1, 2)),
                feasible: true,
            },
            TradeoffPoint {
                beta: int(0),
                gamma_mean: int(0),
                alpha_mean: None,
                scale: None,
                feasible: false,
            },
        ];
        let csv = curve_csv(&points);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "1/3,0.333333333333,1,1,3/2,1.5,true,1/2,0.5");
        assert_eq!(lines[2], "0,0,0,0,,,false,,");
    }
}
