//! Inputs shared by the criterion benches.

use hetdss::fixtures;
use hetdss::{DssSpec, Rational};

/// Storage and degree proportions of the (7, 4) comparison system.
pub const PROFILE_7_4: [usize; 7] = [4, 4, 5, 5, 5, 6, 6];

/// The (7, 4) profile system with all-subset surviving sets, `alpha_i = d_i`, `beta = 1`.
pub fn profile_7_4_system() -> DssSpec {
    let alphas: Vec<Rational> = PROFILE_7_4
        .iter()
        .map(|&p| Rational::from_integer(p.into()))
        .collect();
    fixtures::all_subsets(&PROFILE_7_4, &alphas, 4, Rational::from_integer(1.into()))
}

/// `steps + 1` evenly spaced values `lo + i * (hi - lo) / steps`.
pub fn grid(lo: &Rational, hi: &Rational, steps: usize) -> Vec<Rational> {
    let width = (hi - lo) / Rational::from_integer(steps.into());
    (0..=steps)
        .map(|i| lo + &width * Rational::from_integer(i.into()))
        .collect()
}
