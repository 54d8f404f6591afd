#![allow(dead_code)]

use hetdss::fixtures::subsets;
use hetdss::rational::ratio;
use hetdss::{DssSpec, NodeSpec, Rational, SurvivingSequence};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random valid system: `n` in `2..=max_n`, `k <= max_k`, one to three random
/// surviving sets per node, storage in `{0, 1/3, .., 6}` and `beta` in `{0, 1/3, .., 4}`.
pub fn random_spec(seed: u64, max_n: usize, max_k: usize) -> DssSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n);
    let k = rng.gen_range(1..=max_k.min(n - 1));
    let mut nodes = Vec::with_capacity(n);
    for id in 1..=n {
        let others: Vec<usize> = (1..=n).filter(|&j| j != id).collect();
        let d = rng.gen_range(1..=n - 1);
        let mut all = subsets(&others, d);
        all.shuffle(&mut rng);
        let count = rng.gen_range(1..=3usize).min(all.len());
        let mut sets: Vec<Vec<usize>> = all.into_iter().take(count).collect();
        for set in &mut sets {
            set.shuffle(&mut rng);
        }
        nodes.push(NodeSpec::new(id, random_rational(&mut rng, 6), sets));
    }
    DssSpec {
        n,
        k,
        beta: random_rational(&mut rng, 4),
        nodes,
    }
}

fn random_rational(rng: &mut ChaCha8Rng, max: i64) -> Rational {
    let den = rng.gen_range(1..=3);
    ratio(rng.gen_range(0..=max * den), den)
}

/// True when every original helper stores at least `beta` times the number of
/// positions that download from its original copy. Under this condition the
/// flow graph cannot route less than the per-sequence cut value.
pub fn helpers_not_bottleneck(spec: &DssSpec, seq: &SurvivingSequence) -> bool {
    let mut fanout = vec![0usize; spec.n + 1];
    for (j, entry) in seq.entries.iter().enumerate() {
        let prior: Vec<usize> = seq.entries[..j].iter().map(|e| e.node).collect();
        for &h in &spec.node(entry.node).unwrap().surviving_sets[entry.set_index] {
            if !prior.contains(&h) {
                fanout[h] += 1;
            }
        }
    }
    (1..=spec.n).all(|h| {
        spec.node(h).unwrap().alpha.clone() >= &spec.beta * Rational::from_integer(fanout[h].into())
    })
}
