//! Seeded random instances.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64`, so a seed and a
//! parameter set pin down the instance bit for bit on every platform.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{agent_names, good_names, Instance, Rational};

/// Name recorded in suite reports so a failure can be replayed.
pub const GENERATOR_ID: &str = "rand_chacha::ChaCha8Rng::seed_from_u64";

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` agents, `m` goods, each valuation entry 1 with probability
/// `density`, each weight drawn uniformly from `weight_pool`.
pub fn random_instance<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    density: f64,
    weight_pool: &[Rational],
) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidParameter(format!(
            "density {density} outside [0, 1]"
        )));
    }
    if weight_pool.is_empty() {
        return Err(Error::InvalidParameter("empty weight pool".into()));
    }
    let weights = (0..n)
        .map(|_| weight_pool[rng.gen_range(0..weight_pool.len())].clone())
        .collect();
    let valuations = (0..n)
        .map(|_| (0..m).map(|_| rng.gen_bool(density)).collect())
        .collect();
    Instance::new(agent_names(n), good_names(m), weights, valuations)
}

pub fn generate_instance(
    seed: u64,
    n: usize,
    m: usize,
    density: f64,
    weight_pool: &[Rational],
) -> Result<Instance> {
    random_instance(&mut rng_from_seed(seed), n, m, density, weight_pool)
}
