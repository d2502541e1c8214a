//! Seeded inputs shared by the benchmarks.

use cofill_core::cochain::binomial;
use cofill_core::geometry::{random_configuration, PointConfig};
use cofill_core::Cochain;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Each `r`-subset of `[n]` kept with probability `density`.
pub fn random_cochain(n: usize, r: usize, density: f64, seed: u64) -> Cochain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = binomial(n, r).expect("small") as usize;
    Cochain::from_ranks(n, r, (0..len).filter(|_| rng.gen_bool(density))).expect("valid ranks")
}

pub fn points(n: usize, seed: u64) -> PointConfig {
    random_configuration(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_seeded() {
        assert_eq!(random_cochain(9, 3, 0.3, 1), random_cochain(9, 3, 0.3, 1));
        assert_eq!(points(6, 2), points(6, 2));
    }
}
