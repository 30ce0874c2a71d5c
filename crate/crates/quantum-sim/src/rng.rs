//! Deterministic seed derivation for circuit jobs.
//!
//! Every job owns its own generator seeded from the master seed and the job's
//! logical coordinates (iteration, subset, phase), never from scheduling
//! order, so results are identical for any worker count.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mix a master seed with logical coordinates into a stream-specific seed.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    let mut s = splitmix64(master);
    for &p in parts {
        s = splitmix64(s ^ p.wrapping_mul(0xA24B_AED4_963E_E407));
    }
    s
}

/// The generator used for all shot sampling in this workspace.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivation_is_stable_and_injective_in_practice() {
        let a = derive_seed(7, &[1, 2, 3]);
        assert_eq!(a, derive_seed(7, &[1, 2, 3]));
        assert_ne!(a, derive_seed(7, &[1, 3, 2]));
        assert_ne!(a, derive_seed(8, &[1, 2, 3]));
        assert_ne!(a, derive_seed(7, &[1, 2]));
    }

    #[test]
    fn zero_parts_distinct_from_empty() {
        assert_ne!(derive_seed(7, &[0]), derive_seed(7, &[]));
    }
}
