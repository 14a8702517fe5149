//! Bundled solvers. Each module exposes its algorithm as free functions and a
//! `descriptor()` for registration.

#[cfg(feature = "bruteforce")]
pub mod bruteforce;
#[cfg(feature = "pt")]
pub mod pt;
#[cfg(feature = "random")]
pub mod random;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// All bundled solvers draw from ChaCha8, seeded from a `u64` or from system
/// entropy.
pub(crate) fn make_rng(seed: Option<u64>) -> ChaCha8Rng {
    match seed {
        Some(s) => ChaCha8Rng::seed_from_u64(s),
        None => ChaCha8Rng::from_entropy(),
    }
}

/// Reads a strictly positive integer argument.
pub(crate) fn positive(
    args: &crate::registry::ArgValues,
    name: &str,
    default: usize,
) -> crate::Result<usize> {
    match args.integer(name)? {
        None => Ok(default),
        Some(v) if v >= 1 => Ok(v as usize),
        Some(v) => Err(crate::Error::Parameter(format!(
            "{name} must be at least 1, got {v}"
        ))),
    }
}
