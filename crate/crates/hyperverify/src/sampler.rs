//! Seeded rational parameter sampling.
//!
//! Samples are `k/q` with a fixed denominator per parameter position and `k`
//! rejected until it is nonzero and not divisible by `q`, so sampled values
//! are never integers and never hit Pochhammer poles by accident. The seed
//! fully determines the stream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub struct RationalSampler {
    rng: ChaCha8Rng,
}

impl RationalSampler {
    pub fn new(seed: u64) -> Self {
        RationalSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Draws `k/q` with `k` uniform on `[min, max]`, rejecting `k = 0` and
    /// multiples of `q`.
    pub fn draw(&mut self, denominator: u32, min: i64, max: i64) -> Result<Rational> {
        admissible_range(denominator, min, max)?;
        loop {
            let k = self.rng.gen_range(min..=max);
            if k != 0 && k % denominator as i64 != 0 {
                return Ok(Rational::new(k, denominator as i64));
            }
        }
    }
}

/// Errors unless `[min, max]` contains a nonzero numerator not divisible by
/// the denominator.
pub fn admissible_range(denominator: u32, min: i64, max: i64) -> Result<()> {
    if denominator == 0 {
        return Err(Error::Config("sampler denominator must be positive".into()));
    }
    if min > max {
        return Err(Error::Config(format!(
            "empty numerator range [{min}, {max}]"
        )));
    }
    let q = denominator as i64;
    let total = max - min + 1;
    let multiples = max.div_euclid(q) - (min - 1).div_euclid(q);
    if total - multiples <= 0 {
        return Err(Error::Config(format!(
            "numerator range [{min}, {max}] contains only multiples of {q}"
        )));
    }
    Ok(())
}
