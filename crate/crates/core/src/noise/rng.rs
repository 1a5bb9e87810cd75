//! Counter-based Gaussian draws.
//!
//! Every draw is a pure function of `(seed, path_index, level, step)`, so
//! refinement levels and ensemble members can be generated in any order and on
//! any thread with identical results.

use std::f64::consts::TAU;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    // SplitMix64 finaliser
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DrawKey {
    pub seed: u64,
    pub path_index: u64,
    pub level: u32,
}

impl DrawKey {
    pub fn new(seed: u64, path_index: u64, level: u32) -> Self {
        Self {
            seed,
            path_index,
            level,
        }
    }

    fn word(&self, step: u64, lane: u64) -> u64 {
        let mut h = mix(self.seed.wrapping_add(GOLDEN));
        for w in [self.path_index, self.level as u64, step, lane] {
            h = mix(h ^ w.wrapping_add(GOLDEN).wrapping_mul(0xD6E8_FEB8_6659_FD93));
        }
        h
    }

    /// Uniform draw in the open interval (0, 1).
    pub fn uniform(&self, step: u64, lane: u64) -> f64 {
        ((self.word(step, lane) >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal draw for `step` (Box–Muller on two independent lanes).
    pub fn normal(&self, step: u64) -> f64 {
        let u1 = self.uniform(step, 0);
        let u2 = self.uniform(step, 1);
        (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
    }
}
