//! Coverage modes and seeded random generation shared by the verifiers.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// How a verifier walks its tuple space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coverage {
    Exhaustive,
    Sampled { seed: u64, count: usize },
}

impl Coverage {
    pub fn sampled(seed: u64, count: usize) -> Self {
        Coverage::Sampled { seed, count }
    }

    pub fn is_exhaustive(self) -> bool {
        matches!(self, Coverage::Exhaustive)
    }

    /// Generator for this coverage; exhaustive runs still get a fixed seed for
    /// the parts that need random elements.
    pub fn rng(self) -> ChaCha8Rng {
        match self {
            Coverage::Exhaustive => rng_from_seed(0),
            Coverage::Sampled { seed, .. } => rng_from_seed(seed),
        }
    }
}

impl std::fmt::Display for Coverage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coverage::Exhaustive => write!(f, "exhaustive"),
            Coverage::Sampled { seed, count } => write!(f, "sampled(seed={seed}, count={count})"),
        }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero scalar `n/d` with `|n| <= 10`, `1 <= d <= 10`.
pub fn small_scalar<F: Scalar, R: Rng>(rng: &mut R) -> F {
    loop {
        let n: i64 = rng.gen_range(-10..=10);
        let d: i64 = rng.gen_range(1..=10);
        let v = F::from_ratio(n, d);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Outcome of one batch of identity checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}
