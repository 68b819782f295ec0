//! Tie-breaking policies for choices the theory leaves open.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TiePolicy {
    /// Smallest label first, then smallest node id.
    #[default]
    MinLabel,
    /// Uniform choice driven by a seeded generator.
    Seeded(u64),
}

impl TiePolicy {
    pub(crate) fn rng(self) -> Option<ChaCha8Rng> {
        match self {
            TiePolicy::MinLabel => None,
            TiePolicy::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        }
    }
}

/// Random key when seeded, constant otherwise.
pub(crate) fn tie_key(rng: &mut Option<ChaCha8Rng>) -> u64 {
    rng.as_mut().map(|r| r.gen()).unwrap_or(0)
}

impl fmt::Display for TiePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TiePolicy::MinLabel => f.write_str("min-label"),
            TiePolicy::Seeded(s) => write!(f, "seed:{s}"),
        }
    }
}

impl FromStr for TiePolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "min-label" {
            return Ok(TiePolicy::MinLabel);
        }
        match s.strip_prefix("seed:").map(str::parse::<u64>) {
            Some(Ok(seed)) => Ok(TiePolicy::Seeded(seed)),
            _ => Err(format!("unknown tie policy `{s}` (expected min-label or seed:<u64>)")),
        }
    }
}
