//! Totally ordered weights: integer levels bracketed by two sentinels.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest admissible level.
pub const W_MAX: u32 = u32::MAX - 1;

/// A weight: `Bottom < Level(0) <= Level(x) <= Level(W_MAX) < Top`.
///
/// The derived order follows the variant order, which is exactly the
/// total order needed by every operator in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Weight {
    Bottom,
    Level(u32),
    Top,
}

impl Weight {
    pub const ZERO: Weight = Weight::Level(0);

    /// Checked constructor.
    pub fn level(x: u64) -> Result<Weight> {
        if x > W_MAX as u64 {
            return Err(Error::WeightOverflow(x));
        }
        Ok(Weight::Level(x as u32))
    }

    pub fn as_level(self) -> Option<u32> {
        match self {
            Weight::Level(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_sentinel(self) -> bool {
        !matches!(self, Weight::Level(_))
    }

    /// Order-reversing involution `W_MAX - x`; the sentinels swap.
    pub fn complement(self) -> Weight {
        match self {
            Weight::Bottom => Weight::Top,
            Weight::Top => Weight::Bottom,
            Weight::Level(x) => Weight::Level(W_MAX - x.min(W_MAX)),
        }
    }
}

impl From<u32> for Weight {
    fn from(x: u32) -> Self {
        debug_assert!(x <= W_MAX);
        Weight::Level(x)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Bottom => f.write_str("bottom"),
            Weight::Top => f.write_str("top"),
            Weight::Level(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Weight::Level(x) => s.serialize_u32(*x),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

/// Shorthand for building weight vectors in tests and fixtures.
pub fn levels(xs: &[u32]) -> Vec<Weight> {
    xs.iter().map(|&x| Weight::from(x)).collect()
}
