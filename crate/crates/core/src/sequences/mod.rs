//! Low-discrepancy inputs for the annealing chain.
//!
//! A `(t,s)_R`-sequence keeps the first `R` base-`b` digits of every coordinate
//! of a deterministic `(t,s)`-sequence and fills the remaining digits with
//! uniform noise. `R = 0` is plain Monte Carlo, `R = inf` is the deterministic
//! sequence itself.

mod blocks;
mod digital;
mod driver;
mod accept_floor;
mod nets;
mod noise;
mod radical;

pub use blocks::{block_indices, digit_count, krm_boundaries, next_boundary, BlockIndices};
pub use digital::{DigitTable, DirectionNumbers, DIGIT_BITS};
pub use driver::{truncate_randomize, DriverConfig, DriverPoint, SequenceDriver};
pub use accept_floor::{accept_floor_check, AcceptFloorOutcome};
pub use nets::{compositions, exact_t, verify_net, NetParams, NetVerdict, ViolatingBox};
pub use noise::NoiseSource;
pub use radical::radical_inverse;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Number of base-`b` digits retained from the deterministic sequence (`R`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RetainedDigits {
    Finite(u32),
    /// `R = inf`: the stream is the deterministic sequence.
    All,
}

impl RetainedDigits {
    pub fn finite(self) -> Option<u32> {
        match self {
            RetainedDigits::Finite(r) => Some(r),
            RetainedDigits::All => None,
        }
    }

    pub fn is_deterministic(self) -> bool {
        matches!(self, RetainedDigits::All)
    }
}

impl fmt::Display for RetainedDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RetainedDigits::Finite(r) => write!(f, "{r}"),
            RetainedDigits::All => f.write_str("inf"),
        }
    }
}

impl FromStr for RetainedDigits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(RetainedDigits::All);
        }
        s.parse::<u32>()
            .map(RetainedDigits::Finite)
            .map_err(|_| Error::InvalidParameter(format!("R must be a non-negative integer or \"inf\", got {s:?}")))
    }
}

// R is written either as an integer or as the token "inf".
impl Serialize for RetainedDigits {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            RetainedDigits::Finite(r) => serializer.serialize_u32(*r),
            RetainedDigits::All => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for RetainedDigits {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u32),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(r) => Ok(RetainedDigits::Finite(r)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
