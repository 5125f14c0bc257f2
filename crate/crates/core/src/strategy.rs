use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Achievable key rates `(R1, R2)` in bits per channel use.
///
/// A pair is achievable when a sequence of codes gives each BS-user pair a
/// common key of that rate with vanishing error probability and vanishing
/// leakage rate to the other pair's user. Both rates are nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
}

impl RatePair {
    pub fn new(r1: f64, r2: f64) -> Self {
        debug_assert!(r1 >= 0.0 && r2 >= 0.0, "negative rate ({r1}, {r2})");
        RatePair { r1, r2 }
    }

    pub fn get(&self, player: Player) -> f64 {
        match player {
            Player::One => self.r1,
            Player::Two => self.r2,
        }
    }

    /// Componentwise `>=` with strict improvement beyond `tol` in at least one coordinate.
    pub fn dominates(&self, other: &RatePair, tol: f64) -> bool {
        self.r1 >= other.r1 - tol && self.r2 >= other.r2 - tol && (self.r1 > other.r1 + tol || self.r2 > other.r2 + tol)
    }
}

impl fmt::Display for RatePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r1, self.r2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }
}

/// Pure key-agreement strategy of one BS-user pair.
///
/// `Fw` derives the key from the wiretap-coded forward transmission over the
/// interference channel; `Bw` derives it from the user's channel output via
/// the public channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PureStrategy {
    #[serde(rename = "FW")]
    Fw,
    #[serde(rename = "BW")]
    Bw,
}

impl PureStrategy {
    pub const ALL: [PureStrategy; 2] = [PureStrategy::Fw, PureStrategy::Bw];

    pub fn as_str(self) -> &'static str {
        match self {
            PureStrategy::Fw => "FW",
            PureStrategy::Bw => "BW",
        }
    }

    pub fn index(self) -> usize {
        match self {
            PureStrategy::Fw => 0,
            PureStrategy::Bw => 1,
        }
    }

    pub fn flip(self) -> PureStrategy {
        match self {
            PureStrategy::Fw => PureStrategy::Bw,
            PureStrategy::Bw => PureStrategy::Fw,
        }
    }
}

impl fmt::Display for PureStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PureStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_uppercase().as_str() {
            "FW" => Ok(PureStrategy::Fw),
            "BW" => Ok(PureStrategy::Bw),
            _ => Err(Error::domain(format!("unknown strategy `{s}`, expected FW or BW"))),
        }
    }
}

/// Strategy pair `(s1, s2)`.
pub type Profile = (PureStrategy, PureStrategy);

/// The four pure profiles in row-major order: (FW,FW), (FW,BW), (BW,FW), (BW,BW).
pub const PROFILES: [Profile; 4] = [
    (PureStrategy::Fw, PureStrategy::Fw),
    (PureStrategy::Fw, PureStrategy::Bw),
    (PureStrategy::Bw, PureStrategy::Fw),
    (PureStrategy::Bw, PureStrategy::Bw),
];

pub fn profile_label(p: Profile) -> String {
    format!("({},{})", p.0, p.1)
}
