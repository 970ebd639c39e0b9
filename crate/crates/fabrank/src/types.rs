//! Shared vocabulary: ordinal attribute levels, the four fabric properties,
//! and the three-way comparison decision.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
#[error("attribute level must be 0, 1 or 2, got {0}")]
pub struct LevelOutOfRange(pub u8);

/// Ordinal attribute level: 0 (low), 1 (moderate), 2 (high).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Level(u8);

impl Level {
    pub const LOW: Level = Level(0);
    pub const MODERATE: Level = Level(1);
    pub const HIGH: Level = Level(2);

    pub fn new(value: u8) -> Result<Self, LevelOutOfRange> {
        if value <= 2 {
            Ok(Level(value))
        } else {
            Err(LevelOutOfRange(value))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// Absolute level distance, in {0, 1, 2}.
    pub fn distance(self, other: Level) -> u8 {
        self.0.abs_diff(other.0)
    }
}

impl TryFrom<u8> for Level {
    type Error = LevelOutOfRange;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        Level::new(value)
    }
}

impl From<Level> for u8 {
    fn from(level: Level) -> u8 {
        level.0
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One of the four fabric properties, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PropertyKind {
    Elasticity,
    Softness,
    Thickness,
    Texture,
}

impl PropertyKind {
    /// All properties in canonical order (elasticity, softness, thickness, texture).
    pub const ALL: [PropertyKind; 4] = [
        PropertyKind::Elasticity,
        PropertyKind::Softness,
        PropertyKind::Thickness,
        PropertyKind::Texture,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PropertyKind::Elasticity => "elasticity",
            PropertyKind::Softness => "softness",
            PropertyKind::Thickness => "thickness",
            PropertyKind::Texture => "texture",
        }
    }

    /// Index in the canonical order.
    pub fn index(self) -> usize {
        match self {
            PropertyKind::Elasticity => 0,
            PropertyKind::Softness => 1,
            PropertyKind::Thickness => 2,
            PropertyKind::Texture => 3,
        }
    }
}

#[derive(Debug, Error)]
#[error("unknown property {0:?} (expected elasticity, softness, thickness or texture)")]
pub struct UnknownProperty(pub String);

impl FromStr for PropertyKind {
    type Err = UnknownProperty;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "elasticity" => Ok(PropertyKind::Elasticity),
            "softness" => Ok(PropertyKind::Softness),
            "thickness" => Ok(PropertyKind::Thickness),
            "texture" => Ok(PropertyKind::Texture),
            other => Err(UnknownProperty(other.to_string())),
        }
    }
}

impl fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome class of one pairwise comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decision {
    A,
    B,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl Decision {
    /// The opposite side; inconclusive maps to itself.
    pub fn flipped(self) -> Decision {
        match self {
            Decision::A => Decision::B,
            Decision::B => Decision::A,
            Decision::Inconclusive => Decision::Inconclusive,
        }
    }

    pub fn is_decided(self) -> bool {
        !matches!(self, Decision::Inconclusive)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Decision::A => "A",
            Decision::B => "B",
            Decision::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_rejects_out_of_range() {
        assert!(Level::new(3).is_err());
        assert_eq!(Level::new(2).unwrap().value(), 2);
    }

    #[test]
    fn property_order_is_stable() {
        let names: Vec<&str> = PropertyKind::ALL.iter().map(|p| p.as_str()).collect();
        assert_eq!(names, ["elasticity", "softness", "thickness", "texture"]);
        for (i, p) in PropertyKind::ALL.iter().enumerate() {
            assert_eq!(p.index(), i);
            assert_eq!(p.as_str().parse::<PropertyKind>().unwrap(), *p);
        }
    }

    #[test]
    fn decision_flip_is_involutive() {
        for d in [Decision::A, Decision::B, Decision::Inconclusive] {
            assert_eq!(d.flipped().flipped(), d);
        }
    }
}
