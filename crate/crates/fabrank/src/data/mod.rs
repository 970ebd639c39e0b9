//! Fabric records and tactile press sessions.
//!
//! A [`FabricRecord`] bundles everything known about one fabric: identity,
//! workspace position, an image reference, expert-style attribute levels and
//! (for synthetic fabrics) the latent physical parameters those levels were
//! derived from, plus the raw tactile press sessions. Sessions hold GelSight
//! frame references and pressure samples recorded at a nominal 25 Hz;
//! [`synchronize_press`] pairs the two streams into force-labeled frames.

mod manifest;
mod sync;
mod synth;

pub use manifest::{load_manifest, save_manifest, FileStamp};
pub use sync::synchronize_press;
pub use synth::{
    derive_attribute_levels, generate_synthetic_fabric, latent_range, level_thresholds,
    FRAMES_PER_PRESS, GELSIGHT_FEATURE_DIM, SAMPLE_PERIOD_MS,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::types::{Level, PropertyKind};

/// Maximum pressure reading in grams-force (sensor rated for 0-10 kg).
pub const FORCE_MAX_G: f64 = 10_000.0;

/// Default alignment tolerance: half the 25 Hz sample period.
pub const DEFAULT_SYNC_TOL_MS: i64 = 20;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("frame at {frame_t_ms} ms has no pressure sample within {tol_ms} ms (nearest gap {gap_ms} ms)")]
    UnalignedFrame {
        frame_t_ms: i64,
        gap_ms: i64,
        tol_ms: i64,
    },
    #[error("press session has an empty {0} stream")]
    EmptyStream(&'static str),
    #[error("duplicate fabric id {0}")]
    DuplicateFabricId(String),
    #[error("{path}:{line}: schema violation: {reason}")]
    SchemaViolation {
        path: String,
        line: usize,
        reason: String,
    },
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// The four ordinal attribute levels of a fabric, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[u8; 4]", into = "[u8; 4]")]
pub struct AttributeVector {
    pub elasticity: Level,
    pub softness: Level,
    pub thickness: Level,
    pub texture: Level,
}

impl AttributeVector {
    pub fn new(elasticity: Level, softness: Level, thickness: Level, texture: Level) -> Self {
        AttributeVector {
            elasticity,
            softness,
            thickness,
            texture,
        }
    }

    pub fn level(&self, property: PropertyKind) -> Level {
        match property {
            PropertyKind::Elasticity => self.elasticity,
            PropertyKind::Softness => self.softness,
            PropertyKind::Thickness => self.thickness,
            PropertyKind::Texture => self.texture,
        }
    }

    pub fn levels(&self) -> [Level; 4] {
        [self.elasticity, self.softness, self.thickness, self.texture]
    }
}

impl TryFrom<[u8; 4]> for AttributeVector {
    type Error = crate::types::LevelOutOfRange;

    fn try_from(v: [u8; 4]) -> Result<Self, Self::Error> {
        Ok(AttributeVector {
            elasticity: Level::new(v[0])?,
            softness: Level::new(v[1])?,
            thickness: Level::new(v[2])?,
            texture: Level::new(v[3])?,
        })
    }
}

impl From<AttributeVector> for [u8; 4] {
    fn from(a: AttributeVector) -> [u8; 4] {
        [
            a.elasticity.value(),
            a.softness.value(),
            a.thickness.value(),
            a.texture.value(),
        ]
    }
}

/// Latent physical parameters behind a synthetic fabric. These are the ground
/// truth the oracle comparator reads; real datasets may omit them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatentPhysical {
    /// Force per unit compression, N/mm.
    pub stiffness: f64,
    /// Fabric thickness, mm.
    pub thickness_mm: f64,
    /// Surface roughness, dimensionless in [0, 1].
    pub roughness: f64,
    /// Elastic recovery coefficient, dimensionless in [0, 1].
    pub elasticity_coeff: f64,
}

impl LatentPhysical {
    /// The latent component that drives the given attribute.
    pub fn component(&self, property: PropertyKind) -> f64 {
        match property {
            PropertyKind::Elasticity => self.elasticity_coeff,
            PropertyKind::Softness => self.stiffness,
            PropertyKind::Thickness => self.thickness_mm,
            PropertyKind::Texture => self.roughness,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.stiffness.is_finite()
            && self.stiffness > 0.0
            && self.thickness_mm.is_finite()
            && self.thickness_mm > 0.0
            && (0.0..=1.0).contains(&self.roughness)
            && (0.0..=1.0).contains(&self.elasticity_coeff)
    }
}

/// One pressure reading, milliseconds from press start.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PressureSample {
    pub t_ms: i64,
    pub force_g: f64,
}

/// A GelSight frame reference: either an opaque URI or, in synthetic mode, a
/// fixed-dimension feature vector standing in for the image.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameData {
    Uri(String),
    Features(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GelSightFrameRef {
    pub t_ms: i64,
    pub frame: FrameData,
}

/// One 10 s press of a fabric: frame and pressure streams at a nominal rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PressSession {
    /// 1 or 2; each fabric is pressed twice.
    pub press_index: u8,
    pub frames: Vec<GelSightFrameRef>,
    pub pressure: Vec<PressureSample>,
    pub rate_hz: u32,
}

/// A GelSight frame paired with the nearest-in-time pressure reading.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceLabeledFrame {
    pub frame: GelSightFrameRef,
    pub force_g: f64,
    /// Absolute alignment gap between frame and pressure timestamps.
    pub dt_ms: i64,
}

/// One fabric: identity, pose, image reference, annotation and sessions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FabricRecord {
    pub fabric_id: String,
    /// 3D position in meters.
    pub position: [f64; 3],
    pub image_ref: String,
    pub attributes: AttributeVector,
    pub latent: Option<LatentPhysical>,
    pub sessions: Vec<PressSession>,
}
