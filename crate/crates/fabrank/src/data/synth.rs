//! Deterministic synthetic fabric generator.
//!
//! Latent physical parameters are drawn uniformly from documented ranges and
//! mapped to ordinal levels by fixed cut points. The cut points sit at the
//! 0.42 / 0.58 quantiles of each range rather than exact thirds, which biases
//! fabrics toward the low/high ends so that extreme-level comparison pools
//! stay large.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::{
    AttributeVector, FabricRecord, FrameData, GelSightFrameRef, LatentPhysical, PressSession,
    PressureSample, FORCE_MAX_G,
};
use crate::rng::keyed_rng;
use crate::types::{Level, PropertyKind};

/// Frames (and pressure samples) per 10 s press at 25 Hz.
pub const FRAMES_PER_PRESS: usize = 250;
/// Sample period at 25 Hz.
pub const SAMPLE_PERIOD_MS: i64 = 40;
/// Dimension of the synthetic GelSight frame descriptor.
pub const GELSIGHT_FEATURE_DIM: usize = 16;

/// Quantile fractions of the generation range where level cut points sit.
const LEVEL_SPLIT_LO: f64 = 0.42;
const LEVEL_SPLIT_HI: f64 = 0.58;

/// Generation range of the latent component backing each attribute.
pub fn latent_range(property: PropertyKind) -> (f64, f64) {
    match property {
        PropertyKind::Elasticity => (0.0, 1.0),
        PropertyKind::Softness => (0.1, 10.0), // stiffness, N/mm
        PropertyKind::Thickness => (0.2, 5.0), // mm
        PropertyKind::Texture => (0.0, 1.0),   // roughness
    }
}

/// The two fixed cut points (lower, upper) for one attribute. A latent value
/// below the lower cut maps to level 0, below the upper cut to level 1, and
/// at or above it to level 2. Boundaries belong to the upper bucket.
pub fn level_thresholds(property: PropertyKind) -> (f64, f64) {
    let (lo, hi) = latent_range(property);
    let span = hi - lo;
    (lo + LEVEL_SPLIT_LO * span, lo + LEVEL_SPLIT_HI * span)
}

fn level_for(property: PropertyKind, value: f64) -> Level {
    let (t_lo, t_hi) = level_thresholds(property);
    if value >= t_hi {
        Level::HIGH
    } else if value >= t_lo {
        Level::MODERATE
    } else {
        Level::LOW
    }
}

/// Maps latent physical parameters to the four ordinal attribute levels.
/// Monotone: a larger latent component never yields a lower level.
pub fn derive_attribute_levels(latent: &LatentPhysical) -> AttributeVector {
    AttributeVector {
        elasticity: level_for(PropertyKind::Elasticity, latent.elasticity_coeff),
        softness: level_for(PropertyKind::Softness, latent.stiffness),
        thickness: level_for(PropertyKind::Thickness, latent.thickness_mm),
        texture: level_for(PropertyKind::Texture, latent.roughness),
    }
}

/// Generates one synthetic fabric, a pure function of (seed, fabric_id).
///
/// The record carries two 10 s press sessions of 250 frames each. The
/// pressure curve follows a saturating ramp F(t) = F_max * (1 - e^(-t/tau))
/// with Gaussian noise (sigma = 1% of F_max) clamped to the sensor range;
/// tau shrinks as stiffness grows, so stiff fabrics load up faster. Frames
/// carry 16-dimensional descriptors mixing the latent surface parameters
/// with the instantaneous contact force.
pub fn generate_synthetic_fabric(seed: u64, fabric_id: &str) -> FabricRecord {
    let mut rng = keyed_rng(seed, &format!("fabric:{fabric_id}"));

    let (stiff_lo, stiff_hi) = latent_range(PropertyKind::Softness);
    let (thick_lo, thick_hi) = latent_range(PropertyKind::Thickness);
    let latent = LatentPhysical {
        stiffness: rng.random_range(stiff_lo..stiff_hi),
        thickness_mm: rng.random_range(thick_lo..thick_hi),
        roughness: rng.random_range(0.0..1.0),
        elasticity_coeff: rng.random_range(0.0..1.0),
    };

    let position = [
        rng.random_range(0.2..0.8),
        rng.random_range(-0.4..0.4),
        rng.random_range(0.0..0.3),
    ];

    let sessions = (1..=2)
        .map(|press_index| synth_press(&mut rng, press_index, &latent))
        .collect();

    FabricRecord {
        fabric_id: fabric_id.to_string(),
        position,
        image_ref: format!("images/{fabric_id}.png"),
        attributes: derive_attribute_levels(&latent),
        latent: Some(latent),
        sessions,
    }
}

fn synth_press(rng: &mut impl Rng, press_index: u8, latent: &LatentPhysical) -> PressSession {
    let f_max = rng.random_range(2000.0..8000.0);
    let tau_ms = 3000.0 / (1.0 + latent.stiffness);
    let noise = Normal::new(0.0, 0.01 * f_max).expect("valid sigma");

    let mut frames = Vec::with_capacity(FRAMES_PER_PRESS);
    let mut pressure = Vec::with_capacity(FRAMES_PER_PRESS);
    for i in 0..FRAMES_PER_PRESS {
        let t_ms = i as i64 * SAMPLE_PERIOD_MS;
        let ramp = f_max * (1.0 - (-(t_ms as f64) / tau_ms).exp());
        let force_g = (ramp + noise.sample(rng)).clamp(0.0, FORCE_MAX_G);
        pressure.push(PressureSample { t_ms, force_g });
        frames.push(GelSightFrameRef {
            t_ms,
            frame: FrameData::Features(frame_features(rng, latent, force_g)),
        });
    }

    PressSession {
        press_index,
        frames,
        pressure,
        rate_hz: 25,
    }
}

fn frame_features(rng: &mut impl Rng, latent: &LatentPhysical, force_g: f64) -> Vec<f64> {
    let force_norm = force_g / FORCE_MAX_G;
    let (_, thick_hi) = latent_range(PropertyKind::Thickness);
    (0..GELSIGHT_FEATURE_DIM)
        .map(|k| {
            let phase = (k as f64 + 1.0) / GELSIGHT_FEATURE_DIM as f64;
            let base = latent.roughness * (phase * std::f64::consts::PI).sin()
                + (latent.thickness_mm / thick_hi) * phase
                + latent.elasticity_coeff * (1.0 - phase);
            base + 0.5 * force_norm + rng.random_range(-0.02..0.02)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::synchronize_press;

    #[test]
    fn generation_is_deterministic() {
        let a = generate_synthetic_fabric(1, "fab-0001");
        let b = generate_synthetic_fabric(1, "fab-0001");
        assert_eq!(a, b);
    }

    #[test]
    fn different_seeds_give_different_latents() {
        let a = generate_synthetic_fabric(1, "fab-0001");
        let b = generate_synthetic_fabric(2, "fab-0001");
        assert_ne!(a.latent, b.latent);
    }

    #[test]
    fn different_ids_give_different_latents() {
        let a = generate_synthetic_fabric(1, "fab-0001");
        let b = generate_synthetic_fabric(1, "fab-0002");
        assert_ne!(a.latent, b.latent);
    }

    #[test]
    fn sessions_have_expected_shape() {
        let record = generate_synthetic_fabric(9, "fab-0042");
        assert_eq!(record.sessions.len(), 2);
        for (i, session) in record.sessions.iter().enumerate() {
            assert_eq!(session.press_index as usize, i + 1);
            assert_eq!(session.rate_hz, 25);
            assert_eq!(session.frames.len(), FRAMES_PER_PRESS);
            assert_eq!(session.pressure.len(), FRAMES_PER_PRESS);
            let stamps: Vec<i64> = session.frames.iter().map(|f| f.t_ms).collect();
            let expected: Vec<i64> = (0..250).map(|i| i * 40).collect();
            assert_eq!(stamps, expected);
            assert_eq!(stamps.last(), Some(&9960));
        }
    }

    #[test]
    fn forces_stay_in_sensor_range() {
        for seed in 0..20 {
            let record = generate_synthetic_fabric(seed, "fab-0001");
            for session in &record.sessions {
                for sample in &session.pressure {
                    assert!(
                        (0.0..=FORCE_MAX_G).contains(&sample.force_g),
                        "force {} out of range",
                        sample.force_g
                    );
                }
            }
        }
    }

    #[test]
    fn synthetic_sessions_synchronize_exactly() {
        let record = generate_synthetic_fabric(3, "fab-0007");
        for session in &record.sessions {
            let labeled = synchronize_press(session, 20).unwrap();
            assert_eq!(labeled.len(), FRAMES_PER_PRESS);
            assert!(labeled.iter().all(|f| f.dt_ms == 0));
        }
    }

    #[test]
    fn level_boundaries_belong_to_upper_bucket() {
        let base = LatentPhysical {
            stiffness: 5.0,
            thickness_mm: 2.5,
            roughness: 0.0,
            elasticity_coeff: 0.5,
        };
        assert_eq!(derive_attribute_levels(&base).texture, Level::LOW);

        let high = LatentPhysical { roughness: 1.0, ..base };
        assert_eq!(derive_attribute_levels(&high).texture, Level::HIGH);

        let (t_lo, t_hi) = level_thresholds(PropertyKind::Texture);
        let at_lo = LatentPhysical { roughness: t_lo, ..base };
        assert_eq!(derive_attribute_levels(&at_lo).texture, Level::MODERATE);
        let at_hi = LatentPhysical { roughness: t_hi, ..base };
        assert_eq!(derive_attribute_levels(&at_hi).texture, Level::HIGH);
    }

    #[test]
    fn level_derivation_is_monotone_per_component() {
        let probe = |p: PropertyKind| {
            let (lo, hi) = latent_range(p);
            let mut prev = 0u8;
            for i in 0..=100 {
                let x = lo + (hi - lo) * (i as f64) / 100.0;
                let mut latent = LatentPhysical {
                    stiffness: 5.0,
                    thickness_mm: 2.5,
                    roughness: 0.5,
                    elasticity_coeff: 0.5,
                };
                match p {
                    PropertyKind::Elasticity => latent.elasticity_coeff = x,
                    PropertyKind::Softness => latent.stiffness = x,
                    PropertyKind::Thickness => latent.thickness_mm = x,
                    PropertyKind::Texture => latent.roughness = x,
                }
                let level = derive_attribute_levels(&latent).level(p).value();
                assert!(level >= prev, "{p} level dropped from {prev} to {level}");
                prev = level;
            }
            assert_eq!(prev, 2);
        };
        for p in PropertyKind::ALL {
            probe(p);
        }
    }
}
