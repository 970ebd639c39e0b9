//! Frame/pressure stream synchronization.

use super::{DataError, ForceLabeledFrame, PressSession};

/// Pairs every GelSight frame with the nearest-in-time pressure sample.
///
/// Both streams must be non-empty and sorted by timestamp. A frame whose
/// nearest sample is further than `tol_ms` away fails the whole session with
/// [`DataError::UnalignedFrame`]. When a frame sits exactly halfway between
/// two samples the earlier one wins.
pub fn synchronize_press(
    session: &PressSession,
    tol_ms: i64,
) -> Result<Vec<ForceLabeledFrame>, DataError> {
    if session.frames.is_empty() {
        return Err(DataError::EmptyStream("frame"));
    }
    if session.pressure.is_empty() {
        return Err(DataError::EmptyStream("pressure"));
    }

    let pressure = &session.pressure;
    let mut labeled = Vec::with_capacity(session.frames.len());
    for frame in &session.frames {
        let idx = pressure.partition_point(|s| s.t_ms < frame.t_ms);
        let mut best = idx.min(pressure.len() - 1);
        let mut gap = (pressure[best].t_ms - frame.t_ms).abs();
        if idx > 0 {
            let before_gap = (frame.t_ms - pressure[idx - 1].t_ms).abs();
            if before_gap <= gap {
                best = idx - 1;
                gap = before_gap;
            }
        }
        if gap > tol_ms {
            return Err(DataError::UnalignedFrame {
                frame_t_ms: frame.t_ms,
                gap_ms: gap,
                tol_ms,
            });
        }
        labeled.push(ForceLabeledFrame {
            frame: frame.clone(),
            force_g: pressure[best].force_g,
            dt_ms: gap,
        });
    }
    Ok(labeled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{FrameData, GelSightFrameRef, PressureSample};

    fn session(frame_ts: &[i64], pressure_ts: &[i64]) -> PressSession {
        PressSession {
            press_index: 1,
            frames: frame_ts
                .iter()
                .map(|&t| GelSightFrameRef {
                    t_ms: t,
                    frame: FrameData::Uri(format!("frame-{t}")),
                })
                .collect(),
            pressure: pressure_ts
                .iter()
                .map(|&t| PressureSample {
                    t_ms: t,
                    force_g: t as f64,
                })
                .collect(),
            rate_hz: 25,
        }
    }

    #[test]
    fn identical_stamps_align_with_zero_gap() {
        let s = session(&[0, 40, 80], &[0, 40, 80]);
        let labeled = synchronize_press(&s, 20).unwrap();
        assert_eq!(labeled.len(), 3);
        assert!(labeled.iter().all(|f| f.dt_ms == 0));
        assert_eq!(labeled[1].force_g, 40.0);
    }

    #[test]
    fn nearest_neighbor_picks_closest_sample() {
        let mut s = session(&[41], &[0, 40, 80]);
        s.frames[0].t_ms = 41;
        let labeled = synchronize_press(&s, 20).unwrap();
        assert_eq!(labeled[0].dt_ms, 1);
        assert_eq!(labeled[0].force_g, 40.0);
    }

    #[test]
    fn gap_beyond_tolerance_fails() {
        let s = session(&[65], &[0, 40]);
        let err = synchronize_press(&s, 20).unwrap_err();
        match err {
            DataError::UnalignedFrame { gap_ms, .. } => assert_eq!(gap_ms, 25),
            other => panic!("expected UnalignedFrame, got {other:?}"),
        }
    }

    #[test]
    fn empty_streams_fail() {
        let s = session(&[], &[0]);
        assert!(matches!(
            synchronize_press(&s, 20),
            Err(DataError::EmptyStream("frame"))
        ));
        let s = session(&[0], &[]);
        assert!(matches!(
            synchronize_press(&s, 20),
            Err(DataError::EmptyStream("pressure"))
        ));
    }

    #[test]
    fn halfway_tie_goes_to_earlier_sample() {
        let s = session(&[20], &[0, 40]);
        let labeled = synchronize_press(&s, 20).unwrap();
        assert_eq!(labeled[0].force_g, 0.0);
        assert_eq!(labeled[0].dt_ms, 20);
    }

    #[test]
    fn output_order_matches_frame_order() {
        let s = session(&[0, 40, 80, 120], &[0, 40, 80, 120]);
        let labeled = synchronize_press(&s, 20).unwrap();
        let ts: Vec<i64> = labeled.iter().map(|f| f.frame.t_ms).collect();
        assert_eq!(ts, vec![0, 40, 80, 120]);
    }
}
