//! Dataset manifest and per-fabric session files.
//!
//! A manifest is line-delimited JSON. The first line is a metadata object
//! `{"schema":"fabrank/manifest@1","seed":...,"config_hash":...,"n_records":...}`
//! and every following line is one fabric record:
//!
//! ```text
//! {"fabric_id":..,"position":[x,y,z],"image_ref":..,"attributes":[e,s,t,x],
//!  "latent":{..}|null,"frames_file":..,"pressure_file":..,"rates_hz":[..]}
//! ```
//!
//! Press sessions live next to the manifest in two CSV files per fabric,
//! both covering every press:
//!
//! ```text
//! <id>_frames.csv:   press_index,t_ms,f00,...,f15
//! <id>_pressure.csv: press_index,t_ms,force_g
//! ```
//!
//! Field names are frozen; see the repository README.

use std::collections::BTreeMap;
use std::collections::HashSet;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    AttributeVector, DataError, FabricRecord, FrameData, GelSightFrameRef, LatentPhysical,
    PressSession, PressureSample,
};

pub const MANIFEST_SCHEMA: &str = "fabrank/manifest@1";

/// Reproducibility stamp embedded in every output file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileStamp {
    pub seed: u64,
    pub config_hash: String,
}

impl Default for FileStamp {
    fn default() -> Self {
        FileStamp {
            seed: 0,
            config_hash: "unconfigured".to_string(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ManifestMeta {
    schema: String,
    seed: u64,
    config_hash: String,
    n_records: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct RecordLine {
    fabric_id: String,
    position: [f64; 3],
    image_ref: String,
    attributes: AttributeVector,
    latent: Option<LatentPhysical>,
    frames_file: String,
    pressure_file: String,
    rates_hz: Vec<u32>,
}

fn io_err(path: &Path, source: std::io::Error) -> DataError {
    DataError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn schema_err(path: &Path, line: usize, reason: impl Into<String>) -> DataError {
    DataError::SchemaViolation {
        path: path.display().to_string(),
        line,
        reason: reason.into(),
    }
}

fn check_fabric_id(path: &Path, line: usize, id: &str) -> Result<(), DataError> {
    let ok = !id.is_empty()
        && id
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'));
    if ok {
        Ok(())
    } else {
        Err(schema_err(
            path,
            line,
            format!("fabric_id {id:?} must be a non-empty token of [A-Za-z0-9._-]"),
        ))
    }
}

/// Writes `records` as a manifest at `path`, with session CSVs under
/// `sessions/` next to it. Fails without touching disk layout decisions if a
/// fabric id repeats.
pub fn save_manifest(
    records: &[FabricRecord],
    path: &Path,
    stamp: &FileStamp,
) -> Result<(), DataError> {
    let mut seen = HashSet::new();
    for record in records {
        if !seen.insert(record.fabric_id.as_str()) {
            return Err(DataError::DuplicateFabricId(record.fabric_id.clone()));
        }
    }

    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    if !records.is_empty() {
        fs::create_dir_all(dir.join("sessions")).map_err(|e| io_err(dir, e))?;
    }

    let mut out = String::new();
    let meta = ManifestMeta {
        schema: MANIFEST_SCHEMA.to_string(),
        seed: stamp.seed,
        config_hash: stamp.config_hash.clone(),
        n_records: records.len(),
    };
    out.push_str(&serde_json::to_string(&meta).expect("meta serializes"));
    out.push('\n');

    for (i, record) in records.iter().enumerate() {
        check_fabric_id(path, i + 2, &record.fabric_id)?;
        if record.image_ref.is_empty() {
            return Err(schema_err(path, i + 2, "image_ref must be non-empty"));
        }
        let frames_file = format!("sessions/{}_frames.csv", record.fabric_id);
        let pressure_file = format!("sessions/{}_pressure.csv", record.fabric_id);
        write_session_files(
            record,
            &dir.join(&frames_file),
            &dir.join(&pressure_file),
        )?;
        let line = RecordLine {
            fabric_id: record.fabric_id.clone(),
            position: record.position,
            image_ref: record.image_ref.clone(),
            attributes: record.attributes,
            latent: record.latent,
            frames_file,
            pressure_file,
            rates_hz: record.sessions.iter().map(|s| s.rate_hz).collect(),
        };
        out.push_str(&serde_json::to_string(&line).expect("record serializes"));
        out.push('\n');
    }

    fs::write(path, out).map_err(|e| io_err(path, e))
}

fn write_session_files(
    record: &FabricRecord,
    frames_path: &Path,
    pressure_path: &Path,
) -> Result<(), DataError> {
    let dim = record
        .sessions
        .iter()
        .flat_map(|s| s.frames.iter())
        .find_map(|f| match &f.frame {
            FrameData::Features(v) => Some(v.len()),
            FrameData::Uri(_) => None,
        });

    let mut frames = String::new();
    frames.push_str("press_index,t_ms");
    for k in 0..dim.unwrap_or(super::GELSIGHT_FEATURE_DIM) {
        frames.push_str(&format!(",f{k:02}"));
    }
    frames.push('\n');

    let mut pressure = String::from("press_index,t_ms,force_g\n");

    for session in &record.sessions {
        for frame in &session.frames {
            let features = match &frame.frame {
                FrameData::Features(v) => v,
                FrameData::Uri(_) => {
                    return Err(schema_err(
                        frames_path,
                        0,
                        format!(
                            "fabric {} frame at {} ms has a URI reference; \
                             session files store feature vectors only",
                            record.fabric_id, frame.t_ms
                        ),
                    ))
                }
            };
            frames.push_str(&format!("{},{}", session.press_index, frame.t_ms));
            for f in features {
                frames.push_str(&format!(",{f}"));
            }
            frames.push('\n');
        }
        for sample in &session.pressure {
            pressure.push_str(&format!(
                "{},{},{}\n",
                session.press_index, sample.t_ms, sample.force_g
            ));
        }
    }

    fs::write(frames_path, frames).map_err(|e| io_err(frames_path, e))?;
    fs::write(pressure_path, pressure).map_err(|e| io_err(pressure_path, e))
}

/// Loads a manifest and every referenced session file.
pub fn load_manifest(path: &Path) -> Result<Vec<FabricRecord>, DataError> {
    let file = fs::File::open(path).map_err(|e| io_err(path, e))?;
    let mut lines = BufReader::new(file).lines().enumerate();

    let (_, meta_line) = lines
        .next()
        .ok_or_else(|| schema_err(path, 1, "missing metadata header line"))?;
    let meta_line = meta_line.map_err(|e| io_err(path, e))?;
    let meta: ManifestMeta = serde_json::from_str(&meta_line)
        .map_err(|e| schema_err(path, 1, format!("bad metadata line: {e}")))?;
    if meta.schema != MANIFEST_SCHEMA {
        return Err(schema_err(
            path,
            1,
            format!("schema {:?}, expected {MANIFEST_SCHEMA:?}", meta.schema),
        ));
    }

    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut records = Vec::new();
    let mut seen = HashSet::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line.map_err(|e| io_err(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: RecordLine = serde_json::from_str(&line)
            .map_err(|e| schema_err(path, line_no, e.to_string()))?;
        check_fabric_id(path, line_no, &parsed.fabric_id)?;
        if parsed.image_ref.is_empty() {
            return Err(schema_err(path, line_no, "image_ref must be non-empty"));
        }
        if !seen.insert(parsed.fabric_id.clone()) {
            return Err(DataError::DuplicateFabricId(parsed.fabric_id));
        }
        let sessions = load_session_files(
            &dir.join(&parsed.frames_file),
            &dir.join(&parsed.pressure_file),
            &parsed.rates_hz,
        )?;
        records.push(FabricRecord {
            fabric_id: parsed.fabric_id,
            position: parsed.position,
            image_ref: parsed.image_ref,
            attributes: parsed.attributes,
            latent: parsed.latent,
            sessions,
        });
    }
    if records.len() != meta.n_records {
        return Err(schema_err(
            path,
            1,
            format!(
                "metadata announces {} records but {} were found",
                meta.n_records,
                records.len()
            ),
        ));
    }
    Ok(records)
}

fn load_session_files(
    frames_path: &Path,
    pressure_path: &Path,
    rates_hz: &[u32],
) -> Result<Vec<PressSession>, DataError> {
    // press_index -> stream, insertion keeps presses ordered
    let mut frames_by_press: BTreeMap<u8, Vec<GelSightFrameRef>> = BTreeMap::new();
    let mut reader = csv::Reader::from_path(frames_path)
        .map_err(|e| schema_err(frames_path, 1, e.to_string()))?;
    {
        let headers = reader
            .headers()
            .map_err(|e| schema_err(frames_path, 1, e.to_string()))?;
        if headers.len() < 3 || &headers[0] != "press_index" || &headers[1] != "t_ms" {
            return Err(schema_err(
                frames_path,
                1,
                "expected header press_index,t_ms,f00,...",
            ));
        }
    }
    for (idx, row) in reader.records().enumerate() {
        let line_no = idx + 2;
        let row = row.map_err(|e| schema_err(frames_path, line_no, e.to_string()))?;
        let press: u8 = parse_field(frames_path, line_no, row.get(0))?;
        let t_ms: i64 = parse_field(frames_path, line_no, row.get(1))?;
        let mut features = Vec::with_capacity(row.len() - 2);
        for field in row.iter().skip(2) {
            features.push(parse_field(frames_path, line_no, Some(field))?);
        }
        frames_by_press.entry(press).or_default().push(GelSightFrameRef {
            t_ms,
            frame: FrameData::Features(features),
        });
    }

    let mut pressure_by_press: BTreeMap<u8, Vec<PressureSample>> = BTreeMap::new();
    let mut reader = csv::Reader::from_path(pressure_path)
        .map_err(|e| schema_err(pressure_path, 1, e.to_string()))?;
    for (idx, row) in reader.records().enumerate() {
        let line_no = idx + 2;
        let row = row.map_err(|e| schema_err(pressure_path, line_no, e.to_string()))?;
        let press: u8 = parse_field(pressure_path, line_no, row.get(0))?;
        let t_ms: i64 = parse_field(pressure_path, line_no, row.get(1))?;
        let force_g: f64 = parse_field(pressure_path, line_no, row.get(2))?;
        pressure_by_press
            .entry(press)
            .or_default()
            .push(PressureSample { t_ms, force_g });
    }

    let presses: Vec<u8> = frames_by_press.keys().copied().collect();
    if presses != pressure_by_press.keys().copied().collect::<Vec<u8>>() {
        return Err(schema_err(
            frames_path,
            0,
            "frame and pressure files disagree on press indices",
        ));
    }
    if presses.len() != rates_hz.len() {
        return Err(schema_err(
            frames_path,
            0,
            format!(
                "manifest lists {} rates but session files hold {} presses",
                rates_hz.len(),
                presses.len()
            ),
        ));
    }

    let mut sessions = Vec::with_capacity(presses.len());
    for (i, press_index) in presses.into_iter().enumerate() {
        sessions.push(PressSession {
            press_index,
            frames: frames_by_press.remove(&press_index).unwrap(),
            pressure: pressure_by_press.remove(&press_index).unwrap(),
            rate_hz: rates_hz[i],
        });
    }
    Ok(sessions)
}

fn parse_field<T: std::str::FromStr>(
    path: &Path,
    line: usize,
    field: Option<&str>,
) -> Result<T, DataError>
where
    T::Err: std::fmt::Display,
{
    let field = field.ok_or_else(|| schema_err(path, line, "missing field"))?;
    field
        .parse()
        .map_err(|e| schema_err(path, line, format!("bad field {field:?}: {e}")))
}

/// Writes one line-delimited JSON file with a metadata header. Shared by the
/// pair-file and explanation-record writers.
pub(crate) fn write_jsonl<M: Serialize, R: Serialize>(
    path: &Path,
    meta: &M,
    rows: impl Iterator<Item = R>,
) -> Result<(), std::io::Error> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut file = fs::File::create(path)?;
    writeln!(file, "{}", serde_json::to_string(meta).expect("meta serializes"))?;
    for row in rows {
        writeln!(file, "{}", serde_json::to_string(&row).expect("row serializes"))?;
    }
    Ok(())
}

/// Reads a line-delimited JSON file written by [`write_jsonl`], returning the
/// metadata line and rows. `line` in errors is 1-based.
pub(crate) fn read_jsonl<M, R>(path: &Path) -> Result<(M, Vec<R>), DataError>
where
    M: serde::de::DeserializeOwned,
    R: serde::de::DeserializeOwned,
{
    let file = fs::File::open(path).map_err(|e| io_err(path, e))?;
    let mut lines = BufReader::new(file).lines().enumerate();
    let (_, meta_line) = lines
        .next()
        .ok_or_else(|| schema_err(path, 1, "missing metadata header line"))?;
    let meta_line = meta_line.map_err(|e| io_err(path, e))?;
    let meta: M = serde_json::from_str(&meta_line)
        .map_err(|e| schema_err(path, 1, format!("bad metadata line: {e}")))?;
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line = line.map_err(|e| io_err(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let row: R = serde_json::from_str(&line)
            .map_err(|e| schema_err(path, idx + 1, e.to_string()))?;
        rows.push(row);
    }
    Ok((meta, rows))
}
