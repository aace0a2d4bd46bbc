//! File formats and persistence: state files, JSON reports, CSV tables.
//!
//! All outputs are written atomically (temp file + rename) and all numbers
//! are emitted with 12 significant digits, so identical commands produce
//! byte-identical files up to the timestamp header field.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use gme_kit::correlation::CorrelationMatrix;
use gme_kit::states::{self, DensityState};
use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Exit codes: 0 = ran, 2 = input error, 3 = numerical-integrity error.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<gme_kit::Error> for CliError {
    fn from(err: gme_kit::Error) -> Self {
        let code = match err {
            gme_kit::Error::NumericalIntegrity { .. } => 3,
            _ => 2,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError {
            code: 2,
            message: format!("i/o error: {err}"),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError {
            code: 2,
            message: format!("json error: {err}"),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// On-disk state description: amplitudes for pure states or an explicit
/// density matrix, entries as `[re, im]` pairs.
#[derive(Serialize, Deserialize)]
pub struct StateFile {
    pub dims: [usize; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<Vec<Vec<[f64; 2]>>>,
}

#[derive(Clone, Serialize)]
pub struct InputDescriptor {
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub d: usize,
}

/// Load a state from `builtin:<name>` or a JSON state file.
///
/// Builtins: `ghz`, `w`, `gghz` (d = 3), `gghz:<d>` / `gghz(<d>)`.
pub fn load_state(spec: &str) -> CliResult<(DensityState<f64>, InputDescriptor)> {
    if let Some(builtin) = spec.strip_prefix("builtin:") {
        let (state, name) = load_builtin(builtin)?;
        let d = state.d();
        return Ok((
            state,
            InputDescriptor {
                source: spec.to_string(),
                name: Some(name),
                d,
            },
        ));
    }
    let text = fs::read_to_string(spec)
        .map_err(|e| CliError::input(format!("cannot read state file {spec}: {e}")))?;
    let file: StateFile = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("cannot parse state file {spec}: {e}")))?;
    let state = state_from_file(&file, spec)?;
    let d = state.d();
    Ok((
        state,
        InputDescriptor {
            source: spec.to_string(),
            name: file.name,
            d,
        },
    ))
}

fn load_builtin(name: &str) -> CliResult<(DensityState<f64>, String)> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "ghz" => Ok((states::ghz_state(), "ghz".into())),
        "w" => Ok((states::w_state(), "w".into())),
        "gghz" => Ok((states::gghz_state(3)?, "gghz(3)".into())),
        other => {
            let d = other
                .strip_prefix("gghz:")
                .or_else(|| {
                    other
                        .strip_prefix("gghz(")
                        .and_then(|rest| rest.strip_suffix(')'))
                })
                .ok_or_else(|| {
                    CliError::input(format!(
                        "unknown builtin state '{name}' (expected ghz, w, gghz, gghz:<d>)"
                    ))
                })?;
            let d: usize = d
                .parse()
                .map_err(|_| CliError::input(format!("bad dimension in builtin '{name}'")))?;
            Ok((states::gghz_state(d)?, format!("gghz({d})")))
        }
    }
}

fn state_from_file(file: &StateFile, source: &str) -> CliResult<DensityState<f64>> {
    let [d1, d2, d3] = file.dims;
    if d1 != d2 || d2 != d3 {
        return Err(CliError::input(format!(
            "{source}: dims must be [d, d, d], got {:?}",
            file.dims
        )));
    }
    let d = d1;
    if d < 2 {
        return Err(CliError::input(format!("{source}: local dimension {d} < 2")));
    }
    let dim = d * d * d;
    match (&file.amplitudes, &file.density) {
        (Some(_), Some(_)) | (None, None) => Err(CliError::input(format!(
            "{source}: provide exactly one of 'amplitudes' or 'density'"
        ))),
        (Some(amps), None) => {
            if amps.len() != dim {
                return Err(CliError::input(format!(
                    "{source}: amplitudes length {} != d³ = {dim}",
                    amps.len()
                )));
            }
            let v: Vec<Complex<f64>> =
                amps.iter().map(|[re, im]| Complex::new(*re, *im)).collect();
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-6 {
                eprintln!(
                    "warning: {source}: amplitude norm {norm:.9} deviates from 1; normalizing"
                );
            }
            Ok(states::pure_state(d, &v)?)
        }
        (None, Some(rows)) => {
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(CliError::input(format!(
                    "{source}: density must be a {dim}×{dim} nested list"
                )));
            }
            let m = DMatrix::from_fn(dim, dim, |i, j| {
                Complex::new(rows[i][j][0], rows[i][j][1])
            });
            Ok(DensityState::new(d, m)?)
        }
    }
}

/// Round to 12 significant digits, the serialization precision for all
/// report numbers.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let mag = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(11 - mag);
    (x * factor).round() / factor
}

/// Fixed-width scientific form with 12 significant digits, for CSV cells.
pub fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

fn fmt12_opt(x: Option<f64>) -> String {
    x.map(fmt12).unwrap_or_default()
}

pub fn timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// Write through a temp file in the target directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(dir) => tempfile::NamedTempFile::new_in(dir)?,
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    tmp.write_all(bytes)?;
    tmp.persist(path)
        .map_err(|e| CliError::input(format!("cannot persist {}: {e}", path.display())))?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

#[derive(Serialize)]
pub struct VerdictRecord {
    pub criterion: String,
    pub norm: f64,
    pub threshold: f64,
    pub margin: f64,
    pub verdict: String,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub timestamp: String,
    pub input: InputDescriptor,
    pub verdicts: Vec<VerdictRecord>,
}

#[derive(Serialize)]
pub struct ScanReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub timestamp: String,
    pub mode: String,
    pub d: usize,
    pub samples: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_pure_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_pure_by_partition: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_mixed_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_norm_deviation: Option<f64>,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct CriticalPointRecord {
    pub id: String,
    pub x: f64,
    pub method: String,
    pub direction: String,
}

#[derive(Serialize)]
pub struct CriticalPointsReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub timestamp: String,
    pub example: String,
    pub points: Vec<CriticalPointRecord>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub constants: BTreeMap<String, f64>,
}

pub const SWEEP_CSV_HEADER: &str =
    "x,norm,margin_thm1,margin_thm2,margin_ref29,f1,f2,f3,ref38";

/// One sweep record per line, header fixed, empty cells for inapplicable
/// columns.
pub fn sweep_csv(records: &[gme_kit::SweepRecord64]) -> String {
    use gme_kit::criteria::CriterionId;
    let mut out = String::new();
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for rec in records {
        let margin = |id: CriterionId| rec.margins.get(&id).copied();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            fmt12(rec.x),
            fmt12(rec.norm),
            fmt12_opt(margin(CriterionId::Thm1)),
            fmt12_opt(margin(CriterionId::Thm2)),
            fmt12_opt(margin(CriterionId::Ref29Bipartite)),
            fmt12_opt(rec.comparisons.f1),
            fmt12_opt(rec.comparisons.f2),
            fmt12_opt(rec.comparisons.f3),
            fmt12_opt(rec.comparisons.ref38),
        );
    }
    out
}

/// `(row label, column label pair, value)` triplets of a correlation
/// matrix, zeros included so the full layout is reproducible.
pub fn tensor_csv(cm: &CorrelationMatrix<f64>) -> String {
    let mut out = String::from("row,col_mid,col_last,value\n");
    for (i, row_label) in cm.rows().iter().enumerate() {
        for (j, (g, h)) in cm.cols().iter().enumerate() {
            let _ = writeln!(out, "{row_label},{g},{h},{}", fmt12(cm.data()[(i, j)]));
        }
    }
    out
}

/// Literature comparison table as CSV.
pub fn literature_csv(entries: &[gme_kit::analysis::LiteratureEntry<f64>]) -> String {
    let mut out = String::from("id,crossover_x,constant\n");
    for e in entries {
        let _ = writeln!(
            out,
            "{},{},{}",
            e.id,
            fmt12_opt(e.crossover_x),
            fmt12_opt(e.constant),
        );
    }
    out
}

#[derive(Serialize)]
pub struct BasisReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub timestamp: String,
    pub d: usize,
    pub convention: String,
    pub generator_norm_sq: f64,
    pub generators: Vec<GeneratorRecord>,
}

#[derive(Serialize)]
pub struct GeneratorRecord {
    pub flat_index: usize,
    pub label: String,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

pub fn basis_report(basis: &gme_kit::GeneratorBasis64) -> BasisReport {
    let generators = basis
        .labels()
        .iter()
        .zip(basis.matrices())
        .enumerate()
        .map(|(i, (label, m))| GeneratorRecord {
            flat_index: i + 1,
            label: label.to_string(),
            matrix: (0..m.nrows())
                .map(|r| {
                    (0..m.ncols())
                        .map(|c| [sig12(m[(r, c)].re), sig12(m[(r, c)].im)])
                        .collect()
                })
                .collect(),
        })
        .collect();
    BasisReport {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: timestamp(),
        d: basis.d(),
        convention: match basis.convention() {
            gme_kit::basis::Convention::Standard => "standard".into(),
            gme_kit::basis::Convention::PaperScaled => "paper".into(),
        },
        generator_norm_sq: sig12(basis.generator_norm_sq()),
        generators,
    }
}
