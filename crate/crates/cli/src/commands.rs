//! Command implementations.

use std::collections::BTreeMap;
use std::path::Path;

use gme_kit::analysis::{
    attach_literature, critical_visibility, linspace, literature_comparisons, sweep, ExampleId,
    NoiseDirection, SolverMethod,
};
use gme_kit::basis::{build_basis, Convention};
use gme_kit::correlation::{full_correlation_matrix, restricted_correlation_matrix};
use gme_kit::criteria::{evaluate, CriterionId};
use gme_kit::states::{ghz_state, gghz_state, w_state, DensityState};
use gme_kit::verification::{biseparable_bound_scan, lu_invariance_scan};

use crate::io::{
    self, basis_report, literature_csv, load_state, sig12, sweep_csv, tensor_csv, write_atomic,
    write_json, CheckReport, CliError, CliResult, CriticalPointRecord, CriticalPointsReport,
    InputDescriptor, ScanReport, VerdictRecord, SCHEMA_VERSION,
};

fn tool_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

fn verdict_record(v: &gme_kit::CriterionVerdict64) -> VerdictRecord {
    VerdictRecord {
        criterion: v.criterion.name().to_string(),
        norm: sig12(v.norm),
        threshold: sig12(v.threshold),
        margin: sig12(v.margin),
        verdict: v.verdict.to_string(),
    }
}

pub fn cmd_check(
    state_spec: &str,
    criteria: &[CriterionId],
    all: bool,
    out: Option<&Path>,
) -> CliResult<()> {
    let (rho, input) = load_state(state_spec)?;
    let selected: Vec<CriterionId> = if all {
        CriterionId::applicable(rho.d())
    } else {
        criteria.to_vec()
    };
    let mut verdicts = Vec::new();
    for &criterion in &selected {
        let v = evaluate(&rho, criterion)?;
        println!(
            "{}: norm = {:.9}, threshold = {:.9}, margin = {:+.9} -> {}",
            criterion.name(),
            v.norm,
            v.threshold,
            v.margin,
            v.verdict
        );
        verdicts.push(verdict_record(&v));
    }
    if let Some(path) = out {
        let report = CheckReport {
            schema_version: SCHEMA_VERSION,
            tool_version: tool_version(),
            timestamp: io::timestamp(),
            input,
            verdicts,
        };
        write_json(path, &report)?;
    }
    Ok(())
}

/// `start:stop:steps`, e.g. `0:1:101`.
pub fn parse_grid(spec: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::input(format!(
            "bad grid '{spec}' (expected start:stop:steps)"
        )));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| CliError::input(format!("bad grid start '{}'", parts[0])))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| CliError::input(format!("bad grid stop '{}'", parts[1])))?;
    let steps: usize = parts[2]
        .parse()
        .map_err(|_| CliError::input(format!("bad grid steps '{}'", parts[2])))?;
    if steps == 0 {
        return Err(CliError::input("grid needs at least one point"));
    }
    if !(0.0..=1.0).contains(&start) || !(0.0..=1.0).contains(&stop) {
        return Err(CliError::input("grid endpoints must lie in [0, 1]"));
    }
    Ok(linspace(start, stop, steps))
}

fn example_for_state(input: &InputDescriptor, direction: NoiseDirection) -> Option<ExampleId> {
    match (input.name.as_deref(), input.d, direction) {
        (Some("ghz"), 2, NoiseDirection::XIsNoise) => Some(ExampleId::Ex1),
        (Some("w"), 2, NoiseDirection::XIsVisibility) => Some(ExampleId::Ex2),
        (Some("gghz(3)"), 3, NoiseDirection::XIsNoise) => Some(ExampleId::Ex3),
        _ => None,
    }
}

pub fn cmd_sweep(
    state_spec: &str,
    grid_spec: &str,
    direction: NoiseDirection,
    with_literature: bool,
    out: &Path,
) -> CliResult<()> {
    let (rho, input) = load_state(state_spec)?;
    let grid = parse_grid(grid_spec)?;
    let mut records = sweep(&rho, &grid, direction)?;
    if with_literature {
        match example_for_state(&input, direction) {
            Some(example) => attach_literature(&mut records, example, direction),
            None => eprintln!(
                "warning: --with-literature: no published comparison for this \
                 state/direction; extra columns left empty"
            ),
        }
    }
    write_atomic(out, sweep_csv(&records).as_bytes())?;
    println!(
        "wrote {} sweep points for {} to {}",
        records.len(),
        input.name.as_deref().unwrap_or(&input.source),
        out.display()
    );
    Ok(())
}

struct ExampleSpec {
    label: &'static str,
    state: DensityState<f64>,
    direction: NoiseDirection,
    example: ExampleId,
    criteria: Vec<CriterionId>,
    literature_ids: Vec<&'static str>,
}

fn example_spec(example: &str) -> CliResult<ExampleSpec> {
    match example {
        "1" | "fig1" => Ok(ExampleSpec {
            label: "1",
            state: ghz_state(),
            direction: NoiseDirection::XIsNoise,
            example: ExampleId::Ex1,
            criteria: vec![CriterionId::Thm1, CriterionId::Ref29Bipartite],
            literature_ids: vec!["f1", "f2", "f3"],
        }),
        "2" => Ok(ExampleSpec {
            label: "2",
            state: w_state(),
            direction: NoiseDirection::XIsVisibility,
            example: ExampleId::Ex2,
            criteria: vec![CriterionId::Thm1],
            literature_ids: vec!["thm1", "ref38"],
        }),
        "3" => Ok(ExampleSpec {
            label: "3",
            state: gghz_state(3)?,
            direction: NoiseDirection::XIsNoise,
            example: ExampleId::Ex3,
            criteria: vec![CriterionId::Thm2, CriterionId::Ref29Bipartite],
            literature_ids: vec!["thm2", "ref29"],
        }),
        other => Err(CliError::input(format!(
            "unknown example '{other}' (expected 1, 2, 3, or fig1)"
        ))),
    }
}

fn direction_name(direction: NoiseDirection) -> &'static str {
    match direction {
        NoiseDirection::XIsNoise => "noise",
        NoiseDirection::XIsVisibility => "visibility",
    }
}

pub fn cmd_reproduce(example: &str, out_dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(out_dir)?;
    let spec = example_spec(example)?;
    let grid = linspace(0.0, 1.0, 101);
    let mut records = sweep(&spec.state, &grid, spec.direction)?;
    attach_literature(&mut records, spec.example, spec.direction);

    if example == "fig1" {
        // Just the data behind the comparison figure: x and the three
        // detection functionals.
        let mut csv = String::from("x,f1,f2,f3\n");
        for rec in &records {
            csv.push_str(&format!(
                "{},{},{},{}\n",
                io::fmt12(rec.x),
                io::fmt12(rec.comparisons.f1.unwrap_or(f64::NAN)),
                io::fmt12(rec.comparisons.f2.unwrap_or(f64::NAN)),
                io::fmt12(rec.comparisons.f3.unwrap_or(f64::NAN)),
            ));
        }
        let path = out_dir.join("fig1.csv");
        write_atomic(&path, csv.as_bytes())?;
        println!("wrote {}", path.display());
        return Ok(());
    }

    let sweep_path = out_dir.join(format!("example{}_sweep.csv", spec.label));
    write_atomic(&sweep_path, sweep_csv(&records).as_bytes())?;

    let mut points = Vec::new();
    for &criterion in &spec.criteria {
        for method in [SolverMethod::ClosedForm, SolverMethod::Bisection] {
            let p = critical_visibility(&spec.state, criterion, spec.direction, method)?;
            points.push(CriticalPointRecord {
                id: criterion.name().to_string(),
                x: sig12(p.x_star),
                method: match method {
                    SolverMethod::ClosedForm => "closed_form".into(),
                    SolverMethod::Bisection => "bisection".into(),
                },
                direction: direction_name(spec.direction).to_string(),
            });
        }
    }
    let lit = literature_comparisons::<f64>(spec.example);
    let mut constants = BTreeMap::new();
    for entry in &lit {
        if spec.literature_ids.contains(&entry.id) {
            if let Some(x) = entry.crossover_x {
                points.push(CriticalPointRecord {
                    id: entry.id.to_string(),
                    x: sig12(x),
                    method: "closed_form".into(),
                    direction: direction_name(spec.direction).to_string(),
                });
            }
            if let Some(c) = entry.constant {
                constants.insert(entry.id.to_string(), sig12(c));
            }
        }
    }
    let points_path = out_dir.join(format!("example{}_critical_points.json", spec.label));
    write_json(
        &points_path,
        &CriticalPointsReport {
            schema_version: SCHEMA_VERSION,
            tool_version: tool_version(),
            timestamp: io::timestamp(),
            example: spec.label.to_string(),
            points,
            constants,
        },
    )?;

    let table_path = out_dir.join(format!("example{}_comparison.csv", spec.label));
    write_atomic(&table_path, literature_csv(&lit).as_bytes())?;

    println!(
        "wrote {}, {}, {}",
        sweep_path.display(),
        points_path.display(),
        table_path.display()
    );
    Ok(())
}

pub fn cmd_scan(
    mode: &str,
    d: usize,
    samples: usize,
    seed: u64,
    state_spec: Option<&str>,
    out: Option<&Path>,
) -> CliResult<()> {
    let report = match mode {
        "bisep" => {
            let n_pure = samples;
            let n_mixed = (samples / 10).max(1);
            let scan = biseparable_bound_scan::<f64>(d, n_pure, n_mixed, seed)?;
            println!(
                "biseparable scan d={d}: max pure norm {:.9} (by partition {:?}), \
                 max mixed norm {:.9}, threshold {:.9} -> {}",
                scan.max_pure_norm,
                scan.max_pure_by_partition.map(sig12),
                scan.max_mixed_norm,
                scan.threshold,
                if scan.pass { "pass" } else { "FAIL" }
            );
            ScanReport {
                schema_version: SCHEMA_VERSION,
                tool_version: tool_version(),
                timestamp: io::timestamp(),
                mode: "bisep".into(),
                d,
                samples,
                seed,
                state: None,
                threshold: Some(sig12(scan.threshold)),
                max_pure_norm: Some(sig12(scan.max_pure_norm)),
                max_pure_by_partition: Some(scan.max_pure_by_partition.map(sig12)),
                max_mixed_norm: Some(sig12(scan.max_mixed_norm)),
                max_norm_deviation: None,
                pass: scan.pass,
            }
        }
        "lu" => {
            let default_spec;
            let spec = match state_spec {
                Some(s) => s,
                None => {
                    default_spec = if d == 2 {
                        "builtin:ghz".to_string()
                    } else {
                        format!("builtin:gghz:{d}")
                    };
                    &default_spec
                }
            };
            let (rho, input) = load_state(spec)?;
            if rho.d() != d {
                return Err(CliError::input(format!(
                    "state has d = {}, but --d {d} was given",
                    rho.d()
                )));
            }
            let deviation = lu_invariance_scan(&rho, samples, seed)?;
            let pass = deviation <= 1e-8;
            println!(
                "lu scan on {} ({} trials): max |Δ‖T‖| = {:.3e} -> {}",
                input.name.as_deref().unwrap_or(spec),
                samples,
                deviation,
                if pass { "pass" } else { "FAIL" }
            );
            ScanReport {
                schema_version: SCHEMA_VERSION,
                tool_version: tool_version(),
                timestamp: io::timestamp(),
                mode: "lu".into(),
                d,
                samples,
                seed,
                state: Some(input.source),
                threshold: None,
                max_pure_norm: None,
                max_pure_by_partition: None,
                max_mixed_norm: None,
                max_norm_deviation: Some(sig12(deviation)),
                pass,
            }
        }
        other => {
            return Err(CliError::input(format!(
                "unknown scan mode '{other}' (expected bisep or lu)"
            )))
        }
    };
    if let Some(path) = out {
        write_json(path, &report)?;
    }
    Ok(())
}

pub fn cmd_basis(d: usize, convention: Convention, out: Option<&Path>) -> CliResult<()> {
    let basis = build_basis::<f64>(d, convention)?;
    let report = basis_report(&basis);
    match out {
        Some(path) => write_json(path, &report)?,
        None => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(())
}

pub fn cmd_tensor(state_spec: &str, restricted: bool, out: &Path) -> CliResult<()> {
    let (rho, _) = load_state(state_spec)?;
    let basis = build_basis::<f64>(rho.d(), Convention::PaperScaled)?;
    let cm = if restricted {
        restricted_correlation_matrix(&rho, &basis)?
    } else {
        full_correlation_matrix(&rho, &basis)?
    };
    write_atomic(out, tensor_csv(&cm).as_bytes())?;
    println!(
        "wrote {}x{} tensor to {}",
        cm.data().nrows(),
        cm.data().ncols(),
        out.display()
    );
    Ok(())
}
