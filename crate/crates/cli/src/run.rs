//! Command implementations shared by the binary and the test suites.

use std::fs;
use std::path::{Path, PathBuf};

use eigenfilter::analysis::{
    band_metrics, beam_eval_grid, beam_metrics, beam_pattern, beam_response_at, filter_eval_grid,
    filter_response, filter_response_at, MetricsReport, ResponseGrid,
};
use eigenfilter::{design_beamformer, design_filter, DesignResult, Mode};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::output::{
    response_csv, summary_csv, weights_json, write_atomic, MetricsRecord, WeightsFile,
};
use crate::presets;
use crate::spec::{anchor, parse_spec_scaled, DesignSpec, Problem};

/// One solved design together with its evaluation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub result: DesignResult,
    pub response: ResponseGrid,
    pub metrics: MetricsReport,
    pub record: MetricsRecord,
}

/// Response on the evaluation grid, metrics, and the reference-point error.
pub fn evaluate(problem: &Problem, w: &[f64]) -> Result<(ResponseGrid, MetricsReport, f64)> {
    if w.len() != problem.dim() {
        return Err(CliError::validation(
            "weights",
            format!("expected {} coefficients, got {}", problem.dim(), w.len()),
        ));
    }
    Ok(match problem {
        Problem::Filter(p) => {
            let r = filter_response(w, &filter_eval_grid(p));
            let m = band_metrics(&r, p)?;
            let err = (filter_response_at(w, p.omega_r()) - p.desired(p.omega_r())).norm();
            (r, MetricsReport::Filter(m), err)
        }
        Problem::Beam(p) => {
            let (freqs, angles) = beam_eval_grid(p);
            let r = beam_pattern(w, &freqs, &angles, p.array())?;
            let m = beam_metrics(&r, p)?;
            let at_ref = beam_response_at(w, p.omega_r(), p.theta_r(), p.array())?;
            let err = (at_ref - p.desired(p.omega_r())).norm();
            (r, MetricsReport::Beam(m), err)
        }
    })
}

pub fn design(problem: &Problem, mode: Mode) -> Result<Outcome> {
    let result = match problem {
        Problem::Filter(p) => design_filter(p, mode)?,
        Problem::Beam(p) => design_beamformer(p, mode)?,
    };
    let (response, metrics, err) = evaluate(problem, &result.weights)?;
    let record = MetricsRecord::new(&metrics, &WeightsFile::from(&result), err);
    Ok(Outcome {
        result,
        response,
        metrics,
        record,
    })
}

fn write_outcome(dir: &Path, o: &Outcome) -> Result<()> {
    write_atomic(
        &dir.join("weights.json"),
        weights_json(&WeightsFile::from(&o.result)).as_bytes(),
    )?;
    write_atomic(&dir.join("response.csv"), &response_csv(&o.response)?)?;
    write_atomic(
        &dir.join("metrics.json"),
        (o.record.to_json() + "\n").as_bytes(),
    )
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// `design`: solves every requested mode of one document and writes
/// `<out>/<mode>/{weights.json,response.csv,metrics.json}`.
pub fn design_command(
    spec_path: &Path,
    out: Option<&Path>,
    grid_scale: usize,
) -> Result<Vec<Outcome>> {
    let text = read(spec_path)?;
    let (spec, problem) = parse_spec_scaled(&text, grid_scale)?;
    let out = match (out, spec.out()) {
        (Some(o), _) => o.to_path_buf(),
        (None, Some(o)) => PathBuf::from(o),
        (None, None) => {
            return Err(anchor(
                CliError::validation("out", "no output directory given (use --out or \"out\")"),
                &text,
            ))
        }
    };
    let outcomes: Vec<Outcome> = spec
        .mode()
        .modes()
        .iter()
        .map(|&m| design(&problem, m))
        .collect::<Result<_>>()?;
    for o in &outcomes {
        write_outcome(&out.join(o.result.method.as_str()), o)?;
    }
    Ok(outcomes)
}

/// `repro`: runs presets in both modes, concurrently across jobs.
///
/// Writes `<out>/<preset>/spec.json`, `<out>/<preset>/<mode>/...` and
/// `<out>/summary.csv`. Failed jobs are left out of the summary and the
/// first failure is returned after everything else is written.
pub fn repro_command(target: &str, out: &Path, grid_scale: usize) -> Result<Vec<MetricsRecord>> {
    let names: Vec<&str> = if target == "all" {
        presets::NAMES.to_vec()
    } else if presets::find(target).is_some() {
        vec![target]
    } else {
        return Err(CliError::validation(
            "preset",
            format!(
                "unknown preset {target:?}; expected one of {} or all",
                presets::NAMES.join(", ")
            ),
        ));
    };
    let jobs: Vec<(&str, Mode)> = names
        .iter()
        .flat_map(|&n| Mode::ALL.iter().map(move |&m| (n, m)))
        .collect();

    let results: Vec<Result<MetricsRecord>> = jobs
        .par_iter()
        .map(|&(name, mode)| {
            let preset = presets::find(name).expect("known preset");
            let problem = preset.spec.to_problem(grid_scale)?;
            let dir = out.join(name);
            if mode == Mode::ALL[0] {
                write_atomic(
                    &dir.join("spec.json"),
                    (preset.spec.to_json() + "\n").as_bytes(),
                )?;
            }
            let outcome = design(&problem, mode)?;
            write_outcome(&dir.join(mode.as_str()), &outcome)?;
            let mut record = outcome.record;
            record.preset = Some(name.to_string());
            Ok(record)
        })
        .collect();

    let mut rows = Vec::new();
    let mut first_err = None;
    for r in results {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    write_atomic(&out.join("summary.csv"), &summary_csv(&rows)?)?;
    match first_err {
        Some(e) => Err(e),
        None => Ok(rows),
    }
}

/// `eval`: recomputes metrics for stored weights against a document.
pub fn eval_command(
    weights_path: &Path,
    spec_path: &Path,
    grid_scale: usize,
) -> Result<MetricsRecord> {
    let text = read(spec_path)?;
    let (_, problem) = parse_spec_scaled(&text, grid_scale)?;
    let weights = parse_weights(&read(weights_path)?)?;
    let (_, metrics, err) = evaluate(&problem, &weights.weights)?;
    Ok(MetricsRecord::new(&metrics, &weights, err))
}

pub fn parse_weights(text: &str) -> Result<WeightsFile> {
    let w: WeightsFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        message: e.to_string(),
        line: e.line(),
        column: e.column(),
    })?;
    if w.weights.iter().any(|x| !x.is_finite()) {
        return Err(CliError::validation("weights", "non-finite coefficient"));
    }
    Ok(w)
}

/// Parses a design document from text, for callers that hold it in memory.
pub fn load_spec(text: &str, grid_scale: usize) -> Result<(DesignSpec, Problem)> {
    parse_spec_scaled(text, grid_scale)
}
