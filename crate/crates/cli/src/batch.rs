//! Running many forms and summarising the outcome.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use venkov_core::pipeline::{run_pipeline, PipelineOptions};

use crate::form_file::{load_form, FormFile, LoadError};
use crate::report::{ReportDocument, Status, Timings};

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub pipeline: PipelineOptions,
    pub timings: bool,
}

/// Runs the pipeline on one parsed form. Panics inside the pipeline are
/// reported as assertion errors rather than taking the batch down.
pub fn run_form(id: &str, file: &FormFile, options: &RunOptions) -> ReportDocument {
    let pyramid_tc = options.pipeline.pyramid_tc;
    let mut timings = BTreeMap::new();
    let mut last = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| {
        run_pipeline(&file.form, &options.pipeline, |stage| {
            let now = Instant::now();
            timings.insert(stage.name().to_owned(), (now - last).as_secs_f64() * 1e3);
            last = now;
        })
    }));
    let mut report = match result {
        Ok(Ok(out)) => ReportDocument::from_output(id, &file.form, &out, pyramid_tc),
        Ok(Err(e)) => ReportDocument::from_stage_error(id, &file.form, &e, pyramid_tc),
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| (*s).to_owned())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_owned());
            let mut r = ReportDocument::from_input_error(id, format!("internal panic: {message}"), pyramid_tc);
            r.status = Status::AssertionError;
            if let Some(e) = &mut r.error {
                e.stage = "internal".to_owned();
            }
            r
        }
    };
    if options.timings {
        report.timings = Some(Timings(timings));
    }
    report
}

/// Loads and runs one form file.
pub fn run_file(id: &str, path: &Path, options: &RunOptions) -> ReportDocument {
    match load_form(path) {
        Ok(file) => run_form(id, &file, options),
        Err(e) => {
            let message = match &e {
                LoadError::Io { source, .. } => source.to_string(),
                LoadError::Form { source, .. } => source.to_string(),
            };
            ReportDocument::from_input_error(id, message, options.pipeline.pyramid_tc)
        }
    }
}

/// The form files named by `input`: every `*.form` file of a directory, or
/// the paths listed one per line in a list file (relative paths resolve
/// against the list file's directory; `#` starts a comment).
pub fn collect_inputs(input: &Path) -> std::io::Result<Vec<PathBuf>> {
    if input.is_dir() {
        let mut out = Vec::new();
        for entry in std::fs::read_dir(input)? {
            let path = entry?.path();
            if path.is_file() && path.extension().is_some_and(|e| e == "form") {
                out.push(path);
            }
        }
        out.sort();
        return Ok(out);
    }
    let text = std::fs::read_to_string(input)?;
    let base = input.parent().unwrap_or(Path::new("."));
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| base.join(l))
        .collect())
}

pub fn form_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Tally {
    #[serde(rename = "true")]
    pub yes: usize,
    #[serde(rename = "false")]
    pub no: usize,
    pub not_applicable: usize,
}

impl Tally {
    fn add(&mut self, v: Option<bool>) {
        match v {
            Some(true) => self.yes += 1,
            Some(false) => self.no += 1,
            None => self.not_applicable += 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StatusCounts {
    pub pass: usize,
    pub fail: usize,
    pub input_error: usize,
    pub assertion_error: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckTallies {
    pub h1_trivial: Tally,
    pub ggm_holds: Tally,
    pub skeleton_match: Tally,
    pub triangle_span: Tally,
    pub ordine3_irreducible: Tally,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FormEntry {
    pub form_id: String,
    pub source: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub message: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Summary {
    pub total: usize,
    pub status: StatusCounts,
    pub checks: CheckTallies,
    pub golden_mismatches: Vec<String>,
    pub forms: Vec<FormEntry>,
    pub exit_code: i32,
}

#[derive(Clone, Debug, Default)]
pub struct BatchOptions {
    pub run: RunOptions,
    /// Worker threads; 0 lets the thread pool decide.
    pub jobs: usize,
    pub golden: Option<PathBuf>,
}

/// The report line used for golden comparisons: timings never take part.
fn comparable(report: &ReportDocument) -> String {
    let mut r = report.clone();
    r.timings = None;
    r.to_line()
}

/// Runs every input, writes `<id>.report.json` files and `summary.json` into
/// `out_dir`, and returns the summary. Output does not depend on `jobs`.
pub fn run_batch(inputs: &[PathBuf], out_dir: &Path, options: &BatchOptions) -> std::io::Result<Summary> {
    std::fs::create_dir_all(out_dir)?;

    let mut ids = Vec::with_capacity(inputs.len());
    let mut seen = BTreeSet::new();
    for path in inputs {
        let id = form_id(path);
        let duplicate = !seen.insert(id.clone());
        ids.push((id, duplicate));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .map_err(std::io::Error::other)?;
    let reports: Vec<ReportDocument> = pool.install(|| {
        inputs
            .par_iter()
            .zip(&ids)
            .map(|(path, (id, duplicate))| {
                if *duplicate {
                    ReportDocument::from_input_error(
                        id,
                        format!("duplicate form id {id:?}"),
                        options.run.pipeline.pyramid_tc,
                    )
                } else {
                    run_file(id, path, &options.run)
                }
            })
            .collect()
    });

    let mut summary = Summary {
        total: reports.len(),
        ..Default::default()
    };
    let mut worst = Status::Pass;
    for ((report, path), (_, duplicate)) in reports.iter().zip(inputs).zip(&ids) {
        if !duplicate {
            std::fs::write(out_dir.join(format!("{}.report.json", report.form_id)), report.to_line())?;
        }
        match report.status {
            Status::Pass => summary.status.pass += 1,
            Status::Fail => summary.status.fail += 1,
            Status::InputError => summary.status.input_error += 1,
            Status::AssertionError => summary.status.assertion_error += 1,
        }
        let c = &mut summary.checks;
        c.h1_trivial.add(report.venkov.as_ref().map(|v| v.h1_trivial));
        c.ggm_holds.add(report.graph.as_ref().map(|g| g.ggm_holds));
        c.skeleton_match.add(report.skeleton_match);
        c.triangle_span.add(report.triangle_span);
        c.ordine3_irreducible.add(report.ordine3_irreducible);
        if let Some(golden) = &options.golden {
            let expected = std::fs::read_to_string(golden.join(format!("{}.report.json", report.form_id)));
            if expected.ok().as_deref() != Some(comparable(report).as_str()) {
                summary.golden_mismatches.push(report.form_id.clone());
                worst = worst.max(Status::Fail);
            }
        }
        worst = worst.max(report.status);
        summary.forms.push(FormEntry {
            form_id: report.form_id.clone(),
            source: path.display().to_string(),
            status: report.status,
            message: report.error.as_ref().map(|e| e.message.clone()),
        });
    }
    summary.exit_code = worst.exit_code();
    let mut text = serde_json::to_string_pretty(&summary).map_err(std::io::Error::other)?;
    text.push('\n');
    std::fs::write(out_dir.join("summary.json"), text)?;
    Ok(summary)
}
