//! Batch front end behind the `shockgraph` binary.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::Parser;
use serde::Serialize;

use crate::contour::{read_scene, simplify_polyline, Scene};
use crate::error::{Error, Result};
use crate::export::{to_graphml, to_sgtext, to_svg, write_atomic, ExportedGraph, Format, SvgOptions};
use crate::pipeline::{bench, loglog_slope, run_scene, Report, RunConfig};
use crate::regularize::{DEFAULT_BBOX_SCALE, DEFAULT_LAMBDA};

/// Default polyline simplification tolerance in pixels.
pub const DEFAULT_EPSILON: f64 = 0.8;

/// Compute regularized shock graphs of contour scenes.
///
/// Inputs are scene files (`scene` text, JSON, or P1/P4 bitmaps) or
/// directories of them. One JSON record per scene is printed to stdout.
#[derive(Debug, Clone, Parser)]
#[command(name = "shockgraph", version)]
pub struct Cli {
    /// Scene files or directories.
    #[arg(required_unless_present = "bench")]
    pub inputs: Vec<PathBuf>,

    /// Output directory.
    #[arg(short, long, default_value = ".")]
    pub out: PathBuf,

    /// Regularization threshold; 0 keeps every branch.
    #[arg(long, default_value_t = DEFAULT_LAMBDA, value_parser = non_negative)]
    pub lambda: f64,

    /// Bounding box size relative to the image.
    #[arg(long, default_value_t = DEFAULT_BBOX_SCALE, value_parser = above_one)]
    pub bbox_scale: f64,

    /// Polyline simplification tolerance in pixels; 0 keeps every vertex.
    #[arg(long, default_value_t = DEFAULT_EPSILON, value_parser = non_negative)]
    pub epsilon: f64,

    /// Output formats.
    #[arg(long, value_delimiter = ',', default_values = ["sgtext", "svg"], value_parser = parse_format)]
    pub format: Vec<Format>,

    /// Remove links generated by the bounding box after pruning.
    #[arg(long)]
    pub drop_box_links: bool,

    /// Draw pruned links in gray in SVG output.
    #[arg(long)]
    pub show_pruned: bool,

    /// Scenes processed concurrently.
    #[arg(short, long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,

    /// Benchmark random scenes of these element counts instead of reading inputs.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub bench: Option<Vec<usize>>,

    /// Seed for `--bench` scenes.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn non_negative(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("{s} is not a finite number >= 0")),
    }
}

fn above_one(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 1.0 && v.is_finite() => Ok(v),
        _ => Err(format!("{s} is not a finite number > 1")),
    }
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit status classes; the first failing scene in input order decides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Failure {
    /// Unreadable or malformed input.
    Parse = 2,
    /// Output could not be written.
    Write = 3,
    /// Event budget exhausted.
    Budget = 4,
    Other = 5,
}

impl Failure {
    fn of(stage: Stage, e: &Error) -> Self {
        match (stage, e) {
            (Stage::Write, _) => Failure::Write,
            (_, Error::EventBudget { .. }) => Failure::Budget,
            (Stage::Read, Error::Parse { .. } | Error::Io { .. }) => Failure::Parse,
            _ => Failure::Other,
        }
    }

    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stage {
    Read,
    Run,
    Write,
}

/// One record per scene.
#[derive(Debug, Clone, Serialize)]
pub struct SceneRecord {
    pub scene: PathBuf,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<PathBuf>>,
    #[serde(skip_serializing_if = "Option::is_none", flatten)]
    pub report: Option<Report>,
    pub seconds: f64,
}

/// Directories expand to their `.scene`, `.json` and `.pbm` files, sorted.
pub fn expand_inputs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in inputs {
        if p.is_dir() {
            let mut files: Vec<PathBuf> = std::fs::read_dir(p)
                .map_err(|e| Error::io(p.clone(), e))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| {
                    f.is_file()
                        && f.extension()
                            .and_then(|e| e.to_str())
                            .is_some_and(|e| matches!(e.to_ascii_lowercase().as_str(), "scene" | "json" | "pbm"))
                })
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

impl Cli {
    pub fn run_config(&self) -> RunConfig {
        RunConfig {
            lambda: self.lambda,
            bbox_scale: Some(self.bbox_scale),
            drop_box_links: self.drop_box_links,
            event_budget: None,
        }
    }

    /// Reads, simplifies, runs and exports one scene.
    pub fn process(&self, path: &Path) -> SceneRecord {
        let t = Instant::now();
        let mut record = SceneRecord {
            scene: path.to_path_buf(),
            ok: false,
            failure: None,
            error: None,
            outputs: None,
            report: None,
            seconds: 0.0,
        };
        match self.process_inner(path) {
            Ok((report, outputs)) => {
                record.ok = true;
                record.report = Some(report);
                record.outputs = Some(outputs);
            }
            Err((stage, e)) => {
                record.failure = Some(Failure::of(stage, &e));
                record.error = Some(e.to_string());
            }
        }
        record.seconds = t.elapsed().as_secs_f64();
        record
    }

    fn process_inner(&self, path: &Path) -> std::result::Result<(Report, Vec<PathBuf>), (Stage, Error)> {
        let read = |e| (Stage::Read, e);
        let scene = read_scene(path).map_err(read)?;
        let scene = simplify_scene(&scene, self.epsilon).map_err(read)?;
        let out = run_scene(&scene, &self.run_config()).map_err(|e| (Stage::Run, e))?;
        let stem = path
            .file_stem()
            .map_or_else(|| "scene".into(), |s| s.to_string_lossy().into_owned());
        let mut written = Vec::new();
        let exported = if self.format.iter().any(|f| *f != Format::Svg) {
            Some(
                ExportedGraph::from_graph(&out.graph, self.lambda, Some(self.bbox_scale))
                    .map_err(|e| (Stage::Run, e))?,
            )
        } else {
            None
        };
        for &f in &self.format {
            let text = match (f, &exported) {
                (Format::Sgtext, Some(x)) => to_sgtext(x),
                (Format::Graphml, Some(x)) => to_graphml(x),
                _ => to_svg(
                    &out.graph,
                    &SvgOptions {
                        show_pruned: self.show_pruned,
                        show_box: true,
                    },
                ),
            };
            let target = self.out.join(format!("{stem}.{}", f.extension()));
            write_atomic(&target, text.as_bytes()).map_err(|e| (Stage::Write, e))?;
            written.push(target);
        }
        Ok((out.report(), written))
    }
}

/// Simplifies every fragment with tolerance `epsilon`.
pub fn simplify_scene(scene: &Scene, epsilon: f64) -> Result<Scene> {
    let fragments = scene
        .fragments
        .iter()
        .map(|f| simplify_polyline(f, epsilon))
        .collect::<Result<Vec<_>>>()?;
    Ok(Scene::new(scene.width, scene.height, fragments))
}

/// Processes `paths` on `jobs` worker threads; records keep input order.
pub fn process_all(cli: &Cli, paths: &[PathBuf]) -> Vec<SceneRecord> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<SceneRecord>>> = Mutex::new(vec![None; paths.len()]);
    let workers = (cli.jobs as usize).clamp(1, paths.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(p) = paths.get(i) else { break };
                let r = cli.process(p);
                slots.lock().unwrap_or_else(|e| e.into_inner())[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .unwrap_or_else(|e| e.into_inner())
        .into_iter()
        .flatten()
        .collect()
}

fn run_bench(cli: &Cli, sizes: &[usize]) -> ExitCode {
    let rows = match bench(sizes, cli.seed, &cli.run_config()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("shockgraph: bench failed: {e}");
            let stage = Stage::Run;
            return ExitCode::from(Failure::of(stage, &e).code());
        }
    };
    println!("{:>8} {:>9} {:>12} {:>10}", "N", "elements", "seconds", "events");
    for r in &rows {
        println!("{:>8} {:>9} {:>12.6} {:>10}", r.n, r.elements, r.seconds, r.events);
    }
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.elements as f64, r.seconds)).collect();
    match loglog_slope(&pts) {
        Some(s) => println!("slope {s:.3}"),
        None => println!("slope n/a"),
    }
    ExitCode::SUCCESS
}

/// Runs the command line; the return value is the process exit status.
pub fn main_with(cli: Cli) -> ExitCode {
    if let Some(sizes) = cli.bench.as_deref() {
        return run_bench(&cli, sizes);
    }
    if let Err(e) = std::fs::create_dir_all(&cli.out) {
        eprintln!("shockgraph: cannot create {}: {e}", cli.out.display());
        return ExitCode::from(Failure::Write.code());
    }
    let paths = match expand_inputs(&cli.inputs) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("shockgraph: {e}");
            return ExitCode::from(Failure::Parse.code());
        }
    };
    let records = process_all(&cli, &paths);
    for r in &records {
        match serde_json::to_string(r) {
            Ok(line) => println!("{line}"),
            Err(e) => eprintln!("shockgraph: cannot encode report: {e}"),
        }
    }
    eprintln!(
        "{:<32} {:>7} {:>6} {:>6} {:>9}",
        "scene", "N", "nodes", "links", "seconds"
    );
    for r in &records {
        let name = r.scene.display().to_string();
        match &r.report {
            Some(rep) => eprintln!(
                "{name:<32} {:>7} {:>6} {:>6} {:>9.3}",
                rep.elements, rep.nodes, rep.links, r.seconds
            ),
            None => eprintln!("{name:<32} failed: {}", r.error.as_deref().unwrap_or("")),
        }
    }
    match records.iter().find_map(|r| r.failure) {
        Some(f) => ExitCode::from(f.code()),
        None => ExitCode::SUCCESS,
    }
}
