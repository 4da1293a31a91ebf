use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use serde::Deserialize;
use serde_json::{json, Value};

use equipart::coloring::{exact_acyclic_coloring, exact_proper_coloring, validate_coloring, Coloring, ColoringOutcome};
use equipart::generators::exhaustive::planar_graphs_up_to_iso;
use equipart::generators::{gen_planar, GenKind, GenSpec};
use equipart::graph::parse_graph6_lines;
use equipart::setmerge::{equitable_merge, proposition_merge, MergeInput};
use equipart::verify::{check_partition, PartConstraint, PartitionSpec};
use equipart::{parse_graph, Graph, GraphFormat, VertexSet};

use crate::presets::{self, Algorithm, Precondition};
use crate::GraphInput;

pub const USAGE: u8 = 1;
pub const PRECONDITION: u8 = 2;
pub const VERIFICATION: u8 = 3;

/// A non-zero exit: a message for stderr and optional JSON for stdout.
pub struct Failure {
    code: u8,
    message: String,
    json: Option<Value>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: USAGE,
            message: message.into(),
            json: None,
        }
    }

    pub fn report(self) -> ExitCode {
        if let Some(json) = self.json {
            print_json(&json);
        }
        eprintln!("equipart: {}", self.message);
        ExitCode::from(self.code)
    }
}

impl From<Precondition> for Failure {
    fn from(p: Precondition) -> Self {
        let code = if p.kind == "internal" {
            VERIFICATION
        } else {
            PRECONDITION
        };
        Failure {
            code,
            message: p.message.clone(),
            json: Some(p.to_json()),
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn print_json(value: &Value) {
    let mut out = io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = writeln!(out, "{}", serde_json::to_string(value).expect("JSON values serialize"));
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::usage(format!("reading stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("reading {}: {e}", path.display())))
}

fn read_graph(input: &GraphInput) -> Result<Graph, Failure> {
    let text = read_text(&input.input)?;
    let format = input.format.unwrap_or_else(|| GraphFormat::detect(&text));
    parse_graph(&text, format).map_err(|e| Failure::usage(format!("{}: {e}", input.input.display())))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Classes given either bare or wrapped in an object.
#[derive(Deserialize)]
#[serde(untagged)]
enum SetList {
    Bare(Vec<VertexSet>),
    Coloring { classes: Vec<VertexSet> },
    Partition { parts: Vec<VertexSet> },
}

impl SetList {
    fn into_sets(self) -> Vec<VertexSet> {
        match self {
            SetList::Bare(s) | SetList::Coloring { classes: s } | SetList::Partition { parts: s } => s,
        }
    }
}

pub fn partition(
    alg: Algorithm,
    input: &GraphInput,
    coloring: Option<&Path>,
    budget: u64,
    full_trace: bool,
) -> CmdResult {
    let g = read_graph(input)?;
    let classes = coloring
        .map(|p| read_json::<SetList>(p).map(SetList::into_sets))
        .transpose()?;
    let req = presets::Request {
        coloring: classes.as_deref(),
        budget,
        full_trace,
    };
    let outcome = presets::run(alg, &g, &req)?;
    let mut out = json!({
        "algorithm": alg.name(),
        "n": g.n(),
        "m": g.m(),
        "sizes": outcome.parts.iter().map(VertexSet::len).collect::<Vec<_>>(),
        "verification": outcome.report,
    });
    if let (Value::Object(out), Value::Object(extra)) = (&mut out, outcome.output) {
        out.extend(extra);
    }
    if outcome.report.passed() {
        print_json(&out);
        Ok(ExitCode::SUCCESS)
    } else {
        Err(Failure {
            code: VERIFICATION,
            message: "output failed verification".into(),
            json: Some(out),
        })
    }
}

fn parse_classes(source: &str) -> Result<Vec<VertexSet>, Failure> {
    let Some(list) = source.strip_prefix("sizes:") else {
        return read_json::<SetList>(Path::new(source)).map(SetList::into_sets);
    };
    let mut next = 0;
    list.split(',')
        .map(|s| {
            let size: usize = s
                .trim()
                .parse()
                .map_err(|_| Failure::usage(format!("bad class size {s:?} in {source:?}")))?;
            let class = (next..next + size).collect();
            next += size;
            Ok(class)
        })
        .collect()
}

pub fn merge(source: &str, ell: Option<usize>, equitable: bool) -> CmdResult {
    let classes = parse_classes(source)?;
    let result = match ell {
        Some(ell) if !equitable => proposition_merge(&MergeInput { classes, ell }),
        _ => equitable_merge(&classes),
    };
    match result {
        Ok(r) => {
            print_json(&serde_json::to_value(r).expect("merge results serialize"));
            Ok(ExitCode::SUCCESS)
        }
        Err(e @ equipart::Error::OverlappingSets { .. }) => Err(Failure {
            code: PRECONDITION,
            message: e.to_string(),
            json: Some(json!({ "error": "overlapping_sets", "message": e.to_string() })),
        }),
        Err(e) => Err(Failure::usage(e.to_string())),
    }
}

pub fn verify(
    input: &GraphInput,
    partition: &Path,
    parts: Option<usize>,
    constraints: &[String],
    equitable: bool,
) -> CmdResult {
    let g = read_graph(input)?;
    let sets = read_json::<SetList>(partition)?.into_sets();
    let constraints = constraints
        .iter()
        .map(|c| c.parse::<PartConstraint>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::usage(e.to_string()))?;
    let parts = parts.unwrap_or(sets.len());
    if constraints.len() != 1 && constraints.len() != parts {
        return Err(Failure::usage(format!(
            "{} constraints given for {parts} parts; give one, or one per part",
            constraints.len()
        )));
    }
    let spec = PartitionSpec {
        parts,
        constraints,
        equitable,
    };
    let report = check_partition(&g, &sets, &spec);
    print_json(&serde_json::to_value(&report).expect("reports serialize"));
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(VERIFICATION)
    })
}

pub fn color(input: &GraphInput, k: usize, acyclic: bool, budget: u64) -> CmdResult {
    let g = read_graph(input)?;
    let outcome = if acyclic {
        exact_acyclic_coloring(&g, k, budget)
    } else {
        exact_proper_coloring(&g, k, budget)
    };
    let kind = if acyclic { "acyclic" } else { "proper" };
    match outcome {
        ColoringOutcome::Found(c) => {
            debug_assert!(validate_coloring(&g, &c).passed());
            print_json(&serde_json::to_value::<&Coloring>(&c).expect("colorings serialize"));
            Ok(ExitCode::SUCCESS)
        }
        ColoringOutcome::NoColoring => Err(Failure {
            code: PRECONDITION,
            message: format!("no {kind} {k}-coloring exists"),
            json: Some(json!({ "outcome": "none" })),
        }),
        ColoringOutcome::BudgetExhausted => Err(Failure {
            code: PRECONDITION,
            message: format!("search budget of {budget} nodes exhausted"),
            json: Some(json!({ "outcome": "budget_exhausted" })),
        }),
    }
}

pub struct GenRequest {
    pub kind: String,
    pub n: usize,
    pub flips: usize,
    pub edges: Option<usize>,
    pub seed: u64,
    pub count: u64,
    pub format: GraphFormat,
}

fn render(g: &Graph, format: GraphFormat) -> Result<String, Failure> {
    match format {
        GraphFormat::Graph6 => g
            .to_graph6()
            .map(|s| s + "\n")
            .map_err(|e| Failure::usage(e.to_string())),
        GraphFormat::EdgeList => Ok(g.to_edge_list()),
    }
}

pub fn generate(req: &GenRequest, output: Option<&Path>, out_dir: Option<&Path>) -> CmdResult {
    let graphs: Vec<Graph> = if req.kind == "exhaustive-planar" || req.kind == "exhaustive_planar" {
        if req.n > 9 {
            return Err(Failure::usage("exhaustive-planar supports n <= 9"));
        }
        planar_graphs_up_to_iso(req.n).pop().unwrap_or_default()
    } else {
        let kind: GenKind = req
            .kind
            .parse()
            .map_err(|e: equipart::Error| Failure::usage(e.to_string()))?;
        (0..req.count)
            .map(|i| {
                let spec = GenSpec {
                    kind,
                    n: req.n,
                    flips: req.flips,
                    edges: req.edges,
                    seed: req.seed.wrapping_add(i),
                };
                gen_planar(&spec).map_err(|e| Failure::usage(e.to_string()))
            })
            .collect::<Result<_, _>>()?
    };
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("creating {}: {e}", dir.display())))?;
        let ext = if req.format == GraphFormat::Graph6 { "g6" } else { "txt" };
        for (i, g) in graphs.iter().enumerate() {
            let path = dir.join(format!("{}_n{}_{i:05}.{ext}", req.kind.replace('-', "_"), req.n));
            write_file(&path, &render(g, req.format)?)?;
        }
        return Ok(ExitCode::SUCCESS);
    }
    let mut text = String::new();
    for g in &graphs {
        if req.format == GraphFormat::EdgeList && !text.is_empty() {
            return Err(Failure::usage(
                "edge-list output holds one graph; use --out-dir for several",
            ));
        }
        text.push_str(&render(g, req.format)?);
    }
    match output {
        Some(path) => write_file(path, &text)?,
        None => {
            let _ = io::stdout().lock().write_all(text.as_bytes());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("writing {}: {e}", path.display())))
}

/// Graph files in `dir` (not recursive), sorted by name.
fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::usage(format!("reading {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    Ok(files)
}

fn corpus_graphs(path: &Path) -> Result<Vec<Graph>, String> {
    let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
    match GraphFormat::detect(&text) {
        GraphFormat::Graph6 => parse_graph6_lines(&text),
        GraphFormat::EdgeList => parse_graph(&text, GraphFormat::EdgeList).map(|g| vec![g]),
    }
    .map_err(|e| e.to_string())
}

pub fn bench(corpus: &Path, alg: Algorithm, budget: u64) -> CmdResult {
    let mut graphs = 0usize;
    let mut passed = 0usize;
    let mut preconditions = 0usize;
    let mut verification_failures = 0usize;
    let mut unreadable = Vec::new();
    let mut repairs = 0usize;
    let mut max_repairs = 0usize;
    let mut total_ms = 0f64;
    let mut max_ms = 0f64;
    let req = presets::Request {
        coloring: None,
        budget,
        full_trace: false,
    };
    for path in corpus_files(corpus)? {
        let list = match corpus_graphs(&path) {
            Ok(list) => list,
            Err(e) => {
                unreadable.push(json!({ "file": path.display().to_string(), "error": e }));
                continue;
            }
        };
        for g in list {
            graphs += 1;
            let start = Instant::now();
            let result = presets::run(alg, &g, &req);
            let ms = start.elapsed().as_secs_f64() * 1e3;
            total_ms += ms;
            max_ms = max_ms.max(ms);
            match result {
                Ok(o) if o.report.passed() => {
                    passed += 1;
                    repairs += o.repairs;
                    max_repairs = max_repairs.max(o.repairs);
                }
                Ok(_) => verification_failures += 1,
                Err(_) => preconditions += 1,
            }
        }
    }
    let rate = |k: usize| if graphs == 0 { 0.0 } else { k as f64 / graphs as f64 };
    print_json(&json!({
        "algorithm": alg.name(),
        "corpus": corpus.display().to_string(),
        "graphs": graphs,
        "passed": passed,
        "pass_rate": rate(passed),
        "precondition_failures": preconditions,
        "verification_failures": verification_failures,
        "unreadable_files": unreadable,
        "repairs": { "total": repairs, "max": max_repairs, "mean": if passed == 0 { 0.0 } else { repairs as f64 / passed as f64 } },
        "time_ms": { "total": total_ms, "max": max_ms, "mean": if graphs == 0 { 0.0 } else { total_ms / graphs as f64 } },
    }));
    Ok(if verification_failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(VERIFICATION)
    })
}
