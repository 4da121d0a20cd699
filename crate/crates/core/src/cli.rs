//! Command-line front end. Exit codes: 0 success, 1 runtime failure,
//! 2 invalid arguments, 3 refused by a size guard.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::census::{self, CensusResult};
use crate::characters::{self, MaxGenusSummary};
use crate::exact;
use crate::gluing::{self, FatGraph, Pairing, SurfaceSummary};
use crate::report::{self, Format, Report, Table};
use crate::stats::{self, CensusOptions, GenusFilter};
use crate::words::{WordClass, WordMultiset};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "randsurf", version, about = "Random surfaces glued from triangles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw (or load) one gluing and describe it.
    Sample(SampleArgs),
    /// Monte Carlo census of word counts, optionally genus-conditioned.
    Census(CensusArgs),
    /// Exhaustive genus and word-count law for tiny N.
    Exact(ExactArgs),
    /// Exact number of one-cusp gluings carrying prescribed curves.
    Maxgenus(MaxgenusArgs),
    /// Limiting distribution of the minimal essential trace.
    Sysdist(SysdistArgs),
    /// Systole tail bound for Riemannian triangles.
    Bounds(BoundsArgs),
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (results do not depend on this).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(short = 'N', long = "triangles", required_unless_present = "load")]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Stream index of the draw within the seed.
    #[arg(long, default_value_t = 0)]
    index: u64,
    /// Write the pairing as JSON.
    #[arg(long)]
    dump: Option<PathBuf>,
    /// Read the pairing from JSON instead of sampling.
    #[arg(long, conflicts_with_all = ["n", "seed"])]
    load: Option<PathBuf>,
    /// Longest circuit to census.
    #[arg(long, default_value_t = 6)]
    max_len: usize,
    /// Largest trace searched for the systole.
    #[arg(long, default_value_t = 12)]
    trace_cap: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(short = 'N', long = "triangles")]
    n: usize,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated words, e.g. `LR,LLR`.
    #[arg(long, default_value = "LR")]
    words: String,
    /// `all`, `window:c1,c2` or `maxgenus`.
    #[arg(long, default_value = "all")]
    filter: String,
    /// Smallest acceptance rate tolerated by rejection sampling.
    #[arg(long, default_value_t = stats::DEFAULT_ACCEPTANCE_FLOOR)]
    floor: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ExactArgs {
    #[arg(short = 'N', long = "triangles")]
    n: usize,
    /// Optional comma-separated words for the joint law.
    #[arg(long)]
    words: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct MaxgenusArgs {
    #[arg(short = 'N', long = "triangles")]
    n: usize,
    /// Comma-separated words, `WORD:k` for multiplicity `k`.
    #[arg(long, default_value = "")]
    words: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct SysdistArgs {
    #[arg(long, default_value_t = 8)]
    kmax: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Midpoint diameter of the triangle.
    #[arg(long, conflicts_with = "side")]
    m2: Option<f64>,
    /// Side of a flat equilateral triangle (used when `--m2` is absent).
    #[arg(long, default_value_t = 1.0)]
    side: f64,
    /// Single abscissa; a grid `0..=xmax` is produced otherwise.
    #[arg(long)]
    x: Option<f64>,
    #[arg(long)]
    xmax: Option<f64>,
    #[arg(long, default_value_t = 20)]
    steps: usize,
    #[command(flatten)]
    output: Output,
}

/// Echoed into every report.
#[derive(Serialize, Default)]
struct RunConfig {
    command: &'static str,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    load: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    words: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    filter: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    floor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_len: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace_cap: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kmax: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    xmax: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<usize>,
}

#[derive(Serialize)]
struct SampleReport {
    pairing: Pairing,
    summary: SurfaceSummary,
    sign: i32,
    census: CensusResult,
}

impl Report for SampleReport {
    fn table(&self) -> Table {
        Table::new(
            &["class", "count"],
            self.census
                .counts
                .iter()
                .map(|(c, n)| vec![c.clone(), n.to_string()])
                .collect(),
        )
    }
}

#[derive(Serialize)]
struct BoundRow {
    x: f64,
    bound: f64,
}

#[derive(Serialize)]
struct Bounds {
    m2: f64,
    rows: Vec<BoundRow>,
}

impl Report for Bounds {
    fn table(&self) -> Table {
        Table::new(
            &["x", "bound"],
            self.rows
                .iter()
                .map(|r| vec![r.x.to_string(), r.bound.to_string()])
                .collect(),
        )
    }
}

/// Parses, runs, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidParameter(_) | Error::CuspWord(_) => 2,
                ref g if g.is_guard() => 3,
                _ => 1,
            }
        }
    }
}

fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> Result<R> + Send) -> Result<R> {
    match threads {
        None => f(),
        Some(0) => Err(Error::invalid("--threads must be positive")),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Consistency(e.to_string()))?
            .install(f),
    }
}

fn emit<R: Report>(config: &RunConfig, report: &R, out: &Output) -> Result<()> {
    report::write_report(config, report, out.out.as_deref(), out.format.into())
}

fn seed_or_fresh(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random();
        eprintln!("seed: {s}");
        s
    })
}

/// Canonical classes, first occurrence kept.
pub fn parse_word_list(list: &str) -> Result<Vec<WordClass>> {
    let mut out: Vec<WordClass> = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let class: WordClass = item.parse()?;
        if class.is_cusp() {
            return Err(Error::CuspWord(item.to_string()));
        }
        if out.contains(&class) {
            eprintln!("warning: {item} duplicates class {class}; ignored");
            continue;
        }
        out.push(class);
    }
    Ok(out)
}

/// `WORD[:k]` items; repeated classes are merged with a warning.
pub fn parse_word_multiset(list: &str) -> Result<WordMultiset> {
    let mut entries: Vec<(WordClass, usize)> = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (word, mult) = match item.split_once(':') {
            Some((w, k)) => (
                w,
                k.parse::<usize>()
                    .map_err(|_| Error::invalid(format!("bad multiplicity in {item:?}")))?,
            ),
            None => (item, 1),
        };
        let class: WordClass = word.parse()?;
        if class.is_cusp() {
            return Err(Error::CuspWord(word.to_string()));
        }
        if let Some(e) = entries.iter_mut().find(|(c, _)| *c == class) {
            eprintln!("warning: {word} repeats class {class}; multiplicities added");
            e.1 += mult;
        } else {
            entries.push((class, mult));
        }
    }
    WordMultiset::new(entries)
}

pub fn parse_filter(spec: &str, n: usize) -> Result<GenusFilter> {
    let spec = spec.trim();
    match spec {
        "all" => Ok(GenusFilter::all()),
        "maxgenus" | "max_genus" => Ok(GenusFilter::max_genus()),
        _ => {
            let rest = spec
                .strip_prefix("window:")
                .ok_or_else(|| Error::invalid(format!("unknown filter {spec:?}")))?;
            let (a, b) = rest
                .split_once(',')
                .ok_or_else(|| Error::invalid(format!("window needs c1,c2, got {rest:?}")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::invalid(format!("bad window constant {s:?}")))
            };
            stats::genus_window(n, parse(a)?, parse(b)?)
        }
    }
}

fn class_list(classes: &[WordClass]) -> String {
    classes
        .iter()
        .map(|c| c.representative().to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn read_pairing(path: &Path) -> Result<Pairing> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Pairing::from_json(&text)
}

fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Sample(a) => {
            let (pairing, mut cfg) = match &a.load {
                Some(path) => (
                    read_pairing(path)?,
                    RunConfig {
                        load: Some(path.display().to_string()),
                        ..Default::default()
                    },
                ),
                None => {
                    let n = a.n.expect("clap requires N without --load");
                    let seed = seed_or_fresh(a.seed);
                    (
                        gluing::sample_pairing_at(n, seed, a.index)?,
                        RunConfig {
                            seed: Some(seed),
                            index: Some(a.index),
                            ..Default::default()
                        },
                    )
                }
            };
            cfg.command = "sample";
            cfg.n = Some(pairing.n());
            cfg.max_len = Some(a.max_len);
            cfg.trace_cap = Some(a.trace_cap);
            if let Some(path) = &a.dump {
                let mut text = pairing.to_json()?;
                text.push('\n');
                std::fs::write(path, text).map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                })?;
            }
            let summary = gluing::surface_summary(&pairing);
            let sign = exact::lht_sign(&pairing);
            let census = census::census(&FatGraph::from(pairing.clone()), a.max_len, a.trace_cap)?;
            let rep = SampleReport {
                pairing,
                summary,
                sign,
                census,
            };
            emit(&cfg, &rep, &a.output)
        }
        Command::Census(a) => {
            let classes = parse_word_list(&a.words)?;
            if classes.is_empty() {
                return Err(Error::invalid("--words is empty"));
            }
            let filter = parse_filter(&a.filter, a.n)?;
            let seed = seed_or_fresh(a.seed);
            let opts = CensusOptions {
                acceptance_floor: a.floor,
            };
            let exp = with_threads(a.output.threads, || {
                stats::run_census_with(a.n, &classes, &filter, a.samples, seed, opts)
            })?;
            let cfg = RunConfig {
                command: "census",
                n: Some(a.n),
                seed: Some(seed),
                samples: Some(a.samples),
                words: Some(class_list(&classes)),
                filter: Some(a.filter.clone()),
                floor: Some(a.floor),
                ..Default::default()
            };
            emit(&cfg, &exp, &a.output)
        }
        Command::Exact(a) => {
            let classes = match &a.words {
                Some(w) => parse_word_list(w)?,
                None => Vec::new(),
            };
            let rep = with_threads(a.output.threads, || exact::exhaustive_report(a.n, &classes))?;
            let cfg = RunConfig {
                command: "exact",
                n: Some(a.n),
                words: a.words.as_ref().map(|_| class_list(&classes)),
                ..Default::default()
            };
            emit(&cfg, &rep, &a.output)
        }
        Command::Maxgenus(a) => {
            let ws = parse_word_multiset(&a.words)?;
            let count = with_threads(a.output.threads, || characters::max_genus_count(a.n, &ws))?;
            let words = ws
                .entries()
                .iter()
                .map(|(c, k)| format!("{}:{k}", c.representative()))
                .collect::<Vec<_>>()
                .join(",");
            let cfg = RunConfig {
                command: "maxgenus",
                n: Some(a.n),
                words: Some(words),
                ..Default::default()
            };
            emit(&cfg, &MaxGenusSummary::from(&count), &a.output)
        }
        Command::Sysdist(a) => {
            let table = stats::systole_table(a.kmax)?;
            let cfg = RunConfig {
                command: "sysdist",
                kmax: Some(a.kmax),
                ..Default::default()
            };
            emit(&cfg, &table, &a.output)
        }
        Command::Bounds(a) => {
            let m2 = match a.m2 {
                Some(m) => m,
                None => stats::equilateral_m2(a.side)?,
            };
            let xs: Vec<f64> = match a.x {
                Some(x) => vec![x],
                None => {
                    if a.steps == 0 {
                        return Err(Error::invalid("--steps must be positive"));
                    }
                    let xmax = a.xmax.unwrap_or(10.0 * m2);
                    (0..=a.steps)
                        .map(|i| xmax * i as f64 / a.steps as f64)
                        .collect()
                }
            };
            let rows = xs
                .into_iter()
                .map(|x| Ok(BoundRow { x, bound: stats::corollary2_bound(x, m2)? }))
                .collect::<Result<Vec<_>>>()?;
            let cfg = RunConfig {
                command: "bounds",
                m2: Some(m2),
                x: a.x,
                xmax: a.x.is_none().then(|| a.xmax.unwrap_or(10.0 * m2)),
                steps: a.x.is_none().then_some(a.steps),
                ..Default::default()
            };
            emit(&cfg, &Bounds { m2, rows }, &a.output)
        }
    }
}
