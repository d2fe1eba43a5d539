//! Command-line surface: `search`, `verify`, `enumerate`, `graph`, `bench`.

use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use elegant_core::graphs::{
    exhaustive_graph_search, star_search, stochastic_graph_search, verify_graph_labeling,
    GraphLabeling, StochasticConfig,
};
use elegant_core::oracle::{count_elegant_gap_first, enumerate_elegant, for_each_elegant};
use elegant_core::search::SearchConfig;
use elegant_core::{verify_elegant, verify_sequence, PrimePool};
use serde::Deserialize;

use crate::format::{load_graph, parse_paths, path_json, path_text, GraphSpec};
use crate::report::JsonReport;
use crate::runner::{search, search_parallel, Algo, RunLimits};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_EXHAUSTED: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "elegant",
    version,
    about = "Elegant prime labelings of paths and graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Search for an elegant path.
    Search(SearchArgs),
    /// Check paths or graph labelings read from a file.
    Verify(VerifyArgs),
    /// Count elegant paths exhaustively.
    Enumerate(EnumerateArgs),
    /// Search for an elegant labeling of a graph.
    Graph(GraphArgs),
    /// Time searches over a range of targets; CSV on stdout.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

fn parse_algo(s: &str) -> Result<Algo, String> {
    match s {
        "1" => Ok(Algo::One),
        "2" => Ok(Algo::Two),
        _ => Err(format!("expected 1 or 2, got {s:?}")),
    }
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Steps per rewrite loop, as a multiple of n.
    #[arg(long)]
    pub budget_mult: Option<u64>,
    /// Tail rounds per stalled run.
    #[arg(long)]
    pub c0: Option<u32>,
    /// Runs ending within this many primes of n get tail rounds.
    #[arg(long)]
    pub tail_delta: Option<usize>,
    #[arg(long)]
    pub max_cut_tries: Option<usize>,
    #[arg(long)]
    pub max_subst_tries: Option<usize>,
    #[arg(long, default_value = "2", value_parser = parse_algo)]
    pub algo: Algo,
    /// JSON file with any of the fields above; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write the path here in the chosen format.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Concurrent searches with consecutive seeds; the first success wins.
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    pub timeout: Option<f64>,
    /// Restart limit for Algorithm 2.
    #[arg(long)]
    pub max_runs: Option<u64>,
    /// Re-verify the whole state every this many steps.
    #[arg(long)]
    pub audit: Option<u64>,
}

#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    n: Option<usize>,
    seed: Option<u64>,
    budget_mult: Option<u64>,
    c0: Option<u32>,
    tail_delta: Option<usize>,
    max_cut_tries: Option<usize>,
    max_subst_tries: Option<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// One path per line, as space-separated primes or `{"n": .., "labels": [..]}`.
    pub file: PathBuf,
    /// Target for every line; by default each path's own length.
    #[arg(long)]
    pub n: Option<usize>,
    /// Accept paths shorter than n that are admissible.
    #[arg(long)]
    pub admissible: bool,
    /// Treat each line as a vertex labeling of this graph (generator or edge-list file).
    #[arg(long)]
    pub graph: Option<String>,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub count_only: bool,
    /// List each path once, smaller end first.
    #[arg(long)]
    pub up_to_reversal: bool,
    /// Largest n accepted.
    #[arg(long, default_value_t = elegant_core::oracle::DEFAULT_GUARD)]
    pub guard: usize,
    /// Write the count table for 2..=n to this file instead.
    #[arg(long)]
    pub write_fixtures: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphMethod {
    Exhaustive,
    Stochastic,
    Star,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    /// `path:N`, `star:N`, `complete:K`, `petersen`, `caterpillar:N`,
    /// `caterpillar-plus:N`, `caterpillar-minus:N`, or an edge-list file.
    pub spec: String,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub method: GraphMethod,
    /// Node limit for the exhaustive search.
    #[arg(long, default_value_t = 1 << 32)]
    pub limit: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub restarts: Option<u32>,
    #[arg(long)]
    pub iterations: Option<u64>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Inclusive range `A..B`.
    #[arg(long)]
    pub n_range: String,
    /// Seeds `0..seeds` per target.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    #[arg(long, default_value = "1", value_parser = parse_algo)]
    pub algo: Algo,
    /// Per-search limit in seconds.
    #[arg(long)]
    pub timeout: Option<f64>,
    #[arg(long)]
    pub max_runs: Option<u64>,
}

/// Runs a parsed command. `Err` means bad input and maps to exit status 2.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    match cli.command {
        Command::Search(a) => cmd_search(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Enumerate(a) => cmd_enumerate(a, out),
        Command::Graph(a) => cmd_graph(a, out),
        Command::Bench(a) => cmd_bench(a, out, err),
    }
}

fn duration(secs: Option<f64>) -> Result<Option<Duration>> {
    secs.map(|s| Duration::try_from_secs_f64(s).map_err(|_| anyhow!("bad timeout {s}")))
        .transpose()
}

fn search_config(a: &SearchArgs) -> Result<SearchConfig> {
    let file = match &a.config {
        Some(p) => {
            let text =
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?
        }
        None => ConfigFile::default(),
    };
    let n = a.n.or(file.n).ok_or_else(|| anyhow!("--n is required"))?;
    let mut cfg = match a.algo {
        Algo::One => SearchConfig::algorithm1(n),
        Algo::Two => SearchConfig::algorithm2(n),
    };
    cfg.seed = a.seed.or(file.seed).unwrap_or(0);
    cfg.budget_mult = a
        .budget_mult
        .or(file.budget_mult)
        .unwrap_or(cfg.budget_mult);
    cfg.c0 = a.c0.or(file.c0).unwrap_or(cfg.c0);
    cfg.tail_delta = a.tail_delta.or(file.tail_delta).unwrap_or(cfg.tail_delta);
    cfg.max_cut_tries = a
        .max_cut_tries
        .or(file.max_cut_tries)
        .unwrap_or(cfg.max_cut_tries);
    cfg.max_subst_tries = a
        .max_subst_tries
        .or(file.max_subst_tries)
        .unwrap_or(cfg.max_subst_tries);
    cfg.audit_every = a.audit;
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_search(a: SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let cfg = search_config(&a)?;
    if a.parallel == 0 {
        bail!("--parallel must be at least 1");
    }
    let limits = RunLimits {
        timeout: duration(a.timeout)?,
        max_runs: a.max_runs,
    };
    let pool = PrimePool::new(cfg.n);
    let res = if a.parallel > 1 {
        search_parallel(&pool, &cfg, a.algo, &limits, a.parallel)
    } else {
        search(&pool, &cfg, a.algo, &limits)
    };
    let rep = &res.report;
    let json = JsonReport::new(a.algo.number(), &res.config, rep, res.elapsed);
    if let (Some(path), Some(labels)) = (&a.out, &rep.path) {
        let body = match a.format {
            OutputFormat::Text => path_text(labels),
            OutputFormat::Json => path_json(cfg.n, labels),
        };
        std::fs::write(path, body + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    match a.format {
        OutputFormat::Json => writeln!(out, "{}", json.to_json())?,
        OutputFormat::Text => {
            if let Some(labels) = &rep.path {
                writeln!(out, "{}", path_text(labels))?;
            }
        }
    }
    writeln!(
        err,
        "n={} seed={} algo={} found={} length={} steps={} runs={} tail_rounds={} elapsed_ms={}",
        rep.n,
        rep.seed,
        a.algo.number(),
        rep.found,
        rep.final_length,
        rep.steps_used,
        rep.runs,
        rep.tail_rounds,
        json.elapsed_ms
    )?;
    Ok(if rep.found { EXIT_OK } else { EXIT_EXHAUSTED })
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<u8> {
    let text = std::fs::read_to_string(&a.file)
        .with_context(|| format!("reading {}", a.file.display()))?;
    let records = parse_paths(&text)?;
    if records.is_empty() {
        bail!("{} holds no labelings", a.file.display());
    }
    let graph = a
        .graph
        .as_deref()
        .map(load_graph)
        .transpose()?
        .map(|(_, g)| g);
    let mut all_ok = true;
    for rec in records {
        let outcome = match &graph {
            Some(g) => verify_graph_labeling(
                g,
                &GraphLabeling {
                    labels: rec.labels.clone(),
                },
            )
            .map_err(|e| (e.code(), e.to_string())),
            None => {
                let n = a.n.or(rec.n).unwrap_or(rec.labels.len());
                let r = if a.admissible {
                    verify_sequence(&rec.labels, n)
                } else {
                    verify_elegant(&rec.labels, n)
                };
                r.map_err(|e| (e.code(), e.to_string()))
            }
        };
        match outcome {
            Ok(()) => writeln!(out, "line {}: ok", rec.line)?,
            Err((code, msg)) => {
                all_ok = false;
                writeln!(out, "line {}: {code}: {msg}", rec.line)?;
            }
        }
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_FAILED })
}

/// The count table used as a test fixture.
pub fn fixture_table(max_n: usize, guard: usize) -> Result<String> {
    let mut s = String::from("# n directed undirected\n");
    for n in 2..=max_n {
        let r = enumerate_elegant(n, guard, 0)?;
        let other = count_elegant_gap_first(n, guard)?;
        if other != r.distinct_up_to_reversal {
            bail!(
                "enumeration strategies disagree at n = {n}: {} vs {other}",
                r.distinct_up_to_reversal
            );
        }
        s.push_str(&format!(
            "{n} {} {}\n",
            r.total_elegant, r.distinct_up_to_reversal
        ));
    }
    Ok(s)
}

fn cmd_enumerate(a: EnumerateArgs, out: &mut dyn Write) -> Result<u8> {
    if let Some(path) = &a.write_fixtures {
        let table = fixture_table(a.n, a.guard)?;
        std::fs::write(path, table).with_context(|| format!("writing {}", path.display()))?;
        writeln!(
            out,
            "wrote counts for n = 2..={} to {}",
            a.n,
            path.display()
        )?;
        return Ok(EXIT_OK);
    }
    let r = enumerate_elegant(a.n, a.guard, 0)?;
    let gap_first = count_elegant_gap_first(a.n, a.guard)?;
    writeln!(
        out,
        "n={} elegant={} up_to_reversal={} gap_first={}",
        a.n, r.total_elegant, r.distinct_up_to_reversal, gap_first
    )?;
    if !a.count_only {
        let mut lines = Vec::new();
        for_each_elegant(a.n, a.guard, |p| {
            if !a.up_to_reversal || p[0] < p[p.len() - 1] {
                lines.push(path_text(p));
            }
        })?;
        for l in lines {
            writeln!(out, "{l}")?;
        }
    }
    Ok(if gap_first == r.distinct_up_to_reversal {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn cmd_graph(a: GraphArgs, out: &mut dyn Write) -> Result<u8> {
    let (spec, g) = load_graph(&a.spec)?;
    writeln!(
        out,
        "# vertices={} edges={} method={:?} seed={}",
        g.vertex_count(),
        g.edge_count(),
        a.method,
        a.seed
    )?;
    let (found, certified) = match a.method {
        GraphMethod::Star => {
            let Some(GraphSpec::Star(n)) = spec else {
                bail!("--method star needs a star:N spec");
            };
            (star_search(n), true)
        }
        GraphMethod::Exhaustive => match exhaustive_graph_search(&g, a.limit) {
            Ok(found) => (found, true),
            Err(e) => {
                writeln!(out, "limit: {e}")?;
                return Ok(EXIT_EXHAUSTED);
            }
        },
        GraphMethod::Stochastic => {
            let mut cfg = StochasticConfig {
                seed: a.seed,
                ..StochasticConfig::default()
            };
            if let Some(r) = a.restarts {
                cfg.restarts = r;
            }
            if let Some(i) = a.iterations {
                cfg.iterations = i;
            }
            (stochastic_graph_search(&g, &cfg), false)
        }
    };
    match found {
        Some(lab) => {
            verify_graph_labeling(&g, &lab)
                .map_err(|e| anyhow!("internal: search returned a bad labeling: {e}"))?;
            writeln!(out, "{}", path_text(&lab.labels))?;
            Ok(EXIT_OK)
        }
        None if certified => {
            writeln!(out, "none: no elegant labeling exists")?;
            Ok(EXIT_FAILED)
        }
        None => {
            writeln!(out, "none: budget exhausted")?;
            Ok(EXIT_EXHAUSTED)
        }
    }
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| anyhow!("expected A..B, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn median(v: &mut [u64]) -> u64 {
    v.sort_unstable();
    match v.len() {
        0 => 0,
        k if k % 2 == 1 => v[k / 2],
        k => (v[k / 2 - 1] + v[k / 2]) / 2,
    }
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let (lo, hi) = parse_range(&a.n_range)?;
    if lo < 2 && lo <= hi {
        bail!("targets start at 2");
    }
    let limits = RunLimits {
        timeout: duration(a.timeout)?,
        max_runs: a.max_runs,
    };
    writeln!(out, "n,seed,found,steps,millis")?;
    let pool = PrimePool::new(hi.max(2));
    let mut all_ms = Vec::new();
    let mut found_total = 0;
    for n in lo..=hi {
        let mut ms = Vec::new();
        let mut found = 0;
        for seed in 0..a.seeds {
            let cfg = match a.algo {
                Algo::One => SearchConfig::algorithm1(n),
                Algo::Two => SearchConfig::algorithm2(n),
            }
            .with_seed(seed);
            let res = search(&pool, &cfg, a.algo, &limits);
            let millis = res.elapsed.as_millis() as u64;
            writeln!(
                out,
                "{n},{seed},{},{},{millis}",
                res.report.found, res.report.steps_used
            )?;
            ms.push(millis);
            found += res.report.found as u64;
        }
        all_ms.extend_from_slice(&ms);
        found_total += found;
        if a.seeds > 1 {
            writeln!(
                err,
                "n={n} found={found}/{} median_ms={}",
                a.seeds,
                median(&mut ms)
            )?;
        }
    }
    let total: u64 = all_ms.iter().sum();
    writeln!(
        err,
        "searches={} found={found_total} median_ms={} total_ms={total}",
        all_ms.len(),
        median(&mut all_ms)
    )?;
    Ok(EXIT_OK)
}
