//! Runs searches with an optional deadline, on one or several threads.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use elegant_core::search::{algorithm1, algorithm2, RunReport, SearchConfig};
use elegant_core::PrimePool;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algo {
    One,
    Two,
}

impl Algo {
    pub fn number(self) -> u8 {
        match self {
            Algo::One => 1,
            Algo::Two => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunLimits {
    pub timeout: Option<Duration>,
    /// Runs per search under Algorithm 2.
    pub max_runs: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// The configuration of the reported search, with its own seed.
    pub config: SearchConfig,
    pub report: RunReport,
    /// Final path labels, elegant or not.
    pub labels: Vec<u32>,
    pub elapsed: Duration,
}

fn run_one(
    pool: &PrimePool,
    config: &SearchConfig,
    algo: Algo,
    limits: &RunLimits,
    stop: &dyn Fn() -> bool,
) -> (RunReport, Vec<u32>) {
    let (state, report) = match algo {
        Algo::One => algorithm1(pool, config, stop),
        Algo::Two => algorithm2(pool, config, limits.max_runs, stop),
    };
    (report, state.labels())
}

/// One search on the calling thread.
pub fn search(
    pool: &PrimePool,
    config: &SearchConfig,
    algo: Algo,
    limits: &RunLimits,
) -> SearchResult {
    let start = Instant::now();
    let deadline = limits.timeout.map(|t| start + t);
    let stop = || deadline.is_some_and(|d| Instant::now() >= d);
    let (report, labels) = run_one(pool, config, algo, limits, &stop);
    SearchResult {
        config: config.clone(),
        report,
        labels,
        elapsed: start.elapsed(),
    }
}

/// `k` searches with seeds `seed, seed + 1, ...` on their own threads. The
/// first to find an elegant path wins and the rest are told to stop. Without
/// a winner, the longest final path is reported (lowest seed on ties).
pub fn search_parallel(
    pool: &PrimePool,
    config: &SearchConfig,
    algo: Algo,
    limits: &RunLimits,
    k: usize,
) -> SearchResult {
    if k <= 1 {
        return search(pool, config, algo, limits);
    }
    let start = Instant::now();
    let deadline = limits.timeout.map(|t| start + t);
    let done = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel();
    thread::scope(|scope| {
        for i in 0..k {
            let tx = tx.clone();
            let cfg = config.clone().with_seed(config.seed.wrapping_add(i as u64));
            let done = &done;
            scope.spawn(move || {
                let stop = || {
                    done.load(Ordering::Relaxed) || deadline.is_some_and(|d| Instant::now() >= d)
                };
                let (report, labels) = run_one(pool, &cfg, algo, limits, &stop);
                if report.found {
                    done.store(true, Ordering::Relaxed);
                }
                let _ = tx.send((i, cfg, report, labels));
            });
        }
    });
    drop(tx);
    let results: Vec<_> = rx.into_iter().collect();
    let elapsed = start.elapsed();
    let best = results
        .iter()
        .find(|r| r.2.found)
        .or_else(|| {
            results
                .iter()
                .max_by_key(|r| (r.2.final_length, std::cmp::Reverse(r.0)))
        })
        .expect("at least one thread");
    SearchResult {
        config: best.1.clone(),
        report: best.2.clone(),
        labels: best.3.clone(),
        elapsed,
    }
}
