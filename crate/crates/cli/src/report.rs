//! JSON form of a search report.

use std::collections::BTreeMap;
use std::time::Duration;

use elegant_core::search::{RunReport, SearchConfig};
use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub budget_mult: u64,
    pub c0: u32,
    pub tail_delta: usize,
    pub max_cut_tries: usize,
    pub max_subst_tries: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct JsonReport {
    pub schema: u32,
    pub n: usize,
    pub algo: u8,
    pub seed: u64,
    pub found: bool,
    pub final_length: usize,
    pub steps_used: u64,
    pub runs: u64,
    pub tail_rounds: u64,
    pub cancelled: bool,
    pub config: ConfigEcho,
    pub cases: [u64; 3],
    pub transform_counts: BTreeMap<&'static str, u64>,
    pub audits: u64,
    pub audit_failures: u64,
    pub path: Option<Vec<u32>>,
    pub elapsed_ms: u64,
}

impl JsonReport {
    pub fn new(algo: u8, config: &SearchConfig, report: &RunReport, elapsed: Duration) -> Self {
        Self {
            schema: SCHEMA,
            n: report.n,
            algo,
            seed: report.seed,
            found: report.found,
            final_length: report.final_length,
            steps_used: report.steps_used,
            runs: report.runs,
            tail_rounds: report.tail_rounds,
            cancelled: report.cancelled,
            config: ConfigEcho {
                budget_mult: config.budget_mult,
                c0: config.c0,
                tail_delta: config.tail_delta,
                max_cut_tries: config.max_cut_tries,
                max_subst_tries: config.max_subst_tries,
            },
            cases: report.tally.cases,
            transform_counts: report.tally.named().collect(),
            audits: report.tally.audits,
            audit_failures: report.tally.audit_failures,
            path: report.path.clone(),
            elapsed_ms: elapsed.as_millis() as u64,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}
