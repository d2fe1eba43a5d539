//! Randomized construction of elegant paths.
//!
//! [`algorithm1`] grows a path greedily from a random prime, then runs a
//! bounded loop of random rewrites (reversals, rotations, substitutions),
//! each followed by an attempt to insert one more prime. [`algorithm2`]
//! restarts it, and when a run stalls within `tail_delta` primes of the
//! target it drops the last prime and resumes the rewrite loop, up to `c0`
//! times, before restarting.
//!
//! Randomness comes from ChaCha8 seeded with `SearchConfig::seed`; run `k` of
//! a restart loop draws from stream `k` of that generator, so each run is
//! reproducible on its own.

use alloc::vec::Vec;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::pathstate::{End, PathState};
use crate::primes::PrimePool;
use crate::transforms::{
    can_reverse_prefix, can_reverse_suffix, followup_insert, try_extend, try_reverse_prefix,
    try_reverse_suffix, try_rotate, try_substitute, Source, TargetShape, TransformKind,
    TransformOutcome,
};

/// Source of the random choices a search makes.
pub trait Chooser {
    /// Uniform integer in `0..bound`; `bound >= 1`.
    fn below(&mut self, bound: usize) -> usize;
}

impl<R: RngCore> Chooser for R {
    fn below(&mut self, bound: usize) -> usize {
        self.gen_range(0..bound)
    }
}

/// Replays a fixed list of choices. Panics when the script runs out or a
/// scripted value is out of bounds.
#[derive(Clone, Debug)]
pub struct ScriptedChooser<'a> {
    script: &'a [usize],
    at: usize,
}

impl<'a> ScriptedChooser<'a> {
    pub fn new(script: &'a [usize]) -> Self {
        Self { script, at: 0 }
    }

    /// Number of scripted choices consumed so far.
    pub fn consumed(&self) -> usize {
        self.at
    }
}

impl Chooser for ScriptedChooser<'_> {
    fn below(&mut self, bound: usize) -> usize {
        let v = *self
            .script
            .get(self.at)
            .unwrap_or_else(|| panic!("script exhausted after {} choices", self.at));
        assert!(
            v < bound,
            "scripted choice {v} at {} exceeds bound {bound}",
            self.at
        );
        self.at += 1;
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("target length must be at least 2, got {0}")]
    TargetTooSmall(usize),
    #[error("budget multiplier must be at least 1")]
    ZeroBudget,
    #[error("tail perturbation budget c0 must be at least 1")]
    ZeroTailBudget,
    #[error("tail threshold {tail_delta} must be below the target {n}")]
    TailTooLarge { tail_delta: usize, n: usize },
    #[error("candidate caps must be at least 1")]
    ZeroTries,
}

/// Parameters of a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    /// `N = budget_mult * n` rewrite steps per loop.
    pub budget_mult: u64,
    /// Tail rounds per stalled run.
    pub c0: u32,
    /// A run ending at `l >= n - tail_delta` gets tail rounds.
    pub tail_delta: usize,
    pub seed: u64,
    /// Cuts sampled per reversal step.
    pub max_cut_tries: usize,
    /// (prime, free prime, shape) triples sampled per substitution step.
    pub max_subst_tries: usize,
    /// Re-check the full state every this many steps.
    pub audit_every: Option<u64>,
}

pub const DEFAULT_CUT_TRIES: usize = 32;
pub const DEFAULT_SUBST_TRIES: usize = 64;

impl SearchConfig {
    /// Stand-alone defaults: `N = 40n`.
    pub fn algorithm1(n: usize) -> Self {
        Self {
            n,
            budget_mult: 40,
            c0: 20,
            tail_delta: default_tail_delta(n),
            seed: 0,
            max_cut_tries: DEFAULT_CUT_TRIES,
            max_subst_tries: DEFAULT_SUBST_TRIES,
            audit_every: None,
        }
    }

    /// Restart defaults: `N = 20n`, `c0 = 20`.
    pub fn algorithm2(n: usize) -> Self {
        Self {
            budget_mult: 20,
            ..Self::algorithm1(n)
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// `N` for one rewrite loop.
    pub fn budget(&self) -> u64 {
        self.budget_mult * self.n as u64
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n < 2 {
            return Err(ConfigError::TargetTooSmall(self.n));
        }
        if self.budget_mult == 0 {
            return Err(ConfigError::ZeroBudget);
        }
        if self.c0 == 0 {
            return Err(ConfigError::ZeroTailBudget);
        }
        if self.tail_delta >= self.n {
            return Err(ConfigError::TailTooLarge {
                tail_delta: self.tail_delta,
                n: self.n,
            });
        }
        if self.max_cut_tries == 0 || self.max_subst_tries == 0 {
            return Err(ConfigError::ZeroTries);
        }
        Ok(())
    }
}

/// Tail threshold: 1 up to `n = 200`, 5 from `n = 2000`, linear in between,
/// and never more than `n - 1`.
pub fn default_tail_delta(n: usize) -> usize {
    let d = if n <= 200 {
        1
    } else if n >= 2000 {
        5
    } else {
        1 + (4 * (n - 200) + 900) / 1800
    };
    d.min(n.saturating_sub(1))
}

/// Counters kept by a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tally {
    /// Applications per [`TransformKind::index`].
    pub transforms: [u64; TransformKind::COUNT],
    /// How often each rewrite case (reversal, rotation, substitution) was drawn.
    pub cases: [u64; 3],
    /// Primes dropped by tail rounds.
    pub tail_drops: u64,
    pub audits: u64,
    pub audit_failures: u64,
}

impl Default for Tally {
    fn default() -> Self {
        Self {
            transforms: [0; TransformKind::COUNT],
            cases: [0; 3],
            tail_drops: 0,
            audits: 0,
            audit_failures: 0,
        }
    }
}

impl Tally {
    fn record(&mut self, out: &TransformOutcome) {
        self.transforms[out.applied.index()] += 1;
    }

    pub fn count(&self, kind: TransformKind) -> u64 {
        self.transforms[kind.index()]
    }

    /// Nonzero counts by kind name.
    pub fn named(&self) -> impl Iterator<Item = (&'static str, u64)> + '_ {
        self.transforms
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (TransformKind::from_index(i).name(), c))
    }
}

/// Result of a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub n: usize,
    pub seed: u64,
    pub found: bool,
    /// Length of the best path at the end (`n` when found).
    pub final_length: usize,
    /// Rewrite steps over all loops and runs.
    pub steps_used: u64,
    /// Runs of the restartable construction.
    pub runs: u64,
    pub tail_rounds: u64,
    pub tally: Tally,
    /// The elegant path, when found.
    pub path: Option<Vec<u32>>,
    /// The stop signal fired before completion.
    pub cancelled: bool,
}

/// What one rewrite step did.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepOutcome {
    /// 1, 2 or 3.
    pub case: u8,
    pub changed: bool,
    pub grew: bool,
}

/// Stream of the per-run generator for run `run`.
pub fn run_rng(seed: u64, run: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(run);
    rng
}

fn shuffle<C: Chooser + ?Sized>(items: &mut [u32], rng: &mut C) {
    for i in (1..items.len()).rev() {
        let j = rng.below(i + 1);
        items.swap(i, j);
    }
}

/// Repeated greedy passes: each pass visits the free primes in random order
/// and tries to append each at the right end, then the left end. Stops after
/// a pass that adds nothing, or at `l = n`.
pub fn greedy_extend<C: Chooser + ?Sized>(
    state: &mut PathState<'_>,
    rng: &mut C,
    tally: &mut Tally,
) {
    let mut order: Vec<u32> = Vec::with_capacity(state.n());
    while state.len() < state.n() {
        order.clear();
        order.extend_from_slice(state.free_primes());
        shuffle(&mut order, rng);
        let mut grew = false;
        for &r in &order {
            if !state.is_prime_free(r) {
                continue;
            }
            for end in [End::Right, End::Left] {
                if let Some(out) = try_extend(state, r, end) {
                    tally.record(&out);
                    grew = true;
                    break;
                }
            }
            if state.len() == state.n() {
                return;
            }
        }
        if !grew {
            return;
        }
    }
}

fn follow_up(state: &mut PathState<'_>, out: &TransformOutcome, tally: &mut Tally) -> bool {
    match followup_insert(state, out) {
        Some(ins) => {
            tally.record(&ins);
            true
        }
        None => false,
    }
}

/// One rewrite step on a path with `l < n`.
///
/// Case 1 samples cuts for a prefix or suffix reversal. Case 2 rotates: at a
/// random cut when the end-to-end gap is free, otherwise at the edge that
/// carries it. Case 3 samples substitutions. A successful rewrite (other than
/// the neutral rotation) is followed by an insertion attempt.
pub fn shuffle_step<C: Chooser + ?Sized>(
    state: &mut PathState<'_>,
    config: &SearchConfig,
    rng: &mut C,
    tally: &mut Tally,
) -> StepOutcome {
    let case = rng.below(3) as u8 + 1;
    tally.cases[case as usize - 1] += 1;
    let mut step = StepOutcome {
        case,
        changed: false,
        grew: false,
    };
    let l = state.len();
    if l < 2 || l >= state.n() {
        return step;
    }
    let applied = match case {
        1 => {
            let mut applied = None;
            for _ in 0..config.max_cut_tries {
                let cut = 1 + rng.below(l - 1);
                let prefix = can_reverse_prefix(state, cut);
                let suffix = can_reverse_suffix(state, cut);
                let use_prefix = match (prefix, suffix) {
                    (true, true) => rng.below(2) == 0,
                    (true, false) => true,
                    (false, true) => false,
                    (false, false) => continue,
                };
                applied = if use_prefix {
                    try_reverse_prefix(state, cut)
                } else {
                    try_reverse_suffix(state, cut)
                };
                break;
            }
            applied
        }
        2 => {
            let ends = state.first().abs_diff(state.last());
            if state.is_gap_free(ends) {
                let cut = 1 + rng.below(l - 1);
                try_rotate(state, cut)
            } else if let Some(edge) = state.gap_edge(ends) {
                try_rotate(state, edge + 1)
            } else {
                // End-to-end gap beyond 2n - 2: no rotation is admissible.
                None
            }
        }
        _ => {
            let mut applied = None;
            for _ in 0..config.max_subst_tries {
                let pos = rng.below(l);
                let source = if pos == 0 {
                    Source::Left { cut: rng.below(l) }
                } else if pos == l - 1 {
                    Source::Right { cut: rng.below(l) }
                } else {
                    Source::Interior { pos }
                };
                let free = state.free_primes();
                let r = free[rng.below(free.len())];
                let target = TargetShape::from_index(rng.below(TargetShape::COUNT));
                if let Some(out) = try_substitute(state, source, r, target) {
                    applied = Some(out);
                    break;
                }
            }
            applied
        }
    };
    if let Some(out) = applied {
        step.changed = true;
        tally.record(&out);
        if out.applied != TransformKind::RotateNeutral {
            step.grew = follow_up(state, &out, tally);
        }
    }
    step
}

fn audit(state: &PathState<'_>, tally: &mut Tally) {
    tally.audits += 1;
    let labels: Vec<u64> = state.labels().iter().map(|&p| p as u64).collect();
    if state.check_invariants().is_err() || crate::verify_sequence(&labels, state.n()).is_err() {
        tally.audit_failures += 1;
    }
}

/// The bounded rewrite loop: at most `budget` steps while `l < n`.
/// Returns the number of steps taken.
pub fn rewrite_loop<C: Chooser + ?Sized>(
    state: &mut PathState<'_>,
    config: &SearchConfig,
    rng: &mut C,
    tally: &mut Tally,
    budget: u64,
    stop: &dyn Fn() -> bool,
) -> u64 {
    let mut m = 0;
    while state.len() < state.n() && m < budget {
        if stop() {
            break;
        }
        shuffle_step(state, config, rng, tally);
        m += 1;
        if let Some(k) = config.audit_every {
            if k > 0 && m % k == 0 {
                audit(state, tally);
            }
        }
    }
    m
}

/// One run of the construction from a random starting prime, drawing from
/// `rng`. Returns the final path and the number of rewrite steps.
pub fn run_once<'p, C: Chooser + ?Sized>(
    pool: &'p PrimePool,
    config: &SearchConfig,
    rng: &mut C,
    tally: &mut Tally,
    stop: &dyn Fn() -> bool,
) -> (PathState<'p>, u64) {
    let start = 1 + rng.below(config.n);
    let mut state = PathState::new(pool, config.n, start).expect("validated config");
    greedy_extend(&mut state, rng, tally);
    let steps = rewrite_loop(&mut state, config, rng, tally, config.budget(), stop);
    (state, steps)
}

fn report(
    config: &SearchConfig,
    state: &PathState<'_>,
    steps: u64,
    runs: u64,
    tail_rounds: u64,
    tally: Tally,
    cancelled: bool,
) -> RunReport {
    let found = state.is_elegant();
    RunReport {
        n: config.n,
        seed: config.seed,
        found,
        final_length: state.len(),
        steps_used: steps,
        runs,
        tail_rounds,
        tally,
        path: found.then(|| state.labels()),
        cancelled,
    }
}

/// A single run with `N = budget_mult * n` rewrite steps, on stream 0.
///
/// Panics if `pool` holds fewer than `n` primes; call
/// [`SearchConfig::validate`] first.
pub fn algorithm1<'p>(
    pool: &'p PrimePool,
    config: &SearchConfig,
    stop: &dyn Fn() -> bool,
) -> (PathState<'p>, RunReport) {
    let mut rng = run_rng(config.seed, 0);
    let mut tally = Tally::default();
    let (state, steps) = run_once(pool, config, &mut rng, &mut tally, stop);
    let cancelled = !state.is_elegant() && stop();
    let rep = report(config, &state, steps, 1, 0, tally, cancelled);
    (state, rep)
}

/// Restarts with tail suppression, until success, `max_runs` runs, or `stop`.
/// With `tail_delta = 0` this is plain restarting of [`algorithm1`].
pub fn algorithm2<'p>(
    pool: &'p PrimePool,
    config: &SearchConfig,
    max_runs: Option<u64>,
    stop: &dyn Fn() -> bool,
) -> (PathState<'p>, RunReport) {
    let mut tally = Tally::default();
    let mut steps = 0;
    let mut tail_rounds = 0;
    let mut run = 0u64;
    loop {
        let mut rng = run_rng(config.seed, run);
        run += 1;
        let (mut state, s) = run_once(pool, config, &mut rng, &mut tally, stop);
        steps += s;
        let n = config.n;
        if !state.is_elegant() && state.len() + config.tail_delta >= n {
            let mut c = 0;
            while state.len() < n && c < config.c0 && !stop() {
                if state.pop_last().is_some() {
                    tally.tail_drops += 1;
                }
                steps += rewrite_loop(
                    &mut state,
                    config,
                    &mut rng,
                    &mut tally,
                    config.budget(),
                    stop,
                );
                c += 1;
                tail_rounds += 1;
            }
        }
        let done = state.is_elegant() || stop() || max_runs.is_some_and(|m| run >= m);
        if done {
            let cancelled = !state.is_elegant() && stop();
            let rep = report(config, &state, steps, run, tail_rounds, tally, cancelled);
            return (state, rep);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn never() -> bool {
        false
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::algorithm1(11).validate().is_ok());
        assert_eq!(
            SearchConfig::algorithm1(1).validate(),
            Err(ConfigError::TargetTooSmall(1))
        );
        let mut c = SearchConfig::algorithm2(10);
        c.tail_delta = 10;
        assert!(matches!(
            c.validate(),
            Err(ConfigError::TailTooLarge { .. })
        ));
        c.tail_delta = 0;
        c.c0 = 0;
        assert_eq!(c.validate(), Err(ConfigError::ZeroTailBudget));
        c.c0 = 1;
        c.budget_mult = 0;
        assert_eq!(c.validate(), Err(ConfigError::ZeroBudget));
    }

    #[test]
    fn tail_delta_defaults() {
        assert_eq!(default_tail_delta(2), 1);
        assert_eq!(default_tail_delta(200), 1);
        assert_eq!(default_tail_delta(1100), 3);
        assert_eq!(default_tail_delta(2000), 5);
        assert_eq!(default_tail_delta(3500), 5);
    }

    #[test]
    fn budgets() {
        assert_eq!(SearchConfig::algorithm1(11).budget(), 440);
        assert_eq!(SearchConfig::algorithm2(11).budget(), 220);
    }

    #[test]
    fn scripted_chooser_replays() {
        let script = [2, 0, 1];
        let mut c = ScriptedChooser::new(&script);
        assert_eq!(c.below(3), 2);
        assert_eq!(c.below(1), 0);
        assert_eq!(c.below(2), 1);
        assert_eq!(c.consumed(), 3);
    }

    #[test]
    #[should_panic(expected = "exceeds bound")]
    fn scripted_chooser_checks_bounds() {
        ScriptedChooser::new(&[3]).below(3);
    }

    #[test]
    fn greedy_n2_from_three() {
        let pool = PrimePool::new(2);
        let mut s = PathState::new(&pool, 2, 1).unwrap();
        greedy_extend(&mut s, &mut run_rng(0, 0), &mut Tally::default());
        assert_eq!(s.labels(), [3, 5]);
    }

    #[test]
    fn small_targets_are_found() {
        let pool = PrimePool::new(12);
        for n in 2..=12 {
            let cfg = SearchConfig::algorithm1(n).with_seed(7);
            let (state, rep) = algorithm2(&pool, &cfg, Some(200), &never);
            assert!(rep.found, "n = {n}");
            assert_eq!(rep.final_length, n);
            let labels: Vec<u64> = state.labels().iter().map(|&p| p as u64).collect();
            crate::verify_elegant(&labels, n).unwrap();
        }
    }

    #[test]
    fn stop_signal_cancels() {
        let pool = PrimePool::new(300);
        let cfg = SearchConfig::algorithm2(300);
        let (_, rep) = algorithm2(&pool, &cfg, None, &|| true);
        assert!(rep.cancelled);
        assert_eq!(rep.runs, 1);
    }
}
