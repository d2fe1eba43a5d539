//! Exhaustive enumeration of elegant and admissible paths for small targets.
//!
//! Two independent strategies count elegant paths. The prime-first search
//! builds label sequences left to right over the sieve pool, pruning on
//! repeated primes and gaps. The gap-first search picks, for each gap value
//! from `2n - 2` down to `2`, the pair of primes that carries it, keeping the
//! chosen edges a disjoint union of paths; every complete choice is one
//! undirected elegant path. Its primes come from trial division.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::pathstate::PathState;
use crate::primes::{is_prime, PrimePool};

/// Default largest target accepted without an explicit override.
pub const DEFAULT_GUARD: usize = 12;
/// Largest target the bitset representation supports at all.
pub const HARD_LIMIT: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("target {n} exceeds the enumeration guard {guard}")]
    TooLarge { n: usize, guard: usize },
    #[error("target must be at least 2, got {0}")]
    TooSmall(usize),
    #[error("path length {l} is outside 1..={n}")]
    BadLength { l: usize, n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    pub n: usize,
    /// Elegant label sequences, both orientations counted.
    pub total_elegant: u64,
    pub distinct_up_to_reversal: u64,
    /// Up to the requested number of paths, first label smaller than last.
    pub sample_paths: Vec<Vec<u32>>,
}

fn check_target(n: usize, guard: usize) -> Result<(), OracleError> {
    if n < 2 {
        return Err(OracleError::TooSmall(n));
    }
    let guard = guard.min(HARD_LIMIT);
    if n > guard {
        return Err(OracleError::TooLarge { n, guard });
    }
    Ok(())
}

struct PrimeFirst<'a, F> {
    primes: &'a [u32],
    max_gap: u32,
    seq: Vec<u32>,
    used_primes: u64,
    used_gaps: u64,
    visit: F,
}

impl<F: FnMut(&[u32])> PrimeFirst<'_, F> {
    fn descend(&mut self, target: usize) {
        if self.seq.len() == target {
            (self.visit)(&self.seq);
            return;
        }
        let last = *self.seq.last().expect("nonempty");
        for (i, &p) in self.primes.iter().enumerate() {
            if self.used_primes & (1 << i) != 0 {
                continue;
            }
            let gap = p.abs_diff(last);
            if gap > self.max_gap || self.used_gaps & (1 << (gap / 2)) != 0 {
                continue;
            }
            self.used_primes |= 1 << i;
            self.used_gaps |= 1 << (gap / 2);
            self.seq.push(p);
            self.descend(target);
            self.seq.pop();
            self.used_primes &= !(1 << i);
            self.used_gaps &= !(1 << (gap / 2));
        }
    }
}

fn prime_first<F: FnMut(&[u32])>(n: usize, l: usize, visit: F) {
    let pool = PrimePool::new(n);
    let mut walker = PrimeFirst {
        primes: pool.values(),
        max_gap: 2 * (n as u32 - 1),
        seq: Vec::with_capacity(l),
        used_primes: 0,
        used_gaps: 0,
        visit,
    };
    for (i, &p) in pool.values().iter().enumerate() {
        walker.used_primes = 1 << i;
        walker.seq.clear();
        walker.seq.push(p);
        walker.descend(l);
    }
}

/// Calls `visit` with every elegant label sequence for target `n`, both
/// orientations, in lexicographic order.
pub fn for_each_elegant<F: FnMut(&[u32])>(
    n: usize,
    guard: usize,
    visit: F,
) -> Result<(), OracleError> {
    check_target(n, guard)?;
    prime_first(n, n, visit);
    Ok(())
}

/// Counts all elegant paths for target `n` by the prime-first search.
pub fn enumerate_elegant(
    n: usize,
    guard: usize,
    sample_cap: usize,
) -> Result<EnumerationResult, OracleError> {
    let mut total = 0u64;
    let mut samples = Vec::new();
    for_each_elegant(n, guard, |seq| {
        total += 1;
        if samples.len() < sample_cap && seq[0] < seq[seq.len() - 1] {
            samples.push(seq.to_vec());
        }
    })?;
    Ok(EnumerationResult {
        n,
        total_elegant: total,
        distinct_up_to_reversal: total / 2,
        sample_paths: samples,
    })
}

/// All elegant paths for `n`, as label sequences in both orientations.
pub fn elegant_paths(n: usize, guard: usize) -> Result<Vec<Vec<u32>>, OracleError> {
    let mut out = Vec::new();
    for_each_elegant(n, guard, |seq| out.push(seq.to_vec()))?;
    Ok(out)
}

struct GapFirst<'a, F> {
    primes: &'a [u64],
    degree: Vec<u8>,
    // For a vertex at the end of a fragment: the other end of that fragment.
    other_end: Vec<usize>,
    edges: Vec<(usize, usize)>,
    visit: F,
}

impl<F: FnMut(&[(usize, usize)])> GapFirst<'_, F> {
    fn descend(&mut self, gap: u64) {
        if gap == 0 {
            (self.visit)(&self.edges);
            return;
        }
        for a in 0..self.primes.len() {
            let target = self.primes[a] + gap;
            let Some(b) = self.primes[a + 1..]
                .iter()
                .position(|&p| p == target)
                .map(|i| a + 1 + i)
            else {
                continue;
            };
            if self.degree[a] >= 2 || self.degree[b] >= 2 || self.other_end[a] == b {
                continue;
            }
            let (ea, eb) = (self.other_end[a], self.other_end[b]);
            let saved = (self.other_end[ea], self.other_end[eb]);
            self.other_end[ea] = eb;
            self.other_end[eb] = ea;
            self.degree[a] += 1;
            self.degree[b] += 1;
            self.edges.push((a, b));
            self.descend(gap - 2);
            self.edges.pop();
            self.degree[a] -= 1;
            self.degree[b] -= 1;
            self.other_end[eb] = saved.1;
            self.other_end[ea] = saved.0;
        }
    }
}

/// Calls `visit` with the edge set of every undirected elegant path for
/// target `n`, found by the gap-first search. Edges are index pairs into the
/// first `n` odd primes, listed from the largest gap down.
pub fn for_each_elegant_gap_first<F: FnMut(&[u64], &[(usize, usize)])>(
    n: usize,
    guard: usize,
    mut visit: F,
) -> Result<(), OracleError> {
    check_target(n, guard)?;
    let mut primes = Vec::with_capacity(n);
    let mut x = 3u64;
    while primes.len() < n {
        if is_prime(x) {
            primes.push(x);
        }
        x += 2;
    }
    let primes_ref = primes.clone();
    let mut walker = GapFirst {
        primes: &primes,
        degree: vec![0; n],
        other_end: (0..n).collect(),
        edges: Vec::with_capacity(n - 1),
        visit: |edges: &[(usize, usize)]| visit(&primes_ref, edges),
    };
    walker.descend(2 * (n as u64 - 1));
    Ok(())
}

/// Number of undirected elegant paths for `n` by the gap-first search.
pub fn count_elegant_gap_first(n: usize, guard: usize) -> Result<u64, OracleError> {
    let mut count = 0;
    for_each_elegant_gap_first(n, guard, |_, _| count += 1)?;
    Ok(count)
}

/// Walks an edge set that forms a Hamiltonian path into a label sequence,
/// starting from the endpoint with the smaller label.
pub fn edges_to_path(primes: &[u64], edges: &[(usize, usize)]) -> Vec<u64> {
    let n = primes.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let Some(start) = (0..n).find(|&v| adj[v].len() <= 1) else {
        return Vec::new();
    };
    let mut path = vec![primes[start]];
    let (mut prev, mut cur) = (usize::MAX, start);
    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
        path.push(primes[next]);
        prev = cur;
        cur = next;
    }
    path
}

/// Calls `visit` with every admissible path of `l` primes for target `n`.
pub fn for_each_admissible<'p, F: FnMut(&PathState<'p>)>(
    pool: &'p PrimePool,
    n: usize,
    l: usize,
    guard: usize,
    mut visit: F,
) -> Result<(), OracleError> {
    check_target(n, guard)?;
    if l == 0 || l > n {
        return Err(OracleError::BadLength { l, n });
    }
    prime_first(n, l, |seq| {
        let labels: Vec<u64> = seq.iter().map(|&p| p as u64).collect();
        let state =
            PathState::from_labels(pool, n, &labels).expect("enumerated path is admissible");
        visit(&state);
    });
    Ok(())
}

/// [`for_each_admissible`] collected into a vector.
pub fn enumerate_admissible<'p>(
    pool: &'p PrimePool,
    n: usize,
    l: usize,
    guard: usize,
) -> Result<Vec<PathState<'p>>, OracleError> {
    let mut out = Vec::new();
    for_each_admissible(pool, n, l, guard, |s| out.push(s.clone()))?;
    Ok(out)
}
