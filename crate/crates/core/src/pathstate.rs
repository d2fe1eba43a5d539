//! Admissible paths of distinct odd primes and their free-prime / free-gap
//! bookkeeping.
//!
//! A path `q_1 q_2 ... q_l` over the pool `P_n` of the first `n` odd primes is
//! *admissible* when its primes are distinct and its `l - 1` gaps
//! `|q_{i+1} - q_i|` are distinct members of `{2, 4, ..., 2n - 2}`. It is
//! *elegant* when in addition `l = n`, so that every gap is realized exactly
//! once. A single prime is an admissible path with no gaps.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::primes::{is_prime, PrimePool};

/// Which end of a path an operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    Left,
    Right,
}

/// Set differences produced by a rewrite.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct SetChanges<'a> {
    pub freed: &'a [u32],
    pub consumed: &'a [u32],
    pub removed_prime: Option<u32>,
    pub inserted_prime: Option<u32>,
}

/// A cut of a path into `Q1 = q_1..q_u` and `Q2 = q_{u+1}..q_l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitView {
    /// Number of primes in `Q1`, `1 <= cut <= l - 1`.
    pub cut: usize,
    /// The connecting gap `|f(Q2) - l(Q1)|`.
    pub delta: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("target length must be at least 2, got {0}")]
    TargetTooSmall(usize),
    #[error("prime pool holds {have} primes but the target needs {need}")]
    PoolTooSmall { have: usize, need: usize },
    #[error("rank {rank} is outside 1..={n}")]
    RankOutOfRange { rank: usize, n: usize },
}

/// Why a label sequence fails to be an admissible (or elegant) path.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("empty sequence")]
    Empty,
    #[error("label {value} at index {index} is not prime")]
    NotPrime { index: usize, value: u64 },
    #[error("label {value} at index {index} is not among the first {n} odd primes")]
    OutOfPool { index: usize, value: u64, n: usize },
    #[error("label {value} at index {index} is repeated")]
    DuplicatePrime { index: usize, value: u64 },
    #[error("gap {gap} on edge {edge} is repeated")]
    DuplicateGap { edge: usize, gap: u64 },
    #[error("gap {gap} on edge {edge} is outside 2..={max}")]
    GapOutOfRange { edge: usize, gap: u64, max: u64 },
    #[error("gap {gap} on edge {edge} is odd")]
    OddGap { edge: usize, gap: u64 },
    #[error("path has {len} primes, elegance needs {n}")]
    Incomplete { len: usize, n: usize },
}

impl VerifyError {
    /// Short machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            VerifyError::Empty => "empty",
            VerifyError::NotPrime { .. } => "non-prime",
            VerifyError::OutOfPool { .. } => "out-of-pool",
            VerifyError::DuplicatePrime { .. } => "duplicate-prime",
            VerifyError::DuplicateGap { .. } => "duplicate-gap",
            VerifyError::GapOutOfRange { .. } => "gap-out-of-range",
            VerifyError::OddGap { .. } => "odd-gap",
            VerifyError::Incomplete { .. } => "incomplete",
        }
    }
}

/// Checks that `labels` is an admissible path for target `n`.
///
/// Self-contained: primality is decided by trial division and the pool
/// `P_n` is rebuilt here, so nothing is shared with [`PathState`].
pub fn verify_sequence(labels: &[u64], n: usize) -> Result<(), VerifyError> {
    if labels.is_empty() {
        return Err(VerifyError::Empty);
    }
    let mut pool = Vec::with_capacity(n);
    let mut x = 3u64;
    while pool.len() < n {
        if is_prime(x) {
            pool.push(x);
        }
        x += 2;
    }
    let largest = pool.last().copied().unwrap_or(0);
    let mut seen = Vec::with_capacity(labels.len());
    for (index, &value) in labels.iter().enumerate() {
        if !is_prime(value) {
            return Err(VerifyError::NotPrime { index, value });
        }
        if value == 2 || value > largest {
            return Err(VerifyError::OutOfPool { index, value, n });
        }
        if seen.contains(&value) {
            return Err(VerifyError::DuplicatePrime { index, value });
        }
        seen.push(value);
    }
    let max = 2 * (n as u64).saturating_sub(1);
    let mut gaps = Vec::with_capacity(labels.len());
    for (edge, w) in labels.windows(2).enumerate() {
        let gap = w[0].abs_diff(w[1]);
        if gap % 2 != 0 {
            return Err(VerifyError::OddGap { edge, gap });
        }
        if gap < 2 || gap > max {
            return Err(VerifyError::GapOutOfRange { edge, gap, max });
        }
        if gaps.contains(&gap) {
            return Err(VerifyError::DuplicateGap { edge, gap });
        }
        gaps.push(gap);
    }
    Ok(())
}

/// [`verify_sequence`] plus the length condition `l = n`.
pub fn verify_elegant(labels: &[u64], n: usize) -> Result<(), VerifyError> {
    verify_sequence(labels, n)?;
    if labels.len() != n {
        return Err(VerifyError::Incomplete {
            len: labels.len(),
            n,
        });
    }
    Ok(())
}

/// An admissible path over `P_n`, stored as 1-based prime ranks.
///
/// Besides the sequence itself the state keeps, for every rank, its position
/// on the path; for every gap `2k`, the edge that carries it; and unordered
/// lists of free ranks and free gaps so that random draws and scans over the
/// free sets cost `O(1)` and `O(|free|)`.
#[derive(Clone, Debug)]
pub struct PathState<'p> {
    pool: &'p PrimePool,
    n: usize,
    seq: Vec<u32>,
    // pos_of[rank] = position + 1, 0 when free.
    pos_of: Vec<u32>,
    // edge_of[k] = edge index + 1 for gap 2k, 0 when free. Index 0 unused.
    edge_of: Vec<u32>,
    free_primes: Vec<u32>,
    free_prime_slot: Vec<u32>,
    // Free gaps stored as halves k (gap 2k).
    free_gaps: Vec<u32>,
    free_gap_slot: Vec<u32>,
    scratch: Vec<u32>,
}

impl PartialEq for PathState<'_> {
    // Observable state: target and sequence. Bookkeeping is derived from them,
    // except for the order of the free lists, which only steers random draws.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.seq == other.seq
    }
}

impl Eq for PathState<'_> {}

impl<'p> PathState<'p> {
    /// A one-prime path `p_{start_rank}` with target length `n`.
    pub fn new(pool: &'p PrimePool, n: usize, start_rank: usize) -> Result<Self, PathError> {
        let mut state = Self::empty(pool, n)?;
        if start_rank == 0 || start_rank > n {
            return Err(PathError::RankOutOfRange {
                rank: start_rank,
                n,
            });
        }
        state.seq.push(start_rank as u32);
        state.take_prime(start_rank as u32);
        state.pos_of[start_rank] = 1;
        Ok(state)
    }

    fn empty(pool: &'p PrimePool, n: usize) -> Result<Self, PathError> {
        if n < 2 {
            return Err(PathError::TargetTooSmall(n));
        }
        if pool.len() < n {
            return Err(PathError::PoolTooSmall {
                have: pool.len(),
                need: n,
            });
        }
        let free_primes: Vec<u32> = (1..=n as u32).collect();
        let mut free_prime_slot = vec![0u32; n + 1];
        for (slot, &r) in free_primes.iter().enumerate() {
            free_prime_slot[r as usize] = slot as u32;
        }
        let free_gaps: Vec<u32> = (1..n as u32).collect();
        let mut free_gap_slot = vec![0u32; n];
        for (slot, &k) in free_gaps.iter().enumerate() {
            free_gap_slot[k as usize] = slot as u32;
        }
        Ok(Self {
            pool,
            n,
            seq: Vec::with_capacity(n),
            pos_of: vec![0; n + 1],
            edge_of: vec![0; n],
            free_primes,
            free_prime_slot,
            free_gaps,
            free_gap_slot,
            scratch: Vec::with_capacity(n),
        })
    }

    /// Builds a state from explicit labels, rejecting anything inadmissible.
    pub fn from_labels(pool: &'p PrimePool, n: usize, labels: &[u64]) -> Result<Self, VerifyError> {
        verify_sequence(labels, n)?;
        let mut state = Self::empty(pool, n).map_err(|_| VerifyError::Incomplete {
            len: labels.len(),
            n,
        })?;
        let ranks: Vec<u32> = labels
            .iter()
            .map(|&p| pool.rank(p).expect("verified label is pooled") as u32)
            .collect();
        for &r in &ranks {
            state.take_prime(r);
        }
        state.seq = ranks;
        for e in 0..state.seq.len() - 1 {
            let g = state.edge_gap(e);
            state.take_gap(g);
        }
        state.reindex();
        Ok(state)
    }

    /// Builds a state from 1-based ranks.
    pub fn from_ranks(pool: &'p PrimePool, n: usize, ranks: &[u32]) -> Result<Self, VerifyError> {
        let labels: Vec<u64> = ranks
            .iter()
            .map(|&r| {
                if r == 0 || r as usize > pool.len() {
                    u64::MAX
                } else {
                    pool.prime(r as usize) as u64
                }
            })
            .collect();
        if let Some(index) = labels.iter().position(|&v| v == u64::MAX) {
            return Err(VerifyError::OutOfPool {
                index,
                value: ranks[index] as u64,
                n,
            });
        }
        Self::from_labels(pool, n, &labels)
    }

    pub fn pool(&self) -> &'p PrimePool {
        self.pool
    }

    /// Target length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Current length `l`.
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    /// Never true for a constructed state.
    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Largest admissible gap `2n - 2`.
    #[inline]
    pub fn max_gap(&self) -> u32 {
        2 * (self.n as u32 - 1)
    }

    /// The path as 1-based ranks.
    pub fn ranks(&self) -> &[u32] {
        &self.seq
    }

    /// The path as primes.
    pub fn labels(&self) -> Vec<u32> {
        self.seq
            .iter()
            .map(|&r| self.pool.prime(r as usize))
            .collect()
    }

    /// Prime at 0-based position `i`.
    #[inline]
    pub fn prime_at(&self, i: usize) -> u32 {
        self.pool.prime(self.seq[i] as usize)
    }

    #[inline]
    pub fn first(&self) -> u32 {
        self.prime_at(0)
    }

    #[inline]
    pub fn last(&self) -> u32 {
        self.prime_at(self.seq.len() - 1)
    }

    /// `|p_a - p_b|` for ranks `a`, `b`.
    #[inline]
    pub fn gap_between(&self, a: u32, b: u32) -> u32 {
        self.pool
            .prime(a as usize)
            .abs_diff(self.pool.prime(b as usize))
    }

    /// Gap carried by 0-based edge `e` (between positions `e` and `e + 1`).
    #[inline]
    pub fn edge_gap(&self, e: usize) -> u32 {
        self.gap_between(self.seq[e], self.seq[e + 1])
    }

    /// True when `gap` is an even value in `2..=2n-2` not used by any edge.
    #[inline]
    pub fn is_gap_free(&self, gap: u32) -> bool {
        gap >= 2
            && gap <= self.max_gap()
            && gap.is_multiple_of(2)
            && self.edge_of[gap as usize / 2] == 0
    }

    /// True when `gap` is in range and carried by some edge.
    #[inline]
    pub fn is_gap_used(&self, gap: u32) -> bool {
        gap >= 2
            && gap <= self.max_gap()
            && gap.is_multiple_of(2)
            && self.edge_of[gap as usize / 2] != 0
    }

    /// 0-based edge index carrying `gap`, if any.
    #[inline]
    pub fn gap_edge(&self, gap: u32) -> Option<usize> {
        if self.is_gap_used(gap) {
            Some(self.edge_of[gap as usize / 2] as usize - 1)
        } else {
            None
        }
    }

    #[inline]
    pub fn is_prime_free(&self, rank: u32) -> bool {
        rank >= 1 && (rank as usize) <= self.n && self.pos_of[rank as usize] == 0
    }

    /// 0-based position of `rank` on the path.
    #[inline]
    pub fn position_of(&self, rank: u32) -> Option<usize> {
        if rank == 0 || rank as usize > self.n {
            return None;
        }
        match self.pos_of[rank as usize] {
            0 => None,
            p => Some(p as usize - 1),
        }
    }

    /// Free ranks, in internal (history dependent) order.
    pub fn free_primes(&self) -> &[u32] {
        &self.free_primes
    }

    /// Free gaps, in internal (history dependent) order.
    pub fn free_gaps(&self) -> impl Iterator<Item = u32> + '_ {
        self.free_gaps.iter().map(|&k| 2 * k)
    }

    pub fn free_gap_count(&self) -> usize {
        self.free_gaps.len()
    }

    /// Free primes as sorted values.
    pub fn free_prime_values(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .free_primes
            .iter()
            .map(|&r| self.pool.prime(r as usize))
            .collect();
        v.sort_unstable();
        v
    }

    /// Free gaps, sorted.
    pub fn free_gap_values(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.free_gaps().collect();
        v.sort_unstable();
        v
    }

    /// The cut after `cut` primes, if `1 <= cut <= l - 1`.
    pub fn split(&self, cut: usize) -> Option<SplitView> {
        if cut == 0 || cut >= self.seq.len() {
            return None;
        }
        Some(SplitView {
            cut,
            delta: self.edge_gap(cut - 1),
        })
    }

    /// `l = n`; with the admissibility invariants this is elegance.
    pub fn is_elegant(&self) -> bool {
        self.seq.len() == self.n
    }

    /// Appends the free prime `rank` at `end` when the new gap is free.
    /// Leaves the state untouched and returns false otherwise.
    pub fn try_extend(&mut self, rank: u32, end: End) -> bool {
        if !self.is_prime_free(rank) || self.seq.len() >= self.n {
            return false;
        }
        let anchor = match end {
            End::Left => self.seq[0],
            End::Right => self.seq[self.seq.len() - 1],
        };
        let gap = self.gap_between(anchor, rank);
        if !self.is_gap_free(gap) {
            return false;
        }
        self.take_prime(rank);
        self.take_gap(gap);
        match end {
            End::Right => {
                self.seq.push(rank);
                let l = self.seq.len();
                self.pos_of[rank as usize] = l as u32;
                self.edge_of[gap as usize / 2] = (l - 1) as u32;
            }
            End::Left => {
                self.seq.insert(0, rank);
                self.reindex();
            }
        }
        true
    }

    /// Removes the right-end prime, releasing it and its gap.
    pub fn pop_last(&mut self) -> Option<u32> {
        if self.seq.len() <= 1 {
            return None;
        }
        let gap = self.edge_gap(self.seq.len() - 2);
        let rank = self.seq.pop().expect("nonempty");
        self.pos_of[rank as usize] = 0;
        self.release_prime(rank);
        self.release_gap(gap);
        Some(rank)
    }

    /// Replaces the sequence by the one `build` writes from the current
    /// sequence, together with the exact differences the rewrite makes to the
    /// prime and gap sets. The caller guarantees the result is admissible.
    pub(crate) fn rebuild(
        &mut self,
        changes: SetChanges<'_>,
        build: impl FnOnce(&[u32], &mut Vec<u32>),
    ) {
        let mut next = core::mem::take(&mut self.scratch);
        next.clear();
        build(&self.seq, &mut next);
        core::mem::swap(&mut self.seq, &mut next);
        self.scratch = next;
        for &g in changes.freed {
            self.release_gap(g);
        }
        for &g in changes.consumed {
            self.take_gap(g);
        }
        if let Some(r) = changes.removed_prime {
            self.pos_of[r as usize] = 0;
            self.release_prime(r);
        }
        if let Some(r) = changes.inserted_prime {
            self.take_prime(r);
        }
        self.reindex();
    }

    fn reindex(&mut self) {
        for (i, &r) in self.seq.iter().enumerate() {
            self.pos_of[r as usize] = (i + 1) as u32;
        }
        for e in 0..self.seq.len().saturating_sub(1) {
            let g = self.edge_gap(e);
            self.edge_of[g as usize / 2] = (e + 1) as u32;
        }
    }

    fn take_prime(&mut self, r: u32) {
        let slot = self.free_prime_slot[r as usize] as usize;
        debug_assert_eq!(self.free_primes[slot], r);
        let last = self.free_primes.pop().expect("free prime present");
        if last != r {
            self.free_primes[slot] = last;
            self.free_prime_slot[last as usize] = slot as u32;
        }
    }

    fn release_prime(&mut self, r: u32) {
        self.free_prime_slot[r as usize] = self.free_primes.len() as u32;
        self.free_primes.push(r);
    }

    fn take_gap(&mut self, g: u32) {
        let k = g / 2;
        let slot = self.free_gap_slot[k as usize] as usize;
        debug_assert_eq!(self.free_gaps[slot], k);
        let last = self.free_gaps.pop().expect("free gap present");
        if last != k {
            self.free_gaps[slot] = last;
            self.free_gap_slot[last as usize] = slot as u32;
        }
    }

    fn release_gap(&mut self, g: u32) {
        let k = g / 2;
        self.edge_of[k as usize] = 0;
        self.free_gap_slot[k as usize] = self.free_gaps.len() as u32;
        self.free_gaps.push(k);
    }

    /// Full consistency audit of the bookkeeping against the sequence.
    pub fn check_invariants(&self) -> Result<(), &'static str> {
        let labels: Vec<u64> = self.labels().iter().map(|&p| p as u64).collect();
        if verify_sequence(&labels, self.n).is_err() {
            return Err("sequence is not admissible");
        }
        let l = self.seq.len();
        if self.free_primes.len() != self.n - l {
            return Err("free prime count");
        }
        if self.free_gaps.len() != self.n - l {
            return Err("free gap count");
        }
        for r in 1..=self.n as u32 {
            match self.position_of(r) {
                Some(p) if self.seq.get(p) != Some(&r) => return Err("pos_of mismatch"),
                None if self.seq.contains(&r) => return Err("used prime marked free"),
                _ => {}
            }
            if self.is_prime_free(r) {
                let slot = self.free_prime_slot[r as usize] as usize;
                if self.free_primes.get(slot) != Some(&r) {
                    return Err("free prime slot");
                }
            }
        }
        for e in 0..l.saturating_sub(1) {
            if self.gap_edge(self.edge_gap(e)) != Some(e) {
                return Err("edge_of mismatch");
            }
        }
        for k in 1..self.n as u32 {
            let used = self.edge_of[k as usize] != 0;
            let listed = {
                let slot = self.free_gap_slot[k as usize] as usize;
                self.free_gaps.get(slot) == Some(&k)
            };
            if used == listed {
                return Err("free gap list");
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state<'p>(pool: &'p PrimePool, n: usize, labels: &[u64]) -> PathState<'p> {
        PathState::from_labels(pool, n, labels).unwrap()
    }

    #[test]
    fn new_path_eleven_from_five() {
        let pool = PrimePool::new(11);
        let s = PathState::new(&pool, 11, pool.rank(5).unwrap()).unwrap();
        assert_eq!(s.ranks(), &[2]);
        assert_eq!(
            s.free_gap_values(),
            (1..=10).map(|k| 2 * k).collect::<Vec<_>>()
        );
        s.check_invariants().unwrap();
    }

    #[test]
    fn new_path_small_targets() {
        let pool = PrimePool::new(3);
        let s = PathState::new(&pool, 2, 1).unwrap();
        assert_eq!(s.free_prime_values(), [5]);
        let s = PathState::new(&pool, 3, 3).unwrap();
        assert_eq!(s.labels(), [7]);
        assert_eq!(s.free_gap_values(), [2, 4]);
        assert_eq!(
            PathState::new(&pool, 1, 1).unwrap_err(),
            PathError::TargetTooSmall(1)
        );
        assert!(PathState::new(&pool, 3, 4).is_err());
        assert!(PathState::new(&pool, 4, 1).is_err());
    }

    #[test]
    fn extend_follows_trace() {
        let pool = PrimePool::new(11);
        let mut s = PathState::new(&pool, 11, 2).unwrap();
        assert!(s.try_extend(pool.rank(7).unwrap() as u32, End::Right));
        assert!(!s.is_gap_free(2));
        assert!(s.try_extend(pool.rank(3).unwrap() as u32, End::Right));
        assert!(!s.is_gap_free(4));
        assert_eq!(s.labels(), [5, 7, 3]);
        s.check_invariants().unwrap();
    }

    #[test]
    fn extend_rejects_used_gap_without_mutation() {
        let pool = PrimePool::new(4);
        let mut s = state(&pool, 4, &[3, 5]);
        let before = s.clone();
        assert!(!s.try_extend(pool.rank(7).unwrap() as u32, End::Right));
        assert_eq!(s, before);
        assert_eq!(s.free_prime_values(), before.free_prime_values());
        // Used prime is rejected too.
        assert!(!s.try_extend(1, End::Left));
        s.check_invariants().unwrap();
    }

    #[test]
    fn extend_left_reindexes() {
        let pool = PrimePool::new(5);
        let mut s = state(&pool, 5, &[3, 5]);
        assert!(s.try_extend(pool.rank(11).unwrap() as u32, End::Left));
        assert_eq!(s.labels(), [11, 3, 5]);
        assert_eq!(s.gap_edge(8), Some(0));
        assert_eq!(s.gap_edge(2), Some(1));
        s.check_invariants().unwrap();
    }

    #[test]
    fn elegance() {
        let pool = PrimePool::new(3);
        assert!(state(&pool, 2, &[3, 5]).is_elegant());
        assert!(state(&pool, 3, &[5, 3, 7]).is_elegant());
        assert!(state(&pool, 3, &[3, 7, 5]).is_elegant());
        assert!(!state(&pool, 3, &[3, 5]).is_elegant());
    }

    #[test]
    fn verify_listed_paths() {
        assert_eq!(verify_sequence(&[13, 7, 11, 3, 5], 5), Ok(()));
        assert_eq!(
            verify_elegant(&[19, 31, 17, 23, 13, 29, 11, 3, 7, 5], 10),
            Ok(())
        );
        assert_eq!(
            verify_sequence(&[3, 5, 9], 3).unwrap_err().code(),
            "non-prime"
        );
    }

    #[test]
    fn verify_reason_codes() {
        assert_eq!(verify_sequence(&[], 3).unwrap_err(), VerifyError::Empty);
        assert_eq!(
            verify_sequence(&[3, 5, 3], 3).unwrap_err().code(),
            "duplicate-prime"
        );
        assert_eq!(
            verify_sequence(&[3, 11], 3).unwrap_err().code(),
            "out-of-pool"
        );
        assert_eq!(
            verify_sequence(&[2, 3], 3).unwrap_err().code(),
            "out-of-pool"
        );
        assert_eq!(
            verify_sequence(&[3, 5, 7], 3).unwrap_err().code(),
            "duplicate-gap"
        );
        assert_eq!(
            verify_sequence(&[3, 11], 4).unwrap_err().code(),
            "gap-out-of-range"
        );
        assert_eq!(verify_elegant(&[3, 5], 3).unwrap_err().code(), "incomplete");
        assert_eq!(verify_sequence(&[7], 4), Ok(()));
    }

    #[test]
    fn greedy_phase_free_sets() {
        let pool = PrimePool::new(11);
        let s = state(&pool, 11, &[5, 7, 3, 19, 31, 11, 29, 37, 23, 17]);
        assert_eq!(s.free_prime_values(), [13]);
        assert_eq!(s.free_gap_values(), [10]);
        s.check_invariants().unwrap();
        let full = state(&pool, 11, &[17, 7, 3, 5, 23, 37, 29, 13, 19, 31, 11]);
        assert!(full.free_primes().is_empty());
        assert_eq!(full.free_gap_count(), 0);
        let pool4 = PrimePool::new(4);
        assert_eq!(
            PathState::new(&pool4, 4, 1).unwrap().free_gap_values(),
            [2, 4, 6]
        );
    }

    #[test]
    fn pop_last_releases() {
        let pool = PrimePool::new(5);
        let mut s = state(&pool, 5, &[13, 7, 11, 3, 5]);
        assert_eq!(s.pop_last(), Some(pool.rank(5).unwrap() as u32));
        assert_eq!(s.free_prime_values(), [5]);
        assert_eq!(s.free_gap_values(), [2]);
        s.check_invariants().unwrap();
        let mut one = PathState::new(&pool, 5, 1).unwrap();
        assert_eq!(one.pop_last(), None);
    }

    #[test]
    fn split_views() {
        let pool = PrimePool::new(5);
        let s = state(&pool, 5, &[13, 7, 11, 3, 5]);
        assert_eq!(s.split(1), Some(SplitView { cut: 1, delta: 6 }));
        assert_eq!(s.split(4), Some(SplitView { cut: 4, delta: 2 }));
        assert_eq!(s.split(0), None);
        assert_eq!(s.split(5), None);
    }
}
