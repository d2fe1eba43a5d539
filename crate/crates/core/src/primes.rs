//! The odd primes `3, 5, 7, 11, ...` used as vertex labels.

use alloc::vec;
use alloc::vec::Vec;

/// The first `count` odd primes with constant-time rank lookup.
///
/// Ranks are 1-based: rank 1 is `3`, rank 2 is `5`, and so on. The prime `2`
/// is never part of a pool.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePool {
    values: Vec<u32>,
    // rank_by_half[p / 2] = rank of p, 0 when p is not pooled.
    rank_by_half: Vec<u32>,
}

impl PrimePool {
    /// Builds the pool of the first `m` odd primes. `m = 0` is treated as 1.
    pub fn new(m: usize) -> Self {
        let m = m.max(1);
        let mut bound = initial_bound(m);
        loop {
            let odd = odd_primes_up_to(bound);
            if odd.len() >= m {
                let values: Vec<u32> = odd[..m].to_vec();
                let last = values[m - 1] as usize;
                let mut rank_by_half = vec![0u32; last / 2 + 1];
                for (i, &p) in values.iter().enumerate() {
                    rank_by_half[p as usize / 2] = (i + 1) as u32;
                }
                return Self {
                    values,
                    rank_by_half,
                };
            }
            bound *= 2;
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Never true; a pool holds at least `3`.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// All pooled primes in increasing order.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// The prime of 1-based rank `rank`.
    ///
    /// Panics when `rank` is 0 or larger than the pool.
    #[inline]
    pub fn prime(&self, rank: usize) -> u32 {
        self.values[rank - 1]
    }

    /// 1-based rank of `p`, or `None` when `p` is not one of the pooled primes.
    #[inline]
    pub fn rank(&self, p: u64) -> Option<usize> {
        if p.is_multiple_of(2) {
            return None;
        }
        let idx = usize::try_from(p / 2).ok()?;
        match self.rank_by_half.get(idx) {
            Some(&r) if r != 0 => Some(r as usize),
            _ => None,
        }
    }

    /// The largest pooled prime.
    pub fn largest(&self) -> u32 {
        self.values[self.values.len() - 1]
    }
}

// Loose over-estimate of the m-th odd prime; the caller doubles on a miss.
fn initial_bound(m: usize) -> usize {
    let k = m + 1;
    let log2 = (usize::BITS - k.leading_zeros()) as usize;
    (k * (log2 + 2)).max(16)
}

/// Odd primes `<= bound` by a sieve of Eratosthenes over odd numbers.
pub fn odd_primes_up_to(bound: usize) -> Vec<u32> {
    if bound < 3 {
        return Vec::new();
    }
    // composite[i] describes 2i + 1.
    let len = bound / 2 + 1;
    let mut composite = vec![false; len];
    composite[0] = true;
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= bound {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < len {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    composite
        .iter()
        .enumerate()
        .filter(|&(i, &c)| !c && 2 * i < bound)
        .map(|(i, _)| (2 * i + 1) as u32)
        .collect()
}

/// Trial-division primality, independent of any sieve.
pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x.is_multiple_of(2) {
        return x == 2;
    }
    let mut d = 3u64;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_pool_is_three() {
        assert_eq!(PrimePool::new(1).values(), &[3]);
    }

    #[test]
    fn eleven_primes_end_at_37() {
        let pool = PrimePool::new(11);
        assert_eq!(pool.largest(), 37);
        assert_eq!(pool.values(), &[3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
    }

    #[test]
    fn rank_lookup() {
        let pool = PrimePool::new(5);
        assert_eq!(pool.rank(3), Some(1));
        assert_eq!(pool.rank(13), Some(5));
        assert_eq!(pool.rank(4), None);
        assert_eq!(pool.rank(2), None);
        assert_eq!(pool.rank(9), None);
        assert_eq!(pool.rank(17), None);
        assert_eq!(pool.rank(u64::MAX), None);
    }

    #[test]
    fn large_pool_matches_trial_division() {
        let pool = PrimePool::new(3500);
        let mut expected = Vec::new();
        let mut x = 3u64;
        while expected.len() < 3500 {
            if is_prime(x) {
                expected.push(x as u32);
            }
            x += 2;
        }
        assert_eq!(pool.values(), &expected[..]);
        assert_eq!(pool.prime(3500), 32_611);
    }

    #[test]
    fn trial_division_basics() {
        let primes: Vec<u64> = (0..30).filter(|&x| is_prime(x)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
