use elegant_core::search::*;
use elegant_core::{verify_elegant, verify_sequence, PathState, PrimePool};

fn never() -> bool {
    false
}

fn as_u64(v: &[u32]) -> Vec<u64> {
    v.iter().map(|&p| p as u64).collect()
}

#[test]
fn greedy_reaches_known_ten_path() {
    let pool = PrimePool::new(11);
    let mut rng = run_rng(8_323_445, 0);
    let start = 1 + rng.below(11);
    assert_eq!(pool.prime(start), 5);
    let mut state = PathState::new(&pool, 11, start).unwrap();
    greedy_extend(&mut state, &mut rng, &mut Tally::default());
    assert_eq!(state.labels(), [5, 7, 3, 19, 31, 11, 29, 37, 23, 17]);
    assert_eq!(state.free_prime_values(), [13]);
    assert_eq!(state.free_gap_values(), [10]);
}

#[test]
fn greedy_mean_lengths_at_eight() {
    // Totals over seeds 0..1000 for each starting rank.
    let expected = [6599, 6650, 6585, 6720, 6643, 6609, 6641, 6716];
    let pool = PrimePool::new(8);
    for (start, want) in (1..=8).zip(expected) {
        let mut total = 0;
        for seed in 0..1000 {
            let mut s = PathState::new(&pool, 8, start).unwrap();
            greedy_extend(&mut s, &mut run_rng(seed, 0), &mut Tally::default());
            verify_sequence(&as_u64(&s.labels()), 8).unwrap();
            total += s.len();
        }
        assert_eq!(total, want, "start rank {start}");
    }
}

#[test]
fn same_seed_same_report() {
    let pool = PrimePool::new(150);
    for n in [9, 40, 150] {
        let cfg = SearchConfig::algorithm2(n).with_seed(99);
        let (a_state, a) = algorithm2(&pool, &cfg, Some(50), &never);
        let (b_state, b) = algorithm2(&pool, &cfg, Some(50), &never);
        assert_eq!(a, b);
        assert_eq!(a_state.labels(), b_state.labels());
        let (_, c) = algorithm2(&pool, &cfg.clone().with_seed(100), Some(50), &never);
        assert_ne!(a.tally, c.tally);
    }
}

#[test]
fn found_paths_verify_and_budgets_hold() {
    let pool = PrimePool::new(60);
    for n in 2..=60 {
        for seed in 0..3 {
            let cfg = SearchConfig::algorithm1(n).with_seed(seed);
            let (state, rep) = algorithm1(&pool, &cfg, &never);
            assert!(rep.steps_used <= cfg.budget());
            assert_eq!(rep.runs, 1);
            assert_eq!(rep.found, rep.final_length == n);
            assert_eq!(rep.final_length, state.len());
            verify_sequence(&as_u64(&state.labels()), n).unwrap();
            if let Some(path) = &rep.path {
                verify_elegant(&as_u64(path), n).unwrap();
            }
        }
    }
}

#[test]
fn exhausted_budget_leaves_admissible_path() {
    let pool = PrimePool::new(8);
    let mut cfg = SearchConfig::algorithm1(8).with_seed(5);
    cfg.budget_mult = 1;
    let (state, rep) = algorithm1(&pool, &cfg, &never);
    assert!(!rep.found);
    assert!(rep.final_length < 8);
    assert!(rep.path.is_none());
    assert!(!rep.cancelled);
    assert_eq!(rep.steps_used, 8);
    verify_sequence(&as_u64(&state.labels()), 8).unwrap();
}

#[test]
fn audit_mode_finds_no_violations() {
    let pool = PrimePool::new(120);
    for n in [10, 50, 120] {
        let mut cfg = SearchConfig::algorithm2(n).with_seed(3);
        cfg.audit_every = Some(1);
        let (_, rep) = algorithm2(&pool, &cfg, Some(20), &never);
        assert!(rep.tally.audits > 0);
        assert_eq!(rep.tally.audit_failures, 0);
    }
}

#[test]
fn tail_rounds_are_bounded() {
    let pool = PrimePool::new(300);
    let mut cfg = SearchConfig::algorithm2(300).with_seed(1);
    cfg.tail_delta = 3;
    let (_, rep) = algorithm2(&pool, &cfg, Some(3), &never);
    assert!(rep.tail_rounds <= rep.runs * cfg.c0 as u64);
    assert!(rep.tally.tail_drops <= rep.tail_rounds);
}

#[test]
fn zero_tail_is_plain_restarting() {
    let pool = PrimePool::new(30);
    let mut cfg = SearchConfig::algorithm1(30).with_seed(11);
    cfg.tail_delta = 0;
    let (one_state, one) = algorithm1(&pool, &cfg, &never);
    let (two_state, two) = algorithm2(&pool, &cfg, Some(1), &never);
    assert_eq!(one_state.labels(), two_state.labels());
    assert_eq!(one.tally, two.tally);
    assert_eq!(two.tail_rounds, 0);
}

#[test]
fn cases_are_drawn_uniformly() {
    let pool = PrimePool::new(400);
    let cfg = SearchConfig::algorithm1(400).with_seed(0);
    let mut rng = run_rng(0, 0);
    let mut state = PathState::new(&pool, 400, 1).unwrap();
    let mut tally = Tally::default();
    greedy_extend(&mut state, &mut rng, &mut tally);
    let steps = 10_000u64;
    for _ in 0..steps {
        if state.len() == state.n() {
            break;
        }
        shuffle_step(&mut state, &cfg, &mut rng, &mut tally);
    }
    let total: u64 = tally.cases.iter().sum();
    let expect = total as f64 / 3.0;
    let chi2: f64 = tally
        .cases
        .iter()
        .map(|&c| (c as f64 - expect).powi(2) / expect)
        .sum();
    // 99.9% quantile of chi-square with two degrees of freedom.
    assert!(chi2 < 13.8, "cases {:?}", tally.cases);
}

#[test]
fn stop_before_start_cancels_algorithm1() {
    let pool = PrimePool::new(500);
    let cfg = SearchConfig::algorithm1(500);
    let (state, rep) = algorithm1(&pool, &cfg, &|| true);
    assert!(rep.cancelled);
    assert_eq!(rep.steps_used, 0);
    verify_sequence(&as_u64(&state.labels()), 500).unwrap();
}
