//! Elegant labelings of arbitrary small simple graphs.
//!
//! A graph with `r` edges is labeled from the first `r + 1` odd primes; the
//! labeling is elegant when it is injective and the edge differences are
//! exactly `{2, 4, ..., 2r}`.

use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::primes::{is_prime, PrimePool};
use crate::search::Chooser;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {0}) is a loop")]
    Loop(usize),
    #[error("edge ({0}, {1}) is repeated")]
    MultiEdge(usize, usize),
    #[error("vertex {vertex} is outside 0..{count}")]
    VertexOutOfRange { vertex: usize, count: usize },
}

/// A simple undirected graph on vertices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphInstance {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphInstance {
    /// Edges are stored as given, each normalized to `(min, max)`.
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        count: vertex_count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            let e = (u.min(v), u.max(v));
            if out.contains(&e) {
                return Err(GraphError::MultiEdge(e.0, e.1));
            }
            out.push(e);
        }
        Ok(Self {
            vertex_count,
            edges: out,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
        adj
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    /// Star `S_n`: center 0 joined to leaves `1..n`.
    pub fn star(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (0, i))).expect("star is simple")
    }

    /// Complete graph `K_k`.
    pub fn complete(k: usize) -> Self {
        let edges = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b)));
        Self::new(k, edges).expect("complete graph is simple")
    }

    /// Petersen graph: outer cycle `0..5`, inner pentagram `5..10`, spokes `i - (i+5)`.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::new(10, edges).expect("Petersen graph is simple")
    }

    /// Regular caterpillar `C_n`: spine `0..n`, each spine vertex of degree 3,
    /// hence `n + 2` leaves numbered after the spine.
    pub fn regular_caterpillar(n: usize) -> Self {
        let n = n.max(1);
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        let mut next = n;
        for v in 0..n {
            let spine_neighbors = usize::from(v > 0) + usize::from(v + 1 < n);
            for _ in spine_neighbors..3 {
                edges.push((v, next));
                next += 1;
            }
        }
        Self::new(next, edges).expect("caterpillar is simple")
    }

    /// `C_n` with one extra vertex hung on its first leaf.
    pub fn caterpillar_extra_leaf(n: usize) -> Self {
        let base = Self::regular_caterpillar(n);
        let leaf = base.vertex_count - 1;
        let mut edges = base.edges;
        edges.push((leaf, base.vertex_count));
        Self::new(base.vertex_count + 1, edges).expect("simple")
    }

    /// `C_n` with its last leaf removed.
    pub fn caterpillar_missing_leaf(n: usize) -> Self {
        let base = Self::regular_caterpillar(n);
        let leaf = base.vertex_count - 1;
        let edges = base
            .edges
            .into_iter()
            .filter(|&(a, b)| a != leaf && b != leaf);
        Self::new(base.vertex_count - 1, edges).expect("simple")
    }
}

/// Labels per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphLabeling {
    pub labels: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("{labels} labels for {vertices} vertices")]
    LabelCountMismatch { vertices: usize, labels: usize },
    #[error(
        "{vertices} vertices cannot be labeled injectively from {primes} primes ({edges} edges)"
    )]
    EdgeCountMismatch {
        vertices: usize,
        edges: usize,
        primes: usize,
    },
    #[error("label {value} of vertex {vertex} is not prime")]
    NotPrime { vertex: usize, value: u64 },
    #[error("label {value} of vertex {vertex} is not among the first {primes} odd primes")]
    OutOfPool {
        vertex: usize,
        value: u64,
        primes: usize,
    },
    #[error("label {value} is repeated at vertex {vertex}")]
    DuplicatePrime { vertex: usize, value: u64 },
    #[error("difference {gap} on edge {edge} is repeated")]
    DuplicateGap { edge: usize, gap: u64 },
    #[error("difference {gap} on edge {edge} is outside 2..={max}")]
    GapOutOfRange { edge: usize, gap: u64, max: u64 },
}

impl LabelingError {
    pub fn code(&self) -> &'static str {
        match self {
            LabelingError::LabelCountMismatch { .. } => "label-count",
            LabelingError::EdgeCountMismatch { .. } => "edge-count",
            LabelingError::NotPrime { .. } => "non-prime",
            LabelingError::OutOfPool { .. } => "out-of-pool",
            LabelingError::DuplicatePrime { .. } => "duplicate-prime",
            LabelingError::DuplicateGap { .. } => "duplicate-gap",
            LabelingError::GapOutOfRange { .. } => "gap-out-of-range",
        }
    }
}

/// Checks that `lab` is an elegant labeling of `g`.
pub fn verify_graph_labeling(g: &GraphInstance, lab: &GraphLabeling) -> Result<(), LabelingError> {
    let vertices = g.vertex_count();
    let r = g.edge_count();
    if lab.labels.len() != vertices {
        return Err(LabelingError::LabelCountMismatch {
            vertices,
            labels: lab.labels.len(),
        });
    }
    if vertices > r + 1 {
        return Err(LabelingError::EdgeCountMismatch {
            vertices,
            edges: r,
            primes: r + 1,
        });
    }
    let mut largest = 3u64;
    let mut found = 1;
    while found < r + 1 {
        largest += 2;
        if is_prime(largest) {
            found += 1;
        }
    }
    let mut seen: Vec<u64> = Vec::with_capacity(vertices);
    for (vertex, &value) in lab.labels.iter().enumerate() {
        if !is_prime(value) {
            return Err(LabelingError::NotPrime { vertex, value });
        }
        if value == 2 || value > largest {
            return Err(LabelingError::OutOfPool {
                vertex,
                value,
                primes: r + 1,
            });
        }
        if seen.contains(&value) {
            return Err(LabelingError::DuplicatePrime { vertex, value });
        }
        seen.push(value);
    }
    let max = 2 * r as u64;
    let mut hit = vec![false; r + 1];
    for (edge, &(a, b)) in g.edges().iter().enumerate() {
        let gap = lab.labels[a].abs_diff(lab.labels[b]);
        if gap < 2 || gap > max || !gap.is_multiple_of(2) {
            return Err(LabelingError::GapOutOfRange { edge, gap, max });
        }
        let k = (gap / 2) as usize;
        if hit[k] {
            return Err(LabelingError::DuplicateGap { edge, gap });
        }
        hit[k] = true;
    }
    Ok(())
}

/// The node budget of an exhaustive search ran out before a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search limit of {limit} nodes exceeded")]
pub struct LimitExceeded {
    pub limit: u64,
}

// Order vertices so that each one after the first has as many already-placed
// neighbors as possible, starting from a vertex of maximum degree.
fn placement_order(g: &GraphInstance) -> Vec<usize> {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut links = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], adj[v].len(), core::cmp::Reverse(v)))
            .expect("unplaced vertex");
        placed[v] = true;
        order.push(v);
        for &(w, _) in &adj[v] {
            links[w] += 1;
        }
    }
    order
}

struct Exhaustive<'a> {
    primes: &'a [u32],
    max_gap: u64,
    order: Vec<usize>,
    // earlier[i] = placed neighbors of order[i].
    earlier: Vec<Vec<usize>>,
    labels: Vec<u64>,
    used_label: Vec<bool>,
    used_gap: Vec<bool>,
    nodes: u64,
    limit: u64,
}

impl Exhaustive<'_> {
    fn descend(&mut self, i: usize) -> Result<bool, LimitExceeded> {
        if i == self.order.len() {
            return Ok(true);
        }
        let v = self.order[i];
        let mut new_gaps: Vec<usize> = Vec::with_capacity(self.earlier[i].len());
        for li in 0..self.primes.len() {
            if self.used_label[li] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(LimitExceeded { limit: self.limit });
            }
            let p = self.primes[li] as u64;
            new_gaps.clear();
            let mut ok = true;
            for &w in &self.earlier[i] {
                let gap = p.abs_diff(self.labels[w]);
                let k = (gap / 2) as usize;
                if gap > self.max_gap || self.used_gap[k] || new_gaps.contains(&k) {
                    ok = false;
                    break;
                }
                new_gaps.push(k);
            }
            if !ok {
                continue;
            }
            self.used_label[li] = true;
            for &k in &new_gaps {
                self.used_gap[k] = true;
            }
            self.labels[v] = p;
            if self.descend(i + 1)? {
                return Ok(true);
            }
            self.used_label[li] = false;
            for &k in &new_gaps {
                self.used_gap[k] = false;
            }
        }
        Ok(false)
    }
}

/// Backtracking over injective labelings with pruning on repeated
/// differences. `Ok(None)` certifies that no elegant labeling exists.
pub fn exhaustive_graph_search(
    g: &GraphInstance,
    limit: u64,
) -> Result<Option<GraphLabeling>, LimitExceeded> {
    let n = g.vertex_count();
    let r = g.edge_count();
    if n > r + 1 {
        return Ok(None);
    }
    let pool = PrimePool::new(r + 1);
    let order = placement_order(g);
    let mut index_of = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        index_of[v] = i;
    }
    let adj = g.adjacency();
    let earlier = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            adj[v]
                .iter()
                .map(|&(w, _)| w)
                .filter(|&w| index_of[w] < i)
                .collect()
        })
        .collect();
    let mut search = Exhaustive {
        primes: pool.values(),
        max_gap: 2 * r as u64,
        order,
        earlier,
        labels: vec![0; n],
        used_label: vec![false; r + 1],
        used_gap: vec![false; r + 1],
        nodes: 0,
        limit,
    };
    if search.descend(0)? {
        Ok(Some(GraphLabeling {
            labels: search.labels,
        }))
    } else {
        Ok(None)
    }
}

fn star_gaps(center: i64, gap: i64, leaves: &mut Vec<i64>, remaining: &mut Vec<i64>) -> bool {
    if gap == 0 {
        return remaining.is_empty();
    }
    for cand in [center + gap, center - gap] {
        if let Some(i) = remaining.iter().position(|&p| p == cand) {
            remaining.swap_remove(i);
            leaves.push(cand);
            if star_gaps(center, gap - 2, leaves, remaining) {
                return true;
            }
            leaves.pop();
            remaining.push(cand);
        }
    }
    false
}

/// Elegant labeling of the star `S_n` (center first), or `None` when there
/// is none. Complete: every center is tried and every gap, from the largest
/// down, is matched to the leaf `center + gap` or `center - gap`.
pub fn star_search(n: usize) -> Option<GraphLabeling> {
    if n == 0 {
        return None;
    }
    if n == 1 {
        return Some(GraphLabeling { labels: vec![3] });
    }
    let pool = PrimePool::new(n);
    let primes: Vec<i64> = pool.values().iter().map(|&p| p as i64).collect();
    for &center in &primes {
        let mut remaining: Vec<i64> = primes.iter().copied().filter(|&p| p != center).collect();
        let mut leaves = Vec::with_capacity(n - 1);
        if star_gaps(center, 2 * (n as i64 - 1), &mut leaves, &mut remaining) {
            let mut labels = vec![center as u64];
            // Vertex i carries gap 2i.
            leaves.reverse();
            labels.extend(leaves.iter().map(|&p| p as u64));
            return Some(GraphLabeling { labels });
        }
    }
    None
}

/// Parameters of [`stochastic_graph_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StochasticConfig {
    pub seed: u64,
    pub restarts: u32,
    /// Moves per restart.
    pub iterations: u64,
}

impl Default for StochasticConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            restarts: 50,
            iterations: 20_000,
        }
    }
}

struct Climber<'a> {
    g: &'a GraphInstance,
    adj: Vec<Vec<(usize, usize)>>,
    primes: &'a [u32],
    max_k: usize,
    // label index per vertex
    label: Vec<usize>,
    owner: Vec<Option<usize>>,
    // count[k] = edges with difference 2k (k in 1..=r); count[0] collects the rest.
    count: Vec<u32>,
    missing: usize,
}

impl Climber<'_> {
    fn key(&self, a: usize, b: usize) -> usize {
        let gap = self.primes[self.label[a]].abs_diff(self.primes[self.label[b]]) as usize;
        let k = gap / 2;
        if k >= 1 && k <= self.max_k {
            k
        } else {
            0
        }
    }

    fn remove_edge(&mut self, e: usize) {
        let (a, b) = self.g.edges()[e];
        let k = self.key(a, b);
        self.count[k] -= 1;
        if k != 0 && self.count[k] == 0 {
            self.missing += 1;
        }
    }

    fn add_edge(&mut self, e: usize) {
        let (a, b) = self.g.edges()[e];
        let k = self.key(a, b);
        if k != 0 && self.count[k] == 0 {
            self.missing -= 1;
        }
        self.count[k] += 1;
    }

    fn touching(&self, vs: &[usize], out: &mut Vec<usize>) {
        out.clear();
        for &v in vs {
            for &(_, e) in &self.adj[v] {
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        }
    }

    fn reset<C: Chooser>(&mut self, rng: &mut C) {
        let m = self.primes.len();
        let mut perm: Vec<usize> = (0..m).collect();
        for i in (1..m).rev() {
            perm.swap(i, rng.below(i + 1));
        }
        self.owner.iter_mut().for_each(|o| *o = None);
        for (v, &p) in perm.iter().enumerate().take(self.g.vertex_count()) {
            self.label[v] = p;
            self.owner[p] = Some(v);
        }
        self.count.iter_mut().for_each(|c| *c = 0);
        self.missing = self.max_k;
        for e in 0..self.g.edge_count() {
            self.add_edge(e);
        }
    }
}

/// Restarted hill climbing over injective labelings, minimizing the number
/// of differences in `{2, ..., 2r}` not realized by any edge. Moves swap two
/// labels or replace one label by an unused prime; moves that do not make
/// things worse are kept. Returns a verified labeling or `None`; `None`
/// certifies nothing.
pub fn stochastic_graph_search(
    g: &GraphInstance,
    config: &StochasticConfig,
) -> Option<GraphLabeling> {
    let n = g.vertex_count();
    let r = g.edge_count();
    if n > r + 1 || n == 0 {
        return None;
    }
    if r == 0 {
        return Some(GraphLabeling { labels: vec![3] });
    }
    let pool = PrimePool::new(r + 1);
    let mut climber = Climber {
        g,
        adj: g.adjacency(),
        primes: pool.values(),
        max_k: r,
        label: vec![0; n],
        owner: vec![None; r + 1],
        count: vec![0; r + 1],
        missing: r,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut edges = Vec::new();
    for _ in 0..config.restarts {
        climber.reset(&mut rng);
        for _ in 0..config.iterations {
            if climber.missing == 0 {
                break;
            }
            let before = climber.missing;
            let v = rng.below(n);
            let target = rng.below(r + 1);
            if target == climber.label[v] {
                continue;
            }
            match climber.owner[target] {
                Some(w) => {
                    climber.touching(&[v, w], &mut edges);
                    for &e in &edges {
                        climber.remove_edge(e);
                    }
                    climber.label.swap(v, w);
                    for &e in &edges {
                        climber.add_edge(e);
                    }
                    if climber.missing > before {
                        for &e in &edges {
                            climber.remove_edge(e);
                        }
                        climber.label.swap(v, w);
                        for &e in &edges {
                            climber.add_edge(e);
                        }
                    } else {
                        climber.owner[climber.label[v]] = Some(v);
                        climber.owner[climber.label[w]] = Some(w);
                    }
                }
                None => {
                    climber.touching(&[v], &mut edges);
                    let old = climber.label[v];
                    for &e in &edges {
                        climber.remove_edge(e);
                    }
                    climber.label[v] = target;
                    for &e in &edges {
                        climber.add_edge(e);
                    }
                    if climber.missing > before {
                        for &e in &edges {
                            climber.remove_edge(e);
                        }
                        climber.label[v] = old;
                        for &e in &edges {
                            climber.add_edge(e);
                        }
                    } else {
                        climber.owner[old] = None;
                        climber.owner[target] = Some(v);
                    }
                }
            }
        }
        if climber.missing == 0 {
            let lab = GraphLabeling {
                labels: climber
                    .label
                    .iter()
                    .map(|&i| pool.values()[i] as u64)
                    .collect(),
            };
            if verify_graph_labeling(g, &lab).is_ok() {
                return Some(lab);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(v: &[u64]) -> GraphLabeling {
        GraphLabeling { labels: v.to_vec() }
    }

    #[test]
    fn complete_graph_labelings() {
        assert_eq!(
            verify_graph_labeling(&GraphInstance::complete(2), &lab(&[3, 5])),
            Ok(())
        );
        assert_eq!(
            verify_graph_labeling(&GraphInstance::complete(3), &lab(&[5, 7, 11])),
            Ok(())
        );
        assert_eq!(
            verify_graph_labeling(&GraphInstance::complete(4), &lab(&[7, 11, 17, 19])),
            Ok(())
        );
        let err =
            verify_graph_labeling(&GraphInstance::complete(4), &lab(&[3, 5, 7, 11])).unwrap_err();
        assert_eq!(err.code(), "duplicate-gap");
    }

    #[test]
    fn verifier_reasons() {
        let k3 = GraphInstance::complete(3);
        assert_eq!(
            verify_graph_labeling(&k3, &lab(&[5, 7]))
                .unwrap_err()
                .code(),
            "label-count"
        );
        assert_eq!(
            verify_graph_labeling(&k3, &lab(&[5, 9, 11]))
                .unwrap_err()
                .code(),
            "non-prime"
        );
        assert_eq!(
            verify_graph_labeling(&k3, &lab(&[5, 7, 13]))
                .unwrap_err()
                .code(),
            "out-of-pool"
        );
        assert_eq!(
            verify_graph_labeling(&k3, &lab(&[5, 5, 11]))
                .unwrap_err()
                .code(),
            "duplicate-prime"
        );
        let two_components = GraphInstance::new(4, [(0, 1)]).unwrap();
        assert_eq!(
            verify_graph_labeling(&two_components, &lab(&[3, 5, 7, 11]))
                .unwrap_err()
                .code(),
            "edge-count"
        );
    }

    #[test]
    fn graph_validation() {
        assert_eq!(GraphInstance::new(2, [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            GraphInstance::new(2, [(0, 1), (1, 0)]),
            Err(GraphError::MultiEdge(0, 1))
        );
        assert!(matches!(
            GraphInstance::new(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn generator_shapes() {
        let p = GraphInstance::petersen();
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        assert!((0..10).all(|v| p.degree(v) == 3));
        for n in 1..8 {
            let c = GraphInstance::regular_caterpillar(n);
            assert_eq!(c.vertex_count(), 2 * n + 2);
            assert_eq!(c.edge_count(), 2 * n + 1);
            assert!((0..n).all(|v| c.degree(v) == 3));
            assert!((n..2 * n + 2).all(|v| c.degree(v) == 1));
        }
        assert_eq!(GraphInstance::caterpillar_extra_leaf(3).edge_count(), 8);
        assert_eq!(GraphInstance::caterpillar_missing_leaf(3).edge_count(), 6);
        assert_eq!(GraphInstance::star(5).edge_count(), 4);
    }

    #[test]
    fn star_four_is_not_elegant() {
        assert_eq!(star_search(4), None);
        assert_eq!(
            exhaustive_graph_search(&GraphInstance::star(4), u64::MAX),
            Ok(None)
        );
    }

    #[test]
    fn star_five_is_elegant() {
        let s = GraphInstance::star(5);
        let found = star_search(5).unwrap();
        verify_graph_labeling(&s, &found).unwrap();
        verify_graph_labeling(&s, &lab(&[11, 3, 5, 7, 13])).unwrap();
        let ex = exhaustive_graph_search(&s, u64::MAX).unwrap().unwrap();
        verify_graph_labeling(&s, &ex).unwrap();
    }

    #[test]
    fn limit_is_reported() {
        assert_eq!(
            exhaustive_graph_search(&GraphInstance::petersen(), 10),
            Err(LimitExceeded { limit: 10 })
        );
    }

    #[test]
    fn stochastic_small_graphs() {
        let cfg = StochasticConfig::default();
        let k3 = GraphInstance::complete(3);
        verify_graph_labeling(&k3, &stochastic_graph_search(&k3, &cfg).expect("k3")).unwrap();
        let c5 = GraphInstance::regular_caterpillar(5);
        verify_graph_labeling(&c5, &stochastic_graph_search(&c5, &cfg).expect("c5")).unwrap();
    }

    #[test]
    fn caterpillar_three_is_not_elegant() {
        let c3 = GraphInstance::regular_caterpillar(3);
        assert_eq!(exhaustive_graph_search(&c3, u64::MAX), Ok(None));
        assert_eq!(
            stochastic_graph_search(
                &c3,
                &StochasticConfig {
                    restarts: 3,
                    ..Default::default()
                }
            ),
            None
        );
    }
}
