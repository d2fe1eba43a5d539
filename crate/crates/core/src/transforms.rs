//! Admissibility-preserving rewrites of a [`PathState`].
//!
//! Every `try_*` function either applies its rewrite and reports what changed
//! in a [`TransformOutcome`], or returns `None` and leaves the state exactly
//! as it was. Throughout, a cut `u` splits the path `Q` into
//! `Q1 = q_1..q_u` and `Q2 = q_{u+1}..q_l`, `f`/`l` denote the first and last
//! prime of a segment, `~Q` the reversed segment and `delta` the connecting gap
//! `|f(Q2) - l(Q1)|`.
//!
//! | kind | result | new gap(s) |
//! |------|--------|------------|
//! | reverse prefix | `~Q1 Q2` | `|f(Q2) - f(Q1)|` |
//! | reverse suffix | `Q1 ~Q2` | `|l(Q2) - l(Q1)|` |
//! | rotate | `Q2 Q1` | `|l(Q2) - f(Q1)|`, free or equal to `delta` |
//! | insert | `Q1 r Q2`, `~Q1 r Q2`, `Q1 r ~Q2` | two gaps around `r` |
//! | substitute | one of 12 recombinations of `r`, `Q1`, `Q2` | generic |

use arrayvec::ArrayVec;

use crate::pathstate::{End, PathState, SetChanges, SplitView};

/// Placement of the free prime `r` in a substitution target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// `r Q1 Q2`
    Front,
    /// `Q1 r Q2`
    Middle,
    /// `Q1 Q2 r`
    Back,
}

/// One of the twelve recombinations `{r Q1 Q2, Q1 r Q2, Q1 Q2 r}` with each
/// segment optionally reversed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TargetShape {
    pub place: Place,
    pub rev_first: bool,
    pub rev_second: bool,
}

impl TargetShape {
    pub const COUNT: usize = 12;

    /// Index in `0..12`: placement-major, then `rev_first`, then `rev_second`.
    pub fn index(self) -> usize {
        let place = match self.place {
            Place::Front => 0,
            Place::Middle => 1,
            Place::Back => 2,
        };
        place * 4 + (self.rev_first as usize) * 2 + self.rev_second as usize
    }

    pub fn from_index(i: usize) -> Self {
        assert!(i < Self::COUNT, "target shape index {i} out of range");
        let place = match i / 4 {
            0 => Place::Front,
            1 => Place::Middle,
            _ => Place::Back,
        };
        Self {
            place,
            rev_first: i & 2 != 0,
            rev_second: i & 1 != 0,
        }
    }

    pub fn all() -> impl Iterator<Item = Self> {
        (0..Self::COUNT).map(Self::from_index)
    }
}

/// Which prime a substitution removes and how the rest is cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    /// `q Q1 Q2` with `q` the left end and `Q1` holding `cut` primes
    /// (`0 <= cut <= l - 1`; either segment may be empty).
    Left { cut: usize },
    /// `Q1 q Q2` with `q` at 0-based position `pos`, `1 <= pos <= l - 2`.
    Interior { pos: usize },
    /// `Q1 Q2 q` with `q` the right end and `Q1` holding `cut` primes.
    Right { cut: usize },
}

/// Source position without its cut, for tallies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SourceSide {
    Left,
    Interior,
    Right,
}

impl Source {
    pub fn side(self) -> SourceSide {
        match self {
            Source::Left { .. } => SourceSide::Left,
            Source::Interior { .. } => SourceSide::Interior,
            Source::Right { .. } => SourceSide::Right,
        }
    }
}

/// Where an inserted prime goes relative to the cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InsertShape {
    /// `Q1 r Q2`, new gaps `|r - l(Q1)|`, `|f(Q2) - r|`.
    Middle,
    /// `~Q1 r Q2`, new gaps `|r - f(Q1)|`, `|f(Q2) - r|`.
    RevPrefix,
    /// `Q1 r ~Q2`, new gaps `|r - l(Q1)|`, `|l(Q2) - r|`.
    RevSuffix,
}

impl InsertShape {
    pub const ALL: [InsertShape; 3] = [
        InsertShape::Middle,
        InsertShape::RevPrefix,
        InsertShape::RevSuffix,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransformKind {
    ReversePrefix,
    ReverseSuffix,
    Rotate,
    RotateNeutral,
    InsertMiddle,
    InsertRevPrefix,
    InsertRevSuffix,
    ExtendLeft,
    ExtendRight,
    Substitute {
        source: SourceSide,
        target: TargetShape,
    },
}

impl TransformKind {
    /// Number of distinct kinds: nine plain rewrites and 36 substitutions.
    pub const COUNT: usize = 9 + 3 * TargetShape::COUNT;

    pub fn index(self) -> usize {
        match self {
            TransformKind::ReversePrefix => 0,
            TransformKind::ReverseSuffix => 1,
            TransformKind::Rotate => 2,
            TransformKind::RotateNeutral => 3,
            TransformKind::InsertMiddle => 4,
            TransformKind::InsertRevPrefix => 5,
            TransformKind::InsertRevSuffix => 6,
            TransformKind::ExtendLeft => 7,
            TransformKind::ExtendRight => 8,
            TransformKind::Substitute { source, target } => {
                let s = match source {
                    SourceSide::Left => 0,
                    SourceSide::Interior => 1,
                    SourceSide::Right => 2,
                };
                9 + s * TargetShape::COUNT + target.index()
            }
        }
    }

    pub fn from_index(i: usize) -> Self {
        match i {
            0 => TransformKind::ReversePrefix,
            1 => TransformKind::ReverseSuffix,
            2 => TransformKind::Rotate,
            3 => TransformKind::RotateNeutral,
            4 => TransformKind::InsertMiddle,
            5 => TransformKind::InsertRevPrefix,
            6 => TransformKind::InsertRevSuffix,
            7 => TransformKind::ExtendLeft,
            8 => TransformKind::ExtendRight,
            _ => {
                assert!(i < Self::COUNT, "transform index {i} out of range");
                let j = i - 9;
                let source = match j / TargetShape::COUNT {
                    0 => SourceSide::Left,
                    1 => SourceSide::Interior,
                    _ => SourceSide::Right,
                };
                TransformKind::Substitute {
                    source,
                    target: TargetShape::from_index(j % TargetShape::COUNT),
                }
            }
        }
    }

    /// Stable name used in reports.
    pub fn name(self) -> &'static str {
        KIND_NAMES[self.index()]
    }
}

const KIND_NAMES: [&str; TransformKind::COUNT] = [
    "reverse_prefix",
    "reverse_suffix",
    "rotate",
    "rotate_neutral",
    "insert_middle",
    "insert_rev_prefix",
    "insert_rev_suffix",
    "extend_left",
    "extend_right",
    "subst_left:r.Q1.Q2",
    "subst_left:r.Q1.~Q2",
    "subst_left:r.~Q1.Q2",
    "subst_left:r.~Q1.~Q2",
    "subst_left:Q1.r.Q2",
    "subst_left:Q1.r.~Q2",
    "subst_left:~Q1.r.Q2",
    "subst_left:~Q1.r.~Q2",
    "subst_left:Q1.Q2.r",
    "subst_left:Q1.~Q2.r",
    "subst_left:~Q1.Q2.r",
    "subst_left:~Q1.~Q2.r",
    "subst_interior:r.Q1.Q2",
    "subst_interior:r.Q1.~Q2",
    "subst_interior:r.~Q1.Q2",
    "subst_interior:r.~Q1.~Q2",
    "subst_interior:Q1.r.Q2",
    "subst_interior:Q1.r.~Q2",
    "subst_interior:~Q1.r.Q2",
    "subst_interior:~Q1.r.~Q2",
    "subst_interior:Q1.Q2.r",
    "subst_interior:Q1.~Q2.r",
    "subst_interior:~Q1.Q2.r",
    "subst_interior:~Q1.~Q2.r",
    "subst_right:r.Q1.Q2",
    "subst_right:r.Q1.~Q2",
    "subst_right:r.~Q1.Q2",
    "subst_right:r.~Q1.~Q2",
    "subst_right:Q1.r.Q2",
    "subst_right:Q1.r.~Q2",
    "subst_right:~Q1.r.Q2",
    "subst_right:~Q1.r.~Q2",
    "subst_right:Q1.Q2.r",
    "subst_right:Q1.~Q2.r",
    "subst_right:~Q1.Q2.r",
    "subst_right:~Q1.~Q2.r",
];

pub type GapList = ArrayVec<u32, 2>;

/// What a successful rewrite did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformOutcome {
    pub applied: TransformKind,
    /// The cut of the pre-state the rewrite used, if any.
    pub cut: Option<SplitView>,
    /// Removed prime and cut, for substitutions.
    pub source: Option<Source>,
    /// Gaps that became free.
    pub freed_gaps: GapList,
    /// Gaps that stopped being free.
    pub consumed_gaps: GapList,
    pub inserted_prime: Option<u32>,
    pub removed_prime: Option<u32>,
}

impl TransformOutcome {
    fn new(applied: TransformKind) -> Self {
        Self {
            applied,
            cut: None,
            source: None,
            freed_gaps: GapList::new(),
            consumed_gaps: GapList::new(),
            inserted_prime: None,
            removed_prime: None,
        }
    }

    /// The freed gap, when exactly one gap was freed.
    pub fn freed_gap(&self) -> Option<u32> {
        self.freed_gaps.first().copied()
    }
}

fn one(g: u32) -> GapList {
    let mut v = GapList::new();
    v.push(g);
    v
}

/// Q1 reversed: `~Q1 Q2`, valid when `|f(Q2) - f(Q1)|` is free.
pub fn try_reverse_prefix(state: &mut PathState<'_>, cut: usize) -> Option<TransformOutcome> {
    let split = state.split(cut)?;
    let seq = state.ranks();
    let new_gap = state.gap_between(seq[cut], seq[0]);
    if !state.is_gap_free(new_gap) {
        return None;
    }
    state.rebuild(
        SetChanges {
            freed: &[split.delta],
            consumed: &[new_gap],
            ..Default::default()
        },
        |old, next| {
            next.extend(old[..cut].iter().rev());
            next.extend_from_slice(&old[cut..]);
        },
    );
    Some(TransformOutcome {
        cut: Some(split),
        freed_gaps: one(split.delta),
        consumed_gaps: one(new_gap),
        ..TransformOutcome::new(TransformKind::ReversePrefix)
    })
}

/// Q2 reversed: `Q1 ~Q2`, valid when `|l(Q2) - l(Q1)|` is free.
pub fn try_reverse_suffix(state: &mut PathState<'_>, cut: usize) -> Option<TransformOutcome> {
    let split = state.split(cut)?;
    let seq = state.ranks();
    let new_gap = state.gap_between(seq[seq.len() - 1], seq[cut - 1]);
    if !state.is_gap_free(new_gap) {
        return None;
    }
    state.rebuild(
        SetChanges {
            freed: &[split.delta],
            consumed: &[new_gap],
            ..Default::default()
        },
        |old, next| {
            next.extend_from_slice(&old[..cut]);
            next.extend(old[cut..].iter().rev());
        },
    );
    Some(TransformOutcome {
        cut: Some(split),
        freed_gaps: one(split.delta),
        consumed_gaps: one(new_gap),
        ..TransformOutcome::new(TransformKind::ReverseSuffix)
    })
}

/// Whether [`try_reverse_prefix`] would succeed at `cut`.
pub fn can_reverse_prefix(state: &PathState<'_>, cut: usize) -> bool {
    cut >= 1 && cut < state.len() && {
        let seq = state.ranks();
        state.is_gap_free(state.gap_between(seq[cut], seq[0]))
    }
}

/// Whether [`try_reverse_suffix`] would succeed at `cut`.
pub fn can_reverse_suffix(state: &PathState<'_>, cut: usize) -> bool {
    cut >= 1 && cut < state.len() && {
        let seq = state.ranks();
        state.is_gap_free(state.gap_between(seq[seq.len() - 1], seq[cut - 1]))
    }
}

/// Rotation `Q2 Q1`. The new connecting gap `|l(Q2) - f(Q1)|` must be free
/// (the free set trades it for `delta`) or equal to `delta` (free set
/// unchanged).
pub fn try_rotate(state: &mut PathState<'_>, cut: usize) -> Option<TransformOutcome> {
    let split = state.split(cut)?;
    let new_gap = state.gap_between(state.ranks()[state.len() - 1], state.ranks()[0]);
    let rotate = |old: &[u32], next: &mut alloc::vec::Vec<u32>| {
        next.extend_from_slice(&old[cut..]);
        next.extend_from_slice(&old[..cut]);
    };
    if state.is_gap_free(new_gap) {
        state.rebuild(
            SetChanges {
                freed: &[split.delta],
                consumed: &[new_gap],
                ..Default::default()
            },
            rotate,
        );
        Some(TransformOutcome {
            cut: Some(split),
            freed_gaps: one(split.delta),
            consumed_gaps: one(new_gap),
            ..TransformOutcome::new(TransformKind::Rotate)
        })
    } else if new_gap == split.delta {
        state.rebuild(SetChanges::default(), rotate);
        Some(TransformOutcome {
            cut: Some(split),
            ..TransformOutcome::new(TransformKind::RotateNeutral)
        })
    } else {
        None
    }
}

/// Gap bookkeeping of an insertion, or `None` when the two new gaps do not
/// fit: both free and distinct, or one free and the other equal to `delta`.
fn insertion_gaps(
    state: &PathState<'_>,
    left: u32,
    right: u32,
    delta: u32,
) -> Option<(GapList, GapList)> {
    let left_free = state.is_gap_free(left);
    let right_free = state.is_gap_free(right);
    if left_free && right_free && left != right {
        let mut consumed = GapList::new();
        consumed.push(left);
        consumed.push(right);
        Some((one(delta), consumed))
    } else if left_free && right == delta {
        Some((GapList::new(), one(left)))
    } else if right_free && left == delta {
        Some((GapList::new(), one(right)))
    } else {
        None
    }
}

/// Inserts the free prime `rank` at `cut` in the given shape.
pub fn try_insert(
    state: &mut PathState<'_>,
    cut: usize,
    rank: u32,
    shape: InsertShape,
) -> Option<TransformOutcome> {
    if !state.is_prime_free(rank) {
        return None;
    }
    let split = state.split(cut)?;
    let seq = state.ranks();
    let l = seq.len();
    let (p, q) = match shape {
        InsertShape::Middle => (seq[cut - 1], seq[cut]),
        InsertShape::RevPrefix => (seq[0], seq[cut]),
        InsertShape::RevSuffix => (seq[cut - 1], seq[l - 1]),
    };
    let left = state.gap_between(rank, p);
    let right = state.gap_between(q, rank);
    let (freed, consumed) = insertion_gaps(state, left, right, split.delta)?;
    state.rebuild(
        SetChanges {
            freed: &freed,
            consumed: &consumed,
            inserted_prime: Some(rank),
            ..Default::default()
        },
        |old, next| {
            match shape {
                InsertShape::RevPrefix => next.extend(old[..cut].iter().rev()),
                _ => next.extend_from_slice(&old[..cut]),
            }
            next.push(rank);
            match shape {
                InsertShape::RevSuffix => next.extend(old[cut..].iter().rev()),
                _ => next.extend_from_slice(&old[cut..]),
            }
        },
    );
    let applied = match shape {
        InsertShape::Middle => TransformKind::InsertMiddle,
        InsertShape::RevPrefix => TransformKind::InsertRevPrefix,
        InsertShape::RevSuffix => TransformKind::InsertRevSuffix,
    };
    Some(TransformOutcome {
        cut: Some(split),
        freed_gaps: freed,
        consumed_gaps: consumed,
        inserted_prime: Some(rank),
        ..TransformOutcome::new(applied)
    })
}

/// [`PathState::try_extend`] reporting an outcome.
pub fn try_extend(state: &mut PathState<'_>, rank: u32, end: End) -> Option<TransformOutcome> {
    if state.is_empty() || !state.is_prime_free(rank) {
        return None;
    }
    let anchor = match end {
        End::Left => state.ranks()[0],
        End::Right => state.ranks()[state.len() - 1],
    };
    let gap = state.gap_between(anchor, rank);
    if !state.try_extend(rank, end) {
        return None;
    }
    let applied = match end {
        End::Left => TransformKind::ExtendLeft,
        End::Right => TransformKind::ExtendRight,
    };
    Some(TransformOutcome {
        consumed_gaps: one(gap),
        inserted_prime: Some(rank),
        ..TransformOutcome::new(applied)
    })
}

// Half-open index ranges of the removed prime and the two segments.
struct Segments {
    q: usize,
    first: (usize, usize),
    second: (usize, usize),
}

fn segments(source: Source, l: usize) -> Option<Segments> {
    match source {
        Source::Left { cut } if cut < l => Some(Segments {
            q: 0,
            first: (1, 1 + cut),
            second: (1 + cut, l),
        }),
        Source::Right { cut } if cut < l => Some(Segments {
            q: l - 1,
            first: (0, cut),
            second: (cut, l - 1),
        }),
        Source::Interior { pos } if pos >= 1 && pos + 1 < l => Some(Segments {
            q: pos,
            first: (0, pos),
            second: (pos + 1, l),
        }),
        _ => None,
    }
}

#[derive(Clone, Copy)]
enum Block {
    Prime(u32),
    Seg { lo: usize, hi: usize, rev: bool },
}

impl Block {
    fn ends(self, seq: &[u32]) -> (u32, u32) {
        match self {
            Block::Prime(r) => (r, r),
            Block::Seg { lo, hi, rev: false } => (seq[lo], seq[hi - 1]),
            Block::Seg { lo, hi, rev: true } => (seq[hi - 1], seq[lo]),
        }
    }
}

/// Replaces one prime of the path by the free prime `rank` and recombines
/// the two remaining segments as `target` prescribes.
///
/// The gaps that disappear are those incident to the removed prime plus,
/// for end sources with both segments nonempty, the gap joining the
/// segments. The gaps that appear join consecutive blocks of the target.
/// The rewrite is accepted when the new gaps are pairwise distinct, in
/// range, and each is either free or among the disappearing ones.
pub fn try_substitute(
    state: &mut PathState<'_>,
    source: Source,
    rank: u32,
    target: TargetShape,
) -> Option<TransformOutcome> {
    let l = state.len();
    if l < 2 || !state.is_prime_free(rank) {
        return None;
    }
    let segs = segments(source, l)?;
    let seq = state.ranks();

    let mut removed = GapList::new();
    let (a1, b1) = segs.first;
    let (a2, b2) = segs.second;
    if segs.q > 0 {
        removed.push(state.edge_gap(segs.q - 1));
    }
    if segs.q + 1 < l {
        removed.push(state.edge_gap(segs.q));
    }
    if (segs.q == 0 || segs.q == l - 1) && a1 < b1 && a2 < b2 {
        removed.push(state.edge_gap(b1 - 1));
    }

    let mut blocks: ArrayVec<Block, 3> = ArrayVec::new();
    let first = Block::Seg {
        lo: a1,
        hi: b1,
        rev: target.rev_first,
    };
    let second = Block::Seg {
        lo: a2,
        hi: b2,
        rev: target.rev_second,
    };
    let order = match target.place {
        Place::Front => [Block::Prime(rank), first, second],
        Place::Middle => [first, Block::Prime(rank), second],
        Place::Back => [first, second, Block::Prime(rank)],
    };
    for b in order {
        match b {
            Block::Seg { lo, hi, .. } if lo == hi => {}
            _ => blocks.push(b),
        }
    }

    let mut added = GapList::new();
    for w in blocks.windows(2) {
        let (_, last) = w[0].ends(seq);
        let (next_first, _) = w[1].ends(seq);
        added.push(state.gap_between(last, next_first));
    }
    debug_assert_eq!(added.len(), removed.len());

    if added.len() == 2 && added[0] == added[1] {
        return None;
    }
    for &g in &added {
        if !(state.is_gap_free(g) || removed.contains(&g)) {
            return None;
        }
    }

    let freed: GapList = removed
        .iter()
        .copied()
        .filter(|g| !added.contains(g))
        .collect();
    let consumed: GapList = added
        .iter()
        .copied()
        .filter(|g| !removed.contains(g))
        .collect();
    let q_rank = seq[segs.q];
    state.rebuild(
        SetChanges {
            freed: &freed,
            consumed: &consumed,
            removed_prime: Some(q_rank),
            inserted_prime: Some(rank),
        },
        |old, next| {
            for b in &blocks {
                match *b {
                    Block::Prime(r) => next.push(r),
                    Block::Seg { lo, hi, rev: false } => next.extend_from_slice(&old[lo..hi]),
                    Block::Seg { lo, hi, rev: true } => next.extend(old[lo..hi].iter().rev()),
                }
            }
        },
    );
    Some(TransformOutcome {
        source: Some(source),
        freed_gaps: freed,
        consumed_gaps: consumed,
        inserted_prime: Some(rank),
        removed_prime: Some(q_rank),
        ..TransformOutcome::new(TransformKind::Substitute {
            source: source.side(),
            target,
        })
    })
}

// Tries the three insertion shapes at every cut that has prime `s` as a
// boundary: `s = l(Q1)` first, then `s = f(Q2)`.
fn insert_next_to(state: &mut PathState<'_>, s_rank: u32, rank: u32) -> Option<TransformOutcome> {
    let i = state.position_of(s_rank)?;
    let l = state.len();
    let mut cuts: ArrayVec<usize, 2> = ArrayVec::new();
    if i + 1 < l {
        cuts.push(i + 1);
    }
    if i >= 1 {
        cuts.push(i);
    }
    for cut in cuts {
        for shape in InsertShape::ALL {
            if let Some(out) = try_insert(state, cut, rank, shape) {
                return Some(out);
            }
        }
    }
    None
}

fn rank_of_value(state: &PathState<'_>, value: i64) -> Option<u32> {
    if value < 3 {
        return None;
    }
    let r = state.pool().rank(value as u64)? as u32;
    (r as usize <= state.n()).then_some(r)
}

/// After a rewrite, tries to lengthen the path by one prime.
///
/// In order: for every gap `g` the rewrite freed and every free prime `r`,
/// insert `r` at a cut bounded by `s = r -/+ g`; if the rewrite freed a prime,
/// insert it next to any `s` at a free-gap distance; finally extend either
/// end with any free prime.
pub fn followup_insert(
    state: &mut PathState<'_>,
    previous: &TransformOutcome,
) -> Option<TransformOutcome> {
    if state.len() >= state.n() {
        return None;
    }
    for &g in &previous.freed_gaps {
        let mut i = 0;
        while i < state.free_primes().len() {
            let r = state.free_primes()[i];
            let p = state.pool().prime(r as usize) as i64;
            for s in [p - g as i64, p + g as i64] {
                if let Some(s_rank) = rank_of_value(state, s) {
                    if let Some(out) = insert_next_to(state, s_rank, r) {
                        return Some(out);
                    }
                }
            }
            i += 1;
        }
    }
    if let Some(r) = previous.removed_prime.filter(|&r| state.is_prime_free(r)) {
        let p = state.pool().prime(r as usize) as i64;
        let gaps: alloc::vec::Vec<u32> = state.free_gaps().collect();
        for g in gaps {
            for s in [p - g as i64, p + g as i64] {
                if let Some(s_rank) = rank_of_value(state, s) {
                    if let Some(out) = insert_next_to(state, s_rank, r) {
                        return Some(out);
                    }
                }
            }
        }
    }
    extend_any(state)
}

/// Extends the right end, then the left end, with the first free prime that
/// fits, scanning free primes in internal order.
pub fn extend_any(state: &mut PathState<'_>) -> Option<TransformOutcome> {
    let mut i = 0;
    while i < state.free_primes().len() {
        let r = state.free_primes()[i];
        for end in [End::Right, End::Left] {
            if let Some(out) = try_extend(state, r, end) {
                return Some(out);
            }
        }
        i += 1;
    }
    None
}

/// Re-applies a recorded rewrite to the state it was recorded on.
pub fn replay(state: &mut PathState<'_>, outcome: &TransformOutcome) -> Option<TransformOutcome> {
    let cut = outcome.cut.map(|s| s.cut);
    match outcome.applied {
        TransformKind::ReversePrefix => try_reverse_prefix(state, cut?),
        TransformKind::ReverseSuffix => try_reverse_suffix(state, cut?),
        TransformKind::Rotate | TransformKind::RotateNeutral => try_rotate(state, cut?),
        TransformKind::InsertMiddle => {
            try_insert(state, cut?, outcome.inserted_prime?, InsertShape::Middle)
        }
        TransformKind::InsertRevPrefix => {
            try_insert(state, cut?, outcome.inserted_prime?, InsertShape::RevPrefix)
        }
        TransformKind::InsertRevSuffix => {
            try_insert(state, cut?, outcome.inserted_prime?, InsertShape::RevSuffix)
        }
        TransformKind::ExtendLeft => try_extend(state, outcome.inserted_prime?, End::Left),
        TransformKind::ExtendRight => try_extend(state, outcome.inserted_prime?, End::Right),
        TransformKind::Substitute { target, .. } => {
            try_substitute(state, outcome.source?, outcome.inserted_prime?, target)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::PrimePool;
    use alloc::vec::Vec;

    fn st<'p>(pool: &'p PrimePool, n: usize, labels: &[u64]) -> PathState<'p> {
        PathState::from_labels(pool, n, labels).unwrap()
    }

    fn rank(pool: &PrimePool, p: u64) -> u32 {
        pool.rank(p).unwrap() as u32
    }

    fn labels(s: &PathState<'_>) -> Vec<u32> {
        s.labels()
    }

    #[test]
    fn reverse_prefix_trace_step_four() {
        let pool = PrimePool::new(11);
        let mut s = st(&pool, 11, &[29, 37, 23, 5, 7, 17, 13, 19, 31, 11]);
        let out = try_reverse_prefix(&mut s, 6).unwrap();
        assert_eq!(labels(&s), [17, 7, 5, 23, 37, 29, 13, 19, 31, 11]);
        assert_eq!(out.freed_gap(), Some(4));
        assert_eq!(out.consumed_gaps.as_slice(), &[16]);
        assert_eq!(s.free_gap_values(), [4]);
        s.check_invariants().unwrap();
    }

    #[test]
    fn reverse_prefix_seven_primes() {
        let pool = PrimePool::new(7);
        let mut s = st(&pool, 7, &[7, 19, 17, 11, 3, 13]);
        let out = try_reverse_prefix(&mut s, 3).unwrap();
        assert_eq!(labels(&s), [17, 19, 7, 11, 3, 13]);
        assert_eq!(out.freed_gap(), Some(6));
    }

    #[test]
    fn reverse_prefix_rejects_used_gap() {
        let pool = PrimePool::new(7);
        let mut s = st(&pool, 7, &[7, 19, 17, 11, 3, 13]);
        let before = s.clone();
        // |17 - 7| = 10 is used.
        assert!(try_reverse_prefix(&mut s, 2).is_none());
        // cut 1 would reuse the connecting gap itself.
        assert!(try_reverse_prefix(&mut s, 1).is_none());
        assert_eq!(s, before);
        assert_eq!(s.free_gap_values(), before.free_gap_values());
    }

    #[test]
    fn reverse_suffix_trace_step_one() {
        let pool = PrimePool::new(11);
        let mut s = st(&pool, 11, &[5, 7, 3, 19, 31, 11, 29, 37, 23, 17]);
        let out = try_reverse_suffix(&mut s, 2).unwrap();
        assert_eq!(labels(&s), [5, 7, 17, 23, 37, 29, 11, 31, 19, 3]);
        assert_eq!(out.freed_gap(), Some(4));
        assert_eq!(s.free_gap_values(), [4]);
        s.check_invariants().unwrap();
    }

    #[test]
    fn reverse_suffix_small() {
        let pool = PrimePool::new(5);
        let mut s = st(&pool, 5, &[5, 3, 7, 13]);
        let out = try_reverse_suffix(&mut s, 1).unwrap();
        assert_eq!(labels(&s), [5, 13, 7, 3]);
        assert_eq!(out.freed_gap(), Some(2));
        let l: Vec<u64> = labels(&s).iter().map(|&p| p as u64).collect();
        crate::verify_sequence(&l, 5).unwrap();
    }

    #[test]
    fn reverse_suffix_on_elegant_path_never_applies() {
        let pool = PrimePool::new(5);
        let mut s = st(&pool, 5, &[13, 7, 11, 3, 5]);
        for u in 1..5 {
            assert!(try_reverse_suffix(&mut s, u).is_none());
            assert!(try_reverse_prefix(&mut s, u).is_none());
        }
    }

    #[test]
    fn rotate_neutral_trace_step_three() {
        let pool = PrimePool::new(11);
        let mut s = st(&pool, 11, &[5, 7, 17, 13, 19, 31, 11, 29, 37, 23]);
        assert_eq!(s.gap_edge(18), Some(6));
        let out = try_rotate(&mut s, 7).unwrap();
        assert_eq!(out.applied, TransformKind::RotateNeutral);
        assert_eq!(labels(&s), [29, 37, 23, 5, 7, 17, 13, 19, 31, 11]);
        assert_eq!(s.free_gap_values(), [16]);
        s.check_invariants().unwrap();
    }

    #[test]
    fn rotate_with_free_gap() {
        let pool = PrimePool::new(7);
        // Gaps 12, 2, 6, 8, 10; free 4 = |7 - 3|... ends 7 and 13: |13-7| = 6 used.
        let mut s = st(&pool, 7, &[3, 7, 19, 17, 11]);
        // Gaps 4, 12, 2, 6; free {8, 10}; ends |11 - 3| = 8 free.
        let out = try_rotate(&mut s, 2).unwrap();
        assert_eq!(out.applied, TransformKind::Rotate);
        assert_eq!(labels(&s), [19, 17, 11, 3, 7]);
        assert_eq!(out.freed_gap(), Some(12));
        assert_eq!(s.free_gap_values(), [10, 12]);
        s.check_invariants().unwrap();
    }

    #[test]
    fn rotate_out_of_range_is_rejected() {
        let pool = PrimePool::new(4);
        // n = 4: gaps up to 6; ends |11 - 3| = 8.
        let mut s = st(&pool, 4, &[3, 5, 11]);
        assert!(try_rotate(&mut s, 1).is_none());
        assert!(try_rotate(&mut s, 2).is_none());
        assert_eq!(labels(&s), [3, 5, 11]);
    }

    #[test]
    fn insert_rev_suffix_seven_primes() {
        let pool = PrimePool::new(7);
        let mut s = st(&pool, 7, &[17, 19, 7, 11, 3, 13]);
        let out = try_insert(&mut s, 4, rank(&pool, 5), InsertShape::RevSuffix).unwrap();
        assert_eq!(labels(&s), [17, 19, 7, 11, 5, 13, 3]);
        assert!(s.is_elegant());
        assert!(out.freed_gaps.is_empty());
        assert_eq!(out.consumed_gaps.as_slice(), &[6]);
        s.check_invariants().unwrap();
    }

    #[test]
    fn insert_final_trace_step() {
        let pool = PrimePool::new(11);
        let mut s = st(&pool, 11, &[17, 7, 5, 23, 37, 29, 13, 19, 31, 11]);
        try_insert(&mut s, 2, rank(&pool, 3), InsertShape::Middle).unwrap();
        assert_eq!(labels(&s), [17, 7, 3, 5, 23, 37, 29, 13, 19, 31, 11]);
        assert!(s.is_elegant());
    }

    #[test]
    fn insert_rejects_equal_new_gaps() {
        // n = 5, path 3 | 11 (gap 8). r = 7 sits midway: |7-3| = |11-7| = 4.
        let pool = PrimePool::new(5);
        let mut s = st(&pool, 5, &[3, 11]);
        assert!(s.is_gap_free(4));
        assert!(try_insert(&mut s, 1, rank(&pool, 7), InsertShape::Middle).is_none());
        assert_eq!(labels(&s), [3, 11]);
    }

    #[test]
    fn insert_with_both_free_releases_delta() {
        let pool = PrimePool::new(5);
        let mut s = st(&pool, 5, &[3, 11]);
        // 13 between 3 and 11: gaps 10 (out of range for n = 5). 5: gaps 2, 6.
        let out = try_insert(&mut s, 1, rank(&pool, 5), InsertShape::Middle).unwrap();
        assert_eq!(labels(&s), [3, 5, 11]);
        assert_eq!(out.freed_gaps.as_slice(), &[8]);
        assert_eq!(s.free_gap_values(), [4, 8]);
        s.check_invariants().unwrap();
    }

    #[test]
    fn substitute_trace_step_two() {
        let pool = PrimePool::new(11);
        let mut s = st(&pool, 11, &[5, 7, 17, 23, 37, 29, 11, 31, 19, 3]);
        let target = TargetShape {
            place: Place::Middle,
            rev_first: false,
            rev_second: true,
        };
        let out =
            try_substitute(&mut s, Source::Right { cut: 3 }, rank(&pool, 13), target).unwrap();
        assert_eq!(labels(&s), [5, 7, 17, 13, 19, 31, 11, 29, 37, 23]);
        assert_eq!(out.freed_gaps.as_slice(), &[16]);
        assert_eq!(out.consumed_gaps.as_slice(), &[4]);
        assert_eq!(out.removed_prime, Some(rank(&pool, 3)));
        assert_eq!(s.free_prime_values(), [3]);
        assert_eq!(s.free_gap_values(), [16]);
        s.check_invariants().unwrap();
    }

    #[test]
    fn substitute_requires_free_prime() {
        let pool = PrimePool::new(11);
        let mut s = st(&pool, 11, &[5, 7, 17, 23, 37, 29, 11, 31, 19, 3]);
        for t in TargetShape::all() {
            assert!(try_substitute(&mut s, Source::Right { cut: 3 }, rank(&pool, 3), t).is_none());
        }
        assert!(try_substitute(
            &mut s,
            Source::Interior { pos: 0 },
            rank(&pool, 13),
            TargetShape::from_index(4)
        )
        .is_none());
        assert!(try_substitute(
            &mut s,
            Source::Interior { pos: 9 },
            rank(&pool, 13),
            TargetShape::from_index(4)
        )
        .is_none());
    }

    #[test]
    fn followup_seven_prime_chain() {
        let pool = PrimePool::new(7);
        let mut s = st(&pool, 7, &[7, 19, 17, 11, 3, 13]);
        let a1 = try_reverse_prefix(&mut s, 3).unwrap();
        let ins = followup_insert(&mut s, &a1).unwrap();
        assert_eq!(ins.applied, TransformKind::InsertRevSuffix);
        assert_eq!(labels(&s), [17, 19, 7, 11, 5, 13, 3]);
    }

    #[test]
    fn followup_after_trace_step_one_finds_nothing() {
        let pool = PrimePool::new(11);
        let mut s = st(&pool, 11, &[5, 7, 3, 19, 31, 11, 29, 37, 23, 17]);
        let a2 = try_reverse_suffix(&mut s, 2).unwrap();
        let before = s.clone();
        assert!(followup_insert(&mut s, &a2).is_none());
        assert_eq!(s, before);
    }

    #[test]
    fn followup_without_candidate() {
        // n = 5, path 13 7 11 3 (free prime 5, free gap 2): extension 3-5 fits.
        let pool = PrimePool::new(5);
        let mut s = st(&pool, 5, &[13, 7, 11, 3]);
        let out = TransformOutcome::new(TransformKind::Rotate);
        assert_eq!(
            followup_insert(&mut s, &out).unwrap().applied,
            TransformKind::ExtendRight
        );
        // Full path: nothing to do.
        assert!(followup_insert(&mut s, &out).is_none());
    }

    #[test]
    fn kind_indices_roundtrip() {
        for i in 0..TransformKind::COUNT {
            assert_eq!(TransformKind::from_index(i).index(), i);
        }
        let names: alloc::collections::BTreeSet<&str> = (0..TransformKind::COUNT)
            .map(|i| TransformKind::from_index(i).name())
            .collect();
        assert_eq!(names.len(), TransformKind::COUNT);
        assert_eq!(
            TransformKind::Substitute {
                source: SourceSide::Right,
                target: TargetShape {
                    place: Place::Middle,
                    rev_first: false,
                    rev_second: true
                }
            }
            .name(),
            "subst_right:Q1.r.~Q2"
        );
    }
}
